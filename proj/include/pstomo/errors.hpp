#pragma once

#include <stdexcept>
#include <string>

namespace pstomo {

struct NonHermitianInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularOperator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndefiniteOperator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ZeroVector : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonUnitBloch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct IndicesEqual : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidPovm : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ThrowawayNotPositive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularFrame : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace pstomo
