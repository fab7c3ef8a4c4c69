#pragma once

// POVMs: ordered, labeled positive operators summing to the identity.

#include <string>
#include <utility>
#include <vector>

#include "pstomo/linalg.hpp"
#include "pstomo/states.hpp"

namespace pstomo {

inline constexpr double kPovmPosTol = -1e-10;
inline constexpr double kCompletenessTol = 1e-10;

class Povm {
  public:
    Povm(std::vector<HermitianOperator> elements, std::vector<std::string> labels) {
        if (elements.empty()) {
            throw InvalidPovm("POVM needs at least one element");
        }
        if (labels.size() != elements.size()) {
            throw InvalidPovm("label count must match element count");
        }
        const Eigen::Index d = elements.front().dim();
        ComplexMatrix sum = ComplexMatrix::Zero(d, d);
        for (const auto& e : elements) {
            if (e.dim() != d) {
                throw InvalidPovm("POVM elements must share one dimension");
            }
            if (min_eigenvalue(e) < kPovmPosTol) {
                throw InvalidPovm("POVM element is not positive semidefinite");
            }
            sum += e.matrix();
        }
        if (frobenius_distance(sum, ComplexMatrix::Identity(d, d)) > kCompletenessTol) {
            throw InvalidPovm("POVM elements do not sum to the identity");
        }
        elements_ = std::move(elements);
        labels_ = std::move(labels);
    }

    Eigen::Index dim() const { return elements_.front().dim(); }
    std::size_t size() const { return elements_.size(); }
    const std::vector<HermitianOperator>& elements() const { return elements_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const HermitianOperator& element(std::size_t c) const { return elements_.at(c); }
    const std::string& label(std::size_t c) const { return labels_.at(c); }

    // Index of a label, -1 if absent.
    int find_label(const std::string& label) const {
        for (std::size_t c = 0; c < labels_.size(); ++c) {
            if (labels_[c] == label) return static_cast<int>(c);
        }
        return -1;
    }

  private:
    std::vector<HermitianOperator> elements_;
    std::vector<std::string> labels_;
};

struct OutcomeDistribution {
    RealVector values;
    bool normalized_state = false;

    double total() const { return values.sum(); }
};

// p^c = <psi|E^c|psi>. For unnormalized states the values sum to <psi|psi>.
inline OutcomeDistribution probabilities(const Povm& povm, const PureState& state) {
    if (state.dim() != povm.dim()) {
        throw DimensionMismatch("state and POVM dimensions differ");
    }
    RealVector p(povm.size());
    for (std::size_t c = 0; c < povm.size(); ++c) {
        p[c] = expectation(povm.element(c), state);
    }
    return {p, state.normalized};
}

}  // namespace pstomo
