#pragma once

// Test-only oracle for the failed rank-one variant of the 2D construction:
// middle elements b(P_0j + X_0j) and b(P_0j + Y_0j) instead of
// b(I + X_0j), b(I + Y_0j). Their probabilities are
//   p_x = b|r_0 + c_j|^2 and p_y = b|r_0 - i c_j|^2,
// quadratic in c_j, which admits a second solution per j:
//   c_j' = -(y_j + r_0) - i (x_j + r_0).

#include <vector>

#include "pstomo/constructions.hpp"

namespace pstomo_test {

using namespace pstomo;

inline std::vector<HermitianOperator> failed_variant_elements(Eigen::Index dim, double a,
                                                              double b) {
    std::vector<HermitianOperator> elements;
    ComplexMatrix anchor = ComplexMatrix::Zero(dim, dim);
    anchor(0, 0) = a;
    elements.emplace_back(anchor);
    for (Eigen::Index j = 1; j < dim; ++j) {
        ComplexMatrix proj = ComplexMatrix::Zero(dim, dim);
        proj(0, 0) = 1.0;
        proj(j, j) = 1.0;
        elements.emplace_back(
            b * (proj + subspace_pauli(dim, 0, j, PauliAxis::X).matrix()));
        elements.emplace_back(
            b * (proj + subspace_pauli(dim, 0, j, PauliAxis::Y).matrix()));
    }
    return elements;
}

// Second solution of the per-amplitude quadratic, with the same r_0.
// Requires a gauge-fixed state with real-positive first amplitude.
inline PureState failed_variant_partner(const PureState& state) {
    const double r0 = state.amplitudes[0].real();
    ComplexVector v = state.amplitudes;
    for (Eigen::Index j = 1; j < state.dim(); ++j) {
        const double x = state.amplitudes[j].real();
        const double y = state.amplitudes[j].imag();
        v[j] = Complex(-(y + r0), -(x + r0));
    }
    return {v, false};
}

inline RealVector element_probabilities(const std::vector<HermitianOperator>& elements,
                                        const PureState& state) {
    RealVector p(static_cast<Eigen::Index>(elements.size()));
    for (std::size_t c = 0; c < elements.size(); ++c) {
        p[static_cast<Eigen::Index>(c)] = expectation(elements[c], state);
    }
    return p;
}

}  // namespace pstomo_test
