#pragma once

// The POVM families: the 2D-element pure-state informationally complete
// construction with its throw-away element, the rank-one 3D-2 construction,
// the tetrahedral and trine qubit measurements, complementary (Fourier)
// bases, and the G^{-1/2} renormalization that turns any spanning element
// set into a POVM.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "pstomo/povm.hpp"

namespace pstomo {

enum class PauliAxis { X, Y, Z };

// Pauli operators embedded in the |j>,|k> subspace.
inline HermitianOperator subspace_pauli(Eigen::Index dim, Eigen::Index j, Eigen::Index k,
                                        PauliAxis which) {
    if (j < 0 || k < 0 || j >= dim || k >= dim) {
        throw IndexOutOfRange("subspace indices out of range");
    }
    if (j == k) {
        throw IndicesEqual("subspace indices must differ");
    }
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    switch (which) {
        case PauliAxis::X:
            m(j, k) = 1.0;
            m(k, j) = 1.0;
            break;
        case PauliAxis::Y:
            m(j, k) = Complex(0.0, -1.0);
            m(k, j) = Complex(0.0, 1.0);
            break;
        case PauliAxis::Z:
            m(j, j) = 1.0;
            m(k, k) = -1.0;
            break;
    }
    return HermitianOperator(m);
}

struct TwoDConstructionParams {
    Eigen::Index dim;
    double a;
    double b;

    // a = b = 1/(4D) keeps the throw-away element positive for every D; the
    // constructor still checks numerically.
    static TwoDConstructionParams defaults(Eigen::Index dim) {
        const double v = 1.0 / (4.0 * static_cast<double>(dim));
        return {dim, v, v};
    }
};

// Elements a|0><0|, b(I + X_0j), b(I + Y_0j) for j = 1..D-1, plus the
// throw-away T restoring completeness. Labels E0, x,1..x,D-1, y,1..y,D-1, T.
inline Povm build_psic_2d(const TwoDConstructionParams& params) {
    const Eigen::Index d = params.dim;
    if (d < 2) {
        throw InvalidParameter("construction requires dim >= 2");
    }
    if (params.a <= 0.0 || params.b <= 0.0) {
        throw InvalidParameter("a and b must be positive");
    }
    std::vector<HermitianOperator> elements;
    std::vector<std::string> labels;
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);

    ComplexMatrix anchor = ComplexMatrix::Zero(d, d);
    anchor(0, 0) = params.a;
    elements.emplace_back(anchor);
    labels.emplace_back("E0");

    for (Eigen::Index j = 1; j < d; ++j) {
        elements.emplace_back(params.b *
                              (id + subspace_pauli(d, 0, j, PauliAxis::X).matrix()));
        labels.emplace_back("x," + std::to_string(j));
    }
    for (Eigen::Index j = 1; j < d; ++j) {
        elements.emplace_back(params.b *
                              (id + subspace_pauli(d, 0, j, PauliAxis::Y).matrix()));
        labels.emplace_back("y," + std::to_string(j));
    }

    ComplexMatrix rest = id;
    for (const auto& e : elements) {
        rest -= e.matrix();
    }
    HermitianOperator throwaway(rest);
    if (min_eigenvalue(throwaway) < kPovmPosTol) {
        throw ThrowawayNotPositive("a and b too large: throw-away element indefinite");
    }
    elements.push_back(throwaway);
    labels.emplace_back("T");
    return Povm(std::move(elements), std::move(labels));
}

struct RankOneConstructionParams {
    Eigen::Index dim;
    double theta;

    static double tetrahedral_angle() { return std::acos(-1.0 / 3.0); }

    static RankOneConstructionParams defaults(Eigen::Index dim) {
        return {dim, tetrahedral_angle()};
    }
};

// The four states in the |j>,|k> subspace: |j> and the three states
// cos(t/2)|j> + e^{2 pi i (alpha-1)/3} sin(t/2)|k>.
inline std::array<PureState, 4> build_rank_one_states(const RankOneConstructionParams& params,
                                                      Eigen::Index j, Eigen::Index k) {
    const Eigen::Index d = params.dim;
    if (j < 0 || k < 0 || j >= d || k >= d || j == k) {
        throw IndexOutOfRange("subspace indices out of range or equal");
    }
    if (!(params.theta > 0.0 && params.theta < std::numbers::pi)) {
        throw InvalidParameter("theta must lie in (0, pi)");
    }
    const double c = std::cos(params.theta / 2.0);
    const double s = std::sin(params.theta / 2.0);
    std::array<PureState, 4> out{PureState::basis(d, j), PureState::basis(d, j),
                                 PureState::basis(d, j), PureState::basis(d, j)};
    for (int alpha = 1; alpha <= 3; ++alpha) {
        ComplexVector v = ComplexVector::Zero(d);
        v[j] = c;
        v[k] = s * std::exp(Complex(0.0, 2.0 * std::numbers::pi * (alpha - 1) / 3.0));
        out[static_cast<std::size_t>(alpha)] = {v, true};
    }
    return out;
}

// Coefficients for the 3D-2 construction. D = 2 is a special case:
// a = b = 1/2, which at the tetrahedral angle reproduces the tetrahedral
// POVM exactly. For D >= 3, a = sin^2(theta/2) and b = 1/3 make the frame
// operator G = I - cos^2(theta/2)|D-1><D-1|.
inline std::pair<double, double> rank_one_coefficients(const RankOneConstructionParams& params) {
    if (params.dim == 2) {
        return {0.5, 0.5};
    }
    const double s = std::sin(params.theta / 2.0);
    return {s * s, 1.0 / 3.0};
}

// Frame operator G = a|0><0| + b sum_{j,alpha} |psi_{j-1,j;alpha}><...|,
// summed numerically from the raw elements.
inline HermitianOperator rank_one_gram(const RankOneConstructionParams& params, double a,
                                       double b) {
    const Eigen::Index d = params.dim;
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    g(0, 0) = a;
    for (Eigen::Index j = 1; j < d; ++j) {
        const auto states = build_rank_one_states(params, j - 1, j);
        for (int alpha = 1; alpha <= 3; ++alpha) {
            const ComplexVector& v = states[static_cast<std::size_t>(alpha)].amplitudes;
            g += b * (v * v.adjoint());
        }
    }
    return HermitianOperator(g);
}

// Renormalization trick: F^c -> E^c = G^{-1/2} F^c G^{-1/2} with G = sum F^c.
// A singular G certifies the element set is not informationally complete.
inline std::pair<Povm, HermitianOperator> normalize_elements(
    const std::vector<HermitianOperator>& elements, std::vector<std::string> labels = {}) {
    if (elements.empty()) {
        throw InvalidPovm("need at least one element");
    }
    const Eigen::Index d = elements.front().dim();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& f : elements) {
        if (f.dim() != d) {
            throw DimensionMismatch("elements must share one dimension");
        }
        sum += f.matrix();
    }
    HermitianOperator gram(sum);
    HermitianOperator dressing = [&] {
        try {
            return inv_sqrt(gram);
        } catch (const SingularOperator&) {
            throw SingularFrame("frame operator G is singular: elements do not span");
        }
    }();
    std::vector<HermitianOperator> dressed;
    dressed.reserve(elements.size());
    for (const auto& f : elements) {
        dressed.emplace_back(dressing.matrix() * f.matrix() * dressing.matrix());
    }
    if (labels.empty()) {
        for (std::size_t c = 0; c < elements.size(); ++c) {
            labels.push_back("E" + std::to_string(c));
        }
    }
    return {Povm(std::move(dressed), std::move(labels)), gram};
}

// Rank-one PS I-complete POVM with 3D-2 elements: the dressed anchor
// a|0><0| and the dressed rank-one triples on consecutive subspaces.
// Labels E0 and j,alpha for j = 1..D-1, alpha = 1..3.
inline Povm build_rank_one_3dm2(const RankOneConstructionParams& params) {
    const Eigen::Index d = params.dim;
    if (d < 2) {
        throw InvalidParameter("construction requires dim >= 2");
    }
    if (!(params.theta > 0.0 && params.theta < std::numbers::pi)) {
        throw InvalidParameter("theta must lie in (0, pi)");
    }
    const auto [a, b] = rank_one_coefficients(params);

    std::vector<HermitianOperator> raw;
    std::vector<std::string> labels;
    ComplexMatrix anchor = ComplexMatrix::Zero(d, d);
    anchor(0, 0) = a;
    raw.emplace_back(anchor);
    labels.emplace_back("E0");
    for (Eigen::Index j = 1; j < d; ++j) {
        const auto states = build_rank_one_states(params, j - 1, j);
        for (int alpha = 1; alpha <= 3; ++alpha) {
            const ComplexVector& v = states[static_cast<std::size_t>(alpha)].amplitudes;
            raw.emplace_back(b * (v * v.adjoint()));
            labels.emplace_back(std::to_string(j) + "," + std::to_string(alpha));
        }
    }
    return normalize_elements(raw, std::move(labels)).first;
}

// Tetrahedral qubit SIC-POVM: a^c = b^c = 1/4 on the four tetrahedron
// vertices with apex at the north pole.
inline Povm build_tetrahedral() {
    const double r23 = 2.0 * std::sqrt(2.0) / 3.0;
    const double r2 = std::sqrt(2.0) / 3.0;
    const double r6 = std::sqrt(2.0 / 3.0);
    const std::array<BlochVector, 4> axes = {BlochVector{0.0, 0.0, 1.0},
                                             BlochVector{r23, 0.0, -1.0 / 3.0},
                                             BlochVector{-r2, r6, -1.0 / 3.0},
                                             BlochVector{-r2, -r6, -1.0 / 3.0}};
    std::vector<HermitianOperator> elements;
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < axes.size(); ++c) {
        elements.push_back(projector_of_bloch(axes[c], 0.25, 0.25));
        labels.push_back("E" + std::to_string(c + 1));
    }
    return Povm(std::move(elements), std::move(labels));
}

// Trine qubit measurement: three coplanar unit vectors at 120 degrees,
// a^c = b^c = 1/3. Not PS I-complete.
inline Povm build_trine() {
    const double h = std::sqrt(3.0) / 2.0;
    const std::array<BlochVector, 3> axes = {BlochVector{1.0, 0.0, 0.0},
                                             BlochVector{-0.5, h, 0.0},
                                             BlochVector{-0.5, -h, 0.0}};
    std::vector<HermitianOperator> elements;
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < axes.size(); ++c) {
        elements.push_back(projector_of_bloch(axes[c], 1.0 / 3.0, 1.0 / 3.0));
        labels.push_back("E" + std::to_string(c + 1));
    }
    return Povm(std::move(elements), std::move(labels));
}

// Amalgamated measurement in two complementary bases: (1/2)|e_c><e_c| and
// (1/2)|f_c><f_c| with f_k = (1/sqrt D) sum_j e^{2 pi i j k / D} e_j,
// j, k = 1..D.
inline Povm build_complementary_bases(Eigen::Index dim) {
    if (dim < 2) {
        throw InvalidParameter("complementary bases require dim >= 2");
    }
    std::vector<HermitianOperator> elements;
    std::vector<std::string> labels;
    for (Eigen::Index c = 1; c <= dim; ++c) {
        ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
        m(c - 1, c - 1) = 0.5;
        elements.emplace_back(m);
        labels.push_back("e," + std::to_string(c));
    }
    const double invsqrt = 1.0 / std::sqrt(static_cast<double>(dim));
    for (Eigen::Index k = 1; k <= dim; ++k) {
        ComplexVector f(dim);
        for (Eigen::Index j = 1; j <= dim; ++j) {
            f[j - 1] = invsqrt * std::exp(Complex(
                                     0.0, 2.0 * std::numbers::pi * static_cast<double>(j * k) /
                                              static_cast<double>(dim)));
        }
        elements.emplace_back(0.5 * (f * f.adjoint()));
        labels.push_back("f," + std::to_string(k));
    }
    return Povm(std::move(elements), std::move(labels));
}

// Merges the last element of each basis into one, dropping the redundant
// outcome: 2D elements become 2D-1.
inline Povm amalgamate_last_pair(const Povm& povm) {
    const Eigen::Index d = povm.dim();
    if (povm.size() != static_cast<std::size_t>(2 * d)) {
        throw InvalidParameter("expected the 2D-element complementary-bases POVM");
    }
    const std::size_t e_last = static_cast<std::size_t>(d - 1);
    const std::size_t f_last = static_cast<std::size_t>(2 * d - 1);
    std::vector<HermitianOperator> elements;
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < povm.size(); ++c) {
        if (c == e_last || c == f_last) continue;
        elements.push_back(povm.element(c));
        labels.push_back(povm.label(c));
    }
    elements.emplace_back(povm.element(e_last).matrix() + povm.element(f_last).matrix());
    labels.push_back("e+f," + std::to_string(d));
    return Povm(std::move(elements), std::move(labels));
}

}  // namespace pstomo
