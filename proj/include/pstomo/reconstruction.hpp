#pragma once

// Closed-form inversion of outcome probabilities for the two PS I-complete
// constructions. Failures on the measure-zero sets (vanishing anchor
// amplitude, broken amplitude chain) are reported, never silently bridged.

#include <cmath>
#include <limits>
#include <optional>

#include "pstomo/constructions.hpp"

namespace pstomo {

inline constexpr double kAnchorTol = 1e-12;
inline constexpr double kChainTol = 1e-12;

enum class FailureKind { ZeroAnchorAmplitude, ChainBroken, NegativeRadicand };

struct ReconstructionFailure {
    FailureKind kind;
    // Chain step j whose predecessor amplitude vanished (ChainBroken only).
    int chain_index = -1;
};

struct ReconstructionReport {
    PureState state;
    double residual = std::numeric_limits<double>::infinity();
    std::optional<ReconstructionFailure> failure;

    bool ok() const { return !failure.has_value(); }
};

namespace detail {

inline double max_prob_gap(const Povm& povm, const PureState& state,
                           const RealVector& input) {
    const OutcomeDistribution predicted = probabilities(povm, state);
    return (predicted.values - input).cwiseAbs().maxCoeff();
}

inline ReconstructionReport fail_report(Eigen::Index dim, FailureKind kind,
                                        int chain_index = -1) {
    ReconstructionReport report;
    report.state = {ComplexVector::Zero(dim), false};
    report.failure = ReconstructionFailure{kind, chain_index};
    return report;
}

}  // namespace detail

// Inversion of the 2D-element construction: r_0 = sqrt(p^0/a), then
// x_j = (p^{x,j} - b)/(2 b r_0) and y_j = (p^{y,j} - b)/(2 b r_0).
// Assumes probabilities of a normalized state.
inline ReconstructionReport invert_psic_2d(const OutcomeDistribution& probs,
                                           const TwoDConstructionParams& params,
                                           const Povm* povm_for_residual = nullptr) {
    const Eigen::Index d = params.dim;
    if (probs.values.size() != 2 * d) {
        throw DimensionMismatch("probability vector does not match the 2D construction");
    }
    const double p0 = probs.values[0];
    if (p0 < -kAnchorTol) {
        return detail::fail_report(d, FailureKind::NegativeRadicand);
    }
    if (p0 < kAnchorTol) {
        return detail::fail_report(d, FailureKind::ZeroAnchorAmplitude);
    }
    const double r0 = std::sqrt(p0 / params.a);
    ComplexVector psi(d);
    psi[0] = r0;
    for (Eigen::Index j = 1; j < d; ++j) {
        const double xj = (probs.values[j] - params.b) / (2.0 * params.b * r0);
        const double yj = (probs.values[d - 1 + j] - params.b) / (2.0 * params.b * r0);
        psi[j] = Complex(xj, yj);
    }
    ReconstructionReport report;
    report.state = gauge_fix(PureState::from_amplitudes(psi));
    if (povm_for_residual != nullptr) {
        report.residual = detail::max_prob_gap(*povm_for_residual, report.state, probs.values);
    } else {
        report.residual = detail::max_prob_gap(build_psic_2d(params), report.state, probs.values);
    }
    return report;
}

// Inversion of the rank-one 3D-2 construction. The dressed probabilities on
// psi equal the raw-element probabilities on phi = G^{-1/2} psi, so phi is
// recovered first: phi_0 from the anchor, then each phi_j from the triple of
// probabilities on the (j-1, j) subspace, and finally psi = G^{1/2} phi,
// rescaled to unit norm.
inline ReconstructionReport invert_rank_one_3dm2(const OutcomeDistribution& probs,
                                                 const RankOneConstructionParams& params,
                                                 const Povm* povm_for_residual = nullptr) {
    const Eigen::Index d = params.dim;
    if (probs.values.size() != 3 * d - 2) {
        throw DimensionMismatch("probability vector does not match the 3D-2 construction");
    }
    const auto [a, b] = rank_one_coefficients(params);
    const double ct = std::cos(params.theta / 2.0);
    const double st = std::sin(params.theta / 2.0);
    const double c2 = ct * ct;
    const double s2 = st * st;
    const double sin_theta = 2.0 * st * ct;

    const double p0 = probs.values[0];
    if (p0 < -kAnchorTol) {
        return detail::fail_report(d, FailureKind::NegativeRadicand);
    }
    if (p0 < kAnchorTol) {
        return detail::fail_report(d, FailureKind::ZeroAnchorAmplitude);
    }

    ComplexVector phi(d);
    phi[0] = std::sqrt(p0 / a);
    RealVector mod2(d);
    mod2[0] = p0 / a;
    for (Eigen::Index j = 1; j < d; ++j) {
        const double p1 = probs.values[1 + 3 * (j - 1)];
        const double p2 = probs.values[2 + 3 * (j - 1)];
        const double p3 = probs.values[3 + 3 * (j - 1)];
        const double sum = (p1 + p2 + p3) / b;
        double mj = (sum / 3.0 - c2 * mod2[j - 1]) / s2;
        if (mj < -1e-9) {
            return detail::fail_report(d, FailureKind::NegativeRadicand);
        }
        mj = std::max(mj, 0.0);
        mod2[j] = mj;
        if (j >= 2 && mod2[j - 1] < kChainTol) {
            // |phi_{j-1}| = 0 blocks the phase of phi_j even when its
            // modulus is determined.
            return detail::fail_report(d, FailureKind::ChainBroken, static_cast<int>(j));
        }
        const double q1 = p1 / b - c2 * mod2[j - 1] - s2 * mj;
        const double q2 = p2 / b - c2 * mod2[j - 1] - s2 * mj;
        const double q3 = p3 / b - c2 * mod2[j - 1] - s2 * mj;
        // z = conj(phi_{j-1}) phi_j from the alpha-differences.
        const Complex z(q1 / sin_theta, (q2 - q3) / (std::sqrt(3.0) * sin_theta));
        phi[j] = z * phi[j - 1] / mod2[j - 1];
    }

    const HermitianOperator gram = rank_one_gram(params, a, b);
    ComplexVector psi = sqrt_psd(gram).matrix() * phi;
    const double nrm = psi.norm();
    if (nrm < kZeroAmpTol) {
        return detail::fail_report(d, FailureKind::ZeroAnchorAmplitude);
    }
    psi /= nrm;
    ReconstructionReport report;
    report.state = gauge_fix({psi, true});
    if (povm_for_residual != nullptr) {
        report.residual = detail::max_prob_gap(*povm_for_residual, report.state, probs.values);
    } else {
        report.residual =
            detail::max_prob_gap(build_rank_one_3dm2(params), report.state, probs.values);
    }
    return report;
}

// Index of the largest basis-measurement frequency; ties resolve to the
// lowest index. The chosen outcome plays the role of |0> in a subsequent
// construction/inversion pair.
inline Eigen::Index premeasure_basis_choice(const OutcomeDistribution& freqs) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < freqs.values.size(); ++j) {
        if (freqs.values[j] > freqs.values[best]) best = j;
    }
    return best;
}

}  // namespace pstomo
