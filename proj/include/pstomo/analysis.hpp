#pragma once

// Informational-completeness analysis: frame rank of a POVM over the D^2
// dimensional real space of Hermitian operators, Monte Carlo certification
// of pure-state completeness, and an ambiguity search that produces witness
// state pairs for POVMs with too few outcomes.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>

#include "pstomo/povm.hpp"
#include "pstomo/states.hpp"

namespace pstomo {

struct FrameReport {
    int frame_rank = 0;
    int dim_hermitian = 0;
    bool is_ic = false;
    RealVector singular_values;  // descending
};

namespace detail {

// Coefficients of a Hermitian operator over an orthonormal real basis of
// Hermitian space: the D diagonal projectors plus the sqrt(2)-normalized
// symmetric and antisymmetric off-diagonal pairs.
inline RealVector hermitian_coefficients(const HermitianOperator& op) {
    const Eigen::Index d = op.dim();
    const ComplexMatrix& m = op.matrix();
    RealVector coeffs(d * d);
    Eigen::Index idx = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
        coeffs[idx++] = m(j, j).real();
    }
    const double r2 = std::numbers::sqrt2;
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = j + 1; k < d; ++k) {
            coeffs[idx++] = r2 * m(j, k).real();
            coeffs[idx++] = -r2 * m(j, k).imag();
        }
    }
    return coeffs;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 of seed + golden-ratio stride, decorrelates per-trial streams
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

inline FrameReport frame_rank(const Povm& povm, double tol = 1e-10) {
    const Eigen::Index d = povm.dim();
    const Eigen::Index n = static_cast<Eigen::Index>(povm.size());
    Eigen::MatrixXd coeff(n, d * d);
    for (Eigen::Index c = 0; c < n; ++c) {
        coeff.row(c) = detail::hermitian_coefficients(povm.element(c)).transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(coeff);
    FrameReport report;
    report.dim_hermitian = static_cast<int>(d * d);
    report.singular_values = svd.singularValues();
    const double top = report.singular_values[0];
    for (Eigen::Index i = 0; i < report.singular_values.size(); ++i) {
        if (report.singular_values[i] > tol * top) ++report.frame_rank;
    }
    report.is_ic = report.frame_rank == report.dim_hermitian;
    return report;
}

struct CertificationStats {
    int trials = 0;
    int successes = 0;          // fidelity >= 1 - 1e-9
    int declared_failures = 0;  // inverter reported a failure flag
    int silent_failures = 0;    // no flag, fidelity below threshold
    double worst_residual = 0.0;

    bool passed() const {
        return successes + declared_failures == trials &&
               declared_failures <= trials / 100;
    }
};

// Draws Haar states, runs forward probabilities through the supplied
// inverter, and tallies round-trip outcomes. The inverter returns the
// recovered state, its residual, and whether it declared a failure.
struct InversionOutcome {
    PureState state;
    double residual = 0.0;
    bool declared_failure = false;
};
using Inverter = std::function<InversionOutcome(const OutcomeDistribution&)>;

inline CertificationStats certify_psic(const Povm& povm, const Inverter& inverter,
                                       int trials, std::uint64_t seed) {
    CertificationStats stats;
    stats.trials = trials;
    for (int t = 0; t < trials; ++t) {
        const PureState psi = random_pure_state(povm.dim(), detail::mix_seed(seed, t));
        const OutcomeDistribution probs = probabilities(povm, psi);
        const InversionOutcome out = inverter(probs);
        if (out.declared_failure) {
            ++stats.declared_failures;
            continue;
        }
        stats.worst_residual = std::max(stats.worst_residual, out.residual);
        if (fidelity(psi, out.state) >= 1.0 - 1e-9) {
            ++stats.successes;
        } else {
            ++stats.silent_failures;
        }
    }
    return stats;
}

struct AmbiguityWitness {
    PureState state_a;
    PureState state_b;
    double prob_gap = 0.0;
    double infidelity = 0.0;
};

namespace detail {

struct AmbiguitySearchState {
    ComplexVector psi;
    double objective = 0.0;
};

// Objective: sum of squared probability residuals against the target, plus
// a repulsion penalty that switches on above fidelity 0.99 so the search
// does not fall back onto the target itself.
inline constexpr double kRepulsionThreshold = 0.99;
inline constexpr double kRepulsionWeight = 100.0;

// The polish may approach the target closer than the repulsion threshold —
// witnesses only need infidelity >= 1e-3 — but must not collapse onto it.
inline constexpr double kWitnessMaxFidelity = 1.0 - 1e-3;

inline double ambiguity_objective(const Povm& povm, const RealVector& target_probs,
                                  const ComplexVector& target, const ComplexVector& psi,
                                  RealVector* residuals = nullptr) {
    double f = 0.0;
    RealVector r(povm.size());
    for (std::size_t c = 0; c < povm.size(); ++c) {
        r[c] = expectation_raw(povm.element(c), psi) - target_probs[c];
        f += r[c] * r[c];
    }
    const double overlap = std::norm(target.dot(psi));
    const double excess = std::max(0.0, overlap - kRepulsionThreshold);
    f += kRepulsionWeight * excess * excess;
    if (residuals != nullptr) *residuals = r;
    return f;
}

// d f / d psi*  (real objective, Wirtinger convention).
inline ComplexVector ambiguity_gradient(const Povm& povm, const RealVector& target_probs,
                                        const ComplexVector& target,
                                        const ComplexVector& psi) {
    ComplexVector g = ComplexVector::Zero(psi.size());
    for (std::size_t c = 0; c < povm.size(); ++c) {
        const double r = expectation_raw(povm.element(c), psi) - target_probs[c];
        g += 2.0 * r * (povm.element(c).matrix() * psi);
    }
    const Complex ip = target.dot(psi);
    const double excess = std::max(0.0, std::norm(ip) - kRepulsionThreshold);
    if (excess > 0.0) {
        g += 2.0 * kRepulsionWeight * excess * (target * ip);
    }
    return g;
}

// Gauss-Newton polish on the probability residuals, over the 2D real
// coordinates of psi, with renormalization after each step. Only used once
// the repulsion penalty is inactive.
inline void gauss_newton_polish(const Povm& povm, const RealVector& target_probs,
                                const ComplexVector& target, ComplexVector& psi,
                                int max_iters) {
    const Eigen::Index d = psi.size();
    const Eigen::Index n = static_cast<Eigen::Index>(povm.size());
    double lambda = 1e-12;
    for (int it = 0; it < max_iters; ++it) {
        RealVector r(n);
        Eigen::MatrixXd jac(n, 2 * d);
        for (Eigen::Index c = 0; c < n; ++c) {
            r[c] = expectation_raw(povm.element(c), psi) - target_probs[c];
            const ComplexVector ep = povm.element(c).matrix() * psi;
            jac.row(c).head(d) = 2.0 * ep.real().transpose();
            jac.row(c).tail(d) = 2.0 * ep.imag().transpose();
        }
        const double f0 = r.squaredNorm();
        if (f0 < 1e-30) return;
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const RealVector jtr = jac.transpose() * r;
        bool stepped = false;
        for (int attempt = 0; attempt < 8; ++attempt) {
            Eigen::MatrixXd damped = jtj;
            damped.diagonal().array() += lambda;
            const RealVector delta = damped.ldlt().solve(-jtr);
            ComplexVector cand = psi;
            for (Eigen::Index i = 0; i < d; ++i) {
                cand[i] += Complex(delta[i], delta[d + i]);
            }
            cand /= cand.norm();
            if (std::norm(target.dot(cand)) > kWitnessMaxFidelity) break;
            RealVector rc(n);
            double f1 = 0.0;
            for (Eigen::Index c = 0; c < n; ++c) {
                rc[c] = expectation_raw(povm.element(c), cand) - target_probs[c];
                f1 += rc[c] * rc[c];
            }
            if (f1 < f0) {
                psi = cand;
                lambda = std::max(lambda * 0.25, 1e-14);
                stepped = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) return;
    }
}

}  // namespace detail

// Multi-start descent over normalized states searching for a state distinct
// from the target (infidelity >= 1e-3) with the same outcome probabilities
// (max gap <= 1e-8). Finding nothing does not prove uniqueness.
inline std::optional<AmbiguityWitness> find_ambiguity(const Povm& povm,
                                                      const PureState& target,
                                                      int restarts, std::uint64_t seed) {
    const Eigen::Index d = povm.dim();
    if (target.dim() != d) {
        throw DimensionMismatch("target dimension does not match the POVM");
    }
    ComplexVector t = target.amplitudes;
    t /= t.norm();
    const RealVector target_probs = probabilities(povm, {t, true}).values;

    for (int restart = 0; restart < restarts; ++restart) {
        ComplexVector psi =
            random_pure_state(d, detail::mix_seed(seed, restart)).amplitudes;
        double f = detail::ambiguity_objective(povm, target_probs, t, psi);
        // Projected gradient descent with backtracking line search.
        for (int it = 0; it < 2000; ++it) {
            const ComplexVector g = detail::ambiguity_gradient(povm, target_probs, t, psi);
            const double gnorm = g.norm();
            if (gnorm < 1e-10) break;
            double step = 1.0;
            bool moved = false;
            for (int bt = 0; bt < 40; ++bt) {
                ComplexVector cand = psi - step * g;
                cand /= cand.norm();
                const double fc = detail::ambiguity_objective(povm, target_probs, t, cand);
                if (fc < f - 1e-4 * step * gnorm * gnorm) {
                    psi = cand;
                    f = fc;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }
        if (std::norm(t.dot(psi)) <= detail::kWitnessMaxFidelity) {
            detail::gauss_newton_polish(povm, target_probs, t, psi, 100);
        }
        RealVector residuals;
        detail::ambiguity_objective(povm, target_probs, t, psi, &residuals);
        const double gap = residuals.cwiseAbs().maxCoeff();
        const double infid = 1.0 - std::norm(t.dot(psi));
        if (gap <= 1e-8 && infid >= 1e-3) {
            AmbiguityWitness w;
            w.state_a = gauge_fix({t, true});
            w.state_b = gauge_fix({psi, true});
            w.prob_gap = gap;
            w.infidelity = infid;
            return w;
        }
    }
    return std::nullopt;
}

// Closed-form trine witness: flipping the z-component of the Bloch vector
// leaves all trine probabilities unchanged.
inline PureState trine_reflection(const PureState& state) {
    BlochVector m = bloch_of_state(state);
    m.z = -m.z;
    return state_of_bloch(m);
}

}  // namespace pstomo
