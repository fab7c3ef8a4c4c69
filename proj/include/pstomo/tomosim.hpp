#pragma once

// Finite-sample tomography: multinomial sampling of POVM outcomes,
// frequency-based reconstruction with an optional basis premeasurement, and
// shot-count efficiency sweeps.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "pstomo/analysis.hpp"
#include "pstomo/reconstruction.hpp"

namespace pstomo {

// Multinomial draw by per-shot inverse CDF on a mt19937_64 stream.
// Deterministic per seed.
inline std::vector<long> sample_counts(const Povm& povm, const PureState& state,
                                       long shots, std::uint64_t seed) {
    const OutcomeDistribution dist = probabilities(povm, state);
    const Eigen::Index n = dist.values.size();
    RealVector cdf(n);
    double acc = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        acc += std::max(dist.values[c], 0.0);
        cdf[c] = acc;
    }
    std::mt19937_64 rng(seed);
    std::vector<long> counts(static_cast<std::size_t>(n), 0);
    for (long s = 0; s < shots; ++s) {
        const double u = acc * ((rng() >> 11) * 0x1.0p-53);
        Eigen::Index lo = 0, hi = n - 1;
        while (lo < hi) {
            const Eigen::Index mid = (lo + hi) / 2;
            if (cdf[mid] < u) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        ++counts[static_cast<std::size_t>(lo)];
    }
    return counts;
}

enum class PovmFamily { Psic2D, RankOne3Dm2 };

struct TomographyRun {
    std::string povm_id;
    PureState true_state;
    long shots = 0;
    std::vector<long> counts;
    ReconstructionReport estimate;
    double infidelity = 1.0;
    std::uint64_t seed = 0;
    Eigen::Index anchor_index = 0;  // basis index chosen by the premeasurement
};

namespace detail {

inline OutcomeDistribution basis_frequencies(const PureState& state, long shots,
                                             std::uint64_t seed) {
    const Eigen::Index d = state.dim();
    RealVector p(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        p[j] = std::norm(state.amplitudes[j]);
    }
    std::mt19937_64 rng(seed);
    RealVector cdf(d);
    double acc = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
        acc += p[j];
        cdf[j] = acc;
    }
    RealVector freqs = RealVector::Zero(d);
    for (long s = 0; s < shots; ++s) {
        const double u = acc * ((rng() >> 11) * 0x1.0p-53);
        Eigen::Index j = 0;
        while (j < d - 1 && cdf[j] < u) ++j;
        freqs[j] += 1.0 / static_cast<double>(shots);
    }
    return {freqs, true};
}

inline ComplexVector swap_entries(const ComplexVector& v, Eigen::Index i, Eigen::Index j) {
    ComplexVector out = v;
    std::swap(out[i], out[j]);
    return out;
}

}  // namespace detail

// One simulated tomography experiment. The basis premeasurement picks the
// largest-frequency outcome to play the role of |0>, sidestepping the
// anchor failure set. Inversion failures triggered by sampling noise are
// recorded on the report, not thrown.
inline TomographyRun run_tomography(PovmFamily family, const TwoDConstructionParams& twod,
                                    const RankOneConstructionParams& rank1,
                                    const PureState& state, long shots, std::uint64_t seed,
                                    bool premeasure = true, long premeasure_shots = 100,
                                    bool exact_probs = false) {
    TomographyRun run;
    run.true_state = state;
    run.shots = shots;
    run.seed = seed;

    Eigen::Index anchor = 0;
    if (premeasure) {
        const OutcomeDistribution freqs =
            detail::basis_frequencies(state, premeasure_shots, detail::mix_seed(seed, 0));
        anchor = premeasure_basis_choice(freqs);
    }
    run.anchor_index = anchor;
    const PureState working = {detail::swap_entries(state.amplitudes, 0, anchor),
                               state.normalized};

    const Povm povm = family == PovmFamily::Psic2D ? build_psic_2d(twod)
                                                   : build_rank_one_3dm2(rank1);
    run.povm_id = family == PovmFamily::Psic2D ? "psic2d" : "rank1-3dm2";

    OutcomeDistribution est_probs = probabilities(povm, working);
    if (!exact_probs) {
        run.counts = sample_counts(povm, working, shots, detail::mix_seed(seed, 1));
        for (std::size_t c = 0; c < run.counts.size(); ++c) {
            est_probs.values[static_cast<Eigen::Index>(c)] =
                static_cast<double>(run.counts[c]) / static_cast<double>(shots);
        }
    }
    run.estimate = family == PovmFamily::Psic2D
                       ? invert_psic_2d(est_probs, twod, &povm)
                       : invert_rank_one_3dm2(est_probs, rank1, &povm);
    if (run.estimate.ok()) {
        const PureState recovered = {
            detail::swap_entries(run.estimate.state.amplitudes, 0, anchor),
            run.estimate.state.normalized};
        run.estimate.state = recovered;
        run.infidelity = std::clamp(1.0 - fidelity(state, recovered), 0.0, 1.0);
    } else {
        run.infidelity = 1.0;
    }
    return run;
}

struct SweepRow {
    long shots = 0;
    double median_infidelity = 0.0;
    double iqr_low = 0.0;
    double iqr_high = 0.0;
    int failures = 0;
};

namespace detail {

inline double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

}  // namespace detail

// Median/IQR infidelity per shot count over seeded Haar states. Failed
// inversions enter the statistics as infidelity 1.
inline std::vector<SweepRow> efficiency_sweep(PovmFamily family, Eigen::Index dim,
                                              const std::vector<long>& shot_grid,
                                              const std::vector<std::uint64_t>& seeds,
                                              double theta = RankOneConstructionParams::tetrahedral_angle()) {
    const TwoDConstructionParams twod = TwoDConstructionParams::defaults(dim);
    const RankOneConstructionParams rank1{dim, theta};
    std::vector<SweepRow> table;
    for (long shots : shot_grid) {
        std::vector<double> infids;
        int failures = 0;
        for (std::uint64_t seed : seeds) {
            const PureState psi = random_pure_state(dim, detail::mix_seed(seed, 17));
            const TomographyRun run =
                run_tomography(family, twod, rank1, psi, shots, seed);
            infids.push_back(run.infidelity);
            if (!run.estimate.ok()) ++failures;
        }
        if (infids.empty()) continue;
        SweepRow row;
        row.shots = shots;
        row.median_infidelity = detail::quantile(infids, 0.5);
        row.iqr_low = detail::quantile(infids, 0.25);
        row.iqr_high = detail::quantile(infids, 0.75);
        row.failures = failures;
        table.push_back(row);
    }
    return table;
}

}  // namespace pstomo
