#pragma once

// Pure states with explicit normalization status and a canonical global-phase
// gauge: first nonzero amplitude real and strictly positive.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "pstomo/linalg.hpp"

namespace pstomo {

inline constexpr double kNormTol = 1e-10;
inline constexpr double kZeroAmpTol = 1e-12;

struct PureState {
    ComplexVector amplitudes;
    bool normalized = false;

    Eigen::Index dim() const { return amplitudes.size(); }
    double norm2() const { return amplitudes.squaredNorm(); }

    static PureState basis(Eigen::Index dim, Eigen::Index j) {
        ComplexVector v = ComplexVector::Zero(dim);
        v[j] = 1.0;
        return {v, true};
    }

    static PureState from_amplitudes(ComplexVector amps) {
        const double n2 = amps.squaredNorm();
        return {std::move(amps), std::abs(n2 - 1.0) <= kNormTol};
    }
};

inline double expectation(const HermitianOperator& op, const PureState& state) {
    return expectation_raw(op, state.amplitudes);
}

// Rotates away the global phase so the first amplitude above kZeroAmpTol is
// real-positive.
inline PureState gauge_fix(const PureState& state) {
    Eigen::Index anchor = -1;
    for (Eigen::Index j = 0; j < state.dim(); ++j) {
        if (std::abs(state.amplitudes[j]) > kZeroAmpTol) {
            anchor = j;
            break;
        }
    }
    if (anchor < 0) {
        throw ZeroVector("cannot gauge-fix the zero vector");
    }
    const Complex a = state.amplitudes[anchor];
    const Complex phase = std::conj(a) / std::abs(a);
    return {phase * state.amplitudes, state.normalized};
}

inline double fidelity(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("states have different dimensions");
    }
    const double na = a.norm2();
    const double nb = b.norm2();
    if (na < kZeroAmpTol * kZeroAmpTol || nb < kZeroAmpTol * kZeroAmpTol) {
        throw ZeroVector("fidelity of a zero vector is undefined");
    }
    return std::norm(a.amplitudes.dot(b.amplitudes)) / (na * nb);
}

// Haar-random normalized state: i.i.d. standard complex Gaussian amplitudes,
// normalized, gauge-fixed. Deterministic for a fixed seed.
inline PureState random_pure_state(Eigen::Index dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v[j] = Complex(re, im);
    }
    v /= v.norm();
    return gauge_fix({v, true});
}

struct BlochVector {
    double x = 0.0, y = 0.0, z = 0.0;

    double length() const { return std::sqrt(x * x + y * y + z * z); }
};

inline BlochVector bloch_of_state(const PureState& state) {
    if (state.dim() != 2) {
        throw DimensionMismatch("Bloch representation requires dim 2");
    }
    ComplexVector v = state.amplitudes;
    v /= v.norm();
    const Complex c0 = v[0], c1 = v[1];
    const Complex cross = std::conj(c0) * c1;
    return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(c0) - std::norm(c1)};
}

inline PureState state_of_bloch(const BlochVector& m) {
    if (std::abs(m.length() - 1.0) > kNormTol) {
        throw NonUnitBloch("pure states require a unit Bloch vector");
    }
    const double theta = std::acos(std::clamp(m.z, -1.0, 1.0));
    const double phi = std::atan2(m.y, m.x);
    ComplexVector v(2);
    v[0] = std::cos(theta / 2.0);
    v[1] = std::sin(theta / 2.0) * std::exp(Complex(0.0, phi));
    return gauge_fix({v, true});
}

// (I + m.sigma)/2, valid for any |m| <= 1.
inline HermitianOperator projector_of_bloch(const BlochVector& m, double a = 0.5,
                                            double b = 0.5) {
    ComplexMatrix e(2, 2);
    e(0, 0) = a + b * m.z;
    e(1, 1) = a - b * m.z;
    e(0, 1) = b * Complex(m.x, -m.y);
    e(1, 0) = b * Complex(m.x, m.y);
    return HermitianOperator(e);
}

}  // namespace pstomo
