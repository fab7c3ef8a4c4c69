#pragma once

// Dense complex Hermitian linear algebra kernel. Every matrix function in the
// library (inverse square root, PSD square root, positivity checks) goes
// through the single eigendecomposition below.

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "pstomo/errors.hpp"

namespace pstomo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kEigFloor = 1e-10;

// Hermitian D x D operator. Construction symmetrizes (H + H^dag)/2 when the
// asymmetry is below kHermTol relative to the largest entry, and rejects
// anything worse.
class HermitianOperator {
  public:
    explicit HermitianOperator(const ComplexMatrix& m) {
        if (m.rows() != m.cols()) {
            throw NonHermitianInput("operator matrix must be square");
        }
        const double scale = m.cwiseAbs().maxCoeff();
        const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (scale > 0.0 && asym > kHermTol * scale) {
            throw NonHermitianInput("matrix is not Hermitian within tolerance");
        }
        mat_ = 0.5 * (m + m.adjoint().eval());
    }

    Eigen::Index dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }

    static HermitianOperator identity(Eigen::Index dim) {
        return HermitianOperator(ComplexMatrix::Identity(dim, dim));
    }

    HermitianOperator operator+(const HermitianOperator& o) const {
        return HermitianOperator(mat_ + o.mat_);
    }
    HermitianOperator operator-(const HermitianOperator& o) const {
        return HermitianOperator(mat_ - o.mat_);
    }
    HermitianOperator operator*(double s) const { return HermitianOperator(s * mat_); }

  private:
    ComplexMatrix mat_;
};

inline HermitianOperator operator*(double s, const HermitianOperator& op) { return op * s; }

// Eigenvalues ascending, eigenvector columns orthonormal.
struct EigenDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

inline EigenDecomposition eig_hermitian(const HermitianOperator& op) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// Applies f to the spectrum: V f(diag) V^dag.
template <typename Fn>
HermitianOperator spectral_map(const HermitianOperator& op, Fn&& f) {
    const EigenDecomposition ed = eig_hermitian(op);
    RealVector mapped = ed.eigenvalues;
    for (Eigen::Index i = 0; i < mapped.size(); ++i) {
        mapped[i] = f(mapped[i]);
    }
    return HermitianOperator(ed.eigenvectors * mapped.asDiagonal() *
                             ed.eigenvectors.adjoint());
}

// G^{-1/2}. A spectrum touching the floor means the element set cannot be
// renormalized into a POVM, reported as SingularOperator.
inline HermitianOperator inv_sqrt(const HermitianOperator& op, double floor = kEigFloor) {
    const EigenDecomposition ed = eig_hermitian(op);
    if (ed.eigenvalues.minCoeff() <= floor) {
        throw SingularOperator("operator has eigenvalue below invertibility floor");
    }
    RealVector mapped = ed.eigenvalues.array().rsqrt();
    return HermitianOperator(ed.eigenvectors * mapped.asDiagonal() *
                             ed.eigenvectors.adjoint());
}

inline HermitianOperator sqrt_psd(const HermitianOperator& op) {
    const EigenDecomposition ed = eig_hermitian(op);
    if (ed.eigenvalues.minCoeff() < -kEigFloor) {
        throw IndefiniteOperator("operator has a negative eigenvalue");
    }
    RealVector mapped = ed.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    return HermitianOperator(ed.eigenvectors * mapped.asDiagonal() *
                             ed.eigenvectors.adjoint());
}

inline double min_eigenvalue(const HermitianOperator& op) {
    return eig_hermitian(op).eigenvalues.minCoeff();
}

// Count of eigenvalues above a relative cutoff.
inline int operator_rank(const HermitianOperator& op, double rel_tol = 1e-8) {
    const EigenDecomposition ed = eig_hermitian(op);
    const double cutoff = rel_tol * ed.eigenvalues.cwiseAbs().maxCoeff();
    int r = 0;
    for (Eigen::Index i = 0; i < ed.eigenvalues.size(); ++i) {
        if (ed.eigenvalues[i] > cutoff) ++r;
    }
    return r;
}

// <psi|E|psi> for a raw amplitude vector. The imaginary residue of the
// quadratic form is checked against roundoff scale and discarded.
inline double expectation_raw(const HermitianOperator& op, const ComplexVector& psi) {
    if (psi.size() != op.dim()) {
        throw DimensionMismatch("state and operator dimensions differ");
    }
    const Complex q = psi.dot(op.matrix() * psi);
    const double norm2 = psi.squaredNorm();
    const double op_scale = op.matrix().cwiseAbs().maxCoeff();
    if (std::abs(q.imag()) > 1e-12 * std::max(1.0, norm2 * op_scale)) {
        throw std::runtime_error("quadratic form has non-negligible imaginary part");
    }
    return q.real();
}

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).norm();
}

}  // namespace pstomo
