#include <doctest.h>

#include <random>

#include "pstomo/linalg.hpp"
#include "pstomo/states.hpp"

using namespace pstomo;

namespace {

HermitianOperator random_hermitian(Eigen::Index d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            m(r, c) = Complex(g(rng), g(rng));
        }
    }
    return HermitianOperator(0.5 * (m + m.adjoint().eval()));
}

HermitianOperator random_posdef(Eigen::Index d, std::uint64_t seed) {
    // spectrum spread over [1e-3, 1e3], condition number 1e6
    const EigenDecomposition ed = eig_hermitian(random_hermitian(d, seed));
    RealVector lam(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        lam[i] = std::pow(10.0, -3.0 + 6.0 * static_cast<double>(i) /
                                            static_cast<double>(std::max<Eigen::Index>(d - 1, 1)));
    }
    return HermitianOperator(ed.eigenvectors * lam.asDiagonal() * ed.eigenvectors.adjoint());
}

ComplexMatrix diag2(double a, double b) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST_CASE("hermitian construction symmetrizes and rejects") {
    ComplexMatrix m(2, 2);
    m << Complex(1, 0), Complex(0, 1), Complex(0, -1), Complex(2, 0);
    CHECK_NOTHROW(HermitianOperator{m});

    m(0, 1) = Complex(0.5, 0);  // far from conjugate of m(1,0)
    CHECK_THROWS_AS(HermitianOperator{m}, NonHermitianInput);
}

TEST_CASE("eig_hermitian on known spectra") {
    SUBCASE("identity D=3") {
        const auto ed = eig_hermitian(HermitianOperator::identity(3));
        for (int i = 0; i < 3; ++i) CHECK(ed.eigenvalues[i] == doctest::Approx(1.0));
    }
    SUBCASE("diag(2,-1) sorts ascending") {
        const auto ed = eig_hermitian(HermitianOperator(diag2(2.0, -1.0)));
        CHECK(ed.eigenvalues[0] == doctest::Approx(-1.0));
        CHECK(ed.eigenvalues[1] == doctest::Approx(2.0));
        CHECK(std::abs(ed.eigenvectors(1, 0)) == doctest::Approx(1.0));
        CHECK(std::abs(ed.eigenvectors(0, 1)) == doctest::Approx(1.0));
    }
    SUBCASE("Pauli X") {
        ComplexMatrix x(2, 2);
        x << 0, 1, 1, 0;
        const auto ed = eig_hermitian(HermitianOperator(x));
        CHECK(ed.eigenvalues[0] == doctest::Approx(-1.0));
        CHECK(ed.eigenvalues[1] == doctest::Approx(1.0));
    }
}

TEST_CASE("eig recomposition property") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const auto h = random_hermitian(6, seed);
        const auto ed = eig_hermitian(h);
        const ComplexMatrix recomposed =
            ed.eigenvectors * ed.eigenvalues.asDiagonal() * ed.eigenvectors.adjoint();
        CHECK(frobenius_distance(recomposed, h.matrix()) < 1e-10 * h.matrix().norm());
        CHECK(frobenius_distance(ed.eigenvectors.adjoint() * ed.eigenvectors,
                                 ComplexMatrix::Identity(6, 6)) < 1e-10);
    }
}

TEST_CASE("inv_sqrt") {
    SUBCASE("identity") {
        const auto r = inv_sqrt(HermitianOperator::identity(4));
        CHECK(frobenius_distance(r.matrix(), ComplexMatrix::Identity(4, 4)) < 1e-12);
    }
    SUBCASE("diag(4,1)") {
        const auto r = inv_sqrt(HermitianOperator(diag2(4.0, 1.0)));
        CHECK(r.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.matrix()(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("G from the 3D-2 frame operator, diagonal case") {
        // I - (1/3)|2><2| in D=3 has inverse square root diag(1, 1, sqrt(3/2))
        ComplexMatrix g = ComplexMatrix::Identity(3, 3);
        g(2, 2) = 2.0 / 3.0;
        const auto r = inv_sqrt(HermitianOperator(g));
        CHECK(r.matrix()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.matrix()(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.matrix()(2, 2).real() == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
    }
    SUBCASE("singular input rejected") {
        CHECK_THROWS_AS(inv_sqrt(HermitianOperator(diag2(1.0, 0.0))), SingularOperator);
    }
    SUBCASE("R H R = I for conditioned random positive H") {
        for (std::uint64_t seed : {11u, 12u, 13u}) {
            const auto h = random_posdef(5, seed);
            const auto r = inv_sqrt(h);
            CHECK(frobenius_distance(r.matrix() * h.matrix() * r.matrix(),
                                     ComplexMatrix::Identity(5, 5)) < 1e-9);
        }
    }
}

TEST_CASE("sqrt_psd") {
    SUBCASE("identity") {
        const auto r = sqrt_psd(HermitianOperator::identity(3));
        CHECK(frobenius_distance(r.matrix(), ComplexMatrix::Identity(3, 3)) < 1e-12);
    }
    SUBCASE("diag(9,0)") {
        const auto r = sqrt_psd(HermitianOperator(diag2(9.0, 0.0)));
        CHECK(r.matrix()(0, 0).real() == doctest::Approx(3.0));
        CHECK(std::abs(r.matrix()(1, 1)) < 1e-12);
    }
    SUBCASE("squaring inv_sqrt recovers the inverse, A = diag(2,3)") {
        const auto r = inv_sqrt(HermitianOperator(diag2(2.0, 3.0)));
        const ComplexMatrix inv = r.matrix() * r.matrix();
        CHECK(inv(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(inv(1, 1).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("indefinite rejected") {
        CHECK_THROWS_AS(sqrt_psd(HermitianOperator(diag2(1.0, -1.0))), IndefiniteOperator);
    }
}

TEST_CASE("expectation values") {
    const PureState zero = PureState::basis(2, 0);
    const PureState one = PureState::basis(2, 1);
    ComplexVector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);

    CHECK(expectation(HermitianOperator::identity(2), zero) == doctest::Approx(1.0));

    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    CHECK(expectation(HermitianOperator(p0), one) == doctest::Approx(0.0));

    ComplexMatrix z(2, 2);
    z << 1, 0, 0, -1;
    CHECK(expectation(HermitianOperator(z), {plus, true}) == doctest::Approx(0.0));

    CHECK_THROWS_AS(expectation(HermitianOperator::identity(3), zero), DimensionMismatch);
}

TEST_CASE("expectation is linear in the operator") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int rep = 0; rep < 20; ++rep) {
        const auto A = random_hermitian(4, 100 + rep);
        const auto B = random_hermitian(4, 200 + rep);
        const PureState psi = random_pure_state(4, 300 + rep);
        const double alpha = u(rng), beta = u(rng);
        const HermitianOperator combo(alpha * A.matrix() + beta * B.matrix());
        const double lhs = expectation(combo, psi);
        const double rhs = alpha * expectation(A, psi) + beta * expectation(B, psi);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}
