#include "doctest.h"

#include <cmath>
#include <complex>

#include "sykmagic/eigensolve.hpp"
#include "sykmagic/hamiltonians.hpp"
#include "sykmagic/rng.hpp"

using namespace sykmagic;
using cplx = std::complex<double>;

namespace {

Eigen::MatrixXcd random_hermitian(Eigen::Index d, Rng& rng) {
    Eigen::MatrixXcd a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx{rng.gaussian(), rng.gaussian()};
    return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("eig_hermitian") {
    SUBCASE("diagonal matrix sorts ascending") {
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
        h(0, 0) = 3;
        h(1, 1) = 1;
        h(2, 2) = 2;
        auto dec = eig_hermitian(h);
        CHECK(dec.eigenvalues[0] == doctest::Approx(1.0));
        CHECK(dec.eigenvalues[1] == doctest::Approx(2.0));
        CHECK(dec.eigenvalues[2] == doctest::Approx(3.0));
    }
    SUBCASE("2x2 off-diagonal") {
        Eigen::MatrixXcd h(2, 2);
        h << 0, 1, 1, 0;
        auto dec = eig_hermitian(h);
        CHECK(dec.eigenvalues[0] == doctest::Approx(-1.0));
        CHECK(dec.eigenvalues[1] == doctest::Approx(1.0));
        const double inv = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(std::abs(dec.eigenvectors(0, 0)) - inv) < 1e-12);
        CHECK(std::abs(std::abs(dec.eigenvectors(1, 0)) - inv) < 1e-12);
        // Antisymmetric combination for the lower eigenvalue.
        CHECK(std::abs(dec.eigenvectors(0, 0) + dec.eigenvectors(1, 0)) < 1e-12);
    }
    SUBCASE("random 70x70 reconstruction") {
        Rng rng(5);
        auto h = random_hermitian(70, rng);
        auto dec = eig_hermitian(h);
        Eigen::MatrixXcd rec = dec.eigenvectors *
                               dec.eigenvalues.asDiagonal().toDenseMatrix().cast<cplx>() *
                               dec.eigenvectors.adjoint();
        CHECK((rec - h).norm() / h.norm() < 1e-10);
        // Residual and orthonormality per column.
        for (Eigen::Index n = 0; n < 70; ++n) {
            const double resid =
                (h * dec.eigenvectors.col(n) - dec.eigenvalues[n] * dec.eigenvectors.col(n))
                    .norm();
            CHECK(resid <= 1e-10 * h.norm());
        }
        Eigen::MatrixXcd gram = dec.eigenvectors.adjoint() * dec.eigenvectors;
        CHECK((gram - Eigen::MatrixXcd::Identity(70, 70)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("non-Hermitian input rejected") {
        Eigen::MatrixXcd h(2, 2);
        h << 0, 1, 2, 0;
        CHECK_THROWS_AS(eig_hermitian(h), std::invalid_argument);
    }
}

TEST_CASE("ground_state") {
    SUBCASE("diag(1,2) picks sector state 0") {
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
        h(0, 0) = 1;
        h(1, 1) = 2;
        auto dec = eig_hermitian(h);
        CHECK_FALSE(dec.degenerate_ground);
        auto basis = enumerate_sector(2, 1);
        auto psi = ground_state(dec, basis);
        CHECK(std::abs(psi.amplitudes[0b01]) == doctest::Approx(1.0));
    }
    SUBCASE("SYK2 N=2 matches the analytic 2x2 diagonalization") {
        auto m = sample_syk2(2, 1.0, 77);
        auto basis = enumerate_sector(2, 1);
        auto h = build_sector_matrix(m, basis);
        auto dec = eig_hermitian(h);
        // Closed form for [[a, c],[conj(c), b]].
        const double a = h(0, 0).real(), b = h(1, 1).real();
        const cplx c = h(0, 1);
        const double mean = (a + b) / 2.0;
        const double r = std::sqrt((a - b) * (a - b) / 4.0 + std::norm(c));
        CHECK(dec.eigenvalues[0] == doctest::Approx(mean - r).epsilon(1e-12));
        CHECK(dec.eigenvalues[1] == doctest::Approx(mean + r).epsilon(1e-12));
        auto psi = ground_state(dec, basis);
        // Eigenvector equation checked componentwise in the full space.
        const cplx lo = psi.amplitudes[0b01], hi = psi.amplitudes[0b10];
        CHECK(std::abs(a * lo + c * hi - dec.eigenvalues[0] * lo) < 1e-12);
    }
    SUBCASE("degenerate spectrum flags and tie-breaks to column 0") {
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(2, 2);
        auto dec = eig_hermitian(h);
        CHECK(dec.degenerate_ground);
        auto basis = enumerate_sector(2, 1);
        auto psi = ground_state(dec, basis);
        CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("evolve") {
    Rng rng(9);
    auto m = sample_syk4(8, 1.0, 13);
    auto basis = enumerate_sector(8, 4);
    auto h = build_sector_matrix(m, basis);
    auto dec = eig_hermitian(h);
    const auto dim = static_cast<Eigen::Index>(basis.size());

    Eigen::VectorXcd psi0(dim);
    for (Eigen::Index i = 0; i < dim; ++i) psi0[i] = cplx{rng.gaussian(), rng.gaussian()};
    psi0.normalize();

    SUBCASE("t=0 is the identity") {
        CHECK((evolve(dec, psi0, 0.0) - psi0).norm() < 1e-12);
    }
    SUBCASE("eigenstates pick up a global phase only") {
        Eigen::VectorXcd v = dec.eigenvectors.col(3);
        auto out = evolve(dec, v, 1.7);
        CHECK(std::abs(std::abs(v.dot(out)) - 1.0) < 1e-12);
    }
    SUBCASE("unitarity at t=10") {
        CHECK(std::abs(evolve(dec, psi0, 10.0).norm() - 1.0) < 1e-12);
    }
    SUBCASE("energy conserved along a time grid") {
        const double e0 = (psi0.adjoint() * h * psi0)(0).real();
        for (double t : {0.1, 0.5, 2.0, 10.0, 40.0}) {
            auto psi_t = evolve(dec, psi0, t);
            const double e = (psi_t.adjoint() * h * psi_t)(0).real();
            CHECK(std::abs(e - e0) < 1e-10);
        }
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(evolve(dec, Eigen::VectorXcd::Zero(3), 1.0), std::invalid_argument);
    }
}
