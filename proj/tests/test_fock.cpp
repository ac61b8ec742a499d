#include "doctest.h"

#include <complex>

#include "sykmagic/fock.hpp"
#include "sykmagic/rng.hpp"

using namespace sykmagic;
using cplx = std::complex<double>;

TEST_CASE("enumerate_sector lists ascending masks with exact rank inverse") {
    SUBCASE("N=2, Np=1") {
        auto basis = enumerate_sector(2, 1);
        REQUIRE(basis.size() == 2);
        CHECK(basis.states()[0] == 0b01u);
        CHECK(basis.states()[1] == 0b10u);
    }
    SUBCASE("N=4, Np=2") {
        CHECK(enumerate_sector(4, 2).size() == 6);
    }
    SUBCASE("N=14, Np=7") {
        auto basis = enumerate_sector(14, 7);
        CHECK(basis.size() == 3432);
    }
    SUBCASE("rank inverts the state list") {
        auto basis = enumerate_sector(6, 3);
        for (std::size_t r = 0; r < basis.size(); ++r) {
            CHECK(basis.rank(basis.states()[r]) == r);
        }
        for (std::size_t r = 1; r < basis.size(); ++r) {
            CHECK(basis.states()[r - 1] < basis.states()[r]);
        }
    }
    SUBCASE("invalid parameters") {
        CHECK_THROWS_AS(enumerate_sector(4, 5), std::invalid_argument);
        CHECK_THROWS_AS(enumerate_sector(4, -1), std::invalid_argument);
        CHECK_THROWS_AS(enumerate_sector(17, 2), std::invalid_argument);
        CHECK_THROWS_AS(enumerate_sector(0, 0), std::invalid_argument);
    }
}

TEST_CASE("binomial") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(14, 7) == 3432);
    CHECK(binomial(16, 8) == 12870);
    CHECK(binomial(20, 10) == 184756);
    CHECK(binomial(4, 5) == 0);
}

TEST_CASE("apply_mode implements the JW sign convention") {
    SUBCASE("eta at site 0 carries no string") {
        auto [s, phase] = apply_mode(ModeKind::Eta, 0, 0b000u, 3);
        CHECK(s == 0b001u);
        CHECK(phase == cplx{1, 0});
    }
    SUBCASE("eta at site 1 past one occupied site") {
        auto [s, phase] = apply_mode(ModeKind::Eta, 1, 0b01u, 2);
        CHECK(s == 0b11u);
        CHECK(phase == cplx{-1, 0});
    }
    SUBCASE("chi on an occupied site gives +i") {
        auto [s, phase] = apply_mode(ModeKind::Chi, 0, 0b1u, 1);
        CHECK(s == 0b0u);
        CHECK(phase == cplx{0, 1});
    }
    SUBCASE("chi on an empty site gives -i") {
        auto [s, phase] = apply_mode(ModeKind::Chi, 0, 0b0u, 1);
        CHECK(s == 0b1u);
        CHECK(phase == cplx{0, -1});
    }
    SUBCASE("site out of range") {
        CHECK_THROWS_AS(apply_mode(ModeKind::Eta, 2, 0b0u, 2), std::invalid_argument);
    }
}

TEST_CASE("mode action is involutive and anticommuting") {
    // eta_i^2 = chi_i^2 = 1, and distinct modes anticommute, exhaustively
    // for N <= 4.
    for (int n = 1; n <= 4; ++n) {
        const FockIndex dim = FockIndex{1} << n;
        for (FockIndex s = 0; s < dim; ++s) {
            for (int site = 0; site < n; ++site) {
                for (ModeKind k : {ModeKind::Eta, ModeKind::Chi}) {
                    auto a = apply_mode(k, site, s, n);
                    auto b = apply_mode(k, site, a.state, n);
                    CHECK(b.state == s);
                    CHECK(a.phase * b.phase == cplx{1, 0});
                }
            }
            for (int b1 = 0; b1 < 2 * n; ++b1) {
                for (int b2 = 0; b2 < 2 * n; ++b2) {
                    if (b1 == b2) continue;
                    auto k1 = (b1 & 1) ? ModeKind::Chi : ModeKind::Eta;
                    auto k2 = (b2 & 1) ? ModeKind::Chi : ModeKind::Eta;
                    auto x1 = apply_mode(k2, b2 / 2, s, n);
                    auto x2 = apply_mode(k1, b1 / 2, x1.state, n);
                    auto y1 = apply_mode(k1, b1 / 2, s, n);
                    auto y2 = apply_mode(k2, b2 / 2, y1.state, n);
                    CHECK(x2.state == y2.state);
                    CHECK(x1.phase * x2.phase == -y1.phase * y2.phase);
                }
            }
        }
    }
}

TEST_CASE("embed_sector_vector") {
    SUBCASE("unit vector lands on the ranked mask") {
        auto basis = enumerate_sector(2, 1);
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2);
        v[0] = 1.0;
        auto psi = embed_sector_vector(v, basis);
        CHECK(psi.amplitudes[0b01] == cplx{1, 0});
        CHECK(psi.amplitudes[0b10] == cplx{0, 0});
        CHECK(psi.sector_particles == 1);
    }
    SUBCASE("equal-weight two-state vector") {
        auto basis = enumerate_sector(2, 1);
        Eigen::VectorXcd v(2);
        v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
        auto psi = embed_sector_vector(v, basis);
        CHECK(psi.amplitudes[0b01] == psi.amplitudes[0b10]);
        CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("N=8 half filling gives 70 nonzeros out of 256") {
        auto basis = enumerate_sector(8, 4);
        REQUIRE(basis.size() == 70);
        Eigen::VectorXcd v = Eigen::VectorXcd::Ones(70) / std::sqrt(70.0);
        auto psi = embed_sector_vector(v, basis);
        CHECK(psi.dim() == 256);
        int nonzeros = 0;
        for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i)
            if (psi.amplitudes[i] != cplx{0, 0}) ++nonzeros;
        CHECK(nonzeros == 70);
    }
    SUBCASE("norm preserved to 1e-14 for random vectors") {
        Rng rng(7);
        auto basis = enumerate_sector(6, 3);
        Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.size()));
        for (Eigen::Index i = 0; i < v.size(); ++i)
            v[i] = cplx{rng.gaussian(), rng.gaussian()};
        v.normalize();
        auto psi = embed_sector_vector(v, basis);
        CHECK(std::abs(psi.norm() - 1.0) < 1e-14);
    }
    SUBCASE("dimension mismatch") {
        auto basis = enumerate_sector(4, 2);
        CHECK_THROWS_AS(embed_sector_vector(Eigen::VectorXcd::Zero(5), basis),
                        std::invalid_argument);
    }
}

TEST_CASE("inner_product") {
    auto basis = enumerate_sector(2, 1);
    Eigen::VectorXcd v(2);
    v << 0.6, cplx{0, 0.8};
    auto psi = embed_sector_vector(v, basis);

    CHECK(std::abs(inner_product(psi, psi) - cplx{1, 0}) < 1e-15);

    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(2), e1 = Eigen::VectorXcd::Zero(2);
    e0[0] = 1;
    e1[1] = 1;
    auto a = embed_sector_vector(e0, basis);
    auto b = embed_sector_vector(e1, basis);
    CHECK(inner_product(a, b) == cplx{0, 0});

    const cplx phase = std::polar(1.0, 0.7);
    PureState rotated = psi;
    rotated.amplitudes *= phase;
    CHECK(std::abs(inner_product(psi, rotated) - phase) < 1e-15);

    PureState other;
    other.n_sites = 3;
    other.amplitudes = Eigen::VectorXcd::Zero(8);
    CHECK_THROWS_AS(inner_product(psi, other), std::invalid_argument);
}
