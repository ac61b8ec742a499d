#include "doctest.h"

#include <cmath>
#include <complex>
#include <set>

#include "sykmagic/majorana.hpp"
#include "sykmagic/rng.hpp"

using namespace sykmagic;
using cplx = std::complex<double>;

namespace {

PureState random_state(int n, Rng& rng) {
    PureState psi;
    psi.n_sites = n;
    psi.amplitudes = Eigen::VectorXcd(Eigen::Index{1} << n);
    for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i)
        psi.amplitudes[i] = cplx{rng.gaussian(), rng.gaussian()};
    psi.amplitudes.normalize();
    return psi;
}

// Random state restricted to one particle-number sector (definite parity,
// as required by the odd-string short circuit).
PureState random_sector_state(int n, int np, Rng& rng) {
    auto basis = enumerate_sector(n, np);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v[i] = cplx{rng.gaussian(), rng.gaussian()};
    v.normalize();
    return embed_sector_vector(v, basis);
}

Eigen::VectorXcd full_amplitudes(const PureState& psi) { return psi.amplitudes; }

}  // namespace

TEST_CASE("hermitizing phase exponent is C(k,2) mod 4") {
    CHECK(hermitizing_phase_exponent(0) == 0);
    CHECK(hermitizing_phase_exponent(0b11) == 1);           // weight 2
    CHECK(hermitizing_phase_exponent(0b1111) == 2);         // weight 4: C(4,2)=6
    CHECK(hermitizing_phase_exponent(0b111) == 3);          // weight 3
    CHECK(hermitizing_phase_exponent(0xffffffffu) == 0);    // C(32,2)=496

    // Equivalence with the literal strictly-lower-triangular quadratic form
    // v^T w_L v, exhaustively for 2N <= 12 bits.
    for (std::uint32_t v = 0; v < (1u << 12); ++v) {
        int q = 0;
        for (int a = 0; a < 12; ++a)
            for (int b = 0; b < a; ++b)
                q += static_cast<int>((v >> a) & 1u) * static_cast<int>((v >> b) & 1u);
        CHECK(hermitizing_phase_exponent(v) == (q & 3));
    }
}

TEST_CASE("string construction and classification") {
    auto id = MajoranaString::identity(3);
    CHECK(id.weight() == 0);
    CHECK(id.even_parity());
    CHECK(id.is_identity());

    auto par = MajoranaString::parity(3);
    CHECK(par.weight() == 6);
    CHECK(par.is_parity());
    CHECK(par.even_parity());

    CHECK_THROWS_AS(MajoranaString(0b10000, 2), std::invalid_argument);
}

TEST_CASE("serialization round-trips bit-exactly") {
    CHECK(MajoranaString(0x1u, 3).to_hex() == "01");
    CHECK(MajoranaString(0x2bu, 4).to_hex() == "2b");
    for (std::uint32_t v : {0u, 1u, 0x15u, 0x3fu}) {
        MajoranaString m(v, 3);
        CHECK(MajoranaString::from_hex(m.to_hex(), 3).bits() == v);
    }
    // eta1.chi1.eta3 = bits 0, 1, 4
    MajoranaString m(0b10011u, 3);
    CHECK(m.human_name() == "eta1.chi1.eta3");
    CHECK(MajoranaString::identity(2).human_name() == "id");
    CHECK_THROWS_AS(MajoranaString::from_hex("xz", 2), std::invalid_argument);
}

TEST_CASE("enumerate_even_strings") {
    SUBCASE("N=1 yields the identity and eta1.chi1") {
        auto range = enumerate_even_strings(1);
        std::vector<MajoranaString> all(range.begin(), range.end());
        REQUIRE(all.size() == 2);
        CHECK(all[0].is_identity());
        CHECK(all[1].bits() == 0b11u);
    }
    SUBCASE("N=2 has 8, all even, no repeats") {
        auto range = enumerate_even_strings(2);
        CHECK(range.size() == 8);
        std::set<std::uint32_t> seen;
        for (const auto& m : range) {
            CHECK(m.even_parity());
            seen.insert(m.bits());
        }
        CHECK(seen.size() == 8);
    }
    SUBCASE("counts follow 4^N/2") {
        CHECK(even_string_count(8) == 32768);
        CHECK(enumerate_even_strings(8).size() == 32768);
    }
    SUBCASE("index bijection is ascending and self-inverse") {
        std::uint32_t prev = 0;
        for (std::uint64_t i = 0; i < even_string_count(3); ++i) {
            const std::uint32_t v = even_string_bits(i);
            CHECK((std::popcount(v) & 1) == 0);
            CHECK(even_string_index(v) == i);
            if (i > 0) CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("dense oracle micro-cases") {
    SUBCASE("identity at N=1") {
        auto m = dense_oracle(MajoranaString::identity(1));
        CHECK((m - Eigen::MatrixXcd::Identity(2, 2)).norm() == 0.0);
    }
    SUBCASE("i eta1 chi1 at N=1 is diag(1, -1)") {
        auto m = dense_oracle(MajoranaString(0b11, 1));
        Eigen::MatrixXcd z(2, 2);
        z << 1, 0, 0, -1;
        CHECK((m - z).norm() < 1e-15);
    }
    SUBCASE("oracle matrices are Hermitian") {
        for (const auto& s : enumerate_even_strings(3)) {
            auto m = dense_oracle(s);
            CHECK((m - m.adjoint()).norm() < 1e-12);
        }
    }
    SUBCASE("orthonormality Tr(mu mu') = d delta at N=2, all pairs") {
        std::vector<Eigen::MatrixXcd> mats;
        for (const auto& s : enumerate_even_strings(2)) mats.push_back(dense_oracle(s));
        // Odd strings participate in the orthonormality relation too.
        for (std::uint32_t v = 0; v < 16; ++v)
            if (std::popcount(v) & 1) mats.push_back(dense_oracle(MajoranaString(v, 2)));
        REQUIRE(mats.size() == 16);
        for (std::size_t a = 0; a < mats.size(); ++a) {
            for (std::size_t b = 0; b < mats.size(); ++b) {
                const cplx tr = (mats[a] * mats[b]).trace();
                if (a == b)
                    CHECK(std::abs(tr - cplx{4, 0}) < 1e-12);
                else
                    CHECK(std::abs(tr) < 1e-12);
            }
        }
    }
    SUBCASE("orthonormality over all even-parity pairs at N=3") {
        std::vector<Eigen::MatrixXcd> mats;
        for (const auto& s : enumerate_even_strings(3)) mats.push_back(dense_oracle(s));
        REQUIRE(mats.size() == 32);
        for (std::size_t a = 0; a < mats.size(); ++a) {
            for (std::size_t b = 0; b < mats.size(); ++b) {
                const cplx tr = (mats[a] * mats[b]).trace() / 8.0;
                CHECK(std::abs(tr - (a == b ? cplx{1, 0} : cplx{0, 0})) < 1e-12);
            }
        }
    }
}

TEST_CASE("apply_string") {
    Rng rng(11);
    SUBCASE("identity leaves the state unchanged") {
        auto psi = random_state(3, rng);
        auto out = apply_string(MajoranaString::identity(3), psi);
        CHECK((full_amplitudes(out) - full_amplitudes(psi)).norm() < 1e-15);
    }
    SUBCASE("i eta1 chi1 negates states with site 1 occupied") {
        auto basis = enumerate_sector(2, 1);
        Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(2);
        e0[0] = 1;  // mask 01, site 0 occupied
        auto psi = embed_sector_vector(e0, basis);
        auto out = apply_string(MajoranaString(0b0011, 2), psi);
        CHECK(std::abs(out.amplitudes[0b01] - cplx{-1, 0}) < 1e-15);
    }
    SUBCASE("weight-3 strings flip occupation parity, against the oracle") {
        for (std::uint32_t v = 0; v < 16; ++v) {
            if (std::popcount(v) != 3) continue;
            MajoranaString m(v, 2);
            for (FockIndex n = 0; n < 4; ++n) {
                PureState basis_state;
                basis_state.n_sites = 2;
                basis_state.amplitudes = Eigen::VectorXcd::Zero(4);
                basis_state.amplitudes[n] = 1;
                auto out = apply_string(m, basis_state);
                // Image parity flipped.
                for (FockIndex k = 0; k < 4; ++k) {
                    if (std::abs(out.amplitudes[k]) > 0)
                        CHECK((std::popcount(k) & 1) != (std::popcount(n) & 1));
                }
                // Matches the dense oracle column.
                Eigen::VectorXcd oracle_col = dense_oracle(m).col(n);
                CHECK((full_amplitudes(out) - oracle_col).norm() < 1e-14);
            }
        }
    }
    SUBCASE("involution: applying twice returns the state exactly") {
        for (int n = 1; n <= 3; ++n) {
            auto psi = random_state(n, rng);
            for (const auto& m : enumerate_even_strings(n)) {
                auto twice = apply_string(m, apply_string(m, psi));
                CHECK((full_amplitudes(twice) - full_amplitudes(psi)).norm() < 1e-14);
                CHECK(std::abs(twice.norm() - 1.0) < 1e-14);
            }
        }
    }
}

TEST_CASE("expectation") {
    Rng rng(23);
    SUBCASE("identity and parity") {
        auto psi = random_sector_state(4, 2, rng);
        CHECK(expectation(MajoranaString::identity(4), psi) == doctest::Approx(1.0).epsilon(1e-12));
        // P = Z1..ZN has eigenvalue (-1)^{Np}; N=4, Np=2 -> +1.
        CHECK(expectation(MajoranaString::parity(4), psi) == doctest::Approx(1.0).epsilon(1e-12));
        auto odd_psi = random_sector_state(4, 3, rng);
        CHECK(expectation(MajoranaString::parity(4), odd_psi) == doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("odd-parity strings return exactly zero") {
        auto psi = random_sector_state(3, 1, rng);
        for (std::uint32_t v = 0; v < 64; ++v) {
            if ((std::popcount(v) & 1) == 0) continue;
            CHECK(expectation(MajoranaString(v, 3), psi) == 0.0);
        }
    }
    SUBCASE("N=2 closed-form state") {
        // cos(pi/8)|10> + sin(pi/8)|01> ; first slot is site 1 -> mask 01.
        PureState psi;
        psi.n_sites = 2;
        psi.amplitudes = Eigen::VectorXcd::Zero(4);
        psi.amplitudes[0b01] = std::cos(M_PI / 8);
        psi.amplitudes[0b10] = std::sin(M_PI / 8);
        const double x = expectation(MajoranaString(0b0011, 2), psi);
        CHECK(x == doctest::Approx(-std::sqrt(2.0) / 2).epsilon(1e-12));
    }
    SUBCASE("fast path matches the oracle for all even strings, random states") {
        for (int n = 1; n <= 4; ++n) {
            for (int rep = 0; rep < 5; ++rep) {
                auto psi = random_state(n, rng);
                for (const auto& m : enumerate_even_strings(n)) {
                    const double fast = expectation(m, psi);
                    const cplx slow =
                        (psi.amplitudes.adjoint() * dense_oracle(m) * psi.amplitudes)(0);
                    CHECK(std::abs(fast - slow.real()) < 1e-12);
                }
            }
        }
    }
    SUBCASE("purity: (1/d) sum over all strings of x^2 equals 1") {
        for (int n : {2, 3, 4}) {
            auto psi = random_sector_state(n, n / 2, rng);
            double sum = 0;
            for (const auto& m : enumerate_even_strings(n)) {
                const double x = expectation(m, psi);
                sum += x * x;
            }
            // Odd strings contribute zero on definite-parity states.
            CHECK(sum / static_cast<double>(1 << n) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    SUBCASE("expectation values stay in [-1, 1]") {
        auto psi = random_state(3, rng);
        for (const auto& m : enumerate_even_strings(3)) {
            const double x = expectation(m, psi);
            CHECK(x >= -1.0 - 1e-12);
            CHECK(x <= 1.0 + 1e-12);
        }
    }
}
