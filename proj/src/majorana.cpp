#include "sykmagic/majorana.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace sykmagic {

namespace {

constexpr std::complex<double> kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// Walks the set modes of v from highest bit down (rightmost factor acts
// first) and returns the image basis state; accumulates the phase as an
// exponent of i, including the Hermitizing prefactor.
inline FockIndex string_action(std::uint32_t v, int phase_exp, FockIndex n, int& i_exp) {
    int e = phase_exp;
    std::uint32_t rest = v;
    while (rest) {
        const int b = 31 - std::countl_zero(rest);
        rest &= ~(std::uint32_t{1} << b);
        const int site = b >> 1;
        const FockIndex below = n & ((FockIndex{1} << site) - 1);
        if (std::popcount(below) & 1) e += 2;
        if (b & 1) e += ((n >> site) & 1) ? 1 : 3;  // chi
        n ^= FockIndex{1} << site;
    }
    i_exp = e & 3;
    return n;
}

// Sites where exactly one of (eta, chi) is present flip occupation.
inline FockIndex flip_mask(std::uint32_t v) {
    const std::uint32_t odd = (v ^ (v >> 1)) & 0x55555555u;
    FockIndex f = 0;
    for (int site = 0; site < kMaxSites; ++site)
        if ((odd >> (2 * site)) & 1u) f |= FockIndex{1} << site;
    return f;
}

}  // namespace

MajoranaString::MajoranaString(std::uint32_t bits, int n_sites)
    : bits_(bits), n_sites_(n_sites) {
    if (n_sites < 1 || n_sites > kMaxSites)
        throw std::invalid_argument("MajoranaString: n_sites must be in [1, 16]");
    if (n_sites < 16 && (bits >> (2 * n_sites)) != 0)
        throw std::invalid_argument("MajoranaString: bits exceed 2N positions");
}

MajoranaString MajoranaString::parity(int n_sites) {
    return {all_bits(n_sites), n_sites};
}

std::string MajoranaString::to_hex() const {
    const int width = (2 * n_sites_ + 3) / 4;
    std::string out(static_cast<std::size_t>(width), '0');
    static constexpr char kDigits[] = "0123456789abcdef";
    std::uint32_t v = bits_;
    for (int i = width - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kDigits[v & 0xfu];
        v >>= 4;
    }
    return out;
}

MajoranaString MajoranaString::from_hex(std::string_view hex, int n_sites) {
    if (hex.empty() || hex.size() > 8)
        throw std::invalid_argument("MajoranaString::from_hex: bad length");
    std::uint32_t v = 0;
    for (char c : hex) {
        v <<= 4;
        if (c >= '0' && c <= '9') v |= static_cast<std::uint32_t>(c - '0');
        else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint32_t>(c - 'a' + 10);
        else throw std::invalid_argument("MajoranaString::from_hex: bad digit");
    }
    return {v, n_sites};
}

std::string MajoranaString::human_name() const {
    if (bits_ == 0) return "id";
    std::string out;
    for (int b = 0; b < 2 * n_sites_; ++b) {
        if (!((bits_ >> b) & 1u)) continue;
        if (!out.empty()) out += '.';
        out += (b & 1) ? "chi" : "eta";
        out += std::to_string(b / 2 + 1);
    }
    return out;
}

PureState apply_string(const MajoranaString& m, const PureState& psi) {
    if (m.n_sites() != psi.n_sites)
        throw std::invalid_argument("apply_string: site count mismatch");
    PureState out;
    out.n_sites = psi.n_sites;
    out.amplitudes = Eigen::VectorXcd::Zero(psi.amplitudes.size());
    const int pe = m.phase_exponent();
    const std::uint32_t v = m.bits();

    auto scatter = [&](FockIndex n) {
        const std::complex<double> a = psi.amplitudes[n];
        if (a == std::complex<double>{0, 0}) return;
        int e = 0;
        const FockIndex img = string_action(v, pe, n, e);
        out.amplitudes[img] = kPhases[e] * a;
    };

    const FockIndex flip = flip_mask(v);
    if (!psi.support.empty()) {
        out.support.reserve(psi.support.size());
        for (FockIndex n : psi.support) {
            scatter(n);
            out.support.push_back(n ^ flip);
        }
    } else {
        const FockIndex dim = FockIndex{1} << psi.n_sites;
        for (FockIndex n = 0; n < dim; ++n) scatter(n);
    }
    if (flip == 0) out.sector_particles = psi.sector_particles;
    return out;
}

double expectation(const MajoranaString& m, const PureState& psi) {
    if (m.n_sites() != psi.n_sites)
        throw std::invalid_argument("expectation: site count mismatch");
    if (!m.even_parity()) return 0.0;

    const int pe = m.phase_exponent();
    const std::uint32_t v = m.bits();
    std::complex<double> acc{0, 0};

    auto gather = [&](FockIndex n) {
        const std::complex<double> a = psi.amplitudes[n];
        if (a == std::complex<double>{0, 0}) return;
        int e = 0;
        const FockIndex img = string_action(v, pe, n, e);
        acc += std::conj(psi.amplitudes[img]) * kPhases[e] * a;
    };

    if (!psi.support.empty()) {
        for (FockIndex n : psi.support) gather(n);
    } else {
        const FockIndex dim = FockIndex{1} << psi.n_sites;
        for (FockIndex n = 0; n < dim; ++n) gather(n);
    }

    if (std::abs(acc.imag()) > kImagResidueTolerance)
        throw std::runtime_error("expectation: imaginary residue " +
                                 std::to_string(acc.imag()) + " exceeds tolerance");
    return acc.real();
}

Eigen::MatrixXcd dense_oracle(const MajoranaString& m) {
    const int n = m.n_sites();
    if (n > 6)
        throw std::invalid_argument("dense_oracle: N <= 6 only");
    const Eigen::Index d = Eigen::Index{1} << n;

    using Mat2 = Eigen::Matrix2cd;
    const std::complex<double> I{0, 1};
    Mat2 id2, pauli_z, pauli_x, minus_y;
    id2 << 1, 0, 0, 1;
    pauli_z << 1, 0, 0, -1;          // diag((-1)^n) in occupation order
    pauli_x << 0, 1, 1, 0;           // eta site factor
    minus_y << 0, I, -I, 0;          // chi site factor, i(c - c^dag)

    auto kron = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
        Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j)
                out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return out;
    };

    // Site 0 is the least significant bit of the basis index, so it sits in
    // the rightmost Kronecker slot.
    auto mode_matrix = [&](int site, bool chi) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Ones(1, 1);
        for (int s = n - 1; s >= 0; --s) {
            const Mat2& factor = (s == site) ? (chi ? minus_y : pauli_x)
                                 : (s < site) ? pauli_z
                                              : id2;
            acc = kron(acc, factor);
        }
        return acc;
    };

    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(d, d);
    for (int b = 0; b < 2 * n; ++b) {
        if ((m.bits() >> b) & 1u) prod = prod * mode_matrix(b >> 1, b & 1);
    }
    return kPhases[m.phase_exponent()] * prod;
}

std::uint64_t even_string_count(int n_sites) {
    return std::uint64_t{1} << (2 * n_sites - 1);
}

EvenStringRange enumerate_even_strings(int n_sites) {
    if (n_sites < 1 || n_sites > kMaxSites)
        throw std::invalid_argument("enumerate_even_strings: n_sites out of range");
    return EvenStringRange(n_sites);
}

}  // namespace sykmagic
