#pragma once

#include <cstdint>
#include <iterator>
#include <string>
#include <string_view>

#include "sykmagic/fock.hpp"

namespace sykmagic {

// Exponent of the Hermitizing prefactor i^{v^T w_L v} with w_L the strictly
// lower triangular matrix of ones: every pair of set bits contributes once,
// so the quadratic form equals C(popcount(v), 2), taken mod 4.
inline int hermitizing_phase_exponent(std::uint32_t v) {
    const std::uint64_t k = std::popcount(v);
    return static_cast<int>((k * (k - 1) / 2) & 3);
}

// Hermitian Majorana string mu(v) = i^{C(k,2)} eta_1^{v_1} chi_1^{v_2} ...
// chi_N^{v_2N}. Bit layout interleaves the two Majorana flavors per site:
// bit 2i is eta_{i+1}, bit 2i+1 is chi_{i+1}. v = 0 is the identity; the
// all-ones v is the fermion parity operator P = Z_1...Z_N.
class MajoranaString {
public:
    MajoranaString() = default;
    MajoranaString(std::uint32_t bits, int n_sites);

    static MajoranaString identity(int n_sites) { return {0, n_sites}; }
    static MajoranaString parity(int n_sites);

    std::uint32_t bits() const { return bits_; }
    int n_sites() const { return n_sites_; }
    int weight() const { return std::popcount(bits_); }
    bool even_parity() const { return (weight() & 1) == 0; }
    int phase_exponent() const { return hermitizing_phase_exponent(bits_); }

    bool is_identity() const { return bits_ == 0; }
    bool is_parity() const { return n_sites_ > 0 && bits_ == all_bits(n_sites_); }

    // Lowercase hex of v, fixed width ceil(2N/4) digits; bit 0 (eta_1) is the
    // least significant bit of the encoded value. Round-trips exactly.
    std::string to_hex() const;
    static MajoranaString from_hex(std::string_view hex, int n_sites);

    // Human-readable decoding, e.g. "eta1.chi1.eta3"; "id" for v = 0.
    std::string human_name() const;

    friend bool operator==(const MajoranaString& a, const MajoranaString& b) {
        return a.bits_ == b.bits_ && a.n_sites_ == b.n_sites_;
    }

    static std::uint32_t all_bits(int n_sites) {
        return (n_sites >= 16) ? 0xffffffffu : ((std::uint32_t{1} << (2 * n_sites)) - 1);
    }

private:
    std::uint32_t bits_ = 0;
    int n_sites_ = 0;
};

// mu(v) |psi>. The ordered product acts rightmost factor first (descending
// bit index); the result keeps unit norm. The output support is the XOR
// image of the input support; particle number is generally not preserved.
PureState apply_string(const MajoranaString& m, const PureState& psi);

// <psi| mu(v) |psi>. Odd-parity strings short-circuit to exactly 0 (parity
// superselection; all states handled by this library carry definite parity).
// Even-parity values are computed honestly, so superpositions across
// same-parity particle-number sectors come out right. Throws if the raw
// inner product has imaginary residue above 1e-10.
double expectation(const MajoranaString& m, const PureState& psi);

inline constexpr double kImagResidueTolerance = 1e-10;

// Independent dense verification oracle: the d x d matrix of mu(v) built
// from explicit Kronecker products of 2x2 site operators under the same JW
// convention (eta_i = Z^(i) X, chi_i = Z^(i) (-Y)). N <= 6.
Eigen::MatrixXcd dense_oracle(const MajoranaString& m);

std::uint64_t even_string_count(int n_sites);  // 4^N / 2

// Index <-> string bijection for the even-parity half of the Majorana group:
// the low bit of v is forced to the parity of the remaining 2N-1 bits, so
// index i in [0, 4^N/2) maps to v = 2i + popcount(i) mod 2, ascending in v.
inline std::uint32_t even_string_bits(std::uint64_t index) {
    return static_cast<std::uint32_t>((index << 1) | (std::popcount(index) & 1));
}
inline std::uint64_t even_string_index(std::uint32_t bits) { return bits >> 1; }

// Iterates all 4^N/2 even-parity strings in ascending bit order. The range
// may be split into disjoint [begin_index, end_index) chunks for parallel
// enumeration.
class EvenStringRange {
public:
    explicit EvenStringRange(int n_sites)
        : n_sites_(n_sites), count_(even_string_count(n_sites)) {}

    class Iterator {
    public:
        using value_type = MajoranaString;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::forward_iterator_tag;

        Iterator() = default;
        Iterator(int n_sites, std::uint64_t index) : n_sites_(n_sites), index_(index) {}

        MajoranaString operator*() const {
            return MajoranaString(even_string_bits(index_), n_sites_);
        }
        Iterator& operator++() { ++index_; return *this; }
        Iterator operator++(int) { Iterator t = *this; ++index_; return t; }
        bool operator==(const Iterator& o) const { return index_ == o.index_; }
        bool operator!=(const Iterator& o) const { return index_ != o.index_; }

    private:
        int n_sites_ = 0;
        std::uint64_t index_ = 0;
    };

    Iterator begin() const { return {n_sites_, 0}; }
    Iterator end() const { return {n_sites_, count_}; }
    std::uint64_t size() const { return count_; }

private:
    int n_sites_;
    std::uint64_t count_;
};

EvenStringRange enumerate_even_strings(int n_sites);

}  // namespace sykmagic
