#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace sykmagic {

// Occupation-basis state for N complex fermions: bit i is the occupation of
// site i (0-based internally; all user-facing output is 1-based).
using FockIndex = std::uint32_t;

inline constexpr int kMaxSites = 16;

std::uint64_t binomial(int n, int k);

// All basis states of fixed particle number, ascending, with an O(1) rank
// lookup (exact inverse of the state list).
class SectorBasis {
public:
    SectorBasis(int n_sites, int n_particles);

    int n_sites() const { return n_sites_; }
    int n_particles() const { return n_particles_; }
    std::size_t size() const { return states_.size(); }
    const std::vector<FockIndex>& states() const { return states_; }

    bool contains(FockIndex s) const {
        return s < rank_.size() && rank_[s] != kInvalidRank;
    }
    std::size_t rank(FockIndex s) const;

private:
    static constexpr std::uint32_t kInvalidRank = 0xffffffffu;
    int n_sites_;
    int n_particles_;
    std::vector<FockIndex> states_;
    std::vector<std::uint32_t> rank_;  // indexed by FockIndex, 2^N entries
};

SectorBasis enumerate_sector(int n_sites, int n_particles);

// Amplitudes over the full 2^N Fock space. Majorana strings do not conserve
// particle number (only parity), so storage is never sector-compressed.
// `support` lists the basis states that can carry weight; empty means
// unknown (all of them). `sector_particles` is set when the state lives in
// a single fixed-N_p sector.
struct PureState {
    int n_sites = 0;
    Eigen::VectorXcd amplitudes;
    std::optional<int> sector_particles;
    std::vector<FockIndex> support;

    std::size_t dim() const { return static_cast<std::size_t>(amplitudes.size()); }
    double norm() const { return amplitudes.norm(); }
};

enum class ModeKind { Eta, Chi };

struct ModeAction {
    FockIndex state;
    std::complex<double> phase;  // |phase| = 1
};

// Action of a single Majorana mode on a basis state under the Jordan-Wigner
// convention where c_i carries the sign string over sites j < i:
//   eta_i |n> = (-1)^{sum_{j<i} n_j} |n ^ e_i>
//   chi_i |n> = (-1)^{sum_{j<i} n_j} (+i if n_i=1, -i if n_i=0) |n ^ e_i>
ModeAction apply_mode(ModeKind kind, int site, FockIndex state, int n_sites);

// Same action with the phase as an exponent of i (mod 4); exact integer
// arithmetic for the bit-level kernels.
inline FockIndex apply_mode_exp(ModeKind kind, int site, FockIndex state, int& i_exp) {
    const FockIndex below = state & ((FockIndex{1} << site) - 1);
    int e = (std::popcount(below) & 1) ? 2 : 0;  // (-1)^{JW} = i^2
    if (kind == ModeKind::Chi) e += ((state >> site) & 1) ? 1 : 3;
    i_exp = (i_exp + e) & 3;
    return state ^ (FockIndex{1} << site);
}

PureState embed_sector_vector(const Eigen::VectorXcd& v, const SectorBasis& basis);

std::complex<double> inner_product(const PureState& a, const PureState& b);

}  // namespace sykmagic
