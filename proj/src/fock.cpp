#include "sykmagic/fock.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sykmagic {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

SectorBasis::SectorBasis(int n_sites, int n_particles)
    : n_sites_(n_sites), n_particles_(n_particles) {
    if (n_sites < 1 || n_sites > kMaxSites)
        throw std::invalid_argument("SectorBasis: n_sites must be in [1, 16], got " +
                                    std::to_string(n_sites));
    if (n_particles < 0 || n_particles > n_sites)
        throw std::invalid_argument("SectorBasis: n_particles must be in [0, n_sites]");

    const FockIndex dim = FockIndex{1} << n_sites;
    states_.reserve(binomial(n_sites, n_particles));
    rank_.assign(dim, kInvalidRank);
    for (FockIndex s = 0; s < dim; ++s) {
        if (std::popcount(s) == n_particles) {
            rank_[s] = static_cast<std::uint32_t>(states_.size());
            states_.push_back(s);
        }
    }
}

std::size_t SectorBasis::rank(FockIndex s) const {
    if (!contains(s))
        throw std::out_of_range("SectorBasis::rank: state not in sector");
    return rank_[s];
}

SectorBasis enumerate_sector(int n_sites, int n_particles) {
    return SectorBasis(n_sites, n_particles);
}

ModeAction apply_mode(ModeKind kind, int site, FockIndex state, int n_sites) {
    if (site < 0 || site >= n_sites)
        throw std::invalid_argument("apply_mode: site out of range");
    int e = 0;
    FockIndex out = apply_mode_exp(kind, site, state, e);
    static constexpr std::complex<double> kPhases[4] = {
        {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return {out, kPhases[e]};
}

PureState embed_sector_vector(const Eigen::VectorXcd& v, const SectorBasis& basis) {
    if (static_cast<std::size_t>(v.size()) != basis.size())
        throw std::invalid_argument("embed_sector_vector: dimension mismatch");
    PureState psi;
    psi.n_sites = basis.n_sites();
    psi.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index{1} << basis.n_sites());
    psi.sector_particles = basis.n_particles();
    psi.support = basis.states();
    for (std::size_t r = 0; r < basis.size(); ++r) {
        psi.amplitudes[basis.states()[r]] = v[static_cast<Eigen::Index>(r)];
    }
    return psi;
}

std::complex<double> inner_product(const PureState& a, const PureState& b) {
    if (a.n_sites != b.n_sites)
        throw std::invalid_argument("inner_product: dimension mismatch");
    return a.amplitudes.dot(b.amplitudes);  // conjugates the left argument
}

}  // namespace sykmagic
