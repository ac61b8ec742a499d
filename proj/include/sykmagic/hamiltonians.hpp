#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sykmagic/fock.hpp"

namespace sykmagic {

enum class ModelKind { SYK2, SYK4 };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view s);

// One disorder realization. Couplings are fully determined by
// (kind, N, J, mu, seed, prng_id); instances are immutable after sampling.
struct ModelInstance {
    ModelKind kind = ModelKind::SYK4;
    int n_sites = 0;
    double coupling_j = 1.0;
    double mu = 0.0;
    std::uint64_t seed = 0;
    std::string prng_id;

    // SYK2: Hermitian N x N matrix J_ij multiplying c^dag_i c_j.
    Eigen::MatrixXcd j2;

    // SYK4: full N^4 tensor J_ijkl multiplying c^dag_i c^dag_j c_k c_l,
    // antisymmetric in (i,j) and (k,l), Hermitian J_ijkl = conj(J_lkji).
    std::vector<std::complex<double>> j4;

    std::complex<double> j4_at(int i, int j, int k, int l) const {
        const int n = n_sites;
        return j4[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)];
    }
};

// Off-diagonal entries complex Gaussian with E|J_ij|^2 = J^2/N, diagonal
// real Gaussian with the same variance, J_ji = conj(J_ij) exactly.
ModelInstance sample_syk2(int n_sites, double j, std::uint64_t seed, double mu = 0.0);

// Independent draws on representatives (i<j, k<l) modulo the Hermitian
// pairing (ij|kl) <-> (kl|ij); self-paired representatives are drawn real.
// Final tensor entries satisfy E|J_ijkl|^2 = J^2/(2N)^3.
ModelInstance sample_syk4(int n_sites, double j, std::uint64_t seed, double mu = 0.0);

// <n'|H|n> over the fixed-particle-number sector, assembled with fermionic
// signs from the JW kernels; includes the -mu sum_i n_i term.
Eigen::MatrixXcd build_sector_matrix(const ModelInstance& model, const SectorBasis& basis);

// Binary sidecar with the documented layout (see README): header
// {magic, version, kind, N, seed, prng_id}, then the canonical-order
// independent entries as little-endian float64 (re, im) pairs.
void dump_couplings(const ModelInstance& model, const std::filesystem::path& path);
ModelInstance load_couplings(const std::filesystem::path& path);

}  // namespace sykmagic
