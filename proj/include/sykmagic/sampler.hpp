#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "sykmagic/majorana.hpp"
#include "sykmagic/rng.hpp"
#include "sykmagic/spectrum.hpp"

namespace sykmagic {

enum class SamplingMode { Direct, Filtered };

struct ChainConfig {
    std::uint64_t n_samples = 500000;  // N_S, total across chains
    std::uint64_t burn_in = 1000;      // discarded steps per chain
    std::uint64_t thinning = 1;        // keep every k-th step
    SamplingMode mode = SamplingMode::Filtered;
    std::vector<double> alphas = {2.0};
    int chain_count = 8;
    std::uint64_t seed = 0;  // per-chain streams derived from this
    // Algorithm-1-literal convention: measure only on accepted moves.
    // Biased; off by default (the standard every-step rule is unbiased).
    bool measure_on_accept_only = false;
    int n_threads = 0;
    std::optional<std::filesystem::path> trace_path;  // chain 0 diagnostics
};

// One visited string with its weight sigma_v = x^2/d and the per-alpha
// estimator X_v it contributes.
struct SampleRecord {
    MajoranaString string;
    double x = 0.0;
    double sigma = 0.0;

    // X_v = ln(x^2) for alpha = 1 (the alpha -> 1 limit; see README note),
    // x^{2(alpha-1)} for alpha >= 2.
    double estimator(double alpha) const {
        return alpha == 1.0 ? std::log(x * x) : std::pow(x * x, alpha - 1.0);
    }
};

// Two distinct sites, each replaced by a uniform draw from
// {I, eta, chi, eta chi}; redrawn (fresh sites and operators) until the
// proposal has even parity. Symmetric in (m, m').
MajoranaString propose_two_site_update(const MajoranaString& m, Rng& rng);

struct StepResult {
    SampleRecord record;
    bool accepted = false;
};

// One Metropolis move with acceptance min(1, sigma'/sigma). Proposals with
// sigma' = 0 are always rejected; in filtered mode the identity and parity
// strings are forced to sigma = 0.
StepResult metropolis_step(const SampleRecord& current, const PureState& psi,
                           SamplingMode mode, Rng& rng);

// Runs chain_count independent chains and merges their estimator means by
// chain index (deterministic for any thread scheduling). Returns one
// SreResult per alpha; in filtered mode the direct SRE is reconstructed by
// re-adding the known unit contributions of identity and parity, and vice
// versa.
std::vector<SreResult> run_chain(const PureState& psi, const ChainConfig& cfg);

// Standard error of the mean over batch means.
double standard_error(const std::vector<double>& batch_means);

}  // namespace sykmagic
