#include "sykmagic/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

namespace sykmagic {

MajoranaString propose_two_site_update(const MajoranaString& m, Rng& rng) {
    const int n = m.n_sites();
    if (n < 2)
        throw std::invalid_argument("propose_two_site_update: needs at least 2 sites");
    // Redraw sites and operators together until the parity constraint holds;
    // each attempt succeeds with probability 1/2.
    for (;;) {
        const int site_a = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
        int site_b = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - 1)));
        if (site_b >= site_a) ++site_b;
        const auto pat_a = static_cast<std::uint32_t>(rng.uniform_int(4));
        const auto pat_b = static_cast<std::uint32_t>(rng.uniform_int(4));
        std::uint32_t v = m.bits();
        v &= ~((3u << (2 * site_a)) | (3u << (2 * site_b)));
        v |= (pat_a << (2 * site_a)) | (pat_b << (2 * site_b));
        if ((std::popcount(v) & 1) == 0) return {v, n};
    }
}

StepResult metropolis_step(const SampleRecord& current, const PureState& psi,
                           SamplingMode mode, Rng& rng) {
    if (!(current.sigma > 0))
        throw std::invalid_argument("metropolis_step: current weight must be positive");
    const MajoranaString proposal = propose_two_site_update(current.string, rng);

    double sigma_new = 0.0;
    double x_new = 0.0;
    const bool excluded = mode == SamplingMode::Filtered &&
                          (proposal.is_identity() || proposal.is_parity());
    if (!excluded) {
        x_new = expectation(proposal, psi);
        sigma_new = x_new * x_new / static_cast<double>(psi.dim());
    }

    StepResult out;
    if (sigma_new > 0 &&
        (sigma_new >= current.sigma || rng.uniform() < sigma_new / current.sigma)) {
        out.record = {proposal, x_new, sigma_new};
        out.accepted = true;
    } else {
        out.record = current;
        out.accepted = false;
    }
    return out;
}

namespace {

SampleRecord initial_record(const PureState& psi, SamplingMode mode) {
    const double d = static_cast<double>(psi.dim());
    if (mode == SamplingMode::Direct) {
        return {MajoranaString::identity(psi.n_sites), 1.0, 1.0 / d};
    }
    // Filtered mode: first weight-2 string in bit order with sigma > 0
    // (low-weight start, deterministic).
    for (int b2 = 1; b2 < 2 * psi.n_sites; ++b2) {
        for (int b1 = 0; b1 < b2; ++b1) {
            const MajoranaString m((1u << b1) | (1u << b2), psi.n_sites);
            if (m.is_parity()) continue;
            const double x = expectation(m, psi);
            if (x * x > 0) return {m, x, x * x / d};
        }
    }
    throw std::runtime_error(
        "run_chain: no weight-2 string has nonzero weight; cannot start filtered chain");
}

struct ChainAccumulator {
    std::vector<double> estimator_sums;  // per alpha
    std::uint64_t n_recorded = 0;
    double acceptance = 0.0;
};

ChainAccumulator run_one_chain(const PureState& psi, const ChainConfig& cfg,
                               std::uint64_t samples_target, int chain_index,
                               std::ofstream* trace) {
    Rng rng(derive_seed(cfg.seed, 0x6d63636861696eULL, static_cast<std::uint64_t>(chain_index)));
    SampleRecord current = initial_record(psi, cfg.mode);

    ChainAccumulator acc;
    acc.estimator_sums.assign(cfg.alphas.size(), 0.0);
    std::uint64_t accepted = 0, steps = 0;

    for (std::uint64_t i = 0; i < cfg.burn_in; ++i) {
        auto step = metropolis_step(current, psi, cfg.mode, rng);
        current = step.record;
    }
    while (acc.n_recorded < samples_target) {
        bool record_this = true;
        for (std::uint64_t k = 0; k < cfg.thinning; ++k) {
            auto step = metropolis_step(current, psi, cfg.mode, rng);
            current = step.record;
            ++steps;
            if (step.accepted) ++accepted;
            record_this = !cfg.measure_on_accept_only || step.accepted;
            if (trace) {
                (*trace) << steps << ',' << current.string.to_hex() << ',' << current.x
                         << ',' << (step.accepted ? 1 : 0) << '\n';
            }
        }
        if (!record_this) continue;
        for (std::size_t a = 0; a < cfg.alphas.size(); ++a)
            acc.estimator_sums[a] += current.estimator(cfg.alphas[a]);
        ++acc.n_recorded;
    }
    acc.acceptance = steps ? static_cast<double>(accepted) / static_cast<double>(steps) : 0.0;
    return acc;
}

}  // namespace

double standard_error(const std::vector<double>& batch_means) {
    const std::size_t k = batch_means.size();
    if (k < 2) throw std::invalid_argument("standard_error: needs at least 2 batches");
    double mean = 0.0;
    for (double b : batch_means) mean += b;
    mean /= static_cast<double>(k);
    double ss = 0.0;
    for (double b : batch_means) ss += (b - mean) * (b - mean);
    const double var = ss / static_cast<double>(k - 1);
    return std::sqrt(var / static_cast<double>(k));
}

std::vector<SreResult> run_chain(const PureState& psi, const ChainConfig& cfg) {
    if (cfg.n_samples < 1 || cfg.thinning < 1 || cfg.chain_count < 1)
        throw std::invalid_argument("run_chain: invalid chain configuration");
    if (cfg.mode == SamplingMode::Filtered && psi.dim() <= 2)
        throw std::invalid_argument("run_chain: filtered mode needs d > 2");
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("run_chain: state must be normalized");

    const int chains = cfg.chain_count;
    std::vector<ChainAccumulator> results(static_cast<std::size_t>(chains));

    // Split N_S across chains; the first chains absorb the remainder.
    std::vector<std::uint64_t> targets(static_cast<std::size_t>(chains),
                                       cfg.n_samples / chains);
    for (std::uint64_t r = 0; r < cfg.n_samples % chains; ++r) ++targets[r];

    std::ofstream trace;
    if (cfg.trace_path) {
        trace.open(*cfg.trace_path);
        if (!trace) throw std::runtime_error("run_chain: cannot open trace file");
        trace << "step,string_hex,x,accepted_flag\n";
    }

    int n_threads = cfg.n_threads > 0
                        ? cfg.n_threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min(n_threads, chains));

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int c = next.fetch_add(1);
            if (c >= chains) return;
            results[static_cast<std::size_t>(c)] =
                run_one_chain(psi, cfg, targets[static_cast<std::size_t>(c)], c,
                              (c == 0 && cfg.trace_path) ? &trace : nullptr);
        }
    };
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    const double d = static_cast<double>(psi.dim());
    std::vector<SreResult> out;
    out.reserve(cfg.alphas.size());
    for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
        const double alpha = cfg.alphas[a];
        if (alpha < 1.0) throw std::invalid_argument("run_chain: alpha must be >= 1");

        std::vector<double> batch_means;
        double total_sum = 0.0;
        std::uint64_t total_n = 0;
        for (const auto& r : results) {
            if (r.n_recorded == 0) continue;
            batch_means.push_back(r.estimator_sums[a] / static_cast<double>(r.n_recorded));
            total_sum += r.estimator_sums[a];
            total_n += r.n_recorded;
        }
        if (total_n == 0) throw std::runtime_error("run_chain: no samples recorded");
        const double mean = total_sum / static_cast<double>(total_n);
        const double se = batch_means.size() >= 2 ? standard_error(batch_means) : 0.0;

        SreResult r;
        r.alpha = alpha;
        r.method = SreMethod::Sampled;
        if (cfg.mode == SamplingMode::Direct) {
            // <X>_sigma = zeta_alpha for alpha >= 2; M_1 = -<ln x^2>.
            r.zeta = alpha == 1.0 ? 1.0 : mean;
            if (alpha == 1.0) {
                r.m = -mean;
                r.stderr_m = se;
                r.m_filtered = r.m * d / (d - 2.0);
                r.stderr_m_filtered = se * d / (d - 2.0);
            } else {
                r.m = std::log(mean) / (1.0 - alpha);
                r.stderr_m = se / (mean * std::abs(1.0 - alpha));  // delta method
                const double zeta_f = (d * mean - 2.0) / (d - 2.0);
                r.m_filtered = zeta_f > 0 ? std::log(zeta_f) / (1.0 - alpha)
                                          : std::numeric_limits<double>::quiet_NaN();
                if (zeta_f > 0)
                    r.stderr_m_filtered =
                        se * d / (d - 2.0) / (zeta_f * std::abs(1.0 - alpha));
            }
        } else {
            // <X>_filtered = zeta~_alpha; reconstruct the direct moment by
            // adding back the two unit contributions.
            if (alpha == 1.0) {
                r.m_filtered = -mean;
                r.stderr_m_filtered = se;
                r.m = r.m_filtered * (d - 2.0) / d;
                r.stderr_m = se * (d - 2.0) / d;
                r.zeta = 1.0;
            } else {
                r.m_filtered = std::log(mean) / (1.0 - alpha);
                r.stderr_m_filtered = se / (mean * std::abs(1.0 - alpha));
                const double zeta = (mean * (d - 2.0) + 2.0) / d;
                r.zeta = zeta;
                r.m = std::log(zeta) / (1.0 - alpha);
                r.stderr_m = se * (d - 2.0) / d / (zeta * std::abs(1.0 - alpha));
            }
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace sykmagic
