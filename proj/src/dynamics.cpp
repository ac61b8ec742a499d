#include "sykmagic/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace sykmagic {

PureState product_state(std::string_view pattern) {
    const int n = static_cast<int>(pattern.size());
    if (n < 1 || n > kMaxSites)
        throw std::invalid_argument("product_state: pattern length must be in [1, 16]");
    FockIndex mask = 0;
    for (int i = 0; i < n; ++i) {
        const char c = pattern[static_cast<std::size_t>(i)];
        if (c == '1') mask |= FockIndex{1} << i;
        else if (c != '0')
            throw std::invalid_argument("product_state: pattern must be 0/1");
    }
    PureState psi;
    psi.n_sites = n;
    psi.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    psi.amplitudes[mask] = 1.0;
    psi.sector_particles = std::popcount(mask);
    psi.support = {mask};
    return psi;
}

std::string cdw_pattern(int n_sites) {
    std::string p(static_cast<std::size_t>(n_sites), '0');
    for (int i = 0; i < n_sites; i += 2) p[static_cast<std::size_t>(i)] = '1';
    return p;
}

std::vector<double> default_time_grid() {
    std::vector<double> ts{0.0};
    const int points = 40;
    for (int k = 0; k < points; ++k) {
        const double e = -2.0 + 3.0 * static_cast<double>(k) / (points - 1);
        ts.push_back(std::pow(10.0, e));
    }
    return ts;
}

namespace {

struct PreparedQuench {
    SectorBasis basis;
    EigenDecomposition dec;
    Eigen::VectorXcd psi0_sector;
};

PreparedQuench prepare(const QuenchPlan& plan) {
    auto psi0 = product_state(plan.initial_pattern);
    if (psi0.n_sites != plan.model.n_sites)
        throw std::invalid_argument("quench: pattern length does not match model size");
    const int np = *psi0.sector_particles;
    PreparedQuench p{enumerate_sector(plan.model.n_sites, np), {}, {}};
    p.dec = eig_hermitian(build_sector_matrix(plan.model, p.basis));
    p.psi0_sector = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(p.basis.size()));
    for (std::size_t r = 0; r < p.basis.size(); ++r)
        p.psi0_sector[static_cast<Eigen::Index>(r)] =
            psi0.amplitudes[p.basis.states()[r]];
    return p;
}

PureState state_at(const PreparedQuench& p, double t) {
    return embed_sector_vector(evolve(p.dec, p.psi0_sector, t), p.basis);
}

}  // namespace

std::vector<QuenchPoint> quench_series(const QuenchPlan& plan) {
    if (!std::is_sorted(plan.times.begin(), plan.times.end()))
        throw std::invalid_argument("quench_series: times must be ascending");
    if (!plan.times.empty() && plan.times.front() < 0)
        throw std::invalid_argument("quench_series: times must be >= 0");
    const auto prepared = prepare(plan);

    std::vector<QuenchPoint> out;
    out.reserve(plan.times.size());
    for (double t : plan.times) {
        auto psi_t = state_at(prepared, t);
        QuenchPoint pt;
        pt.t = t;
        if (plan.use_sampler) {
            ChainConfig cfg = plan.sampler_cfg;
            cfg.mode = SamplingMode::Direct;  // time-evolution runs sample directly
            cfg.alphas = {2.0};
            // Independent, reproducible stream per time point.
            cfg.seed = derive_seed(plan.sampler_cfg.seed, 0x7175656e6368ULL,
                                   std::bit_cast<std::uint64_t>(t));
            const auto r = run_chain(psi_t, cfg).front();
            pt.m2 = r.m;
            pt.stderr_m2 = r.stderr_m;
        } else {
            pt.m2 = sre(exact_spectrum(psi_t, false, plan.n_threads), 2.0).m;
        }
        out.push_back(pt);
    }
    return out;
}

SnapshotResult spectrum_snapshot(const QuenchPlan& plan, double t) {
    if (!plan.snapshot_times.empty() &&
        std::find(plan.snapshot_times.begin(), plan.snapshot_times.end(), t) ==
            plan.snapshot_times.end())
        throw std::invalid_argument("spectrum_snapshot: t not in snapshot_times");
    const auto prepared = prepare(plan);
    SnapshotResult snap;
    snap.t = t;
    snap.spectrum = exact_spectrum(state_at(prepared, t), false, plan.n_threads);
    if (snap.spectrum.connected_values().size() >= 100) {
        snap.gaussian_fit = fit_connected(snap.spectrum, DistributionFamily::Gaussian);
        snap.laplace_fit = fit_connected(snap.spectrum, DistributionFamily::Laplace);
    }
    return snap;
}

double saturation_mean(const std::vector<QuenchPoint>& series, double t_lo, double t_hi) {
    double sum = 0.0;
    int count = 0;
    for (const auto& pt : series) {
        if (pt.t >= t_lo && pt.t <= t_hi) {
            sum += pt.m2;
            ++count;
        }
    }
    if (count == 0)
        throw std::invalid_argument("saturation_mean: no points in window");
    return sum / count;
}

}  // namespace sykmagic
