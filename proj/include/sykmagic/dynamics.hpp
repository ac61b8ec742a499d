#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sykmagic/eigensolve.hpp"
#include "sykmagic/hamiltonians.hpp"
#include "sykmagic/sampler.hpp"
#include "sykmagic/spectrum.hpp"

namespace sykmagic {

// Quench experiment: switch the Hamiltonian on at t = 0 over a stabilizer
// product state and track M2 and spectrum snapshots along the time grid
// (times in units of 1/J).
struct QuenchPlan {
    ModelInstance model;
    std::string initial_pattern;  // occupation bitstring, site 1 first
    std::vector<double> times;    // ascending, >= 0
    std::vector<double> snapshot_times;  // subset of times
    bool use_sampler = false;     // exact enumeration (N <= 8) vs Monte Carlo
    ChainConfig sampler_cfg;
    int n_threads = 0;
};

// Unit amplitude on one occupation mask; pattern character i is site i+1.
PureState product_state(std::string_view pattern);

// Charge-density-wave pattern "1010...".
std::string cdw_pattern(int n_sites);

struct QuenchPoint {
    double t = 0.0;
    double m2 = 0.0;
    std::optional<double> stderr_m2;
};

std::vector<QuenchPoint> quench_series(const QuenchPlan& plan);

struct SnapshotResult {
    double t = 0.0;
    MajoranaSpectrum spectrum;
    // Absent when the connected component is too small to fit (e.g. t = 0,
    // where the spectrum is pure atoms at 0 and +-1).
    std::optional<FitResult> gaussian_fit;
    std::optional<FitResult> laplace_fit;
};

// Full spectrum plus both family fits at one snapshot time.
SnapshotResult spectrum_snapshot(const QuenchPlan& plan, double t);

// Log grid 1e-2..1e1 with 40 points, preceded by t = 0.
std::vector<double> default_time_grid();

// Mean of M2 over grid points with t in [t_lo, t_hi] (saturation window).
double saturation_mean(const std::vector<QuenchPoint>& series, double t_lo = 8.0,
                       double t_hi = 12.0);

}  // namespace sykmagic
