#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sykmagic/hamiltonians.hpp"
#include "sykmagic/sampler.hpp"

namespace sykmagic {

using json = nlohmann::json;

// Default disorder-ensemble table: N -> realization count.
int default_realizations(int n_sites);

// Versioned, diffable key-value config (JSON, schema_version 1). See the
// README for the full field list.
struct ExperimentConfig {
    std::string command;  // gs-spectrum | gs-sre | quench | benchmark
    ModelKind model = ModelKind::SYK4;
    std::vector<int> sizes;
    std::map<int, int> realizations;  // resolved per size
    std::vector<double> alphas = {1.0, 2.0, 3.0, 4.0, 5.0};
    std::string estimator = "auto";  // auto | exact | sampled
    ChainConfig sampler;
    std::uint64_t master_seed = 0;
    std::vector<double> times;           // quench; empty -> default grid
    std::vector<double> snapshot_times;  // quench
    std::string initial_pattern;         // empty -> "1010..."
    int histogram_bins = 0;              // 0 -> Freedman-Diaconis
    bool dump_spectra = false;           // gs-spectrum: write per-realization CSVs
    std::string output_dir = "out";
    int workers = 0;  // 0 -> SYKMAGIC_WORKERS env or hardware

    static ExperimentConfig from_json(const json& j);
    static ExperimentConfig from_file(const std::filesystem::path& path);
    json to_json() const;
};

// Runs every (N, realization) task on a bounded worker pool. Task seeds are
// derive_seed(master_seed, N, index), so results do not depend on worker
// count or scheduling; failed realizations are recorded and skipped.
json run_experiment(const ExperimentConfig& cfg);

// run_experiment plus persistence: writes envelope.json (and any sidecar
// files) under cfg.output_dir, returns the envelope path.
std::filesystem::path run_to_disk(const ExperimentConfig& cfg);

// Tidy CSV exports per figure panel; returns the written paths.
// Supported ids: fig1, fig2b, fig2c, fig2d, fig3, fig4c, fig4d,
// quench-series.
std::vector<std::filesystem::path> export_figure_data(
    const json& envelope, const std::string& figure_id,
    const std::filesystem::path& out_dir);

}  // namespace sykmagic
