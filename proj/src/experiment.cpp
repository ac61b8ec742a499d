#include "sykmagic/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "sykmagic/dynamics.hpp"
#include "sykmagic/eigensolve.hpp"
#include "sykmagic/spectrum.hpp"

namespace sykmagic {

namespace {

constexpr int kSchemaVersion = 1;

std::string alpha_key(double alpha) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", alpha);
    return buf;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int resolve_workers(int configured) {
    if (configured > 0) return configured;
    if (const char* env = std::getenv("SYKMAGIC_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    const auto hw = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, hw);
}

ModelInstance sample_model(ModelKind kind, int n, std::uint64_t seed) {
    return kind == ModelKind::SYK2 ? sample_syk2(n, 1.0, seed)
                                   : sample_syk4(n, 1.0, seed);
}

bool use_sampler(const ExperimentConfig& cfg, int n) {
    if (cfg.estimator == "exact") return false;
    if (cfg.estimator == "sampled") return true;
    return n > 8;  // auto
}

json fit_to_json(const FitResult& f) {
    return json{{"family", to_string(f.family)},
                {"b_fitted", f.b_fitted},
                {"b_constrained", f.b_constrained},
                {"log_likelihood", f.log_likelihood},
                {"d0_model", f.d0_model},
                {"n_points", f.n_points}};
}

json histogram_to_json(const HistogramResult& h) {
    return json{{"bin_centers", h.bin_centers},
                {"density", h.density},
                {"bin_width", h.bin_width},
                {"n_connected", h.n_connected}};
}

struct Task {
    int n = 0;
    int realization = 0;
    std::uint64_t seed = 0;
};

json run_gs_task(const ExperimentConfig& cfg, const Task& task, int inner_threads) {
    const auto model = sample_model(cfg.model, task.n, task.seed);
    auto basis = enumerate_sector(task.n, task.n / 2);
    auto dec = eig_hermitian(build_sector_matrix(model, basis));
    auto psi = ground_state(dec, basis);

    json obs;
    obs["energy"] = dec.eigenvalues[0];
    obs["degenerate_ground"] = dec.degenerate_ground;

    const bool sampled = use_sampler(cfg, task.n);
    if (cfg.command == "gs-sre") {
        json sre_block;
        if (!sampled) {
            auto spec = exact_spectrum(psi, /*allow_large=*/true, inner_threads);
            for (double alpha : cfg.alphas) {
                auto r = filtered_sre(spec, alpha);
                sre_block[alpha_key(alpha)] = {
                    {"zeta", r.zeta}, {"m", r.m}, {"m_filtered", r.m_filtered}};
            }
        } else {
            ChainConfig chain = cfg.sampler;
            chain.mode = SamplingMode::Filtered;
            chain.alphas = cfg.alphas;
            chain.seed = derive_seed(task.seed, 0x636861696eULL);
            chain.n_threads = inner_threads;
            for (const auto& r : run_chain(psi, chain)) {
                sre_block[alpha_key(r.alpha)] = {{"zeta", r.zeta},
                                                 {"m", r.m},
                                                 {"m_filtered", r.m_filtered},
                                                 {"stderr_m", *r.stderr_m},
                                                 {"stderr_m_filtered", *r.stderr_m_filtered}};
            }
        }
        obs["method"] = sampled ? "sampled" : "exact";
        obs["sre"] = std::move(sre_block);
    } else {  // gs-spectrum
        auto spec = exact_spectrum(psi, /*allow_large=*/true, inner_threads);
        obs["n_odd_zero"] = spec.n_odd_zero;
        obs["n_even_zero"] = spec.n_even_zero;
        obs["unit_peak"] = spec.unit_peak;
        obs["m2"] = sre(spec, 2.0).m;
        obs["fits"] = {{"gaussian", fit_to_json(fit_connected(spec, DistributionFamily::Gaussian))},
                       {"laplace", fit_to_json(fit_connected(spec, DistributionFamily::Laplace))}};
        obs["histogram"] = histogram_to_json(histogram(spec, cfg.histogram_bins));
        if (cfg.dump_spectra) {
            const auto dir = std::filesystem::path(cfg.output_dir);
            char name[64];
            std::snprintf(name, sizeof name, "spectrum_N%d_r%03d.csv", task.n,
                          task.realization);
            export_spectrum_csv(spec, dir / name);
            obs["spectrum_csv"] = name;
        }
    }
    return obs;
}

json run_quench_task(const ExperimentConfig& cfg, const Task& task, int inner_threads) {
    QuenchPlan plan;
    plan.model = sample_model(cfg.model, task.n, task.seed);
    plan.initial_pattern =
        cfg.initial_pattern.empty() ? cdw_pattern(task.n) : cfg.initial_pattern;
    plan.times = cfg.times.empty() ? default_time_grid() : cfg.times;
    plan.snapshot_times = cfg.snapshot_times;
    plan.use_sampler = use_sampler(cfg, task.n);
    plan.sampler_cfg = cfg.sampler;
    plan.sampler_cfg.seed = derive_seed(task.seed, 0x636861696eULL);
    plan.sampler_cfg.n_threads = inner_threads;
    plan.n_threads = inner_threads;

    auto series = quench_series(plan);
    json rows = json::array();
    for (const auto& pt : series) {
        json row{{"t", pt.t}, {"m2", pt.m2}};
        if (pt.stderr_m2) row["stderr"] = *pt.stderr_m2;
        rows.push_back(std::move(row));
    }
    json obs;
    obs["series"] = std::move(rows);
    obs["method"] = plan.use_sampler ? "sampled" : "exact";
    if (series.back().t >= 8.0) obs["saturation_m2"] = saturation_mean(series);

    // Snapshots are single-realization data: first realization only,
    // exact enumeration.
    if (task.realization == 0 && !plan.snapshot_times.empty() && task.n <= 8) {
        json snaps = json::array();
        for (double t : plan.snapshot_times) {
            auto snap = spectrum_snapshot(plan, t);
            json s{{"t", t},
                   {"n_even_zero", snap.spectrum.n_even_zero},
                   {"unit_peak", snap.spectrum.unit_peak}};
            if (snap.gaussian_fit) {
                s["gaussian"] = fit_to_json(*snap.gaussian_fit);
                s["laplace"] = fit_to_json(*snap.laplace_fit);
            }
            if (!snap.spectrum.connected_values().empty())
                s["histogram"] = histogram_to_json(
                    histogram(snap.spectrum, cfg.histogram_bins));
            snaps.push_back(std::move(s));
        }
        obs["snapshots"] = std::move(snaps);
    }
    return obs;
}

json run_benchmark_task(const ExperimentConfig& cfg, const Task& task, int inner_threads) {
    // The exact reference enumerates 4^N/2 strings; N = 10, 12 are slow but
    // runnable convergence spot checks, beyond that is out of reach.
    if (task.n > 12)
        throw std::invalid_argument("benchmark: exact reference needs N <= 12");
    const auto model = sample_model(cfg.model, task.n, task.seed);
    auto basis = enumerate_sector(task.n, task.n / 2);
    auto psi = ground_state(eig_hermitian(build_sector_matrix(model, basis)), basis);

    auto spec = exact_spectrum(psi, /*allow_large=*/true, inner_threads);
    const auto exact = filtered_sre(spec, 2.0);

    ChainConfig chain = cfg.sampler;
    chain.mode = SamplingMode::Filtered;
    chain.alphas = {2.0};
    chain.seed = derive_seed(task.seed, 0x636861696eULL);
    chain.n_threads = inner_threads;
    const auto sampled = run_chain(psi, chain).front();

    return json{{"m2_filtered_exact", exact.m_filtered},
                {"m2_filtered_sampled", sampled.m_filtered},
                {"stderr_sampled", *sampled.stderr_m_filtered},
                {"abs_delta", std::abs(sampled.m_filtered - exact.m_filtered)}};
}

json run_task(const ExperimentConfig& cfg, const Task& task, int inner_threads) {
    if (cfg.command == "quench") return run_quench_task(cfg, task, inner_threads);
    if (cfg.command == "benchmark") return run_benchmark_task(cfg, task, inner_threads);
    return run_gs_task(cfg, task, inner_threads);
}

// Mean and sample standard deviation over the stored values; summaries must
// be exactly recomputable from the per-realization records.
json summary_stats(const std::vector<double>& values) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd =
        values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
    return json{{"mean", mean}, {"std", sd}, {"count", values.size()}};
}

void collect(std::map<std::string, std::vector<double>>& sink, const std::string& key,
             double value) {
    sink[key].push_back(value);
}

json build_summary(const ExperimentConfig& cfg, const json& tasks) {
    json out = json::array();
    for (int n : cfg.sizes) {
        std::map<std::string, std::vector<double>> per_obs;
        int requested = 0;
        for (const auto& t : tasks) {
            if (t.at("n").get<int>() != n) continue;
            ++requested;
            if (!t.at("ok").get<bool>()) continue;
            const auto& obs = t.at("observables");
            if (cfg.command == "gs-sre") {
                for (auto& [key, val] : obs.at("sre").items()) {
                    collect(per_obs, "m_" + key, val.at("m").get<double>());
                    collect(per_obs, "m_filtered_" + key,
                            val.at("m_filtered").get<double>());
                }
                collect(per_obs, "energy", obs.at("energy").get<double>());
            } else if (cfg.command == "gs-spectrum") {
                collect(per_obs, "m2", obs.at("m2").get<double>());
                collect(per_obs, "n_even_zero", obs.at("n_even_zero").get<double>());
                collect(per_obs, "gaussian_b",
                        obs.at("fits").at("gaussian").at("b_fitted").get<double>());
                collect(per_obs, "laplace_b",
                        obs.at("fits").at("laplace").at("b_fitted").get<double>());
                collect(per_obs, "laplace_minus_gaussian_loglik",
                        obs.at("fits").at("laplace").at("log_likelihood").get<double>() -
                            obs.at("fits").at("gaussian").at("log_likelihood").get<double>());
            } else if (cfg.command == "quench") {
                for (const auto& row : obs.at("series"))
                    collect(per_obs, "m2@t=" + fmt17(row.at("t").get<double>()),
                            row.at("m2").get<double>());
                if (obs.contains("saturation_m2"))
                    collect(per_obs, "saturation_m2", obs.at("saturation_m2").get<double>());
            } else if (cfg.command == "benchmark") {
                collect(per_obs, "abs_delta", obs.at("abs_delta").get<double>());
                collect(per_obs, "m2_filtered_exact",
                        obs.at("m2_filtered_exact").get<double>());
                collect(per_obs, "m2_filtered_sampled",
                        obs.at("m2_filtered_sampled").get<double>());
            }
        }
        for (const auto& [key, values] : per_obs) {
            json row = summary_stats(values);
            row["n"] = n;
            row["observable"] = key;
            row["requested"] = requested;
            out.push_back(std::move(row));
        }
    }
    return out;
}

}  // namespace

int default_realizations(int n_sites) {
    switch (n_sites) {
        case 4: return 800;
        case 6: return 400;
        case 8: return 200;
        case 10: return 100;
        case 12: return 25;
        case 14: return 5;
        default: return 5;
    }
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.contains("schema_version") || j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::invalid_argument("config: missing or unsupported schema_version");

    ExperimentConfig cfg;
    cfg.command = j.at("command").get<std::string>();
    if (cfg.command != "gs-spectrum" && cfg.command != "gs-sre" &&
        cfg.command != "quench" && cfg.command != "benchmark")
        throw std::invalid_argument("config: unknown command " + cfg.command);

    cfg.model = model_kind_from_string(j.at("model").get<std::string>());
    cfg.sizes = j.at("sizes").get<std::vector<int>>();
    if (cfg.sizes.empty())
        throw std::invalid_argument("config: sizes must be non-empty");
    for (int n : cfg.sizes)
        if (n < 2 || n > kMaxSites || n % 2 != 0)
            throw std::invalid_argument("config: sizes must be even, in [2, 16]");

    if (j.contains("realizations")) {
        const auto& r = j.at("realizations");
        if (r.is_number_integer()) {
            for (int n : cfg.sizes) cfg.realizations[n] = r.get<int>();
        } else {
            for (auto& [key, val] : r.items())
                cfg.realizations[std::stoi(key)] = val.get<int>();
        }
    }
    for (int n : cfg.sizes)
        if (!cfg.realizations.count(n)) cfg.realizations[n] = default_realizations(n);
    for (auto& [n, count] : cfg.realizations)
        if (count < 1)
            throw std::invalid_argument("config: realization counts must be positive");

    if (j.contains("alphas")) cfg.alphas = j.at("alphas").get<std::vector<double>>();
    for (double a : cfg.alphas)
        if (a < 1.0) throw std::invalid_argument("config: alphas must be >= 1");
    if (j.contains("estimator")) {
        cfg.estimator = j.at("estimator").get<std::string>();
        if (cfg.estimator != "auto" && cfg.estimator != "exact" &&
            cfg.estimator != "sampled")
            throw std::invalid_argument("config: estimator must be auto|exact|sampled");
    }
    if (j.contains("sampler")) {
        const auto& s = j.at("sampler");
        if (s.contains("n_samples"))
            cfg.sampler.n_samples = s.at("n_samples").get<std::uint64_t>();
        if (s.contains("burn_in")) cfg.sampler.burn_in = s.at("burn_in").get<std::uint64_t>();
        if (s.contains("thinning"))
            cfg.sampler.thinning = s.at("thinning").get<std::uint64_t>();
        if (s.contains("chains")) cfg.sampler.chain_count = s.at("chains").get<int>();
        if (s.contains("measure_on_accept_only"))
            cfg.sampler.measure_on_accept_only = s.at("measure_on_accept_only").get<bool>();
    }
    if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("times")) cfg.times = j.at("times").get<std::vector<double>>();
    if (j.contains("snapshot_times"))
        cfg.snapshot_times = j.at("snapshot_times").get<std::vector<double>>();
    if (j.contains("initial_pattern"))
        cfg.initial_pattern = j.at("initial_pattern").get<std::string>();
    if (j.contains("histogram_bins")) cfg.histogram_bins = j.at("histogram_bins").get<int>();
    if (j.contains("dump_spectra")) cfg.dump_spectra = j.at("dump_spectra").get<bool>();
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config " + path.string());
    json j;
    f >> j;
    return from_json(j);
}

json ExperimentConfig::to_json() const {
    json r_obj;
    for (const auto& [n, count] : realizations) r_obj[std::to_string(n)] = count;
    json j{{"schema_version", kSchemaVersion},
           {"command", command},
           {"model", to_string(model)},
           {"sizes", sizes},
           {"realizations", r_obj},
           {"alphas", alphas},
           {"estimator", estimator},
           {"sampler",
            {{"n_samples", sampler.n_samples},
             {"burn_in", sampler.burn_in},
             {"thinning", sampler.thinning},
             {"chains", sampler.chain_count},
             {"measure_on_accept_only", sampler.measure_on_accept_only}}},
           {"master_seed", master_seed},
           {"histogram_bins", histogram_bins},
           {"dump_spectra", dump_spectra},
           {"output_dir", output_dir},
           {"workers", workers}};
    if (!times.empty()) j["times"] = times;
    if (!snapshot_times.empty()) j["snapshot_times"] = snapshot_times;
    if (!initial_pattern.empty()) j["initial_pattern"] = initial_pattern;
    return j;
}

json run_experiment(const ExperimentConfig& cfg) {
    std::vector<Task> tasks;
    for (int n : cfg.sizes) {
        const int count = cfg.realizations.at(n);
        for (int r = 0; r < count; ++r)
            tasks.push_back({n, r,
                             derive_seed(cfg.master_seed, static_cast<std::uint64_t>(n),
                                         static_cast<std::uint64_t>(r))});
    }

    const int workers = std::min<int>(resolve_workers(cfg.workers),
                                      static_cast<int>(tasks.size()));
    // Inner parallelism only when the pool itself is not saturated.
    const int inner_threads = workers > 1 ? 1 : 0;

    std::vector<json> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& task = tasks[i];
            json entry{{"n", task.n},
                       {"realization", task.realization},
                       {"seed", task.seed}};
            try {
                entry["observables"] = run_task(cfg, task, inner_threads);
                entry["ok"] = true;
            } catch (const std::exception& e) {
                entry["ok"] = false;
                entry["error"] = e.what();
            }
            results[i] = std::move(entry);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    json task_array = json::array();
    for (auto& r : results) task_array.push_back(std::move(r));

    const auto now = std::chrono::system_clock::now();
    json envelope{
        {"schema_version", kSchemaVersion},
        {"config", cfg.to_json()},
        {"provenance",
         {{"prng_id", kPrngId},
          {"code_version", SYKMAGIC_VERSION},
          {"timestamp",
           std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
               .count()}}},
        {"results", {{"tasks", std::move(task_array)}, {"summary", nullptr}}}};
    envelope["results"]["summary"] = build_summary(cfg, envelope["results"]["tasks"]);
    return envelope;
}

std::filesystem::path run_to_disk(const ExperimentConfig& cfg) {
    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);
    auto envelope = run_experiment(cfg);
    const auto path = dir / "envelope.json";
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << envelope.dump(2) << '\n';
    return path;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    return f;
}

// Summary lookup helper: rows keyed by (n, observable).
const json* find_summary(const json& envelope, int n, const std::string& obs) {
    for (const auto& row : envelope.at("results").at("summary")) {
        if (row.at("n").get<int>() == n && row.at("observable").get<std::string>() == obs)
            return &row;
    }
    return nullptr;
}

}  // namespace

std::vector<std::filesystem::path> export_figure_data(
    const json& envelope, const std::string& figure_id,
    const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto& cfg = envelope.at("config");
    const std::string model = cfg.at("model").get<std::string>();
    const std::string command = cfg.at("command").get<std::string>();
    std::vector<std::filesystem::path> written;

    auto require_command = [&](const char* needed) {
        if (command != needed)
            throw std::invalid_argument("export " + figure_id + " needs a " +
                                        std::string(needed) + " envelope, got " + command);
    };

    if (figure_id == "fig1") {
        require_command("gs-spectrum");
        // Connected-component histogram per (N, realization 0) plus a fit
        // parameter sidecar over all realizations.
        auto hist_csv = open_csv(out_dir / ("fig1_histogram_" + model + ".csv"));
        hist_csv << "model,n,bin_center,density\n";
        auto fits_csv = open_csv(out_dir / ("fig1_fits_" + model + ".csv"));
        fits_csv << "model,n,realization,family,b_fitted,b_constrained,log_likelihood,"
                    "n_points\n";
        for (const auto& t : envelope.at("results").at("tasks")) {
            if (!t.at("ok").get<bool>()) continue;
            const int n = t.at("n").get<int>();
            const auto& obs = t.at("observables");
            if (t.at("realization").get<int>() == 0) {
                const auto& h = obs.at("histogram");
                const auto& centers = h.at("bin_centers");
                const auto& density = h.at("density");
                for (std::size_t b = 0; b < centers.size(); ++b)
                    hist_csv << model << ',' << n << ','
                             << fmt17(centers[b].get<double>()) << ','
                             << fmt17(density[b].get<double>()) << '\n';
            }
            for (const char* fam : {"gaussian", "laplace"}) {
                const auto& f = obs.at("fits").at(fam);
                fits_csv << model << ',' << n << ',' << t.at("realization").get<int>()
                         << ',' << fam << ',' << fmt17(f.at("b_fitted").get<double>())
                         << ',' << fmt17(f.at("b_constrained").get<double>()) << ','
                         << fmt17(f.at("log_likelihood").get<double>()) << ','
                         << f.at("n_points").get<std::uint64_t>() << '\n';
            }
        }
        written.push_back(out_dir / ("fig1_histogram_" + model + ".csv"));
        written.push_back(out_dir / ("fig1_fits_" + model + ".csv"));
    } else if (figure_id == "fig2b") {
        require_command("gs-sre");
        auto csv = open_csv(out_dir / ("fig2b_" + model + ".csv"));
        csv << "n,m2_mean,m2_std,model\n";
        for (int n : cfg.at("sizes").get<std::vector<int>>()) {
            const json* row = find_summary(envelope, n, "m_2");
            if (!row) continue;
            csv << n << ',' << fmt17(row->at("mean").get<double>()) << ','
                << fmt17(row->at("std").get<double>()) << ',' << model << '\n';
        }
        written.push_back(out_dir / ("fig2b_" + model + ".csv"));
    } else if (figure_id == "fig2c" || figure_id == "fig2d") {
        require_command("gs-sre");
        auto csv = open_csv(out_dir / (figure_id + "_" + model + ".csv"));
        csv << "n,alpha,m_filtered_mean,m_filtered_std,model\n";
        for (int n : cfg.at("sizes").get<std::vector<int>>()) {
            for (double alpha : cfg.at("alphas").get<std::vector<double>>()) {
                const json* row =
                    find_summary(envelope, n, "m_filtered_" + alpha_key(alpha));
                if (!row) continue;
                csv << n << ',' << alpha_key(alpha) << ','
                    << fmt17(row->at("mean").get<double>()) << ','
                    << fmt17(row->at("std").get<double>()) << ',' << model << '\n';
            }
        }
        written.push_back(out_dir / (figure_id + "_" + model + ".csv"));
    } else if (figure_id == "fig3") {
        require_command("quench");
        auto hist_csv = open_csv(out_dir / ("fig3_snapshots_" + model + ".csv"));
        hist_csv << "model,n,t,bin_center,density\n";
        auto fits_csv = open_csv(out_dir / ("fig3_fits_" + model + ".csv"));
        fits_csv << "model,n,t,family,b_fitted,log_likelihood\n";
        for (const auto& t : envelope.at("results").at("tasks")) {
            if (!t.at("ok").get<bool>() || !t.at("observables").contains("snapshots"))
                continue;
            const int n = t.at("n").get<int>();
            for (const auto& snap : t.at("observables").at("snapshots")) {
                const double time = snap.at("t").get<double>();
                if (snap.contains("histogram")) {
                    const auto& h = snap.at("histogram");
                    const auto& centers = h.at("bin_centers");
                    const auto& density = h.at("density");
                    for (std::size_t b = 0; b < centers.size(); ++b)
                        hist_csv << model << ',' << n << ',' << fmt17(time) << ','
                                 << fmt17(centers[b].get<double>()) << ','
                                 << fmt17(density[b].get<double>()) << '\n';
                }
                for (const char* fam : {"gaussian", "laplace"}) {
                    if (!snap.contains(fam)) continue;
                    const auto& f = snap.at(fam);
                    fits_csv << model << ',' << n << ',' << fmt17(time) << ',' << fam
                             << ',' << fmt17(f.at("b_fitted").get<double>()) << ','
                             << fmt17(f.at("log_likelihood").get<double>()) << '\n';
                }
            }
        }
        written.push_back(out_dir / ("fig3_snapshots_" + model + ".csv"));
        written.push_back(out_dir / ("fig3_fits_" + model + ".csv"));
    } else if (figure_id == "fig4c") {
        require_command("quench");
        auto csv = open_csv(out_dir / ("fig4c_" + model + ".csv"));
        csv << "n,t,m2_mean,m2_std,model\n";
        for (int n : cfg.at("sizes").get<std::vector<int>>()) {
            for (const auto& row : envelope.at("results").at("summary")) {
                if (row.at("n").get<int>() != n) continue;
                const std::string obs = row.at("observable").get<std::string>();
                if (obs.rfind("m2@t=", 0) != 0) continue;
                csv << n << ',' << obs.substr(5) << ','
                    << fmt17(row.at("mean").get<double>()) << ','
                    << fmt17(row.at("std").get<double>()) << ',' << model << '\n';
            }
        }
        written.push_back(out_dir / ("fig4c_" + model + ".csv"));
    } else if (figure_id == "fig4d") {
        require_command("quench");
        auto csv = open_csv(out_dir / ("fig4d_" + model + ".csv"));
        csv << "n,m2_saturation_mean,m2_saturation_std,model\n";
        for (int n : cfg.at("sizes").get<std::vector<int>>()) {
            const json* row = find_summary(envelope, n, "saturation_m2");
            if (!row) continue;
            csv << n << ',' << fmt17(row->at("mean").get<double>()) << ','
                << fmt17(row->at("std").get<double>()) << ',' << model << '\n';
        }
        written.push_back(out_dir / ("fig4d_" + model + ".csv"));
    } else if (figure_id == "quench-series") {
        require_command("quench");
        // Raw per-realization time series.
        auto csv = open_csv(out_dir / ("quench_series_" + model + ".csv"));
        csv << "t,m2,stderr,model,n,seed,realization\n";
        for (const auto& t : envelope.at("results").at("tasks")) {
            if (!t.at("ok").get<bool>()) continue;
            for (const auto& row : t.at("observables").at("series")) {
                csv << fmt17(row.at("t").get<double>()) << ','
                    << fmt17(row.at("m2").get<double>()) << ',';
                if (row.contains("stderr")) csv << fmt17(row.at("stderr").get<double>());
                csv << ',' << model << ',' << t.at("n").get<int>() << ','
                    << t.at("seed").get<std::uint64_t>() << ','
                    << t.at("realization").get<int>() << '\n';
            }
        }
        written.push_back(out_dir / ("quench_series_" + model + ".csv"));
    } else {
        throw std::invalid_argument("unknown figure id: " + figure_id);
    }
    return written;
}

}  // namespace sykmagic
