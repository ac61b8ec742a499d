#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <nlohmann/json.hpp>

#include "sykmagic/dynamics.hpp"
#include "sykmagic/eigensolve.hpp"
#include "sykmagic/experiment.hpp"
#include "sykmagic/fock.hpp"
#include "sykmagic/hamiltonians.hpp"
#include "sykmagic/majorana.hpp"
#include "sykmagic/sampler.hpp"
#include "sykmagic/spectrum.hpp"

namespace py = pybind11;
using namespace sykmagic;

namespace {

std::optional<double> opt(const std::optional<double>& v) { return v; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Majorana spectrum and stabilizer Renyi entropy for SYK models";

    // ---- fock ----
    py::class_<SectorBasis>(m, "SectorBasis")
        .def(py::init<int, int>(), py::arg("n_sites"), py::arg("n_particles"))
        .def_property_readonly("n_sites", &SectorBasis::n_sites)
        .def_property_readonly("n_particles", &SectorBasis::n_particles)
        .def_property_readonly("states", [](const SectorBasis& b) { return b.states(); })
        .def("rank", &SectorBasis::rank)
        .def("contains", &SectorBasis::contains)
        .def("__len__", &SectorBasis::size);

    m.def("enumerate_sector", &enumerate_sector, py::arg("n_sites"),
          py::arg("n_particles"));
    m.def("binomial", &binomial);

    py::class_<PureState>(m, "PureState")
        .def_readonly("n_sites", &PureState::n_sites)
        .def_property_readonly("amplitudes",
                               [](const PureState& s) { return s.amplitudes; })
        .def_readonly("sector_particles", &PureState::sector_particles)
        .def("norm", &PureState::norm);

    m.def("embed_sector_vector", &embed_sector_vector, py::arg("coefficients"),
          py::arg("basis"));
    m.def("inner_product", &inner_product);
    m.def("product_state", [](const std::string& p) { return product_state(p); },
          py::arg("pattern"));
    m.def("cdw_pattern", &cdw_pattern, py::arg("n_sites"));

    // ---- majorana ----
    py::class_<MajoranaString>(m, "MajoranaString")
        .def(py::init<std::uint32_t, int>(), py::arg("bits"), py::arg("n_sites"))
        .def_static("identity", &MajoranaString::identity)
        .def_static("parity", &MajoranaString::parity)
        .def_static("from_hex", &MajoranaString::from_hex, py::arg("hex"),
                    py::arg("n_sites"))
        .def_property_readonly("bits", &MajoranaString::bits)
        .def_property_readonly("n_sites", &MajoranaString::n_sites)
        .def_property_readonly("weight", &MajoranaString::weight)
        .def_property_readonly("even_parity", &MajoranaString::even_parity)
        .def_property_readonly("phase_exponent", &MajoranaString::phase_exponent)
        .def("to_hex", &MajoranaString::to_hex)
        .def("human_name", &MajoranaString::human_name)
        .def("__repr__", [](const MajoranaString& s) {
            return "MajoranaString(" + s.human_name() + ")";
        });

    m.def("hermitizing_phase_exponent", &hermitizing_phase_exponent);
    m.def("apply_string", &apply_string);
    m.def("expectation", &expectation);
    m.def("dense_oracle", &dense_oracle);
    m.def("even_string_count", &even_string_count);
    m.def("even_strings", [](int n_sites) {
        std::vector<MajoranaString> out;
        for (const auto& s : enumerate_even_strings(n_sites)) out.push_back(s);
        return out;
    });

    // ---- hamiltonians ----
    py::enum_<ModelKind>(m, "ModelKind")
        .value("SYK2", ModelKind::SYK2)
        .value("SYK4", ModelKind::SYK4);

    py::class_<ModelInstance>(m, "ModelInstance")
        .def_readonly("kind", &ModelInstance::kind)
        .def_readonly("n_sites", &ModelInstance::n_sites)
        .def_readonly("coupling_j", &ModelInstance::coupling_j)
        .def_readonly("mu", &ModelInstance::mu)
        .def_readonly("seed", &ModelInstance::seed)
        .def_readonly("prng_id", &ModelInstance::prng_id)
        .def_property_readonly("j2", [](const ModelInstance& inst) { return inst.j2; })
        .def("j4_at", &ModelInstance::j4_at);

    m.def("sample_syk2", &sample_syk2, py::arg("n_sites"), py::arg("j"), py::arg("seed"),
          py::arg("mu") = 0.0);
    m.def("sample_syk4", &sample_syk4, py::arg("n_sites"), py::arg("j"), py::arg("seed"),
          py::arg("mu") = 0.0);
    m.def("build_sector_matrix", &build_sector_matrix);
    m.def("dump_couplings", &dump_couplings);
    m.def("load_couplings", &load_couplings);

    // ---- eigensolve ----
    py::class_<EigenDecomposition>(m, "EigenDecomposition")
        .def_property_readonly("eigenvalues",
                               [](const EigenDecomposition& d) { return d.eigenvalues; })
        .def_property_readonly("eigenvectors",
                               [](const EigenDecomposition& d) { return d.eigenvectors; })
        .def_readonly("degenerate_ground", &EigenDecomposition::degenerate_ground);

    m.def("eig_hermitian", &eig_hermitian);
    m.def("ground_state", &ground_state);
    m.def("evolve", &evolve, py::arg("decomposition"), py::arg("psi0"), py::arg("t"));

    // ---- spectrum ----
    py::class_<MajoranaSpectrum>(m, "MajoranaSpectrum")
        .def_readonly("n_sites", &MajoranaSpectrum::n_sites)
        .def_readonly("dim", &MajoranaSpectrum::dim)
        .def_readonly("values", &MajoranaSpectrum::values)
        .def_readonly("n_odd_zero", &MajoranaSpectrum::n_odd_zero)
        .def_readonly("n_even_zero", &MajoranaSpectrum::n_even_zero)
        .def_readonly("unit_peak", &MajoranaSpectrum::unit_peak)
        .def("connected_values", &MajoranaSpectrum::connected_values);

    m.def("exact_spectrum", &exact_spectrum, py::arg("psi"),
          py::arg("allow_large") = false, py::arg("n_threads") = 0);
    m.def("moments_zeta", &moments_zeta);

    py::enum_<SreMethod>(m, "SreMethod")
        .value("Exact", SreMethod::Exact)
        .value("Sampled", SreMethod::Sampled);

    py::class_<SreResult>(m, "SreResult")
        .def_readonly("alpha", &SreResult::alpha)
        .def_readonly("zeta", &SreResult::zeta)
        .def_readonly("m", &SreResult::m)
        .def_readonly("m_filtered", &SreResult::m_filtered)
        .def_readonly("method", &SreResult::method)
        .def_property_readonly("stderr_m",
                               [](const SreResult& r) { return opt(r.stderr_m); })
        .def_property_readonly("stderr_m_filtered", [](const SreResult& r) {
            return opt(r.stderr_m_filtered);
        });

    m.def("sre", &sre);
    m.def("filtered_sre", &filtered_sre);

    py::class_<HistogramResult>(m, "HistogramResult")
        .def_readonly("bin_centers", &HistogramResult::bin_centers)
        .def_readonly("density", &HistogramResult::density)
        .def_readonly("bin_width", &HistogramResult::bin_width)
        .def_readonly("n_connected", &HistogramResult::n_connected);

    m.def("histogram", &histogram, py::arg("spectrum"), py::arg("bin_count") = 0);

    py::enum_<DistributionFamily>(m, "DistributionFamily")
        .value("Gaussian", DistributionFamily::Gaussian)
        .value("Laplace", DistributionFamily::Laplace);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("family", &FitResult::family)
        .def_readonly("b_fitted", &FitResult::b_fitted)
        .def_readonly("b_constrained", &FitResult::b_constrained)
        .def_readonly("log_likelihood", &FitResult::log_likelihood)
        .def_readonly("d0_model", &FitResult::d0_model)
        .def_readonly("n_points", &FitResult::n_points);

    m.def("fit_connected", &fit_connected);
    m.def("gaussian_constrained_b", &gaussian_constrained_b);
    m.def("laplace_constrained_b", &laplace_constrained_b);
    m.def("laplace_model_d0", &laplace_model_d0);
    m.def("export_spectrum_csv", &export_spectrum_csv);

    // ---- sampler ----
    py::enum_<SamplingMode>(m, "SamplingMode")
        .value("Direct", SamplingMode::Direct)
        .value("Filtered", SamplingMode::Filtered);

    py::class_<ChainConfig>(m, "ChainConfig")
        .def(py::init<>())
        .def_readwrite("n_samples", &ChainConfig::n_samples)
        .def_readwrite("burn_in", &ChainConfig::burn_in)
        .def_readwrite("thinning", &ChainConfig::thinning)
        .def_readwrite("mode", &ChainConfig::mode)
        .def_readwrite("alphas", &ChainConfig::alphas)
        .def_readwrite("chain_count", &ChainConfig::chain_count)
        .def_readwrite("seed", &ChainConfig::seed)
        .def_readwrite("measure_on_accept_only", &ChainConfig::measure_on_accept_only)
        .def_readwrite("n_threads", &ChainConfig::n_threads);

    m.def("run_chain", &run_chain, py::arg("psi"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("standard_error", &standard_error);

    // ---- dynamics ----
    py::class_<QuenchPoint>(m, "QuenchPoint")
        .def_readonly("t", &QuenchPoint::t)
        .def_readonly("m2", &QuenchPoint::m2)
        .def_property_readonly("stderr_m2",
                               [](const QuenchPoint& p) { return opt(p.stderr_m2); });

    py::class_<QuenchPlan>(m, "QuenchPlan")
        .def(py::init<>())
        .def_readwrite("model", &QuenchPlan::model)
        .def_readwrite("initial_pattern", &QuenchPlan::initial_pattern)
        .def_readwrite("times", &QuenchPlan::times)
        .def_readwrite("snapshot_times", &QuenchPlan::snapshot_times)
        .def_readwrite("use_sampler", &QuenchPlan::use_sampler)
        .def_readwrite("sampler_cfg", &QuenchPlan::sampler_cfg)
        .def_readwrite("n_threads", &QuenchPlan::n_threads);

    py::class_<SnapshotResult>(m, "SnapshotResult")
        .def_readonly("t", &SnapshotResult::t)
        .def_readonly("spectrum", &SnapshotResult::spectrum)
        .def_readonly("gaussian_fit", &SnapshotResult::gaussian_fit)
        .def_readonly("laplace_fit", &SnapshotResult::laplace_fit);

    m.def("quench_series", &quench_series, py::call_guard<py::gil_scoped_release>());
    m.def("spectrum_snapshot", &spectrum_snapshot,
          py::call_guard<py::gil_scoped_release>());
    m.def("default_time_grid", &default_time_grid);
    m.def("saturation_mean", &saturation_mean, py::arg("series"), py::arg("t_lo") = 8.0,
          py::arg("t_hi") = 12.0);

    // ---- experiment ----
    m.def("default_realizations", &default_realizations);
    m.def(
        "run_experiment",
        [](const std::string& config_json) {
            const auto cfg =
                ExperimentConfig::from_json(nlohmann::json::parse(config_json));
            py::gil_scoped_release release;
            return run_experiment(cfg).dump(2);
        },
        py::arg("config_json"),
        "Run an experiment from a JSON config string; returns the envelope as JSON");
    m.def(
        "export_figure_data",
        [](const std::string& envelope_json, const std::string& figure_id,
           const std::filesystem::path& out_dir) {
            return export_figure_data(nlohmann::json::parse(envelope_json), figure_id,
                                      out_dir);
        },
        py::arg("envelope_json"), py::arg("figure_id"), py::arg("out_dir"));

    m.attr("PRNG_ID") = kPrngId;
    m.attr("__version__") = SYKMAGIC_VERSION;
}
