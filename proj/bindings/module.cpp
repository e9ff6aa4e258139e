#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include <uniqrecall/distribution.hpp>
#include <uniqrecall/evolution.hpp>
#include <uniqrecall/io.hpp>
#include <uniqrecall/powerlaw.hpp>
#include <uniqrecall/recall.hpp>
#include <uniqrecall/simulator.hpp>
#include <uniqrecall/special_functions.hpp>

namespace py = pybind11;
using namespace uniqrecall;

namespace {

std::vector<std::pair<std::uint64_t, double>> entries_out(
    const std::vector<SpectrumEntry>& entries) {
    std::vector<std::pair<std::uint64_t, double>> out;
    out.reserve(entries.size());
    for (const auto& e : entries)
        out.emplace_back(e.k, e.value);
    return out;
}

std::vector<SpectrumEntry> entries_in(
    const std::vector<std::pair<std::uint64_t, double>>& pairs) {
    std::vector<SpectrumEntry> out;
    out.reserve(pairs.size());
    for (const auto& [k, v] : pairs)
        out.push_back({k, v});
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "expected unique-information recall under random sampling "
              "from redundant data";

    py::register_exception<convergence_error>(m, "ConvergenceError");
    py::register_exception<parse_error>(m, "ParseError");

    // representations
    py::class_<FrequencySpectrum>(m, "FrequencySpectrum")
        .def_static(
            "from_dense",
            [](const std::vector<double>& mass, double slack) {
                return FrequencySpectrum::from_dense(mass, slack);
            },
            py::arg("mass"), py::arg("norm_slack") = FrequencySpectrum::kAnalyticSlack)
        .def_static(
            "from_entries",
            [](const std::vector<std::pair<std::uint64_t, double>>& pairs, double slack) {
                return FrequencySpectrum::from_entries(entries_in(pairs), slack);
            },
            py::arg("entries"), py::arg("norm_slack") = FrequencySpectrum::kAnalyticSlack)
        .def_property_readonly("k_max", &FrequencySpectrum::k_max)
        .def("mass_at", &FrequencySpectrum::mass_at, py::arg("k"))
        .def("to_dense", py::overload_cast<>(&FrequencySpectrum::to_dense, py::const_))
        .def("entries", [](const FrequencySpectrum& s) { return entries_out(s.entries()); })
        .def("total_mass", &FrequencySpectrum::total_mass)
        .def("mean_redundancy", &FrequencySpectrum::mean_redundancy)
        .def("__repr__", [](const FrequencySpectrum& s) {
            return "<FrequencySpectrum k_max=" + std::to_string(s.k_max()) + " entries=" +
                   std::to_string(s.entries().size()) + ">";
        });

    py::class_<RedundancyProfile>(m, "RedundancyProfile")
        .def(py::init<std::vector<std::uint64_t>>(), py::arg("ranks"))
        .def_static("from_unsorted", &RedundancyProfile::from_unsorted, py::arg("ranks"))
        .def_property_readonly("ranks", &RedundancyProfile::ranks)
        .def_property_readonly("total", &RedundancyProfile::total)
        .def_property_readonly("distinct", &RedundancyProfile::distinct)
        .def("__repr__", [](const RedundancyProfile& p) {
            return "<RedundancyProfile a=" + std::to_string(p.total()) +
                   " a_u=" + std::to_string(p.distinct()) + ">";
        });

    py::class_<LayerProfile>(m, "LayerProfile")
        .def_static(
            "from_dense",
            [](const std::vector<double>& eta, double slack) {
                return LayerProfile::from_dense(eta, slack);
            },
            py::arg("eta"), py::arg("pin_slack") = 1e-9)
        .def_static(
            "from_entries",
            [](const std::vector<std::pair<std::uint64_t, double>>& pairs, double slack) {
                return LayerProfile::from_entries(entries_in(pairs), slack);
            },
            py::arg("entries"), py::arg("pin_slack") = 1e-9)
        .def_property_readonly("k_max", &LayerProfile::k_max)
        .def("layer_at", &LayerProfile::layer_at, py::arg("k"))
        .def("to_dense", &LayerProfile::to_dense)
        .def("entries", [](const LayerProfile& p) { return entries_out(p.entries()); });

    m.def("validate", [](const FrequencySpectrum& s) {
        const auto report = validate(s);
        return py::make_tuple(report.ok, report.violations);
    });
    m.def("alpha_from_rho", &alpha_from_rho, py::arg("profile"));
    m.def("rho_from_alpha", &rho_from_alpha, py::arg("spectrum"), py::arg("a_u"));
    m.def("eta_from_alpha", &eta_from_alpha, py::arg("spectrum"));
    m.def("alpha_from_eta", &alpha_from_eta, py::arg("layers"));

    // numeric kernels
    py::class_<SeriesConfig>(m, "SeriesConfig")
        .def(py::init([](double tol, std::uint64_t max_terms) {
                 return SeriesConfig{tol, max_terms};
             }),
             py::arg("tol") = 1e-10, py::arg("max_terms") = 10'000'000)
        .def_readwrite("tol", &SeriesConfig::tol)
        .def_readwrite("max_terms", &SeriesConfig::max_terms);
    m.def("polylog", &polylog, py::arg("s"), py::arg("x"),
          py::arg("cfg") = SeriesConfig{});
    m.def("zeta", &zeta, py::arg("s"), py::arg("cfg") = SeriesConfig{});
    m.def("artanh", &artanh, py::arg("x"));
    m.def("binom_real", &binom_real, py::arg("t"), py::arg("k"));
    m.def("gen_harmonic", &gen_harmonic, py::arg("n"), py::arg("s"));

    // recall estimators
    py::enum_<RecallKind>(m, "RecallKind")
        .value("exact", RecallKind::exact)
        .value("asymptotic", RecallKind::asymptotic);
    py::class_<RecallEstimate>(m, "RecallEstimate")
        .def_readonly("value", &RecallEstimate::value)
        .def_readonly("kind", &RecallEstimate::kind)
        .def_readonly("expected_distinct", &RecallEstimate::expected_distinct)
        .def("__repr__", [](const RecallEstimate& e) {
            return "<RecallEstimate value=" + std::to_string(e.value) + ">";
        });
    m.def("unique_recall_uniform", &unique_recall_uniform, py::arg("rho"), py::arg("r"));
    m.def("unique_recall_asymptotic", &unique_recall_asymptotic, py::arg("spectrum"),
          py::arg("r"));
    m.def("unique_recall_exact", &unique_recall_exact, py::arg("profile"), py::arg("b"));
    m.def("variance_uniform_asymptotic", &variance_uniform_asymptotic, py::arg("rho"),
          py::arg("r"), py::arg("a_u"));
    m.def("variance_uniform_exact", &variance_uniform_exact, py::arg("a"), py::arg("rho"),
          py::arg("b"));

    // analytic families
    py::class_<TailFamily> family(m, "TailFamily");
    py::enum_<TailFamily::Kind>(family, "Kind")
        .value("zipf_rank", TailFamily::Kind::zipf_rank)
        .value("frequency_power_law", TailFamily::Kind::frequency_power_law)
        .value("layer_power_law", TailFamily::Kind::layer_power_law)
        .value("invariant", TailFamily::Kind::invariant);
    family.def_static("zipf_rank", &TailFamily::zipf_rank, py::arg("delta"))
        .def_static("frequency_power_law", &TailFamily::frequency_power_law,
                    py::arg("beta"))
        .def_static("layer_power_law", &TailFamily::layer_power_law, py::arg("gamma"))
        .def_static("invariant", &TailFamily::invariant, py::arg("tau"))
        .def_property_readonly("kind", &TailFamily::kind)
        .def_property_readonly("param", &TailFamily::param)
        .def_property_readonly("name", [](const TailFamily& f) {
            return std::string(f.name());
        });
    m.def("family_mass", &family_mass, py::arg("family"), py::arg("k"));
    m.def("family_layer", &family_layer, py::arg("family"), py::arg("k"));
    m.def("materialize", &materialize, py::arg("family"), py::arg("k_max"));
    m.def("recall_closed_form", &recall_closed_form, py::arg("family"), py::arg("r"),
          py::arg("cfg") = SeriesConfig{});
    py::class_<ExponentEquivalents>(m, "ExponentEquivalents")
        .def_readonly("gamma", &ExponentEquivalents::gamma)
        .def_readonly("beta", &ExponentEquivalents::beta)
        .def_readonly("delta", &ExponentEquivalents::delta)
        .def("__repr__", [](const ExponentEquivalents& e) {
            return "<gamma=" + std::to_string(e.gamma) + " beta=" + std::to_string(e.beta) +
                   " delta=" + std::to_string(e.delta) + ">";
        });
    m.def("exponent_convert", &exponent_convert, py::arg("source"), py::arg("value"));
    m.def("k_recall_invariant", &k_recall_invariant, py::arg("tau"), py::arg("r"));
    m.def("quantize_profile", &quantize_profile, py::arg("family"), py::arg("k_max"),
          py::arg("a_u"));

    // sample evolution
    py::class_<SampleSpectrum>(m, "SampleSpectrum")
        .def_readonly("r", &SampleSpectrum::r)
        .def_readonly("delta", &SampleSpectrum::delta)
        .def_readonly("omega", &SampleSpectrum::omega)
        .def_property_readonly("k_max", &SampleSpectrum::k_max);
    py::class_<KRecallCurve>(m, "KRecallCurve")
        .def_readonly("r", &KRecallCurve::r)
        .def_readonly("values", &KRecallCurve::values)
        .def("at", &KRecallCurve::at, py::arg("k"));
    py::class_<CoreBandRow>(m, "CoreBandRow")
        .def_readonly("k", &CoreBandRow::k)
        .def_readonly("k_recall", &CoreBandRow::k_recall)
        .def_readonly("ratio", &CoreBandRow::ratio);
    py::class_<CoreInvarianceReport>(m, "CoreInvarianceReport")
        .def_readonly("r", &CoreInvarianceReport::r)
        .def_readonly("gamma", &CoreInvarianceReport::gamma)
        .def_readonly("band_tol", &CoreInvarianceReport::band_tol)
        .def_readonly("rows", &CoreInvarianceReport::rows)
        .def_readonly("has_band", &CoreInvarianceReport::has_band)
        .def_readonly("band_lo", &CoreInvarianceReport::band_lo)
        .def_readonly("band_hi", &CoreInvarianceReport::band_hi);
    m.def("delta_uniform", &delta_uniform, py::arg("k"), py::arg("rho"), py::arg("r"));
    m.def(
        "evolve",
        [](const FrequencySpectrum& s, double r) { return evolve(s, r); },
        py::arg("spectrum"), py::arg("r"));
    m.def(
        "k_recall_curve",
        [](const FrequencySpectrum& s, double r) { return k_recall_curve(s, r); },
        py::arg("spectrum"), py::arg("r"));
    m.def(
        "core_invariance_report",
        [](const FrequencySpectrum& s, double r, double gamma, double band_tol) {
            return core_invariance_report(s, r, gamma, band_tol);
        },
        py::arg("spectrum"), py::arg("r"), py::arg("gamma"), py::arg("band_tol") = 0.1);

    // urn simulation
    py::class_<SampleDraw>(m, "SampleDraw")
        .def_readonly("counts", &SampleDraw::counts)
        .def_readonly("distinct", &SampleDraw::distinct)
        .def_readonly("unique_recall", &SampleDraw::unique_recall)
        .def("delta_hat", &SampleDraw::delta_hat, py::arg("k_max"))
        .def("omega_hat", &SampleDraw::omega_hat, py::arg("k_max"));
    py::class_<SimulationStats>(m, "SimulationStats")
        .def_readonly("trials", &SimulationStats::trials)
        .def_readonly("master_seed", &SimulationStats::master_seed)
        .def_readonly("mean_unique_recall", &SimulationStats::mean_unique_recall)
        .def_readonly("p5", &SimulationStats::p5)
        .def_readonly("p50", &SimulationStats::p50)
        .def_readonly("p95", &SimulationStats::p95)
        .def_readonly("mean_omega", &SimulationStats::mean_omega)
        .def_readonly("mean_delta", &SimulationStats::mean_delta);
    m.def("derive_trial_seed", &derive_trial_seed, py::arg("master_seed"), py::arg("trial"));
    m.def("sample_once", &sample_once, py::arg("profile"), py::arg("b"), py::arg("seed"));
    m.def("simulate", &simulate, py::arg("profile"), py::arg("b"), py::arg("trials"),
          py::arg("master_seed"));

    // ingestion and fitting
    py::class_<IngestResult>(m, "IngestResult")
        .def_readonly("spectrum", &IngestResult::spectrum)
        .def_readonly("distinct", &IngestResult::distinct)
        .def_readonly("total", &IngestResult::total);
    m.def(
        "ingest_histogram",
        [](const std::string& text) {
            std::istringstream in(text);
            return ingest_histogram(in);
        },
        py::arg("text"));
    m.def(
        "ingest_raw",
        [](const std::string& text) {
            std::istringstream in(text);
            return ingest_raw(in);
        },
        py::arg("text"));
    py::class_<FitResult>(m, "FitResult")
        .def_readonly("gamma", &FitResult::gamma)
        .def_readonly("k_lo", &FitResult::k_lo)
        .def_readonly("k_hi", &FitResult::k_hi)
        .def_readonly("residual", &FitResult::residual)
        .def_readonly("ok", &FitResult::ok)
        .def_readonly("points", &FitResult::points)
        .def_readonly("beta", &FitResult::beta)
        .def_readonly("delta", &FitResult::delta);
    m.def("fit_exponent", &fit_exponent, py::arg("layers"), py::arg("k_lo"),
          py::arg("k_hi"));

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "0.1.0";
#endif
}
