// uniqrecall: unique-information recall analytics over redundancy
// distributions. Subcommands read a histogram or raw item dump (file or
// stdin), write tab-separated tables to stdout, and report errors as a
// single machine-parseable line on stderr.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <uniqrecall/evolution.hpp>
#include <uniqrecall/io.hpp>
#include <uniqrecall/powerlaw.hpp>
#include <uniqrecall/recall.hpp>
#include <uniqrecall/simulator.hpp>

using namespace uniqrecall;
using nlohmann::json;

namespace {

struct InputOptions {
    std::string path = "-";
    std::string format = "histogram";
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--in", in.path, "input file ('-' for stdin)")
        ->capture_default_str();
    cmd->add_option("--from", in.format, "input format")
        ->check(CLI::IsMember({"histogram", "raw"}))
        ->capture_default_str();
}

IngestResult load(const InputOptions& in) {
    std::string text;
    if (in.path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream file(in.path);
        if (!file)
            throw std::ios_base::failure("cannot open input file '" + in.path + "'");
        std::ostringstream buf;
        buf << file.rdbuf();
        text = buf.str();
    }
    std::istringstream stream(text);
    return in.format == "raw" ? ingest_raw(stream) : ingest_histogram(stream);
}

TailFamily make_family(const std::string& name, double param) {
    if (name == "zipf")
        return TailFamily::zipf_rank(param);
    if (name == "alpha")
        return TailFamily::frequency_power_law(param);
    if (name == "eta")
        return TailFamily::layer_power_law(param);
    return TailFamily::invariant(param);
}

SeriesConfig series_config_from_env() {
    SeriesConfig cfg;
    if (const char* tol = std::getenv("UNIQ_RECALL_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(tol, &end);
        if (end != tol && v > 0.0)
            cfg.tol = v;
    }
    return cfg;
}

std::uint64_t round_draws(double r, std::uint64_t a) {
    return static_cast<std::uint64_t>(std::llround(r * static_cast<double>(a)));
}

int run_convert(const InputOptions& in, const std::string& to,
                std::optional<std::uint64_t> a_u_override) {
    const auto data = load(in);
    const std::uint64_t a_u = a_u_override.value_or(data.distinct);
    if (to == "alpha") {
        std::cout << "# convert to=alpha a_u=" << data.distinct << " a=" << data.total
                  << " columns=k,alpha\n";
        for (const auto& e : data.spectrum.entries())
            std::cout << e.k << '\t' << format_value(e.value) << '\n';
    } else if (to == "eta") {
        const auto layers = eta_from_alpha(data.spectrum);
        std::cout << "# convert to=eta a_u=" << data.distinct << " a=" << data.total
                  << " columns=k,eta\n";
        for (const auto& e : layers.entries())
            std::cout << e.k << '\t' << format_value(e.value) << '\n';
    } else {
        const auto profile = rho_from_alpha(data.spectrum, a_u);
        std::cout << "# convert to=rho a_u=" << profile.distinct()
                  << " a=" << profile.total() << " columns=rank,rho\n";
        for (std::size_t i = 0; i < profile.ranks().size(); ++i)
            std::cout << (i + 1) << '\t' << profile.ranks()[i] << '\n';
    }
    return 0;
}

int run_recall(const InputOptions& in, double r, bool exact,
               const std::string& family_name, double param, bool as_json) {
    const SeriesConfig cfg = series_config_from_env();
    if (!family_name.empty()) {
        const auto family = make_family(family_name, param);
        const auto estimate = recall_closed_form(family, r, cfg);
        if (as_json) {
            std::cout << json{{"kind", "family"},
                              {"family", std::string(family.name())},
                              {"param", param},
                              {"r", r},
                              {"unique_recall", estimate.value}}
                      << '\n';
        } else {
            std::cout << "# recall kind=family family=" << family.name()
                      << " param=" << format_value(param)
                      << " columns=r,unique_recall\n"
                      << format_value(r) << '\t' << format_value(estimate.value) << '\n';
        }
        return 0;
    }

    const auto data = load(in);
    if (exact) {
        const std::uint64_t b = round_draws(r, data.total);
        const double effective_r =
            static_cast<double>(b) / static_cast<double>(data.total);
        const auto profile = rho_from_alpha(data.spectrum, data.distinct);
        const auto estimate = unique_recall_exact(profile, b);
        if (as_json) {
            std::cout << json{{"kind", "exact"},
                              {"r", r},
                              {"b", b},
                              {"effective_r", effective_r},
                              {"unique_recall", estimate.value},
                              {"expected_b_u", *estimate.expected_distinct}}
                      << '\n';
        } else {
            std::cout << "# recall kind=exact b=" << b
                      << " effective_r=" << format_value(effective_r)
                      << " columns=r,unique_recall,expected_b_u\n"
                      << format_value(effective_r) << '\t' << format_value(estimate.value)
                      << '\t' << format_value(*estimate.expected_distinct) << '\n';
        }
        return 0;
    }

    const auto estimate = unique_recall_asymptotic(data.spectrum, r);
    if (as_json) {
        std::cout << json{{"kind", "asymptotic"}, {"r", r}, {"unique_recall", estimate.value}}
                  << '\n';
    } else {
        std::cout << "# recall kind=asymptotic columns=r,unique_recall\n"
                  << format_value(r) << '\t' << format_value(estimate.value) << '\n';
    }
    return 0;
}

int run_simulate(const InputOptions& in, double r, std::uint64_t trials,
                 std::uint64_t seed, bool as_json) {
    const auto data = load(in);
    const std::uint64_t b = round_draws(r, data.total);
    const auto profile = rho_from_alpha(data.spectrum, data.distinct);
    const auto stats = simulate(profile, b, trials, seed);
    const double effective_r = static_cast<double>(b) / static_cast<double>(data.total);
    if (as_json) {
        std::cout << json{{"trials", stats.trials},
                          {"seed", stats.master_seed},
                          {"b", b},
                          {"effective_r", effective_r},
                          {"mean_unique_recall", stats.mean_unique_recall},
                          {"p5", stats.p5},
                          {"p50", stats.p50},
                          {"p95", stats.p95},
                          {"mean_omega", stats.mean_omega},
                          {"mean_delta", stats.mean_delta}}
                  << '\n';
        return 0;
    }
    std::cout << "# simulate trials=" << stats.trials << " seed=" << stats.master_seed
              << " b=" << b << " effective_r=" << format_value(effective_r)
              << " mean_r_u=" << format_value(stats.mean_unique_recall)
              << " p5=" << format_value(stats.p5) << " p50=" << format_value(stats.p50)
              << " p95=" << format_value(stats.p95) << " columns=k,mean_delta,mean_omega\n";
    for (std::size_t k = 0; k < stats.mean_delta.size(); ++k)
        std::cout << k << '\t' << format_value(stats.mean_delta[k]) << '\t'
                  << format_value(stats.mean_omega[k]) << '\n';
    return 0;
}

int run_fit(const InputOptions& in, std::uint64_t k_lo, std::uint64_t k_hi, bool as_json) {
    const auto data = load(in);
    const auto fit = fit_exponent(eta_from_alpha(data.spectrum), k_lo, k_hi);
    if (as_json) {
        std::cout << json{{"gamma", fit.gamma},     {"beta", fit.beta},
                          {"delta", fit.delta},     {"residual", fit.residual},
                          {"quality", fit.ok ? "ok" : "poor"},
                          {"k_lo", fit.k_lo},       {"k_hi", fit.k_hi},
                          {"points", fit.points}}
                  << '\n';
        return 0;
    }
    std::cout << "# fit k_lo=" << fit.k_lo << " k_hi=" << fit.k_hi
              << " columns=param,value\n";
    std::cout << "gamma\t" << format_value(fit.gamma) << '\n';
    std::cout << "beta\t" << format_value(fit.beta) << '\n';
    std::cout << "delta\t" << format_value(fit.delta) << '\n';
    std::cout << "residual\t" << format_value(fit.residual) << '\n';
    std::cout << "points\t" << fit.points << '\n';
    std::cout << "quality\t" << (fit.ok ? "ok" : "poor") << '\n';
    return 0;
}

int run_rule_of_thumb(double r) {
    const SeriesConfig cfg = series_config_from_env();
    std::cout << "# rule-of-thumb r=" << format_value(r)
              << " columns=family,exponent,unique_recall\n";
    const auto zipf = recall_closed_form(TailFamily::zipf_rank(1.0), r, cfg);
    const auto freq = recall_closed_form(TailFamily::frequency_power_law(2.0), r, cfg);
    const auto layer = recall_closed_form(TailFamily::layer_power_law(1.0), r, cfg);
    std::cout << "zipf\tdelta=1\t" << format_value(zipf.value) << '\n';
    std::cout << "alpha\tbeta=2\t" << format_value(freq.value) << '\n';
    std::cout << "eta\tgamma=1\t" << format_value(layer.value) << '\n';
    return 0;
}

int run_plot_data(const std::string& kind, const InputOptions& in, bool have_in,
                  const std::string& family_name, double param, std::uint64_t k_max,
                  double r, std::uint64_t r_steps, std::optional<double> gamma,
                  std::uint64_t max_k) {
    const SeriesConfig cfg = series_config_from_env();
    const bool family_source = !family_name.empty();
    if (!family_source && !have_in)
        throw std::invalid_argument("plot-data: needs --in or --family");

    std::optional<TailFamily> family;
    if (family_source)
        family = make_family(family_name, param);

    if (kind == "recall-curve") {
        std::vector<double> grid;
        if (r_steps < 2)
            throw std::invalid_argument("plot-data: --r-steps must be >= 2");
        for (std::uint64_t i = 0; i <= r_steps; ++i)
            grid.push_back(static_cast<double>(i) / static_cast<double>(r_steps));
        if (family_source)
            emit_recall_curve(std::cout, *family, grid, cfg);
        else
            emit_recall_curve(std::cout, load(in).spectrum, grid);
        return 0;
    }

    // the remaining kinds work on a concrete spectrum
    FrequencySpectrum spectrum;
    std::string note;
    if (family_source) {
        spectrum = materialize(*family, k_max);
        const double terminal =
            spectrum.mass_at(spectrum.k_max()) - family_mass(*family, spectrum.k_max());
        note = "family=" + std::string(family->name()) + " param=" + format_value(param) +
               " terminal_mass=" + format_value(std::max(terminal, 0.0));
    } else {
        spectrum = load(in).spectrum;
    }

    if (kind == "loglog") {
        emit_loglog(std::cout, eta_from_alpha(spectrum), note);
    } else if (kind == "krecall") {
        emit_krecall(std::cout, spectrum, r, gamma, max_k);
    } else if (kind == "evolution") {
        emit_evolution(std::cout, spectrum, r);
    } else {
        throw std::invalid_argument("plot-data: unknown kind '" + kind + "'");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unique-information recall analytics for redundant data"};
    app.require_subcommand(1);

    // convert
    auto* convert = app.add_subcommand("convert", "re-express ingested data");
    InputOptions convert_in;
    add_input_options(convert, convert_in);
    std::string convert_to;
    std::uint64_t convert_au = 0;
    convert->add_option("--to", convert_to, "target representation")
        ->check(CLI::IsMember({"alpha", "eta", "rho"}))
        ->required();
    auto* convert_au_opt =
        convert->add_option("--a-u", convert_au, "override a_u for --to rho");

    // recall
    auto* recall = app.add_subcommand("recall", "expected unique recall");
    InputOptions recall_in;
    add_input_options(recall, recall_in);
    double recall_r = 0.0;
    bool recall_exact = false;
    std::string recall_family;
    double recall_param = 0.0;
    bool recall_json = false;
    recall->add_option("--r", recall_r, "recall fraction in [0,1]")->required();
    recall->add_flag("--exact", recall_exact, "finite-population expectation");
    recall->add_option("--family", recall_family, "closed-form family")
        ->check(CLI::IsMember({"zipf", "alpha", "eta", "invariant"}));
    recall->add_option("--param", recall_param, "family exponent");
    recall->add_flag("--json", recall_json, "machine-readable summary");

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "expected sample distribution");
    InputOptions evolve_in;
    add_input_options(evolve_cmd, evolve_in);
    double evolve_r = 0.0;
    evolve_cmd->add_option("--r", evolve_r, "recall fraction")->required();

    // krecall
    auto* krecall = app.add_subcommand("krecall", "per-layer k-recall curve");
    InputOptions krecall_in;
    add_input_options(krecall, krecall_in);
    double krecall_r = 0.0;
    double krecall_gamma = 0.0;
    bool have_gamma = false;
    std::uint64_t krecall_max_k = 0;
    krecall->add_option("--r", krecall_r, "recall fraction")->required();
    krecall->add_option("--gamma", krecall_gamma, "append the r_uk/r^gamma ratio column")
        ->each([&](const std::string&) { have_gamma = true; });
    krecall->add_option("--max-k", krecall_max_k, "truncate the table at this k");

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo urn draws");
    InputOptions simulate_in;
    add_input_options(simulate_cmd, simulate_in);
    double simulate_r = 0.0;
    std::uint64_t simulate_trials = 1000;
    std::uint64_t simulate_seed = 12345;
    bool simulate_json = false;
    simulate_cmd->add_option("--r", simulate_r, "recall fraction")->required();
    simulate_cmd->add_option("--trials", simulate_trials, "number of trials")
        ->capture_default_str();
    simulate_cmd->add_option("--seed", simulate_seed, "master seed")->capture_default_str();
    simulate_cmd->add_flag("--json", simulate_json, "machine-readable summary");

    // fit
    auto* fit = app.add_subcommand("fit", "log-log layer exponent fit");
    InputOptions fit_in;
    add_input_options(fit, fit_in);
    std::uint64_t fit_lo = 0, fit_hi = 0;
    bool fit_json = false;
    fit->add_option("--k-lo", fit_lo, "lower end of the fit range")->required();
    fit->add_option("--k-hi", fit_hi, "upper end of the fit range")->required();
    fit->add_flag("--json", fit_json, "machine-readable summary");

    // rule-of-thumb
    auto* rot = app.add_subcommand("rule-of-thumb",
                                   "three-family recall values at one recall");
    double rot_r = 0.2;
    rot->add_option("--r", rot_r, "recall fraction")->capture_default_str();

    // plot-data
    auto* plot = app.add_subcommand("plot-data", "tables behind the standard plots");
    InputOptions plot_in;
    add_input_options(plot, plot_in);
    std::string plot_kind;
    std::string plot_family;
    double plot_param = 0.0;
    std::uint64_t plot_k_max = 10'000;
    double plot_r = 0.5;
    std::uint64_t plot_r_steps = 20;
    double plot_gamma = 0.0;
    bool plot_have_gamma = false;
    std::uint64_t plot_max_k = 0;
    plot->add_option("--kind", plot_kind, "table kind")
        ->check(CLI::IsMember({"recall-curve", "krecall", "loglog", "evolution"}))
        ->required();
    plot->add_option("--family", plot_family, "analytic family source")
        ->check(CLI::IsMember({"zipf", "alpha", "eta", "invariant"}));
    plot->add_option("--param", plot_param, "family exponent");
    plot->add_option("--k-max", plot_k_max, "materialization cutoff for family sources")
        ->capture_default_str();
    plot->add_option("--r", plot_r, "recall fraction for krecall/evolution")
        ->capture_default_str();
    plot->add_option("--r-steps", plot_r_steps, "grid steps for recall-curve")
        ->capture_default_str();
    plot->add_option("--gamma", plot_gamma, "ratio column exponent for krecall")
        ->each([&](const std::string&) { plot_have_gamma = true; });
    plot->add_option("--max-k", plot_max_k, "truncate krecall rows at this k");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help and friends
        std::ostringstream msg;
        app.exit(e, msg, msg);
        std::string line = msg.str();
        for (auto& ch : line)
            if (ch == '\n')
                ch = ' ';
        std::cerr << "E_USAGE: " << line << '\n';
        return 2;
    }

    try {
        if (convert->parsed())
            return run_convert(convert_in, convert_to,
                               convert_au_opt->count() ? std::optional(convert_au)
                                                       : std::nullopt);
        if (recall->parsed())
            return run_recall(recall_in, recall_r, recall_exact, recall_family,
                              recall_param, recall_json);
        if (evolve_cmd->parsed()) {
            emit_evolution(std::cout, load(evolve_in).spectrum, evolve_r);
            return 0;
        }
        if (krecall->parsed()) {
            emit_krecall(std::cout, load(krecall_in).spectrum, krecall_r,
                         have_gamma ? std::optional(krecall_gamma) : std::nullopt,
                         krecall_max_k);
            return 0;
        }
        if (simulate_cmd->parsed())
            return run_simulate(simulate_in, simulate_r, simulate_trials, simulate_seed,
                                simulate_json);
        if (fit->parsed())
            return run_fit(fit_in, fit_lo, fit_hi, fit_json);
        if (rot->parsed())
            return run_rule_of_thumb(rot_r);
        if (plot->parsed())
            return run_plot_data(plot_kind, plot_in, plot->count("--in") > 0, plot_family,
                                 plot_param, plot_k_max, plot_r, plot_r_steps,
                                 plot_have_gamma ? std::optional(plot_gamma) : std::nullopt,
                                 plot_max_k);
    } catch (const parse_error& e) {
        std::cerr << "E_PARSE: " << e.what() << '\n';
        return 1;
    } catch (const convergence_error& e) {
        std::cerr << "E_CONVERGENCE: " << e.what() << '\n';
        return 1;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "E_IO: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "E_DOMAIN: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "E_INVALID: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "E_INTERNAL: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
