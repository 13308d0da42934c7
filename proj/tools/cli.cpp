#include "cli.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "kerrjc/errors.hpp"
#include "kerrjc/scenario.hpp"

namespace kerrjc::cli {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct RealFlag {
    const char* name;
    const char* help;
    double ModelParams::*field;
};

constexpr RealFlag kRealFlags[] = {
    {"--delta", "Detuning", &ModelParams::delta},
    {"--chi1", "Kerr self-action, mode 1", &ModelParams::chi1},
    {"--chi2", "Kerr self-action, mode 2", &ModelParams::chi2},
    {"--chi-cross", "Kerr cross-action", &ModelParams::chi_cross},
    {"--beta1", "Stark coefficient, mode 1", &ModelParams::beta1},
    {"--beta2", "Stark coefficient, mode 2", &ModelParams::beta2},
    {"--phi", "Atomic superposition angle in [0, pi]", &ModelParams::phi},
};

// Flags shared by both subcommands. Parameter overrides are applied on top
// of the preset only when given.
struct ScenarioFlags {
    std::string preset_name;
    std::string coupling = "constant";
    double tau_max = 25.0;
    double eps_trunc = kDefaultEpsTrunc;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    std::string config;
    std::array<double, std::size(kRealFlags)> values{};
    std::array<CLI::Option*, std::size(kRealFlags)> options{};
    CLI::Option* tau_opt = nullptr;
    CLI::Option* eps_opt = nullptr;
    CLI::Option* alpha1_opt = nullptr;
    CLI::Option* alpha2_opt = nullptr;

    void attach(CLI::App& app) {
        app.add_option("--preset", preset_name, "Figure scenario")
            ->required()
            ->check(CLI::IsMember({"a", "b", "c", "d"}));
        app.add_option("--coupling", coupling, "f(n) = 1 (constant) or sqrt(n) (intensity)")
            ->check(CLI::IsMember({"constant", "intensity"}))
            ->capture_default_str();
        tau_opt = app.add_option("--tau-max", tau_max, "Scaled-time horizon lambda*t")
                      ->check(CLI::NonNegativeNumber)
                      ->capture_default_str();
        eps_opt = app.add_option("--eps-trunc", eps_trunc, "Poisson tail bound per mode")
                      ->capture_default_str();
        for (std::size_t i = 0; i < std::size(kRealFlags); ++i) {
            options[i] = app.add_option(kRealFlags[i].name, values[i], kRealFlags[i].help);
        }
        alpha1_opt = app.add_option("--alpha1", alpha1, "Real coherent amplitude, mode 1");
        alpha2_opt = app.add_option("--alpha2", alpha2, "Real coherent amplitude, mode 2");
        app.add_option("--config", config, "key=value file with the same keys as the flags");
    }

    Scenario scenario() const {
        Scenario s = preset(preset_name, parse_coupling(coupling));
        for (std::size_t i = 0; i < std::size(kRealFlags); ++i) {
            if (options[i]->count() > 0) s.params.*kRealFlags[i].field = values[i];
        }
        if (alpha1_opt->count() > 0) s.params.alpha1 = alpha1;
        if (alpha2_opt->count() > 0) s.params.alpha2 = alpha2;
        if (tau_opt->count() > 0) s.tau_max = tau_max;
        if (eps_opt->count() > 0) s.eps_trunc = eps_trunc;
        s.params.validate();
        return s;
    }
};

std::string find_config(const std::vector<std::string>& args) {
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return {};
}

}  // namespace

std::vector<std::string> config_arguments(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::vector<std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config") {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": invalid key");
        }
        out.push_back("--" + key + "=" + value);
    }
    return out;
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two atoms in a two-mode deformed-Kerr cavity: exact dynamics and entanglement"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    ScenarioFlags sim_opts;
    std::string out_path;
    long samples = 1001;
    unsigned threads = 0;
    CLI::App* simulate = app.add_subcommand("simulate", "Compute the entanglement time series");
    sim_opts.attach(*simulate);
    CLI::Option* samples_opt = simulate->add_option("--samples", samples, "Time grid size")
                                   ->check(CLI::PositiveNumber)
                                   ->capture_default_str();
    simulate->add_option("--out", out_path, "Output CSV (default: stdout)");
    simulate->add_option("--threads", threads, "Worker threads (0 = all cores)");

    ScenarioFlags ver_opts;
    long blocks = 20;
    double dt = 1e-4;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Check analytic amplitudes against RK4 integration");
    ver_opts.attach(*verify_cmd);
    verify_cmd->add_option("--blocks", blocks, "Top-weight blocks and random tail blocks, each")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    verify_cmd->add_option("--dt", dt, "Integration step in units of 1/lambda")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // Config entries go right after the subcommand so that flags given on
    // the command line take precedence.
    std::vector<std::string> args = args_in;
    try {
        if (const std::string cfg = find_config(args); !cfg.empty() && args.size() > 1) {
            const auto extra = config_arguments(cfg);
            args.insert(args.begin() + 2, extra.begin(), extra.end());
        }
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (simulate->parsed()) {
            Scenario s = sim_opts.scenario();
            if (samples_opt->count() > 0) s.samples = samples;
            EntanglementSeries series;
            if (out_path.empty()) {
                series = kerrjc::run(s, out, threads);
            } else {
                std::ofstream file(out_path);
                if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
                series = kerrjc::run(s, file, threads);
            }
            err << s.name << ": " << series.rows.size() << " rows, n_max=" << series.n_max
                << ", m_max=" << series.m_max << ", max norm error=" << series.max_norm_error
                << ", max eigenvalue gap=" << series.max_consistency_gap << '\n';
            return 0;
        }

        const Scenario s = ver_opts.scenario();
        VerifyOptions vo;
        vo.top_blocks = blocks;
        vo.tail_blocks = blocks;
        vo.dt = dt;
        vo.tau_max = s.tau_max;
        const VerifyReport report = verify(s, vo);
        out << "# " << s.name << ": " << report.checks.size() << " blocks, tau in [0, " << vo.tau_max
            << "]\n";
        out << "n,m,weight,path,deviation\n";
        for (const BlockCheck& c : report.checks) {
            out << c.n << ',' << c.m << ',' << std::setprecision(6) << c.weight << ','
                << (c.closed_form ? "closed-form" : "eigen") << ',' << c.deviation << '\n';
        }
        out << "max_deviation," << report.max_deviation << '\n'
            << (report.passed ? "PASS" : "FAIL") << '\n';
        return report.passed ? 0 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace kerrjc::cli
