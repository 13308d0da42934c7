#include "kerrjc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>

#include <json.hpp>

#include "kerrjc/entanglement.hpp"
#include "kerrjc/errors.hpp"
#include "kerrjc/oracle.hpp"
#include "parallel.hpp"

namespace kerrjc {
namespace {

nlohmann::ordered_json describe(const NonlinearityFn& h) {
    nlohmann::ordered_json j = h.name();
    if (h.kind() == NonlinearityFn::Kind::Tabulated) {
        j = {{"kind", "tabulated"}, {"values", h.table()}};
    }
    return j;
}

const char* column_name(Measure m) {
    switch (m) {
        case Measure::EofAtomField: return "eof_atom_field";
        case Measure::Concurrence: return "concurrence";
        case Measure::EofAtomAtom: return "eof_atom_atom";
        case Measure::Zeta: return "zeta1,zeta2,zeta3,zeta4";
        case Measure::NormError: return "norm_error";
    }
    return "";
}

std::vector<Measure> canonical(std::vector<Measure> m) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return m;
}

}  // namespace

Coupling parse_coupling(const std::string& name) {
    if (name == "constant") return Coupling::Constant;
    if (name == "intensity") return Coupling::Intensity;
    throw UnknownPreset("coupling must be 'constant' or 'intensity', got '" + name + "'");
}

std::string to_string(Coupling c) { return c == Coupling::Constant ? "constant" : "intensity"; }

Scenario preset(const std::string& name, Coupling coupling) {
    Scenario s;
    s.name = name + "-" + to_string(coupling);
    ModelParams& p = s.params;
    p.lambda = 1.0;
    p.phi = std::numbers::pi;
    p.alpha1 = p.alpha2 = cplx{std::sqrt(10.0), 0.0};
    p.f1 = p.f2 = coupling == Coupling::Constant ? NonlinearityFn::unit() : NonlinearityFn::sqrt();
    p.g1 = p.g2 = NonlinearityFn::unit();

    if (name == "a") {
        // resonance, no Kerr medium, no Stark shift
    } else if (name == "b") {
        p.chi1 = p.chi2 = 0.4;
        p.chi_cross = 0.8;
        p.g1 = p.g2 = NonlinearityFn::inverse_sqrt();
    } else if (name == "c") {
        p.delta = 10.0;
    } else if (name == "d") {
        p.beta1 = p.beta2 = kDefaultStarkBeta;
        s.stark_values_published = false;
    } else {
        throw UnknownPreset("unknown preset '" + name + "' (expected a, b, c or d)");
    }
    return s;
}

std::vector<double> tau_grid(double tau_max, long samples) {
    if (!(tau_max >= 0.0) || !std::isfinite(tau_max)) {
        throw InvalidParameter("tau_max must be finite and non-negative");
    }
    if (samples < 1) throw InvalidParameter("samples must be at least 1");
    if (tau_max == 0.0 || samples == 1) return {0.0};
    std::vector<double> grid(static_cast<std::size_t>(samples));
    for (long k = 0; k < samples; ++k) {
        grid[static_cast<std::size_t>(k)] =
            tau_max * static_cast<double>(k) / static_cast<double>(samples - 1);
    }
    return grid;
}

EntanglementSeries run(const Scenario& scenario, unsigned threads) {
    scenario.params.validate();
    const StateEvolver evolver(scenario.params, scenario.eps_trunc);
    const std::vector<double> taus = tau_grid(scenario.tau_max, scenario.samples);

    EntanglementSeries series;
    series.n_max = evolver.n_max();
    series.m_max = evolver.m_max();
    series.fallback_blocks = evolver.fallback_blocks();
    series.rows.resize(taus.size());

    detail::parallel_for(static_cast<long>(taus.size()), threads, [&](long i) {
        SeriesRow& row = series.rows[static_cast<std::size_t>(i)];
        row.tau = taus[static_cast<std::size_t>(i)];
        const GlobalState state = evolver.state_at(row.tau / scenario.params.lambda);
        const MeasureResult m = measure(reduced_atomic_rho(state));
        row.eof_atom_field = m.eof_atom_field;
        row.concurrence = m.concurrence;
        row.eof_atom_atom = m.eof_atom_atom;
        row.zeta = m.zeta;
        row.consistency_gap = m.consistency_gap;
        row.varrho1 = m.varrho1;
        row.norm_error = std::abs(state.norm() - 1.0);
    });

    for (const SeriesRow& r : series.rows) {
        series.max_consistency_gap = std::max(series.max_consistency_gap, r.consistency_gap);
        series.max_norm_error = std::max(series.max_norm_error, r.norm_error);
    }
    return series;
}

void write_csv(std::ostream& out, const Scenario& scenario, const EntanglementSeries& series) {
    const ModelParams& p = scenario.params;
    const std::vector<Measure> measures = canonical(scenario.measures);

    std::string header = "tau";
    for (Measure m : measures) header += std::string(",") + column_name(m);

    nlohmann::ordered_json meta;
    meta["scenario"] = scenario.name;
    meta["params"] = {
        {"lambda", p.lambda},       {"delta", p.delta},
        {"chi1", p.chi1},           {"chi2", p.chi2},
        {"chi_cross", p.chi_cross}, {"beta1", p.beta1},
        {"beta2", p.beta2},         {"phi", p.phi},
        {"alpha1", {p.alpha1.real(), p.alpha1.imag()}},
        {"alpha2", {p.alpha2.real(), p.alpha2.imag()}},
        {"f1", describe(p.f1)},     {"f2", describe(p.f2)},
        {"g1", describe(p.g1)},     {"g2", describe(p.g2)},
    };
    meta["tau_max"] = scenario.tau_max;
    meta["samples"] = scenario.samples;
    meta["eps_trunc"] = scenario.eps_trunc;
    meta["n_max"] = series.n_max;
    meta["m_max"] = series.m_max;
    meta["fallback_blocks"] = series.fallback_blocks;
    meta["max_consistency_gap"] = series.max_consistency_gap;
    meta["max_norm_error"] = series.max_norm_error;
    meta["time_scale"] = "tau = lambda * t (assumed)";
    meta["entropy_units"] = "nats";
    meta["stark_values_published"] = scenario.stark_values_published;
    meta["columns"] = header;

    out << "# " << meta.dump() << '\n' << header << '\n';
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(15);
    for (const SeriesRow& r : series.rows) {
        out << r.tau;
        for (Measure m : measures) {
            switch (m) {
                case Measure::EofAtomField: out << ',' << r.eof_atom_field; break;
                case Measure::Concurrence: out << ',' << r.concurrence; break;
                case Measure::EofAtomAtom: out << ',' << r.eof_atom_atom; break;
                case Measure::Zeta:
                    for (double z : r.zeta) out << ',' << z;
                    break;
                case Measure::NormError: out << ',' << r.norm_error; break;
            }
        }
        out << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

EntanglementSeries run(const Scenario& scenario, std::ostream& sink, unsigned threads) {
    EntanglementSeries series = run(scenario, threads);
    write_csv(sink, scenario, series);
    return series;
}

VerifyReport verify(const Scenario& scenario, const VerifyOptions& options) {
    const ModelParams& p = scenario.params;
    p.validate();
    if (options.grid_points < 2) throw InvalidParameter("verify needs at least two grid points");
    const CoherentWeights w1 = coherent_weights(p.alpha1, scenario.eps_trunc);
    const CoherentWeights w2 = coherent_weights(p.alpha2, scenario.eps_trunc);

    std::vector<BlockCheck> all;
    for (long n = 0; n <= w1.n_max; ++n) {
        for (long m = 0; m <= w2.n_max; ++m) {
            all.push_back({n, m, std::norm(w1(n)) * std::norm(w2(m)), true, 0.0});
        }
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const BlockCheck& x, const BlockCheck& y) { return x.weight > y.weight; });

    const auto top = static_cast<std::size_t>(std::clamp<long>(options.top_blocks, 0, static_cast<long>(all.size())));
    std::vector<BlockCheck> chosen(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(top));
    std::vector<BlockCheck> rest(all.begin() + static_cast<std::ptrdiff_t>(top), all.end());
    std::mt19937_64 rng(options.seed);
    std::shuffle(rest.begin(), rest.end(), rng);
    const auto tail = static_cast<std::size_t>(std::clamp<long>(options.tail_blocks, 0, static_cast<long>(rest.size())));
    chosen.insert(chosen.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(tail));

    std::vector<double> grid(static_cast<std::size_t>(options.grid_points));
    for (long k = 0; k < options.grid_points; ++k) {
        grid[static_cast<std::size_t>(k)] = options.tau_max / p.lambda * static_cast<double>(k) /
                                            static_cast<double>(options.grid_points - 1);
    }

    detail::parallel_for(static_cast<long>(chosen.size()), 0, [&](long i) {
        BlockCheck& c = chosen[static_cast<std::size_t>(i)];
        c.closed_form = BlockPropagator(block_inputs(p, c.n, c.m)).closed_form();
        c.deviation = compare_block(p, c.n, c.m, grid, options.dt / p.lambda);
    });

    VerifyReport report;
    report.checks = std::move(chosen);
    for (const BlockCheck& c : report.checks) {
        report.max_deviation = std::max(report.max_deviation, c.deviation);
    }
    report.passed = report.max_deviation <= options.tolerance;
    return report;
}

}  // namespace kerrjc
