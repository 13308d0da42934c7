#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kerrjc/model.hpp"
#include "kerrjc/state.hpp"

namespace kerrjc {

enum class Coupling { Constant, Intensity };

Coupling parse_coupling(const std::string& name);
std::string to_string(Coupling c);

/// Stark coefficient used by preset d. Not taken from published curves.
inline constexpr double kDefaultStarkBeta = 0.5;

/// Output columns after tau, in canonical order.
enum class Measure { EofAtomField, Concurrence, EofAtomAtom, Zeta, NormError };

struct Scenario {
    std::string name;
    ModelParams params;
    double tau_max = 25.0;
    long samples = 1001;
    double eps_trunc = kDefaultEpsTrunc;
    std::vector<Measure> measures{Measure::EofAtomField, Measure::Concurrence,
                                  Measure::EofAtomAtom, Measure::Zeta, Measure::NormError};
    bool stark_values_published = true;  // false for preset d
};

/// One of the 8 figure scenarios: name in {a, b, c, d}.
/// a: resonance, no Kerr, no Stark
/// b: deformed Kerr chi1 = chi2 = chi/2 = 0.4 lambda, g(n) = 1/sqrt(n)
/// c: detuning 10 lambda
/// d: Stark shift beta1 = beta2 = kDefaultStarkBeta
/// All with |alpha1|^2 = |alpha2|^2 = 10, phi = pi, lambda = 1, and
/// f(n) = 1 (Constant) or f(n) = sqrt(n) (Intensity).
Scenario preset(const std::string& name, Coupling coupling);

struct SeriesRow {
    double tau = 0.0;
    double eof_atom_field = 0.0;
    double concurrence = 0.0;
    double eof_atom_atom = 0.0;
    std::array<double, 4> zeta{};
    double norm_error = 0.0;
    double consistency_gap = 0.0;
    double varrho1 = 0.0;
};

struct EntanglementSeries {
    std::vector<SeriesRow> rows;
    long n_max = 0;
    long m_max = 0;
    long fallback_blocks = 0;
    double max_consistency_gap = 0.0;
    double max_norm_error = 0.0;
};

/// Uniform grid tau_k = k * tau_max / (samples - 1); a single point when
/// tau_max == 0 or samples == 1.
std::vector<double> tau_grid(double tau_max, long samples);

/// Computes the series. Time points are distributed over `threads` workers
/// (0 = hardware concurrency); output order and values do not depend on it.
EntanglementSeries run(const Scenario& scenario, unsigned threads = 0);

/// Writes "# {json metadata}" followed by the CSV header and rows.
void write_csv(std::ostream& out, const Scenario& scenario, const EntanglementSeries& series);

/// run() followed by write_csv().
EntanglementSeries run(const Scenario& scenario, std::ostream& sink, unsigned threads = 0);

struct VerifyOptions {
    long top_blocks = 20;
    long tail_blocks = 20;
    double dt = 1e-4;  // in units of 1/lambda
    double tau_max = 25.0;
    long grid_points = 251;
    double tolerance = 1e-6;
    std::uint64_t seed = 20140601;
};

struct BlockCheck {
    long n = 0;
    long m = 0;
    double weight = 0.0;
    bool closed_form = true;
    double deviation = 0.0;
};

struct VerifyReport {
    std::vector<BlockCheck> checks;
    double max_deviation = 0.0;
    bool passed = true;
};

/// Compares analytic and integrated amplitudes on the highest-weight blocks
/// plus a seeded random sample of the remaining blocks of the truncation grid.
VerifyReport verify(const Scenario& scenario, const VerifyOptions& options = {});

}  // namespace kerrjc
