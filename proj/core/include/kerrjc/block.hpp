#pragma once

#include <array>
#include <complex>
#include <variant>

#include "kerrjc/model.hpp"

namespace kerrjc {

/// Relative spacing below which two block roots count as coincident.
inline constexpr double kTolDegenerate = 1e-8;

/// Everything needed to evolve one invariant (n, m) block:
/// {|ee,n,m>, |eg,n+1,m+1>, |ge,n+1,m+1>, |gg,n+2,m+2>}.
struct BlockInputs {
    long n = 0;
    long m = 0;
    double v_a = 0.0;
    double v_b = 0.0;
    double v_d = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double delta = 0.0;
    double phi = 0.0;
};

BlockInputs block_inputs(const ModelParams& p, long n, long m);

/// Amplitudes A, B, C, D of one block at a single time (interaction picture).
struct BlockAmplitudes {
    cplx a;
    cplx b;
    cplx c;
    cplx d;

    double norm_sq() const { return std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d); }
};

/// Monic cubic xi^3 + x1 xi^2 + x2 xi + x3 whose roots are the block frequencies.
struct CubicCoefficients {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
};

struct CubicRoots {
    std::array<double, 3> xi{};  // ascending
    bool degenerate = false;
};

CubicCoefficients cubic_coefficients(double v_a, double v_b, double v_d, double k1, double k2,
                                     double delta);

/// Trigonometric (three-real-root) Cardano solution. Never throws; a
/// near-coincident spectrum is reported through CubicRoots::degenerate and
/// must not be fed to eta_coefficients().
CubicRoots solve_cubic(double x1, double x2, double x3);

/// Initial-condition weights of exp(i xi_j t) in A(t). Throws
/// DegenerateSpectrum when two roots coincide within kTolDegenerate.
std::array<double, 3> eta_coefficients(const std::array<double, 3>& xi, double v_a, double k1,
                                       double k2, double phi);

/// Closed-form solution of one block.
///
/// Roots are computed on the energy-shifted problem (diagonal mean removed)
/// so that the Cardano argument stays well conditioned when Kerr or Stark
/// energies dominate the couplings; `xi` holds the unshifted roots.
struct BlockSolution {
    BlockInputs in;
    CubicCoefficients x;          // unshifted coefficients
    std::array<double, 3> xi{};   // ascending
    std::array<double, 3> eta{};
    bool degenerate = false;

    // Per-root weights of exp(i xi_j t) in A, in the sum multiplying
    // -exp(-i delta t)/(2 k1) for B = C, and in the sum multiplying
    // exp(-2 i delta t)/(2 k1 k2) for D.
    std::array<double, 3> weight_a{};
    std::array<double, 3> weight_b{};
    std::array<double, 3> weight_d{};
};

/// Builds the closed-form solution. Never throws; sets `degenerate` when
/// the spectrum is near-coincident or a coupling is too small for the
/// 1/k1 and 1/(k1 k2) prefactors.
BlockSolution solve_block(const BlockInputs& in);

/// Throws DegenerateSpectrum for a degenerate solution.
BlockAmplitudes evolve_block(const BlockSolution& s, double t);

/// Diagonalized effective 3x3 generator acting on (A, sqrt(2) b, d) where
/// B = C = exp(-i delta t) b and D = exp(-2 i delta t) d.
struct EigenBlock {
    BlockInputs in;
    std::array<double, 3> energies{};            // ascending
    std::array<std::array<double, 3>, 3> modes{};  // modes[j] = eigenvector j
    std::array<double, 3> overlap{};             // <mode_j | initial state>
};

EigenBlock diagonalize_block(const BlockInputs& in);
BlockAmplitudes evolve_block_eig(const EigenBlock& e, double t);
BlockAmplitudes evolve_block_eig(const BlockInputs& in, double t);

/// Evaluates a block through the closed form when it is well conditioned and
/// through the eigendecomposition otherwise.
class BlockPropagator {
public:
    explicit BlockPropagator(const BlockInputs& in);

    BlockAmplitudes operator()(double t) const;
    bool closed_form() const { return std::holds_alternative<BlockSolution>(impl_); }
    const BlockInputs& inputs() const;

private:
    std::variant<BlockSolution, EigenBlock> impl_;
};

}  // namespace kerrjc
