#include "kerrjc/block.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "kerrjc/errors.hpp"

namespace kerrjc {
namespace {

double spectral_scale(const std::array<double, 3>& xi) {
    double s = 1.0;
    for (double x : xi) s = std::max(s, std::abs(x));
    return s;
}

double min_gap(const std::array<double, 3>& xi) {
    return std::min({std::abs(xi[0] - xi[1]), std::abs(xi[0] - xi[2]), std::abs(xi[1] - xi[2])});
}

}  // namespace

BlockInputs block_inputs(const ModelParams& p, long n, long m) {
    const EffectiveShifts v = effective_shifts(p, n, m);
    const Couplings k = couplings(p, n, m);
    return {n, m, v.v_a, v.v_b, v.v_d, k.k1, k.k2, p.delta, p.phi};
}

CubicCoefficients cubic_coefficients(double v_a, double v_b, double v_d, double k1, double k2,
                                     double delta) {
    CubicCoefficients c;
    c.x1 = v_a + v_b + v_d - 3.0 * delta;
    c.x2 = (v_b - delta) * (v_d - 2.0 * delta) + v_a * (v_b + v_d - 3.0 * delta) -
           2.0 * (k1 * k1 + k2 * k2);
    c.x3 = (2.0 * delta - v_d) * (v_a * (delta - v_b) + 2.0 * k1 * k1) - 2.0 * v_a * k2 * k2;
    return c;
}

CubicRoots solve_cubic(double x1, double x2, double x3) {
    CubicRoots r;
    const double p = x1 * x1 - 3.0 * x2;
    if (p <= 0.0) {
        r.xi.fill(-x1 / 3.0);
        r.degenerate = true;
        return r;
    }
    const double sp = std::sqrt(p);
    double arg = (9.0 * x1 * x2 - 2.0 * x1 * x1 * x1 - 27.0 * x3) / (2.0 * p * sp);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int j = 0; j < 3; ++j) {
        r.xi[j] = -x1 / 3.0 + (2.0 / 3.0) * sp * std::cos(theta + 2.0 * std::numbers::pi * j / 3.0);
    }
    std::sort(r.xi.begin(), r.xi.end());
    r.degenerate = p < kTolDegenerate || min_gap(r.xi) < kTolDegenerate * spectral_scale(r.xi);
    return r;
}

std::array<double, 3> eta_coefficients(const std::array<double, 3>& xi, double v_a, double k1,
                                       double k2, double phi) {
    if (min_gap(xi) < kTolDegenerate * spectral_scale(xi)) {
        throw DegenerateSpectrum("coincident block roots; use the eigendecomposition path");
    }
    const double c = std::cos(phi / 2.0);
    const double s = std::sin(phi / 2.0);
    std::array<double, 3> eta{};
    for (int j = 0; j < 3; ++j) {
        const int k = (j + 1) % 3;
        const int l = (j + 2) % 3;
        const double num = 2.0 * s * k1 * k2 + c * (2.0 * k1 * k1 + (xi[k] + v_a) * (xi[l] + v_a));
        eta[j] = num / ((xi[j] - xi[k]) * (xi[j] - xi[l]));
    }
    return eta;
}

BlockSolution solve_block(const BlockInputs& in) {
    BlockSolution s;
    s.in = in;
    s.x = cubic_coefficients(in.v_a, in.v_b, in.v_d, in.k1, in.k2, in.delta);

    // Remove the mean of the effective diagonal (V_A, V_B - delta, V_D - 2 delta).
    // Roots shift by +shift, all differences and xi + V_A are unchanged.
    const double shift = (in.v_a + in.v_b + in.v_d - 3.0 * in.delta) / 3.0;
    const double va = in.v_a - shift;
    const double vb = in.v_b - shift;
    const double vd = in.v_d - shift;
    const CubicCoefficients xs = cubic_coefficients(va, vb, vd, in.k1, in.k2, in.delta);
    const CubicRoots roots = solve_cubic(xs.x1, xs.x2, xs.x3);

    for (int j = 0; j < 3; ++j) s.xi[j] = roots.xi[j] - shift;

    const double scale = spectral_scale(roots.xi);
    s.degenerate = roots.degenerate || std::min(in.k1, in.k2) < kTolDegenerate * scale;
    if (s.degenerate) return s;

    s.eta = eta_coefficients(roots.xi, va, in.k1, in.k2, in.phi);
    for (int j = 0; j < 3; ++j) {
        const double u = roots.xi[j] + va;         // xi_j + V_A
        const double w = roots.xi[j] + vb - in.delta;  // xi_j + V_B - delta
        s.weight_a[j] = s.eta[j];
        s.weight_b[j] = u * s.eta[j];
        s.weight_d[j] = (u * w - 2.0 * in.k1 * in.k1) * s.eta[j];
    }
    return s;
}

BlockAmplitudes evolve_block(const BlockSolution& s, double t) {
    if (s.degenerate) {
        throw DegenerateSpectrum("block (" + std::to_string(s.in.n) + ", " +
                                 std::to_string(s.in.m) + ") needs the eigendecomposition path");
    }
    cplx sa{}, sb{}, sd{};
    for (int j = 0; j < 3; ++j) {
        const cplx e = std::polar(1.0, s.xi[j] * t);
        sa += s.weight_a[j] * e;
        sb += s.weight_b[j] * e;
        sd += s.weight_d[j] * e;
    }
    const double k1 = s.in.k1;
    const double k2 = s.in.k2;
    const cplx b = -std::polar(1.0, -s.in.delta * t) * sb / (2.0 * k1);
    const cplx d = std::polar(1.0, -2.0 * s.in.delta * t) * sd / (2.0 * k1 * k2);
    return {sa, b, b, d};
}

EigenBlock diagonalize_block(const BlockInputs& in) {
    const double r1 = std::numbers::sqrt2 * in.k1;
    const double r2 = std::numbers::sqrt2 * in.k2;
    Eigen::Matrix3d m;
    m << in.v_a, r1, 0.0,
         r1, in.v_b - in.delta, r2,
         0.0, r2, in.v_d - 2.0 * in.delta;
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);

    EigenBlock e;
    e.in = in;
    const double y0[3] = {std::cos(in.phi / 2.0), 0.0, std::sin(in.phi / 2.0)};
    for (int j = 0; j < 3; ++j) {
        e.energies[j] = es.eigenvalues()(j);
        double ov = 0.0;
        for (int i = 0; i < 3; ++i) {
            e.modes[j][i] = es.eigenvectors()(i, j);
            ov += e.modes[j][i] * y0[i];
        }
        e.overlap[j] = ov;
    }
    return e;
}

BlockAmplitudes evolve_block_eig(const EigenBlock& e, double t) {
    cplx y[3] = {};
    for (int j = 0; j < 3; ++j) {
        const cplx ph = e.overlap[j] * std::polar(1.0, -e.energies[j] * t);
        for (int i = 0; i < 3; ++i) y[i] += ph * e.modes[j][i];
    }
    const cplx b = std::polar(1.0, -e.in.delta * t) * y[1] / std::numbers::sqrt2;
    const cplx d = std::polar(1.0, -2.0 * e.in.delta * t) * y[2];
    return {y[0], b, b, d};
}

BlockAmplitudes evolve_block_eig(const BlockInputs& in, double t) {
    return evolve_block_eig(diagonalize_block(in), t);
}

BlockPropagator::BlockPropagator(const BlockInputs& in) {
    BlockSolution s = solve_block(in);
    if (s.degenerate) {
        impl_ = diagonalize_block(in);
    } else {
        impl_ = std::move(s);
    }
}

BlockAmplitudes BlockPropagator::operator()(double t) const {
    if (const auto* s = std::get_if<BlockSolution>(&impl_)) return evolve_block(*s, t);
    return evolve_block_eig(std::get<EigenBlock>(impl_), t);
}

const BlockInputs& BlockPropagator::inputs() const {
    return std::visit([](const auto& v) -> const BlockInputs& { return v.in; }, impl_);
}

}  // namespace kerrjc
