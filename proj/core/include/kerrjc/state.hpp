#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "kerrjc/block.hpp"
#include "kerrjc/model.hpp"

namespace kerrjc {

inline constexpr double kDefaultEpsTrunc = 1e-12;

/// Truncated coherent-state expansion q_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!).
struct CoherentWeights {
    cplx alpha{0.0, 0.0};
    long n_max = 0;
    std::vector<cplx> q;     // raw Poisson amplitudes, n = 0..n_max
    double tail_mass = 0.0;  // sum_{n > n_max} |q_n|^2

    /// q_n, zero outside [0, n_max].
    cplx operator()(long n) const {
        return (n < 0 || n > n_max) ? cplx{} : q[static_cast<std::size_t>(n)];
    }
    /// Amplitudes rescaled to unit norm over the retained range.
    std::vector<cplx> normalized() const;
};

/// Smallest n_max whose Poisson tail is <= eps_trunc. Throws
/// InvalidParameter unless eps_trunc is in (0, 1).
CoherentWeights coherent_weights(cplx alpha, double eps_trunc);

/// Joint state at one time: block amplitudes for every base photon pair
/// (n, m) on the truncation grid, plus the unit-normalized field weights.
struct GlobalState {
    double t = 0.0;
    long n_max = 0;
    long m_max = 0;
    std::vector<cplx> w1;  // size n_max + 1
    std::vector<cplx> w2;  // size m_max + 1
    std::vector<BlockAmplitudes> blocks;  // row-major in (n, m)

    const BlockAmplitudes& block(long n, long m) const {
        return blocks[static_cast<std::size_t>(n * (m_max + 1) + m)];
    }
    /// sum |w1_n w2_m|^2 * block norm.
    double norm() const;
};

using Matrix4c = Eigen::Matrix<cplx, 4, 4>;

/// Reduced state of the two atoms over {|ee>, |eg>, |ge>, |gg>}.
struct AtomicDensityMatrix {
    Matrix4c rho = Matrix4c::Zero();

    cplx operator()(int i, int j) const { return rho(i, j); }
    double trace() const { return rho.trace().real(); }
};

/// Caches the per-mode weights and the per-block propagators of one
/// parameter set so that many time points can be evaluated cheaply.
/// Immutable after construction; state_at() is safe to call concurrently.
class StateEvolver {
public:
    StateEvolver(const ModelParams& params, double eps_trunc = kDefaultEpsTrunc);

    GlobalState state_at(double t) const;

    const ModelParams& params() const { return params_; }
    const CoherentWeights& weights1() const { return weights1_; }
    const CoherentWeights& weights2() const { return weights2_; }
    long n_max() const { return weights1_.n_max; }
    long m_max() const { return weights2_.n_max; }
    const BlockPropagator& propagator(long n, long m) const {
        return propagators_[static_cast<std::size_t>(n * (m_max() + 1) + m)];
    }
    /// Number of blocks routed through the eigendecomposition fallback.
    long fallback_blocks() const;

private:
    ModelParams params_;
    CoherentWeights weights1_;
    CoherentWeights weights2_;
    std::vector<cplx> w1_;
    std::vector<cplx> w2_;
    std::vector<BlockPropagator> propagators_;
};

GlobalState assemble_state(const ModelParams& params, double t,
                           double eps_trunc = kDefaultEpsTrunc);

/// Traces out both field modes. Each atomic level sits on a different
/// photon pair: |ee> on (N, M), |eg>/|ge> on block (N-1, M-1), |gg> on
/// block (N-2, M-2).
AtomicDensityMatrix reduced_atomic_rho(const GlobalState& state);

}  // namespace kerrjc
