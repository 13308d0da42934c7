#include "kerrjc/state.hpp"

#include <cmath>

#include "kerrjc/errors.hpp"

namespace kerrjc {

std::vector<cplx> CoherentWeights::normalized() const {
    double mass = 0.0;
    for (const cplx& x : q) mass += std::norm(x);
    const double scale = 1.0 / std::sqrt(mass);
    std::vector<cplx> out(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) out[i] = q[i] * scale;
    return out;
}

CoherentWeights coherent_weights(cplx alpha, double eps_trunc) {
    if (!(eps_trunc > 0.0 && eps_trunc < 1.0)) {
        throw InvalidParameter("eps_trunc must lie in (0, 1)");
    }
    CoherentWeights w;
    w.alpha = alpha;
    const double mean = std::norm(alpha);
    if (mean == 0.0) {
        w.q = {cplx{1.0, 0.0}};
        return w;
    }
    if (!std::isfinite(mean)) throw InvalidParameter("coherent amplitude must be finite");

    // Poisson masses out to where they underflow, then upper tails summed
    // from the top so that small tails keep full relative precision.
    const long hi = static_cast<long>(std::ceil(mean + 40.0 * std::sqrt(mean) + 60.0));
    const double log_mean = std::log(mean);
    auto log_mass = [&](long n) {
        return -mean + static_cast<double>(n) * log_mean - std::lgamma(static_cast<double>(n) + 1.0);
    };
    std::vector<double> upper(static_cast<std::size_t>(hi) + 2, 0.0);
    for (long n = hi; n >= 0; --n) {
        upper[static_cast<std::size_t>(n)] =
            upper[static_cast<std::size_t>(n) + 1] + std::exp(log_mass(n));
    }
    long n_max = 0;
    while (n_max < hi && upper[static_cast<std::size_t>(n_max) + 1] > eps_trunc) ++n_max;

    w.n_max = n_max;
    w.tail_mass = upper[static_cast<std::size_t>(n_max) + 1];
    w.q.resize(static_cast<std::size_t>(n_max) + 1);
    const double phase = std::arg(alpha);
    for (long n = 0; n <= n_max; ++n) {
        w.q[static_cast<std::size_t>(n)] =
            std::polar(std::exp(0.5 * log_mass(n)), phase * static_cast<double>(n));
    }
    return w;
}

double GlobalState::norm() const {
    double total = 0.0;
    for (long n = 0; n <= n_max; ++n) {
        for (long m = 0; m <= m_max; ++m) {
            total += std::norm(w1[static_cast<std::size_t>(n)]) *
                     std::norm(w2[static_cast<std::size_t>(m)]) * block(n, m).norm_sq();
        }
    }
    return total;
}

StateEvolver::StateEvolver(const ModelParams& params, double eps_trunc)
    : params_(params),
      weights1_(coherent_weights(params.alpha1, eps_trunc)),
      weights2_(coherent_weights(params.alpha2, eps_trunc)) {
    params_.validate();
    w1_ = weights1_.normalized();
    w2_ = weights2_.normalized();
    propagators_.reserve(static_cast<std::size_t>((n_max() + 1) * (m_max() + 1)));
    for (long n = 0; n <= n_max(); ++n) {
        for (long m = 0; m <= m_max(); ++m) {
            propagators_.emplace_back(block_inputs(params_, n, m));
        }
    }
}

GlobalState StateEvolver::state_at(double t) const {
    GlobalState s;
    s.t = t;
    s.n_max = n_max();
    s.m_max = m_max();
    s.w1 = w1_;
    s.w2 = w2_;
    s.blocks.reserve(propagators_.size());
    for (const BlockPropagator& p : propagators_) s.blocks.push_back(p(t));
    return s;
}

long StateEvolver::fallback_blocks() const {
    long count = 0;
    for (const BlockPropagator& p : propagators_) count += p.closed_form() ? 0 : 1;
    return count;
}

GlobalState assemble_state(const ModelParams& params, double t, double eps_trunc) {
    return StateEvolver(params, eps_trunc).state_at(t);
}

AtomicDensityMatrix reduced_atomic_rho(const GlobalState& state) {
    auto in_grid = [&](long n, long m) {
        return n >= 0 && m >= 0 && n <= state.n_max && m <= state.m_max;
    };
    auto weight = [&](long n, long m) {
        return state.w1[static_cast<std::size_t>(n)] * state.w2[static_cast<std::size_t>(m)];
    };

    Matrix4c rho = Matrix4c::Zero();
    std::array<cplx, 4> v{};
    for (long n = 0; n <= state.n_max + 2; ++n) {
        for (long m = 0; m <= state.m_max + 2; ++m) {
            v.fill(cplx{});
            if (in_grid(n, m)) v[0] = weight(n, m) * state.block(n, m).a;
            if (in_grid(n - 1, m - 1)) {
                const cplx w = weight(n - 1, m - 1);
                const BlockAmplitudes& b = state.block(n - 1, m - 1);
                v[1] = w * b.b;
                v[2] = w * b.c;
            }
            if (in_grid(n - 2, m - 2)) v[3] = weight(n - 2, m - 2) * state.block(n - 2, m - 2).d;
            for (int i = 0; i < 4; ++i) {
                for (int j = i; j < 4; ++j) rho(i, j) += v[i] * std::conj(v[j]);
            }
        }
    }
    for (int i = 0; i < 4; ++i) {
        rho(i, i) = rho(i, i).real();
        for (int j = i + 1; j < 4; ++j) rho(j, i) = std::conj(rho(i, j));
    }
    return {rho};
}

}  // namespace kerrjc
