#include "kerrjc/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "kerrjc/errors.hpp"

namespace kerrjc {

BlockOde BlockOde::from_inputs(const BlockInputs& in) {
    return {{in.v_a, in.v_b, in.v_b, in.v_d}, in.k1, in.k2, in.delta};
}

Matrix4c BlockOde::hamiltonian(double t) const {
    const cplx up = std::polar(1.0, delta * t);
    const cplx down = std::conj(up);
    Matrix4c h = Matrix4c::Zero();
    for (int i = 0; i < 4; ++i) h(i, i) = diag[static_cast<std::size_t>(i)];
    h(0, 1) = h(0, 2) = k1 * up;
    h(1, 0) = h(2, 0) = k1 * down;
    h(1, 3) = h(2, 3) = k2 * up;
    h(3, 1) = h(3, 2) = k2 * down;
    return h;
}

double BlockOde::spectral_bound() const {
    const double a = std::abs(k1);
    const double b = std::abs(k2);
    return std::max({std::abs(diag[0]) + 2.0 * a, std::abs(diag[1]) + a + b,
                     std::abs(diag[2]) + a + b, std::abs(diag[3]) + 2.0 * b});
}

BlockIntegrator::BlockIntegrator(const BlockOde& ode, double phi) : ode_(ode) {
    c_ = {cplx{std::cos(phi / 2.0)}, cplx{}, cplx{}, cplx{std::sin(phi / 2.0)}};
}

BlockIntegrator::Vec BlockIntegrator::derivative(double t, const Vec& c) const {
    const cplx up = ode_.delta == 0.0 ? cplx{1.0} : std::polar(1.0, ode_.delta * t);
    const cplx down = std::conj(up);
    const cplx minus_i{0.0, -1.0};
    const cplx bc = c[1] + c[2];
    Vec h{};
    h[0] = ode_.diag[0] * c[0] + ode_.k1 * up * bc;
    h[1] = ode_.k1 * down * c[0] + ode_.diag[1] * c[1] + ode_.k2 * up * c[3];
    h[2] = ode_.k1 * down * c[0] + ode_.diag[2] * c[2] + ode_.k2 * up * c[3];
    h[3] = ode_.k2 * down * bc + ode_.diag[3] * c[3];
    for (cplx& x : h) x *= minus_i;
    return h;
}

void BlockIntegrator::advance_to(double t_end, double dt) {
    if (!(dt > 0.0)) throw StepTooLarge("integration step must be positive");
    if (t_end < t_) throw InvalidParameter("cannot integrate backwards");
    const double span = t_end - t_;
    if (span == 0.0) return;
    const long n = static_cast<long>(std::ceil(span / dt));
    const double h = span / static_cast<double>(n);
    const double t0 = t_;
    Vec tmp{};
    for (long k = 0; k < n; ++k) {
        const double t = t0 + static_cast<double>(k) * h;
        const Vec k1 = derivative(t, c_);
        for (int i = 0; i < 4; ++i) tmp[i] = c_[i] + 0.5 * h * k1[i];
        const Vec k2 = derivative(t + 0.5 * h, tmp);
        for (int i = 0; i < 4; ++i) tmp[i] = c_[i] + 0.5 * h * k2[i];
        const Vec k3 = derivative(t + 0.5 * h, tmp);
        for (int i = 0; i < 4; ++i) tmp[i] = c_[i] + h * k3[i];
        const Vec k4 = derivative(t + h, tmp);
        for (int i = 0; i < 4; ++i) c_[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    steps_ += n;
    t_ = t_end;
}

BlockAmplitudes BlockIntegrator::amplitudes() const { return {c_[0], c_[1], c_[2], c_[3]}; }

double BlockIntegrator::norm_drift() const {
    double s = 0.0;
    for (const cplx& x : c_) s += std::norm(x);
    return std::abs(s - 1.0);
}

BlockAmplitudes integrate_block(const BlockOde& ode, double phi, double t_end, double dt) {
    if (!(dt > 0.0)) throw StepTooLarge("integration step must be positive");
    if (dt * ode.spectral_bound() > kMaxStepPhase) {
        throw StepTooLarge("dt * spectral radius exceeds " + std::to_string(kMaxStepPhase));
    }
    BlockIntegrator integrator(ode, phi);
    integrator.advance_to(t_end, dt);
    return integrator.amplitudes();
}

double oracle_step(const BlockOde& ode, double dt, double horizon) {
    const double radius = ode.spectral_bound();
    if (radius == 0.0) return dt;
    // Global RK4 phase error ~ radius * horizon * (h radius)^4 / 120, kept near 4e-7.
    double phase = kMaxStepPhase;
    if (horizon > 0.0) phase = std::min(phase, std::pow(4.8e-5 / (radius * horizon), 0.25));
    return std::min(dt, phase / radius);
}

double amplitude_distance(const BlockAmplitudes& x, const BlockAmplitudes& y) {
    return std::sqrt(std::norm(x.a - y.a) + std::norm(x.b - y.b) + std::norm(x.c - y.c) +
                     std::norm(x.d - y.d));
}

double compare_block(const ModelParams& params, long n, long m, std::span<const double> time_grid,
                     double dt) {
    const BlockInputs in = block_inputs(params, n, m);
    const BlockPropagator analytic(in);
    const BlockOde ode = BlockOde::from_inputs(in);
    const double horizon = time_grid.empty() ? 0.0 : time_grid.back();
    const double h = oracle_step(ode, dt, horizon);

    BlockIntegrator integrator(ode, params.phi);
    double worst = 0.0;
    for (double t : time_grid) {
        integrator.advance_to(t, h);
        worst = std::max(worst, amplitude_distance(analytic(t), integrator.amplitudes()));
    }
    return worst;
}

}  // namespace kerrjc
