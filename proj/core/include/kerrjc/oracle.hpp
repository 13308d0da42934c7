#pragma once

#include <array>
#include <span>

#include "kerrjc/block.hpp"
#include "kerrjc/state.hpp"

namespace kerrjc {

/// Explicitly time-dependent interaction-picture generator of one block in
/// the basis (|ee,n,m>, |eg,n+1,m+1>, |ge,n+1,m+1>, |gg,n+2,m+2>).
struct BlockOde {
    std::array<double, 4> diag{};  // V_A, V_B, V_B, V_D
    double k1 = 0.0;
    double k2 = 0.0;
    double delta = 0.0;

    static BlockOde from_inputs(const BlockInputs& in);

    Matrix4c hamiltonian(double t) const;
    /// Gershgorin bound on the spectral radius (time independent).
    double spectral_bound() const;
};

/// Fixed-step classical RK4 integrator of i dc/dt = H(t) c.
class BlockIntegrator {
public:
    BlockIntegrator(const BlockOde& ode, double phi);

    /// Advances to t_end (>= current time) with uniform steps no longer than dt.
    void advance_to(double t_end, double dt);

    BlockAmplitudes amplitudes() const;
    double time() const { return t_; }
    double norm_drift() const;
    long steps() const { return steps_; }

private:
    using Vec = std::array<cplx, 4>;
    Vec derivative(double t, const Vec& c) const;

    BlockOde ode_;
    Vec c_{};
    double t_ = 0.0;
    long steps_ = 0;
};

/// Maximum stable-and-accurate step: dt * spectral_bound <= 0.1.
inline constexpr double kMaxStepPhase = 0.1;

/// Throws StepTooLarge when dt * spectral_bound() > kMaxStepPhase.
BlockAmplitudes integrate_block(const BlockOde& ode, double phi, double t_end, double dt);

/// Step used by compare_block: the requested dt, shortened where needed so
/// that the accumulated RK4 phase error over `horizon` stays near 4e-7.
double oracle_step(const BlockOde& ode, double dt, double horizon);

/// Euclidean distance between two 4-vectors of amplitudes.
double amplitude_distance(const BlockAmplitudes& x, const BlockAmplitudes& y);

/// Maximum over the (ascending) time grid of the distance between the
/// analytic amplitudes and the integrated ones.
double compare_block(const ModelParams& params, long n, long m, std::span<const double> time_grid,
                     double dt = 1e-4);

}  // namespace kerrjc
