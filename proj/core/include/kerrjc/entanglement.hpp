#pragma once

#include <array>

#include "kerrjc/state.hpp"

namespace kerrjc {

/// Closed-form spectrum of the atomic reduced state. Valid only under the
/// B = C symmetry, where the antisymmetric |eg> - |ge> direction carries no
/// weight and the remaining three eigenvalues solve a cubic.
struct AtomicSpectrum {
    std::array<double, 4> zeta{};  // zeta[3] == 0 exactly
    double varrho1 = 0.0;          // minus the trace
    double varrho2 = 0.0;
    double varrho3 = 0.0;
};

AtomicSpectrum atomic_eigenvalues_closed_form(const AtomicDensityMatrix& rho);

/// General Hermitian eigensolver, descending.
std::array<double, 4> atomic_eigenvalues_direct(const AtomicDensityMatrix& rho);

/// -sum z ln z with 0 ln 0 = 0; negative rounding dust is dropped.
double von_neumann_entropy(const std::array<double, 4>& eigenvalues);

/// Atom-field entanglement of the pure joint state (nats).
double eof_pure(const AtomicDensityMatrix& rho);

/// (sigma_y x sigma_y) rho* (sigma_y x sigma_y), rho* the elementwise conjugate.
Matrix4c spin_flip(const Matrix4c& rho);

/// Square roots of the eigenvalues of rho * spin_flip(rho), descending.
/// Computed as singular values of V^T (sigma_y x sigma_y) V with rho = V V^dagger,
/// which avoids square-rooting rounding dust in near-zero eigenvalues.
std::array<double, 4> wootters_lambdas(const Matrix4c& rho);

/// Same quantities through a general (non-Hermitian) eigensolver on
/// rho * spin_flip(rho). Throws std::runtime_error when an eigenvalue has
/// an imaginary part above 1e-9.
std::array<double, 4> wootters_lambdas_general(const Matrix4c& rho);

/// Same quantities from the Hermitian form sqrt(rho) rho~ sqrt(rho).
std::array<double, 4> wootters_lambdas_hermitian(const Matrix4c& rho);

double concurrence(const Matrix4c& rho);
inline double concurrence(const AtomicDensityMatrix& rho) { return concurrence(rho.rho); }

/// h(x) = -x ln x - (1-x) ln(1-x).
double binary_entropy(double x);

/// h((1 + sqrt(1 - c^2)) / 2), c clamped to [0, 1].
double eof_from_concurrence(double c);

struct MeasureResult {
    double eof_atom_field = 0.0;
    double concurrence = 0.0;
    double eof_atom_atom = 0.0;
    std::array<double, 4> zeta{};         // closed form, formula order
    std::array<double, 4> zeta_direct{};  // eigensolver, descending
    double consistency_gap = 0.0;         // max |zeta - zeta_direct| after sorting
    double varrho1 = 0.0;
};

MeasureResult measure(const AtomicDensityMatrix& rho);

}  // namespace kerrjc
