#pragma once

#include <complex>
#include <string>
#include <vector>

namespace kerrjc {

using cplx = std::complex<double>;

/// Operator-valued function h(n) evaluated on photon numbers. Used both for
/// the intensity-dependent coupling f(n) and the Kerr deformation g(n).
class NonlinearityFn {
public:
    enum class Kind { Unit, Sqrt, InverseSqrt, Tabulated };

    NonlinearityFn() = default;

    static NonlinearityFn unit() { return NonlinearityFn(Kind::Unit, {}); }
    static NonlinearityFn sqrt() { return NonlinearityFn(Kind::Sqrt, {}); }
    static NonlinearityFn inverse_sqrt() { return NonlinearityFn(Kind::InverseSqrt, {}); }
    /// values[n] = h(n). Entries must be finite and non-negative.
    static NonlinearityFn tabulated(std::vector<double> values);

    /// Parses "unit", "sqrt", "inverse-sqrt".
    static NonlinearityFn from_name(const std::string& name);

    Kind kind() const { return kind_; }
    const std::vector<double>& table() const { return table_; }
    std::string name() const;

    /// h(n). inverse-sqrt at n = 0 is +inf; callers go through
    /// guarded_square_product() wherever an integer prefactor can vanish.
    double operator()(long n) const;

    bool operator==(const NonlinearityFn&) const = default;

private:
    NonlinearityFn(Kind kind, std::vector<double> table) : kind_(kind), table_(std::move(table)) {}

    Kind kind_ = Kind::Unit;
    std::vector<double> table_;
};

/// prefactor * h(a)^2 * h(b)^2 with the convention that a zero integer
/// prefactor annihilates the product regardless of h (resolves 0 * inf for
/// h(0) = 1/sqrt(0)).
double guarded_square_product(long prefactor, const NonlinearityFn& ha, long a,
                              const NonlinearityFn& hb, long b);

/// Physical parameters of two identical two-level atoms in a two-mode
/// deformed-Kerr cavity with Stark shift. All rates share the unit of lambda.
struct ModelParams {
    double lambda = 1.0;     // atom-field coupling, sets the time scale
    double delta = 0.0;      // detuning
    double chi1 = 0.0;       // Kerr self-action, mode 1
    double chi2 = 0.0;       // Kerr self-action, mode 2
    double chi_cross = 0.0;  // Kerr cross-action
    double beta1 = 0.0;      // Stark coefficient, mode 1 (ground level)
    double beta2 = 0.0;      // Stark coefficient, mode 2 (excited level)
    double phi = 0.0;        // atomic superposition angle in [0, pi]
    cplx alpha1{0.0, 0.0};
    cplx alpha2{0.0, 0.0};
    NonlinearityFn f1 = NonlinearityFn::unit();
    NonlinearityFn f2 = NonlinearityFn::unit();
    NonlinearityFn g1 = NonlinearityFn::unit();
    NonlinearityFn g2 = NonlinearityFn::unit();

    /// Throws InvalidParameter on lambda <= 0, phi outside [0, pi] or any
    /// non-finite rate.
    void validate() const;
};

/// Diagonal energies of the (n, m) block.
struct EffectiveShifts {
    double v_a = 0.0;  // |e e, n, m>
    double v_b = 0.0;  // |e g, n+1, m+1> and |g e, n+1, m+1>
    double v_d = 0.0;  // |g g, n+2, m+2>
};

struct Couplings {
    double k1 = 0.0;
    double k2 = 0.0;
};

/// Deformed Kerr energy V(n, m) including self- and cross-action.
double kerr_potential(const ModelParams& p, long n, long m);

/// Kerr energies at (n,m), (n+1,m+1), (n+2,m+2) plus Stark shifts.
EffectiveShifts effective_shifts(const ModelParams& p, long n, long m);

/// k_j = lambda f1(n+j) f2(m+j) sqrt((n+j)(m+j)), j = 1, 2.
Couplings couplings(const ModelParams& p, long n, long m);

}  // namespace kerrjc
