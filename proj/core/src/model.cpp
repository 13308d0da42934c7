#include "kerrjc/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "kerrjc/errors.hpp"

namespace kerrjc {

NonlinearityFn NonlinearityFn::tabulated(std::vector<double> values) {
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InvalidParameter("tabulated nonlinearity values must be finite and non-negative");
        }
    }
    return NonlinearityFn(Kind::Tabulated, std::move(values));
}

NonlinearityFn NonlinearityFn::from_name(const std::string& name) {
    if (name == "unit") return unit();
    if (name == "sqrt") return sqrt();
    if (name == "inverse-sqrt") return inverse_sqrt();
    throw InvalidParameter("unknown nonlinearity '" + name + "'");
}

std::string NonlinearityFn::name() const {
    switch (kind_) {
        case Kind::Unit: return "unit";
        case Kind::Sqrt: return "sqrt";
        case Kind::InverseSqrt: return "inverse-sqrt";
        case Kind::Tabulated: return "tabulated";
    }
    return "unknown";
}

double NonlinearityFn::operator()(long n) const {
    if (n < 0) throw InvalidParameter("nonlinearity evaluated at negative photon number");
    switch (kind_) {
        case Kind::Unit: return 1.0;
        case Kind::Sqrt: return std::sqrt(static_cast<double>(n));
        case Kind::InverseSqrt:
            return n == 0 ? std::numeric_limits<double>::infinity()
                          : 1.0 / std::sqrt(static_cast<double>(n));
        case Kind::Tabulated:
            if (static_cast<std::size_t>(n) >= table_.size()) {
                throw InvalidParameter("tabulated nonlinearity has no value for n = " +
                                       std::to_string(n));
            }
            return table_[static_cast<std::size_t>(n)];
    }
    return 1.0;
}

double guarded_square_product(long prefactor, const NonlinearityFn& ha, long a,
                              const NonlinearityFn& hb, long b) {
    if (prefactor == 0) return 0.0;
    const double x = ha(a);
    const double y = hb(b);
    return static_cast<double>(prefactor) * x * x * y * y;
}

void ModelParams::validate() const {
    const double rates[] = {lambda, delta, chi1, chi2, chi_cross, beta1, beta2, phi,
                            alpha1.real(), alpha1.imag(), alpha2.real(), alpha2.imag()};
    for (double r : rates) {
        if (!std::isfinite(r)) throw InvalidParameter("model parameters must be finite");
    }
    if (lambda <= 0.0) throw InvalidParameter("lambda must be positive");
    if (phi < 0.0 || phi > std::numbers::pi) throw InvalidParameter("phi must lie in [0, pi]");
}

double kerr_potential(const ModelParams& p, long n, long m) {
    double v = 0.0;
    if (p.chi1 != 0.0) v += p.chi1 * guarded_square_product(n * (n - 1), p.g1, n, p.g1, n - 1);
    if (p.chi2 != 0.0) v += p.chi2 * guarded_square_product(m * (m - 1), p.g2, m, p.g2, m - 1);
    if (p.chi_cross != 0.0) v += p.chi_cross * guarded_square_product(n * m, p.g1, n, p.g2, m);
    return v;
}

EffectiveShifts effective_shifts(const ModelParams& p, long n, long m) {
    EffectiveShifts s;
    s.v_a = kerr_potential(p, n, m) + 2.0 * p.beta2 * static_cast<double>(m);
    s.v_b = kerr_potential(p, n + 1, m + 1) + p.beta1 * static_cast<double>(n + 1) +
            p.beta2 * static_cast<double>(m + 1);
    s.v_d = kerr_potential(p, n + 2, m + 2) + 2.0 * p.beta1 * static_cast<double>(n + 2);
    return s;
}

Couplings couplings(const ModelParams& p, long n, long m) {
    auto k = [&](long j) {
        const double photons = static_cast<double>(n + j) * static_cast<double>(m + j);
        return p.lambda * p.f1(n + j) * p.f2(m + j) * std::sqrt(photons);
    };
    return {k(1), k(2)};
}

}  // namespace kerrjc
