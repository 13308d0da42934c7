#include "kerrjc/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "kerrjc/errors.hpp"

namespace kerrjc {
namespace {

constexpr double kSymmetryTol = 1e-9;
constexpr double kTraceTol = 1e-12;
constexpr double kImagTol = 1e-9;

const Matrix4c& sigma_yy() {
    static const Matrix4c s = [] {
        Matrix4c m = Matrix4c::Zero();
        m(0, 3) = -1.0;
        m(1, 2) = 1.0;
        m(2, 1) = 1.0;
        m(3, 0) = -1.0;
        return m;
    }();
    return s;
}

std::array<double, 4> sorted_descending(std::array<double, 4> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

std::array<double, 4> roots_of(const Eigen::Vector4d& eigenvalues) {
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) out[i] = std::sqrt(std::max(0.0, eigenvalues(i)));
    return sorted_descending(out);
}

}  // namespace

AtomicSpectrum atomic_eigenvalues_closed_form(const AtomicDensityMatrix& d) {
    const Matrix4c& r = d.rho;
    if (std::abs(r(1, 1) - r(2, 2)) > kSymmetryTol || std::abs(r(0, 1) - r(0, 2)) > kSymmetryTol ||
        std::abs(r(1, 3) - r(2, 3)) > kSymmetryTol) {
        throw SymmetryViolation("atomic density matrix breaks the |eg> <-> |ge> symmetry");
    }
    const double r11 = r(0, 0).real();
    const double r22 = r(1, 1).real();
    const double r44 = r(3, 3).real();
    const cplx r12 = r(0, 1), r21 = r(1, 0);
    const cplx r14 = r(0, 3), r41 = r(3, 0);
    const cplx r24 = r(1, 3), r42 = r(3, 1);

    // Characteristic polynomial z^3 + v1 z^2 + v2 z + v3 of rho restricted to
    // span{|ee>, (|eg> + |ge>)/sqrt 2, |gg>}.
    AtomicSpectrum s;
    s.varrho1 = -r11 - 2.0 * r22 - r44;
    s.varrho2 = -2.0 * std::norm(r12) - std::norm(r14) - 2.0 * std::norm(r24) + 2.0 * r22 * r44 +
                r11 * (2.0 * r22 + r44);
    s.varrho3 = (2.0 * r14 * (r22 * r41 - r21 * r42) + 2.0 * r12 * (r21 * r44 - r24 * r41) +
                 2.0 * r11 * (r24 * r42 - r22 * r44))
                    .real();
    if (std::abs(s.varrho1 + 1.0) > kTraceTol) {
        throw InvalidParameter("atomic density matrix is not unit-trace");
    }

    const double p = s.varrho1 * s.varrho1 - 3.0 * s.varrho2;
    if (p <= 0.0) {
        s.zeta = {-s.varrho1 / 3.0, -s.varrho1 / 3.0, -s.varrho1 / 3.0, 0.0};
        return s;
    }
    const double sp = std::sqrt(p);
    const double arg = std::clamp((9.0 * s.varrho1 * s.varrho2 - 2.0 * std::pow(s.varrho1, 3) -
                                   27.0 * s.varrho3) / (2.0 * p * sp),
                                  -1.0, 1.0);
    const double varpi = std::acos(arg) / 3.0;
    for (int j = 0; j < 3; ++j) {
        s.zeta[j] = -s.varrho1 / 3.0 +
                    (2.0 / 3.0) * sp * std::cos(varpi + 2.0 * std::numbers::pi * j / 3.0);
    }
    s.zeta[3] = 0.0;
    return s;
}

std::array<double, 4> atomic_eigenvalues_direct(const AtomicDensityMatrix& d) {
    const Eigen::SelfAdjointEigenSolver<Matrix4c> es(d.rho, Eigen::EigenvaluesOnly);
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) out[i] = es.eigenvalues()(i);
    return sorted_descending(out);
}

double von_neumann_entropy(const std::array<double, 4>& eigenvalues) {
    double s = 0.0;
    for (double z : eigenvalues) {
        if (z > 0.0) s -= z * std::log(z);
    }
    return s;
}

double eof_pure(const AtomicDensityMatrix& rho) {
    return von_neumann_entropy(atomic_eigenvalues_closed_form(rho).zeta);
}

Matrix4c spin_flip(const Matrix4c& rho) {
    return sigma_yy() * rho.conjugate() * sigma_yy();
}

std::array<double, 4> wootters_lambdas(const Matrix4c& rho) {
    const Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho);
    Matrix4c v = es.eigenvectors();
    for (int j = 0; j < 4; ++j) v.col(j) *= std::sqrt(std::max(0.0, es.eigenvalues()(j)));
    const Matrix4c tau = v.transpose() * sigma_yy() * v;
    const Eigen::JacobiSVD<Matrix4c> svd(tau);
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) out[i] = svd.singularValues()(i);
    return sorted_descending(out);
}

std::array<double, 4> wootters_lambdas_general(const Matrix4c& rho) {
    const Matrix4c product = rho * spin_flip(rho);
    const Eigen::ComplexEigenSolver<Matrix4c> es(product, false);
    Eigen::Vector4d re;
    for (int i = 0; i < 4; ++i) {
        const cplx e = es.eigenvalues()(i);
        if (std::abs(e.imag()) > kImagTol) {
            throw std::runtime_error("rho * spin_flip(rho) has a complex eigenvalue");
        }
        re(i) = e.real();
    }
    return roots_of(re);
}

std::array<double, 4> wootters_lambdas_hermitian(const Matrix4c& rho) {
    const Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho);
    Eigen::Vector4d root;
    for (int i = 0; i < 4; ++i) root(i) = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    const Matrix4c sqrt_rho =
        es.eigenvectors() * root.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    Matrix4c r = sqrt_rho * spin_flip(rho) * sqrt_rho;
    r = 0.5 * (r + r.adjoint()).eval();
    const Eigen::SelfAdjointEigenSolver<Matrix4c> rs(r, Eigen::EigenvaluesOnly);
    return roots_of(rs.eigenvalues());
}

double concurrence(const Matrix4c& rho) {
    const auto l = wootters_lambdas(rho);
    return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double binary_entropy(double x) {
    double h = 0.0;
    if (x > 0.0 && x < 1.0) h = -x * std::log(x) - (1.0 - x) * std::log1p(-x);
    return h;
}

double eof_from_concurrence(double c) {
    c = std::clamp(c, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

MeasureResult measure(const AtomicDensityMatrix& rho) {
    MeasureResult r;
    const AtomicSpectrum spectrum = atomic_eigenvalues_closed_form(rho);
    r.zeta = spectrum.zeta;
    r.varrho1 = spectrum.varrho1;
    r.zeta_direct = atomic_eigenvalues_direct(rho);
    const auto sorted = sorted_descending(r.zeta);
    for (int i = 0; i < 4; ++i) {
        r.consistency_gap = std::max(r.consistency_gap, std::abs(sorted[i] - r.zeta_direct[i]));
    }
    r.eof_atom_field = von_neumann_entropy(r.zeta);
    r.concurrence = concurrence(rho.rho);
    r.eof_atom_atom = eof_from_concurrence(r.concurrence);
    return r;
}

}  // namespace kerrjc
