// SPDX-License-Identifier: Apache-2.0
#include "dmu/poly.hpp"

#include "dmu/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmu {

CPoly::CPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

CPoly::CPoly(std::initializer_list<cplx> coeffs) : c_(coeffs) { trim(); }

void CPoly::trim() {
    while (c_.size() > 1 && c_.back() == cplx{0.0}) c_.pop_back();
    if (c_.empty()) c_.push_back(0.0);
}

CPoly CPoly::monomial(int k, cplx scale) {
    if (k < 0) throw std::invalid_argument("monomial: negative power");
    std::vector<cplx> c(static_cast<std::size_t>(k) + 1, cplx{0.0});
    c[static_cast<std::size_t>(k)] = scale;
    return CPoly(std::move(c));
}

cplx CPoly::operator[](int k) const {
    if (k < 0 || k > degree()) return 0.0;
    return c_[static_cast<std::size_t>(k)];
}

cplx CPoly::operator()(cplx z) const {
    cplx acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

CPoly CPoly::derivative() const {
    if (c_.size() <= 1) return CPoly{};
    std::vector<cplx> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return CPoly(std::move(d));
}

CPoly CPoly::operator+(const CPoly& o) const {
    std::vector<cplx> r(std::max(c_.size(), o.c_.size()), cplx{0.0});
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
    return CPoly(std::move(r));
}

CPoly CPoly::operator-(const CPoly& o) const { return *this + o * cplx{-1.0}; }

CPoly CPoly::operator*(const CPoly& o) const {
    std::vector<cplx> r(c_.size() + o.c_.size() - 1, cplx{0.0});
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return CPoly(std::move(r));
}

CPoly CPoly::operator*(cplx s) const {
    std::vector<cplx> r(c_);
    for (auto& v : r) v *= s;
    return CPoly(std::move(r));
}

cplx poly_eval(const CPoly& p, cplx z) { return p(z); }

CPoly poly_derivative(const CPoly& p) { return p.derivative(); }

CPoly difference_quotient(const CPoly& f, cplx lambda) {
    const int n = f.degree();
    if (n == 0) return CPoly{};
    // Synthetic division: b_{n-1} = a_n, b_{k-1} = a_k + lambda b_k.
    std::vector<cplx> b(static_cast<std::size_t>(n));
    cplx carry = 0.0;
    for (int k = n; k >= 1; --k) {
        carry = f[k] + lambda * carry;
        b[static_cast<std::size_t>(k - 1)] = carry;
    }
    return CPoly(std::move(b));
}

CPoly backward_shift(const CPoly& f) {
    auto c = f.coeffs();
    if (c.size() <= 1) return CPoly{};
    return CPoly(std::vector<cplx>(c.begin() + 1, c.end()));
}

double h2_norm_sq(const CPoly& f) {
    double s = 0.0;
    for (const auto& v : f.coeffs()) s += std::norm(v);
    return s;
}

double h2_norm_green(const CPoly& f, int n_radial, int n_angular) {
    const CPoly df = f.derivative();
    auto energy = [&](cplx z) { return std::norm(df(z)); };
    // log|1/z|^2 = 2 log(1/|z|), the kernel of log_kernel_integral at the origin.
    return std::norm(f(0.0)) + log_kernel_integral(energy, 0.0, {n_radial, n_angular});
}

TrigPoly::TrigPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    if (c_.size() % 2 == 0) throw std::invalid_argument("TrigPoly: coefficient count must be odd");
}

TrigPoly TrigPoly::from_parts(const CPoly& f1, const CPoly& f2) {
    const int m = std::max(f1.degree(), f2.degree());
    TrigPoly t(std::vector<cplx>(static_cast<std::size_t>(2 * m + 1), cplx{0.0}));
    for (int k = 0; k <= f1.degree(); ++k) t.set_coeff(k, t.coeff(k) + f1[k]);
    for (int k = 1; k <= f2.degree(); ++k) t.set_coeff(-k, t.coeff(-k) + std::conj(f2[k]));
    t.set_coeff(0, t.coeff(0) + std::conj(f2[0]));
    return t;
}

cplx TrigPoly::coeff(int m) const {
    const int M = order();
    if (m < -M || m > M) return 0.0;
    return c_[static_cast<std::size_t>(m + M)];
}

void TrigPoly::set_coeff(int m, cplx v) {
    int M = order();
    if (std::abs(m) > M) {
        const int nm = std::abs(m);
        std::vector<cplx> grown(static_cast<std::size_t>(2 * nm + 1), cplx{0.0});
        for (int k = -M; k <= M; ++k) grown[static_cast<std::size_t>(k + nm)] = coeff(k);
        c_ = std::move(grown);
        M = nm;
    }
    c_[static_cast<std::size_t>(m + M)] = v;
}

cplx TrigPoly::operator()(cplx zeta) const {
    const int M = order();
    cplx acc = 0.0;
    const cplx inv = 1.0 / zeta;
    cplx pw = 1.0;
    for (int m = 0; m <= M; ++m, pw *= zeta) acc += coeff(m) * pw;
    pw = inv;
    for (int m = 1; m <= M; ++m, pw *= inv) acc += coeff(-m) * pw;
    return acc;
}

cplx TrigPoly::harmonic_extension(cplx z) const {
    const int M = order();
    cplx acc = coeff(0);
    cplx pz = z, pzb = std::conj(z);
    for (int m = 1; m <= M; ++m, pz *= z, pzb *= std::conj(z))
        acc += coeff(m) * pz + coeff(-m) * pzb;
    return acc;
}

bool TrigPoly::is_real(double tol) const {
    const int M = order();
    for (int m = 0; m <= M; ++m)
        if (std::abs(coeff(-m) - std::conj(coeff(m))) > tol) return false;
    return true;
}

CPoly TrigPoly::analytic_part() const {
    const int M = order();
    std::vector<cplx> c(static_cast<std::size_t>(M + 1));
    for (int m = 0; m <= M; ++m) c[static_cast<std::size_t>(m)] = coeff(m);
    return CPoly(std::move(c));
}

CPoly TrigPoly::antianalytic_part() const {
    const int M = order();
    std::vector<cplx> c(static_cast<std::size_t>(M + 1), cplx{0.0});
    for (int m = 1; m <= M; ++m) c[static_cast<std::size_t>(m)] = std::conj(coeff(-m));
    return CPoly(std::move(c));
}

double TrigPoly::l2_norm_sq() const {
    double s = 0.0;
    for (const auto& v : c_) s += std::norm(v);
    return s;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    TrigPoly r = *this;
    for (int m = -o.order(); m <= o.order(); ++m) r.set_coeff(m, r.coeff(m) + o.coeff(m));
    return r;
}

}  // namespace dmu
