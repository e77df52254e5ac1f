// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace dmu {

using cplx = std::complex<double>;

/// Complex polynomial in one variable, coefficient k multiplies z^k.
/// Trailing exact zeros are trimmed; the zero polynomial keeps a single 0.
class CPoly {
public:
    CPoly() : c_{cplx{0.0}} {}
    explicit CPoly(std::vector<cplx> coeffs);
    CPoly(std::initializer_list<cplx> coeffs);

    static CPoly monomial(int k, cplx scale = 1.0);
    static CPoly constant(cplx c) { return CPoly({c}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == cplx{0.0}; }
    std::span<const cplx> coeffs() const { return c_; }
    /// Coefficient of z^k, zero beyond the degree.
    cplx operator[](int k) const;

    cplx operator()(cplx z) const;
    CPoly derivative() const;

    CPoly operator+(const CPoly& o) const;
    CPoly operator-(const CPoly& o) const;
    CPoly operator*(const CPoly& o) const;
    CPoly operator*(cplx s) const;
    bool operator==(const CPoly& o) const = default;

private:
    void trim();
    std::vector<cplx> c_;
};

cplx poly_eval(const CPoly& p, cplx z);
CPoly poly_derivative(const CPoly& p);

/// Exact quotient (f - f(lambda)) / (z - lambda) by synthetic division.
CPoly difference_quotient(const CPoly& f, cplx lambda);

/// (f - f(0)) / z.
CPoly backward_shift(const CPoly& f);

/// Sum of squared coefficient moduli.
double h2_norm_sq(const CPoly& f);

/// |f(0)|^2 + 2 int_D |f'|^2 log(1/|z|) dA evaluated by a polar rule about the origin.
/// Agrees with h2_norm_sq; kept as an independent route for testing.
double h2_norm_green(const CPoly& f, int n_radial = 48, int n_angular = 128);

/// Trigonometric polynomial sum_{m=-M}^{M} c_m zeta^m on the unit circle.
class TrigPoly {
public:
    TrigPoly() : c_{cplx{0.0}} {}
    /// coeffs[i] multiplies zeta^(i - M) where coeffs.size() == 2M+1.
    explicit TrigPoly(std::vector<cplx> coeffs);

    static TrigPoly constant(double c) { return TrigPoly({cplx{c}}); }
    /// Real trig polynomial from analytic and anti-analytic parts f1 + conj(f2).
    static TrigPoly from_parts(const CPoly& f1, const CPoly& f2);

    int order() const { return static_cast<int>(c_.size() / 2); }
    cplx coeff(int m) const;
    void set_coeff(int m, cplx v);

    cplx operator()(cplx zeta) const;
    /// Harmonic (Poisson) extension into the disk: sum_{m>=0} c_m z^m + sum_{m<0} c_m conj(z)^|m|.
    cplx harmonic_extension(cplx z) const;
    bool is_real(double tol = 1e-12) const;

    /// Split f = f1 + conj(f2) with f2(0) = 0.
    CPoly analytic_part() const;
    CPoly antianalytic_part() const;
    double l2_norm_sq() const;

    TrigPoly operator+(const TrigPoly& o) const;

private:
    std::vector<cplx> c_;
};

}  // namespace dmu
