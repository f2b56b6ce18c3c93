#pragma once

#include <compare>
#include <map>
#include <utility>
#include <vector>

#include "galton/errors.hpp"
#include "galton/params.hpp"

namespace galton {

// Polynomial in t, coefficient of t^j at index j. No trailing zeros after
// normalization.
using Poly = std::vector<Complex>;

/// Decay exponent kept on the integer lattice spanned by the two physical
/// rates: value = a*gamma + b*(kappa + i*delta). Working with the lattice
/// coordinates instead of the numeric value makes resonance detection in
/// solve_decay_ode exact; keys add componentwise under multiplication.
struct ExponentKey {
    int gamma_mult = 0; // a
    int pulse_mult = 0; // b

    friend ExponentKey operator+(ExponentKey l, ExponentKey r) {
        return {l.gamma_mult + r.gamma_mult, l.pulse_mult + r.pulse_mult};
    }
    auto operator<=>(const ExponentKey&) const = default;

    Complex value(const WalkParams& p) const {
        return double(gamma_mult) * p.gamma + double(pulse_mult) * p.pulse_rate();
    }
};

/// Exact finite sum  sum_k p_k(t) * exp(-value(key_k) * t)  with complex
/// polynomial coefficients. This is the carrier of every correlator in the
/// walk: closed under +, *, scaling, and the first-order decay ODEs solved
/// by solve_decay_ode. Immutable in spirit: every operation returns a new
/// value, so instances can be shared freely across threads.
class PolyExpFn {
public:
    PolyExpFn() = default;

    static PolyExpFn zero() { return {}; }
    static PolyExpFn term(ExponentKey key, Poly coeffs);
    // c * exp(-value(key) * t)
    static PolyExpFn exponential(ExponentKey key, Complex c = 1.0) {
        return term(key, Poly{c});
    }
    static PolyExpFn one() { return exponential(ExponentKey{0, 0}); }

    const std::map<ExponentKey, Poly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const; // max polynomial degree across terms, -1 if zero
    double max_coeff() const;

    Complex eval(double t, const WalkParams& p) const;
    PolyExpFn derivative(const WalkParams& p) const;

    PolyExpFn& operator+=(const PolyExpFn& g);
    friend PolyExpFn operator+(PolyExpFn f, const PolyExpFn& g) { return f += g; }
    friend PolyExpFn operator-(const PolyExpFn& f, const PolyExpFn& g);
    friend PolyExpFn operator*(const PolyExpFn& f, const PolyExpFn& g);
    friend PolyExpFn operator*(Complex c, const PolyExpFn& f);
    friend PolyExpFn operator*(const PolyExpFn& f, Complex c) { return c * f; }

private:
    void normalize();
    std::map<ExponentKey, Poly> terms_;
};

/// Exact solution of y' = -value(rate) * y + forcing with y(0) = 0.
/// Non-resonant forcing keys keep their key (plus a compensating term at
/// `rate` enforcing the initial condition); a forcing term at `rate` itself
/// raises the polynomial degree by one. Throws NumericCollisionError when
/// two distinct keys among {forcing keys} + {rate} lie within
/// 1e-12 * gamma of each other numerically.
PolyExpFn solve_decay_ode(ExponentKey rate, const PolyExpFn& forcing, const WalkParams& p);

/// Same sums, but keyed by the numeric exponent value. Used once
/// conjugation and cross products take the exponents off the integer
/// lattice. Terms are kept sorted by exponent (real part, then imaginary).
class NumericPolyExpFn {
public:
    using Term = std::pair<Complex, Poly>; // (lambda, coefficients)

    NumericPolyExpFn() = default;

    static NumericPolyExpFn zero() { return {}; }
    static NumericPolyExpFn term(Complex lambda, Poly coeffs);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    double max_coeff() const;

    Complex eval(double t) const;
    NumericPolyExpFn conj() const;
    NumericPolyExpFn scaled(Complex c) const;

private:
    void normalize(double merge_eps);
    std::vector<Term> terms_;

    friend NumericPolyExpFn npe_add(const NumericPolyExpFn&, const NumericPolyExpFn&, double);
    friend NumericPolyExpFn npe_mul(const NumericPolyExpFn&, const NumericPolyExpFn&, double);
    friend NumericPolyExpFn to_numeric(const PolyExpFn&, const WalkParams&);
};

// Exponents closer than merge_eps are merged into one term.
NumericPolyExpFn npe_add(const NumericPolyExpFn& f, const NumericPolyExpFn& g, double merge_eps);
NumericPolyExpFn npe_mul(const NumericPolyExpFn& f, const NumericPolyExpFn& g, double merge_eps);

/// Exact improper integral over [0, inf):
/// integral t^j exp(-lambda t) dt = j! / lambda^(j+1), summed over terms.
/// High-degree terms are integrated through an exact Gauss-Laguerre rule
/// instead of the factorial series, which cancels catastrophically there.
/// Throws DivergentIntegralError if any exponent has Re(lambda) <= 0.
Complex npe_integrate_inf(const NumericPolyExpFn& f);

/// integral_0^inf f(t) g(t) dt without ever forming the coefficient-level
/// product: the convolution of two long polynomials loses the integral in
/// rounding noise, while evaluating the factors separately at the exact
/// quadrature nodes stays conditioned like a function evaluation. This is
/// the only safe route for the Gram matrices of deep boards.
Complex npe_integrate_product_inf(const NumericPolyExpFn& f, const NumericPolyExpFn& g);

NumericPolyExpFn to_numeric(const PolyExpFn& f, const WalkParams& p);

} // namespace galton
