#include "galton/polyexp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace galton {

namespace {

constexpr double kCoeffFloorScale = 1e-14;

double poly_max_abs(const Poly& p) {
    double m = 0.0;
    for (const Complex& c : p) m = std::max(m, std::abs(c));
    return m;
}

void poly_trim(Poly& p, double floor) {
    for (Complex& c : p) {
        if (std::abs(c) < floor) c = 0.0;
    }
    while (!p.empty() && p.back() == Complex(0.0)) p.pop_back();
}

void poly_acc(Poly& dst, const Poly& src, Complex scale = 1.0) {
    if (dst.size() < src.size()) dst.resize(src.size(), 0.0);
    for (size_t j = 0; j < src.size(); ++j) dst[j] += scale * src[j];
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Poly poly_derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly out(p.size() - 1);
    for (size_t j = 1; j < p.size(); ++j) out[j - 1] = double(j) * p[j];
    return out;
}

// antiderivative with q(0) = 0
Poly poly_antiderivative(const Poly& p) {
    Poly out(p.size() + 1, 0.0);
    for (size_t j = 0; j < p.size(); ++j) out[j + 1] = p[j] / double(j + 1);
    return out;
}

Complex poly_eval(const Poly& p, double t) {
    Complex acc = 0.0;
    for (size_t j = p.size(); j-- > 0;) acc = acc * t + p[j];
    return acc;
}

Complex poly_eval_complex(const Poly& p, Complex t) {
    Complex acc = 0.0;
    for (size_t j = p.size(); j-- > 0;) acc = acc * t + p[j];
    return acc;
}

bool complex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

} // namespace

// ---------------------------------------------------------------------------
// PolyExpFn

PolyExpFn PolyExpFn::term(ExponentKey key, Poly coeffs) {
    PolyExpFn f;
    f.terms_.emplace(key, std::move(coeffs));
    f.normalize();
    return f;
}

int PolyExpFn::degree() const {
    int d = -1;
    for (const auto& [key, p] : terms_) d = std::max(d, int(p.size()) - 1);
    return d;
}

double PolyExpFn::max_coeff() const {
    double m = 0.0;
    for (const auto& [key, p] : terms_) m = std::max(m, poly_max_abs(p));
    return m;
}

Complex PolyExpFn::eval(double t, const WalkParams& p) const {
    Complex acc = 0.0;
    for (const auto& [key, poly] : terms_)
        acc += poly_eval(poly, t) * std::exp(-key.value(p) * t);
    return acc;
}

PolyExpFn PolyExpFn::derivative(const WalkParams& p) const {
    // d/dt [q(t) e^{-lambda t}] = (q' - lambda q) e^{-lambda t}
    PolyExpFn out;
    for (const auto& [key, poly] : terms_) {
        Poly d = poly_derivative(poly);
        poly_acc(d, poly, -key.value(p));
        out.terms_[key] = std::move(d);
    }
    out.normalize();
    return out;
}

PolyExpFn& PolyExpFn::operator+=(const PolyExpFn& g) {
    for (const auto& [key, poly] : g.terms_) poly_acc(terms_[key], poly);
    normalize();
    return *this;
}

PolyExpFn operator-(const PolyExpFn& f, const PolyExpFn& g) {
    return f + Complex(-1.0) * g;
}

PolyExpFn operator*(const PolyExpFn& f, const PolyExpFn& g) {
    PolyExpFn out;
    for (const auto& [kf, pf] : f.terms_)
        for (const auto& [kg, pg] : g.terms_) poly_acc(out.terms_[kf + kg], poly_mul(pf, pg));
    out.normalize();
    return out;
}

PolyExpFn operator*(Complex c, const PolyExpFn& f) {
    PolyExpFn out;
    for (const auto& [key, poly] : f.terms_) {
        Poly q = poly;
        for (Complex& v : q) v *= c;
        out.terms_.emplace(key, std::move(q));
    }
    out.normalize();
    return out;
}

void PolyExpFn::normalize() {
    double m = max_coeff();
    double floor = m * kCoeffFloorScale;
    for (auto it = terms_.begin(); it != terms_.end();) {
        poly_trim(it->second, floor);
        it = it->second.empty() ? terms_.erase(it) : std::next(it);
    }
}

PolyExpFn solve_decay_ode(ExponentKey rate, const PolyExpFn& forcing, const WalkParams& p) {
    if (rate == ExponentKey{0, 0})
        throw std::invalid_argument("solve_decay_ode: rate key must be nonzero");

    // Distinct keys with nearly equal numeric rates would make the
    // non-resonant branch ill-conditioned; reject outright.
    std::vector<std::pair<ExponentKey, Complex>> vals;
    vals.emplace_back(rate, rate.value(p));
    for (const auto& [key, poly] : forcing.terms()) {
        if (key != rate) vals.emplace_back(key, key.value(p));
    }
    for (size_t i = 0; i < vals.size(); ++i) {
        for (size_t j = i + 1; j < vals.size(); ++j) {
            if (std::abs(vals[i].second - vals[j].second) < p.collision_eps())
                throw NumericCollisionError(
                    "solve_decay_ode: exponent keys numerically collide; "
                    "perturb kappa or delta");
        }
    }

    const Complex r = rate.value(p);
    PolyExpFn sol;
    Complex hom = 0.0; // coefficient of e^{-r t} enforcing y(0) = 0
    for (const auto& [key, poly] : forcing.terms()) {
        if (key == rate) {
            // resonance: particular solution q(t) e^{-rt} with q' = poly, q(0)=0
            sol += PolyExpFn::term(rate, poly_antiderivative(poly));
        } else {
            // q' + (r - lambda) q = poly  =>  q = sum_i (-1)^i poly^(i) / mu^{i+1}
            const Complex mu = r - key.value(p);
            const Complex minv = 1.0 / mu;
            Poly q(poly.size(), 0.0);
            Poly d = poly;
            Complex factor = minv;
            while (true) {
                for (size_t j = 0; j < d.size(); ++j) q[j] += factor * d[j];
                if (d.size() <= 1) break;
                d = poly_derivative(d);
                factor *= -minv;
            }
            hom -= q.empty() ? Complex(0.0) : q[0];
            sol += PolyExpFn::term(key, std::move(q));
        }
    }
    sol += PolyExpFn::term(rate, Poly{hom});
    return sol;
}

// ---------------------------------------------------------------------------
// NumericPolyExpFn

NumericPolyExpFn NumericPolyExpFn::term(Complex lambda, Poly coeffs) {
    NumericPolyExpFn f;
    f.terms_.emplace_back(lambda, std::move(coeffs));
    f.normalize(0.0);
    return f;
}

double NumericPolyExpFn::max_coeff() const {
    double m = 0.0;
    for (const auto& [lambda, p] : terms_) m = std::max(m, poly_max_abs(p));
    return m;
}

Complex NumericPolyExpFn::eval(double t) const {
    Complex acc = 0.0;
    for (const auto& [lambda, p] : terms_) acc += poly_eval(p, t) * std::exp(-lambda * t);
    return acc;
}

NumericPolyExpFn NumericPolyExpFn::conj() const {
    NumericPolyExpFn out;
    for (const auto& [lambda, p] : terms_) {
        Poly q(p.size());
        for (size_t j = 0; j < p.size(); ++j) q[j] = std::conj(p[j]);
        out.terms_.emplace_back(std::conj(lambda), std::move(q));
    }
    out.normalize(0.0);
    return out;
}

NumericPolyExpFn NumericPolyExpFn::scaled(Complex c) const {
    NumericPolyExpFn out = *this;
    for (auto& [lambda, p] : out.terms_)
        for (Complex& v : p) v *= c;
    out.normalize(0.0);
    return out;
}

void NumericPolyExpFn::normalize(double merge_eps) {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return complex_less(a.first, b.first); });
    std::vector<Term> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && std::abs(t.first - merged.back().first) <= merge_eps) {
            poly_acc(merged.back().second, t.second);
        } else {
            merged.push_back(std::move(t));
        }
    }
    terms_ = std::move(merged);

    double floor = max_coeff() * kCoeffFloorScale;
    for (auto it = terms_.begin(); it != terms_.end();) {
        poly_trim(it->second, floor);
        it = it->second.empty() ? terms_.erase(it) : std::next(it);
    }
}

NumericPolyExpFn npe_add(const NumericPolyExpFn& f, const NumericPolyExpFn& g, double merge_eps) {
    NumericPolyExpFn out;
    out.terms_ = f.terms_;
    out.terms_.insert(out.terms_.end(), g.terms_.begin(), g.terms_.end());
    out.normalize(merge_eps);
    return out;
}

NumericPolyExpFn npe_mul(const NumericPolyExpFn& f, const NumericPolyExpFn& g, double merge_eps) {
    NumericPolyExpFn out;
    for (const auto& [lf, pf] : f.terms_)
        for (const auto& [lg, pg] : g.terms_) out.terms_.emplace_back(lf + lg, poly_mul(pf, pg));
    out.normalize(merge_eps);
    return out;
}

namespace {

// Gauss-Laguerre rule: n nodes integrate p(x) e^{-x} exactly through
// polynomial degree 2n-1. Used instead of the factorial series for
// high-degree terms, where summing c_j * j! / lambda^{j+1} cancels
// catastrophically; the quadrature form of the same exact integral
// conditions like a function evaluation instead.
struct GaussLaguerreRule {
    std::vector<double> nodes, weights;
};

GaussLaguerreRule build_laguerre_rule(int n) {
    GaussLaguerreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    long double z = 0.0L;
    for (int i = 0; i < n; ++i) {
        // root location heuristics, then Newton on the recurrence
        if (i == 0)
            z = 3.0L / (1.0L + 2.4L * n);
        else if (i == 1)
            z += 15.0L / (1.0L + 2.5L * n);
        else
            z += (1.0L + 2.55L * (i - 1)) / (1.9L * (i - 1)) * (z - rule.nodes[i - 2]);
        long double pp = 0.0L;
        for (int iter = 0; iter < 100; ++iter) {
            long double p1 = 1.0L, p2 = 0.0L;
            for (int j = 0; j < n; ++j) {
                const long double p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1 - z) * p2 - j * p3) / (j + 1);
            }
            pp = n * (p1 - p2) / z; // L_n'(z)
            const long double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-17L * std::max(1.0L, std::abs(z))) break;
        }
        // evaluate L_{n+1} at the settled root for the weight
        long double p1 = 1.0L, p2 = 0.0L;
        for (int j = 0; j < n + 1; ++j) {
            const long double p3 = p2;
            p2 = p1;
            p1 = ((2 * j + 1 - z) * p2 - j * p3) / (j + 1);
        }
        rule.nodes[i] = double(z);
        rule.weights[i] = double(z / ((n + 1.0L) * (n + 1.0L) * p1 * p1));
    }
    return rule;
}

constexpr int kFactorialRouteMaxDegree = 12;
constexpr int kMaxLaguerreNodes = 64; // handles polynomial degree <= 127

const GaussLaguerreRule& laguerre_rule(int n) {
    static const std::vector<GaussLaguerreRule> rules = [] {
        std::vector<GaussLaguerreRule> all(kMaxLaguerreNodes + 1);
        for (int n = 1; n <= kMaxLaguerreNodes; ++n) all[n] = build_laguerre_rule(n);
        return all;
    }();
    return rules.at(size_t(n));
}

} // namespace

namespace {

void require_decaying(Complex lambda) {
    if (!(lambda.real() > 0.0))
        throw DivergentIntegralError(
            "improper integral: exponent with Re(lambda) <= 0, Re = " +
            std::to_string(lambda.real()));
}

Complex integrate_term_factorial(const Poly& p, Complex lambda) {
    Complex acc = 0.0;
    Complex r = 1.0 / lambda; // j! / lambda^{j+1}, built iteratively
    for (size_t j = 0; j < p.size(); ++j) {
        if (j > 0) r *= double(j) / lambda;
        acc += p[j] * r;
    }
    return acc;
}

} // namespace

Complex npe_integrate_inf(const NumericPolyExpFn& f) {
    Complex acc = 0.0;
    for (const auto& [lambda, p] : f.terms()) {
        require_decaying(lambda);
        const int degree = int(p.size()) - 1;
        if (degree <= kFactorialRouteMaxDegree) {
            acc += integrate_term_factorial(p, lambda);
        } else {
            // integral p(t) e^{-lambda t} dt = (1/lambda) sum w_i p(x_i/lambda),
            // exact for the polynomial degree at hand
            const int n = std::min(degree / 2 + 1, kMaxLaguerreNodes);
            const GaussLaguerreRule& rule = laguerre_rule(n);
            Complex term = 0.0;
            for (int i = 0; i < n; ++i)
                term += rule.weights[i] * poly_eval_complex(p, rule.nodes[i] / lambda);
            acc += term / lambda;
        }
    }
    return acc;
}

Complex npe_integrate_product_inf(const NumericPolyExpFn& f, const NumericPolyExpFn& g) {
    Complex acc = 0.0;
    for (const auto& [lf, pf] : f.terms()) {
        for (const auto& [lg, pg] : g.terms()) {
            const Complex s = lf + lg;
            require_decaying(s);
            const int degree = int(pf.size()) + int(pg.size()) - 2;
            if (degree <= kFactorialRouteMaxDegree) {
                acc += integrate_term_factorial(poly_mul(pf, pg), s);
            } else {
                const int n = std::min(degree / 2 + 1, kMaxLaguerreNodes);
                const GaussLaguerreRule& rule = laguerre_rule(n);
                Complex term = 0.0;
                for (int i = 0; i < n; ++i) {
                    const Complex t = rule.nodes[i] / s;
                    term += rule.weights[i] * poly_eval_complex(pf, t) * poly_eval_complex(pg, t);
                }
                acc += term / s;
            }
        }
    }
    return acc;
}

NumericPolyExpFn to_numeric(const PolyExpFn& f, const WalkParams& p) {
    NumericPolyExpFn out;
    for (const auto& [key, poly] : f.terms()) out.terms_.emplace_back(key.value(p), poly);
    out.normalize(p.collision_eps());
    return out;
}

} // namespace galton
