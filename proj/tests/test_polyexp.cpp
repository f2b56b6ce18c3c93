#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "galton/polyexp.hpp"

using namespace galton;

namespace {

const WalkParams kParams{1.0, 0.002, 1.0, 3};

// Test-only RK4 for y' = -rate*y + forcing(t), y(0) = 0. Independent of the
// symbolic solver on purpose.
std::vector<Complex> rk4_scalar(Complex rate, const std::function<Complex(double)>& forcing,
                                double t_max, double dt) {
    auto f = [&](Complex y, double t) { return -rate * y + forcing(t); };
    std::vector<Complex> samples{0.0};
    Complex y = 0.0;
    const long steps = std::lround(t_max / dt);
    for (long k = 0; k < steps; ++k) {
        const double t = k * dt;
        const Complex k1 = f(y, t);
        const Complex k2 = f(y + 0.5 * dt * k1, t + 0.5 * dt);
        const Complex k3 = f(y + 0.5 * dt * k2, t + 0.5 * dt);
        const Complex k4 = f(y + dt * k3, t + dt);
        y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        samples.push_back(y);
    }
    return samples;
}

PolyExpFn random_fn(std::mt19937& rng, bool positive_real_only = false) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> nterms(1, 3);
    std::uniform_int_distribution<int> degree(0, 2);
    static const std::vector<ExponentKey> keys = {{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}};
    std::uniform_int_distribution<int> pick(0, int(keys.size()) - 1);
    PolyExpFn f;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        ExponentKey key = keys[pick(rng)];
        if (positive_real_only && key == ExponentKey{0, 0}) continue;
        Poly p(degree(rng) + 1);
        for (Complex& c : p) c = Complex(unit(rng), unit(rng));
        f += PolyExpFn::term(key, p);
    }
    return f;
}

double rel_dev(Complex a, Complex b, double scale) { return std::abs(a - b) / scale; }

// adaptive Simpson on [a, b], test-only quadrature oracle
Complex adaptive_simpson(const std::function<Complex(double)>& f, double a, double b,
                         Complex fa, Complex fm, Complex fb, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const Complex flm = f(lm), frm = f(rm);
    const Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1);
}

} // namespace

TEST_CASE("addition: inverse, disjoint keys, identity") {
    const PolyExpFn e_g = PolyExpFn::exponential({1, 0});
    CHECK((e_g + Complex(-1.0) * e_g).is_zero());

    const PolyExpFn t_e_g = PolyExpFn::term({1, 0}, {0.0, 1.0});
    const PolyExpFn e_p = PolyExpFn::exponential({0, 1});
    const PolyExpFn sum = t_e_g + e_p;
    CHECK(sum.terms().size() == 2);

    CHECK((sum + PolyExpFn::zero()).terms() == sum.terms());
}

TEST_CASE("multiplication: exponent addition, identity, pulse square") {
    const PolyExpFn t_e_g = PolyExpFn::term({1, 0}, {0.0, 1.0});
    const PolyExpFn e_g = PolyExpFn::exponential({1, 0});
    const PolyExpFn prod = t_e_g * e_g;
    REQUIRE(prod.terms().size() == 1);
    CHECK(prod.terms().begin()->first == ExponentKey{2, 0});
    CHECK(prod.terms().begin()->second == Poly{0.0, 1.0});

    const PolyExpFn f = t_e_g + PolyExpFn::exponential({0, 1}, Complex(0.0, 2.0));
    CHECK((f * PolyExpFn::one()).terms() == f.terms());

    const PolyExpFn pulse = PolyExpFn::exponential({0, 1});
    const PolyExpFn sq = pulse * pulse;
    REQUIRE(sq.terms().size() == 1);
    CHECK(sq.terms().begin()->first == ExponentKey{0, 2});
}

TEST_CASE("scaling") {
    const PolyExpFn t_e_g = PolyExpFn::term({1, 0}, {0.0, 1.0});
    CHECK((Complex(0.0) * t_e_g).is_zero());
    CHECK((Complex(1.0) * t_e_g).terms() == t_e_g.terms());
    const PolyExpFn scaled = Complex(0.0, 2.0) * t_e_g;
    CHECK(scaled.terms().begin()->second == Poly{0.0, Complex(0.0, 2.0)});
}

TEST_CASE("decay ODE: textbook two-exponential solution") {
    // y' = -gamma y + e^{-(kappa + i delta) t}
    const PolyExpFn forcing = PolyExpFn::exponential({0, 1});
    const PolyExpFn y = solve_decay_ode({1, 0}, forcing, kParams);
    const Complex denom = kParams.gamma - kParams.pulse_rate();
    for (double t : {0.0, 0.3, 1.7, 6.0}) {
        const Complex expected =
            (std::exp(-kParams.pulse_rate() * t) - std::exp(-kParams.gamma * t)) / denom;
        CHECK(std::abs(y.eval(t, kParams) - expected) < 1e-14);
    }
}

TEST_CASE("decay ODE: resonant forcing lifts the degree") {
    const PolyExpFn y = solve_decay_ode({1, 0}, PolyExpFn::exponential({1, 0}), kParams);
    REQUIRE(y.terms().size() == 1);
    CHECK(y.terms().begin()->first == ExponentKey{1, 0});
    CHECK(y.terms().begin()->second == Poly{0.0, 1.0}); // t e^{-gamma t}
}

TEST_CASE("decay ODE vs RK4 on a two-key forcing") {
    // the shape of the first driven atomic amplitude: solve it at rate
    // 2*gamma and compare against direct integration
    const Complex c1(0.4, -0.2), c2(-0.3, 0.7);
    PolyExpFn forcing = PolyExpFn::exponential({0, 1}, c1) + PolyExpFn::term({1, 0}, {0.0, c2});
    const PolyExpFn y = solve_decay_ode({2, 0}, forcing, kParams);

    const double dt = 1e-4;
    const auto rk4 = rk4_scalar(
        2.0 * kParams.gamma,
        [&](double t) { return forcing.eval(t, kParams); }, 10.0, dt);
    double worst = 0.0;
    for (size_t k = 0; k < rk4.size(); k += 250)
        worst = std::max(worst, std::abs(rk4[k] - y.eval(k * dt, kParams)));
    CHECK(worst < 1e-8);
}

TEST_CASE("decay ODE: numeric key collision is rejected") {
    // kappa == gamma with delta == 0 makes (1,0) and (0,1) numerically equal
    const WalkParams bad{1.0, 1.0, 0.0, 1};
    CHECK_THROWS_AS(solve_decay_ode({1, 0}, PolyExpFn::exponential({0, 1}), bad),
                    NumericCollisionError);
}

TEST_CASE("evaluation at zero") {
    CHECK(PolyExpFn::exponential({1, 0}).eval(0.0, kParams) == Complex(1.0));
    CHECK(PolyExpFn::term({1, 0}, {0.0, 1.0}).eval(0.0, kParams) == Complex(0.0));
}

TEST_CASE("to_numeric maps lattice keys to rates") {
    const WalkParams& p = kParams;
    auto lambda_of = [&](ExponentKey key) {
        return to_numeric(PolyExpFn::exponential(key), p).terms().front().first;
    };
    CHECK(lambda_of({1, 0}) == Complex(p.gamma));
    CHECK(lambda_of({0, 1}) == p.pulse_rate());
    CHECK(lambda_of({1, 1}) == p.gamma + p.pulse_rate());
}

TEST_CASE("numeric conjugation") {
    const NumericPolyExpFn f =
        NumericPolyExpFn::term(Complex(1.0, 1.0), {Complex(0.0, 1.0)}); // i e^{-(1+i) t}
    const NumericPolyExpFn fc = f.conj();
    CHECK(fc.terms().front().first == Complex(1.0, -1.0));
    CHECK(fc.terms().front().second == Poly{Complex(0.0, -1.0)});

    std::mt19937 rng(7);
    const NumericPolyExpFn g = to_numeric(random_fn(rng), kParams);
    const NumericPolyExpFn gcc = g.conj().conj();
    for (double t : {0.0, 0.9, 2.2}) CHECK(std::abs(g.eval(t) - gcc.eval(t)) < 1e-14);

    const NumericPolyExpFn real_fn = NumericPolyExpFn::term(Complex(2.0, 0.0), {3.0, -1.0});
    CHECK(real_fn.conj().terms() == real_fn.terms());
}

TEST_CASE("numeric product adds exponents") {
    const double eps = kParams.collision_eps();
    const NumericPolyExpFn a = NumericPolyExpFn::term(Complex(1.0, 0.5), {0.0, 1.0});
    const NumericPolyExpFn b = NumericPolyExpFn::term(Complex(0.5, -0.25), {2.0});
    const NumericPolyExpFn ab = npe_mul(a, b, eps);
    REQUIRE(ab.terms().size() == 1);
    CHECK(ab.terms().front().first == Complex(1.5, 0.25));
    CHECK(ab.terms().front().second == Poly{0.0, 2.0});

    const NumericPolyExpFn one = NumericPolyExpFn::term(Complex(0.0), {1.0});
    CHECK(npe_mul(a, one, eps).terms() == a.terms());
    CHECK(npe_mul(a, NumericPolyExpFn::zero(), eps).is_zero());
}

TEST_CASE("improper integrals") {
    CHECK(std::abs(npe_integrate_inf(NumericPolyExpFn::term(Complex(2.0, 1.0), {1.0})) -
                   1.0 / Complex(2.0, 1.0)) < 1e-15);
    CHECK(std::abs(npe_integrate_inf(NumericPolyExpFn::term(Complex(2.0, 1.0), {0.0, 1.0})) -
                   1.0 / (Complex(2.0, 1.0) * Complex(2.0, 1.0))) < 1e-15);
    // integral t^2 e^{-2 gamma t} = 2 / (2 gamma)^3
    CHECK(std::abs(npe_integrate_inf(NumericPolyExpFn::term(Complex(2.0), {0.0, 0.0, 1.0})) -
                   2.0 / 8.0) < 1e-15);
    CHECK_THROWS_AS(npe_integrate_inf(NumericPolyExpFn::term(Complex(-0.1, 1.0), {1.0})),
                    DivergentIntegralError);
}

TEST_CASE("ODE residual and initial condition vanish on random instances") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        const PolyExpFn forcing = random_fn(rng);
        if (forcing.is_zero()) continue;
        const ExponentKey rate = trial % 2 == 0 ? ExponentKey{1, 0} : ExponentKey{2, 0};
        const PolyExpFn y = solve_decay_ode(rate, forcing, kParams);
        const PolyExpFn residual = y.derivative(kParams) + rate.value(kParams) * y - forcing;
        const double scale = std::max(forcing.max_coeff(), y.max_coeff());
        CHECK(residual.max_coeff() / scale < 1e-12);
        CHECK(std::abs(y.eval(0.0, kParams)) / scale < 1e-12);
    }
}

TEST_CASE("algebra laws hold at random evaluation points") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> tdist(0.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const PolyExpFn f = random_fn(rng);
        const PolyExpFn g = random_fn(rng);
        const PolyExpFn h = random_fn(rng);
        const double scale =
            std::max({1.0, f.max_coeff(), g.max_coeff(), h.max_coeff()});
        const double scale3 = scale * scale * scale;
        for (int i = 0; i < 10; ++i) {
            const double t = tdist(rng);
            CHECK(rel_dev((f + g).eval(t, kParams), (g + f).eval(t, kParams), scale) < 1e-12);
            CHECK(rel_dev((f * g).eval(t, kParams), (g * f).eval(t, kParams), scale3) < 1e-12);
            CHECK(rel_dev(((f + g) + h).eval(t, kParams), (f + (g + h)).eval(t, kParams),
                          scale) < 1e-12);
            CHECK(rel_dev(((f * g) * h).eval(t, kParams), (f * (g * h)).eval(t, kParams),
                          scale3) < 1e-12);
            CHECK(rel_dev((f * (g + h)).eval(t, kParams), (f * g + f * h).eval(t, kParams),
                          scale3) < 1e-12);
        }
    }
}

TEST_CASE("product integral: equals the term-by-term route at low degree") {
    std::mt19937 rng(321);
    const double eps = kParams.collision_eps();
    for (int trial = 0; trial < 25; ++trial) {
        const NumericPolyExpFn f = to_numeric(random_fn(rng, true), kParams);
        const NumericPolyExpFn g = to_numeric(random_fn(rng, true), kParams);
        if (f.is_zero() || g.is_zero()) continue;
        const Complex via_product = npe_integrate_product_inf(f, g);
        const Complex via_mul = npe_integrate_inf(npe_mul(f, g, eps));
        const double scale = std::max(std::abs(via_mul), 1e-6);
        CHECK(std::abs(via_product - via_mul) / scale < 1e-12);
    }
}

TEST_CASE("product integral stays accurate where the convolution route collapses") {
    // two bounded degree-16 functions whose monomial coefficients are large
    // and cancelling, mimicking the resonant cascades of a deep board
    Poly p(17), q(17);
    double fact = 1.0;
    for (int j = 0; j <= 16; ++j) {
        if (j > 0) fact *= j;
        p[j] = Complex((j % 2 == 0 ? 1.0 : -1.0) * std::pow(2.2, j) / fact, 0.1 / (j + 1.0));
        q[j] = Complex(std::pow(-1.9, j) / fact, -0.05);
    }
    const NumericPolyExpFn f = NumericPolyExpFn::term(Complex(2.0, 0.4), p);
    const NumericPolyExpFn g = NumericPolyExpFn::term(Complex(2.0, -0.4), q);
    const Complex exact = npe_integrate_product_inf(f, g);
    auto fn = [&](double t) { return f.eval(t) * g.eval(t); };
    Complex numeric = 0.0;
    double lo = 0.0;
    for (double hi : {5.0, 10.0, 20.0, 40.0}) {
        const double mid = 0.5 * (lo + hi);
        numeric += adaptive_simpson(fn, lo, hi, fn(lo), fn(mid), fn(hi), 1e-12, 22);
        lo = hi;
    }
    CHECK(std::abs(exact - numeric) / std::abs(numeric) < 1e-8);
}

TEST_CASE("improper integral agrees with adaptive quadrature") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> re(0.1, 2.0);
    std::uniform_real_distribution<double> im(-2.0, 2.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 12; ++trial) {
        NumericPolyExpFn f;
        for (int k = 0; k < 3; ++k) {
            Poly p(2);
            for (Complex& c : p) c = Complex(unit(rng), unit(rng));
            f = npe_add(f, NumericPolyExpFn::term(Complex(re(rng), im(rng)), p), 1e-12);
        }
        const Complex exact = npe_integrate_inf(f);
        auto fn = [&](double t) { return f.eval(t); };
        // primary window [0, 50], then geometric tail segments: the slowest
        // admitted rate 0.1 still carries ~e^-5 of its mass past t = 50
        Complex numeric = 0.0;
        double lo = 0.0;
        for (double hi : {50.0, 150.0, 450.0}) {
            const double mid = 0.5 * (lo + hi);
            numeric += adaptive_simpson(fn, lo, hi, fn(lo), fn(mid), fn(hi), 1e-13, 30);
            lo = hi;
        }
        CHECK(std::abs(exact - numeric) / std::abs(exact) < 1e-8);
    }
}
