#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "galton/observables.hpp"

using namespace galton;

namespace {

const WalkParams kCorrelated{1.0, 0.002, 1.0, 2};

int det_index(const PatternMatrix& m, DetectorId det) {
    return int(std::lower_bound(m.dets.begin(), m.dets.end(), det) - m.dets.begin());
}

} // namespace

TEST_CASE("gamma density of the pure boundary term") {
    // both 1/sqrt(2) boundary weights included:
    // |(1/2) bb(t) e^{-(kappa+i delta) tau}|^2 = 2 kappa^2 e^{-4 kappa t} e^{-2 kappa tau}
    const WalkParams& p = kCorrelated;
    const double w = 0.5;
    BilinearCorrelation amp;
    amp.terms.push_back(
        {to_numeric(Complex(w) * compute_bb(p), p),
         to_numeric(PolyExpFn::exponential({0, 1}), p)});
    for (double t : {0.0, 0.9}) {
        for (double tau : {0.0, 1.7}) {
            const double expected = 8.0 * p.kappa * p.kappa * 0.25 *
                                    std::exp(-4.0 * p.kappa * t) *
                                    std::exp(-2.0 * p.kappa * tau);
            CHECK(gamma_density(amp, t, tau) == doctest::Approx(expected).epsilon(1e-12));
            CHECK(gamma_density(amp, t, tau) >= 0.0);
        }
    }
    CHECK(gamma_density(amp, 1.0, 4000.0) < 1e-12);
}

TEST_CASE("engine G agrees with the direct integral route") {
    const TwoPhotonSolver solver(kCorrelated);
    const CorrelationEngine engine(solver);
    const double eps = kCorrelated.collision_eps();
    for (DetectorId a : solver.detector_list()) {
        for (DetectorId b : solver.detector_list()) {
            const BilinearCorrelation ab = solver.pair_amplitude(a, b);
            const BilinearCorrelation ba = solver.pair_amplitude(b, a);
            for (double tau : {0.0, 0.4, 2.0}) {
                const double direct = g_tau(ab, ba, eps, tau);
                const double fast = engine.g(a, b, tau);
                CHECK(fast == doctest::Approx(direct).epsilon(1e-10));
                CHECK(fast >= -1e-15);
            }
        }
    }
}

TEST_CASE("analytic G curve matches grid evaluation") {
    const TwoPhotonSolver solver(kCorrelated);
    const CorrelationEngine engine(solver);
    const DetectorId a{0, Dir::L}, b{2, Dir::R};
    const NumericPolyExpFn curve = engine.g_curve(a, b);
    for (double tau = 0.0; tau <= 8.0; tau += 0.37)
        CHECK(curve.eval(tau).real() == doctest::Approx(engine.g(a, b, tau)).epsilon(1e-10));

    const BilinearCorrelation ab = solver.pair_amplitude(a, b);
    const BilinearCorrelation ba = solver.pair_amplitude(b, a);
    const NumericPolyExpFn direct = g_tau_curve(ab, ba, kCorrelated.collision_eps());
    for (double tau : {0.0, 1.0, 5.0})
        CHECK(direct.eval(tau).real() == doctest::Approx(engine.g(a, b, tau)).epsilon(1e-10));
}

TEST_CASE("two-photon unitarity and quartic amplitude scaling") {
    for (int N : {1, 2, 3}) {
        for (double delta : {1.0, 0.0}) {
            const WalkParams p{1.0, 0.002, delta, N};
            const CorrelationEngine engine{TwoPhotonSolver(p), 2};
            CHECK(std::abs(engine.total_probability() - 1.0) < 1e-6);
        }
    }
    const double c = 1.3;
    const CorrelationEngine scaled{TwoPhotonSolver(kCorrelated, c), 1};
    CHECK(scaled.total_probability() ==
          doctest::Approx(std::pow(c, 4)).epsilon(1e-6));
}

TEST_CASE("pattern symmetries") {
    const TwoPhotonSolver solver(kCorrelated);
    const CorrelationEngine engine(solver, 2);
    const PatternMatrix m = engine.pattern(0.4, Normalization::Raw);
    const int nd = int(m.dets.size());
    const double scale = m.max_value();
    for (int i = 0; i < nd; ++i) {
        for (int j = 0; j < nd; ++j) {
            CHECK(std::abs(m.at(i, j) - m.at(j, i)) / scale < 1e-12);
            const int mi = det_index(m, mirror(m.dets[i]));
            const int mj = det_index(m, mirror(m.dets[j]));
            CHECK(std::abs(m.at(i, j) - m.at(mi, mj)) / scale < 1e-10);
        }
    }
    CHECK(m.max_normalized().max_value() == doctest::Approx(1.0));
}

TEST_CASE("linear reference: delay-invariant pattern, center trapping, unit norm") {
    const WalkParams p{1.0, 0.002, 1.0, 5};
    const LinearReference linear(p);

    const PatternMatrix ref = linear.pattern(0.0, Normalization::Max);
    for (double tau : {0.7, 5.0}) {
        const PatternMatrix m = linear.pattern(tau, Normalization::Max);
        for (size_t i = 0; i < m.values.size(); ++i)
            CHECK(std::abs(m.values[i] - ref.values[i]) < 1e-10);
    }

    CHECK(std::abs(linear.total_probability() - 1.0) < 1e-9);

    const WalkParams resonant{1.0, 0.002, 0.0, 5};
    const LinearReference trapped(resonant);
    const PatternMatrix m = trapped.pattern(0.0, Normalization::Raw);
    double center_mass = 0.0;
    const double total = m.sum();
    for (int i = 0; i < int(m.dets.size()); ++i)
        for (int j = 0; j < int(m.dets.size()); ++j)
            if (std::abs(m.dets[i].x) <= 1 && std::abs(m.dets[j].x) <= 1)
                center_mass += m.at(i, j);
    CHECK(center_mass / total > 1.0 - 1e-12);
}

TEST_CASE("linear curve is the weighted pulse envelope") {
    const LinearReference linear(kCorrelated);
    const DetectorId a{0, Dir::L}, b{2, Dir::R};
    const NumericPolyExpFn curve = linear.g_curve(a, b);
    for (double tau : {0.0, 1.0, 6.0})
        CHECK(curve.eval(tau).real() == doctest::Approx(linear.g(a, b, tau)).epsilon(1e-12));
    // integral over delays and both orderings of every pair is 1
    double total = 0.0;
    for (DetectorId x : detectors(kCorrelated.steps))
        for (DetectorId y : detectors(kCorrelated.steps))
            total += npe_integrate_inf(linear.g_curve(x, y)).real() / 2.0;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}
