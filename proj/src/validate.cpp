#include "galton/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "galton/observables.hpp"
#include "galton/oracle.hpp"
#include "galton/single_photon.hpp"

namespace galton {

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed; });
}

namespace {

void add_check(ValidationReport& report, const std::string& name, double measured,
               double tolerance, const std::string& detail = "") {
    report.checks.push_back({name, measured <= tolerance, measured, tolerance, detail});
}

double pattern_swap_asymmetry(const PatternMatrix& m) {
    const int nd = int(m.dets.size());
    const double scale = std::max(m.max_value(), 1e-300);
    double worst = 0.0;
    for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nd; ++j)
            worst = std::max(worst, std::abs(m.at(i, j) - m.at(j, i)) / scale);
    return worst;
}

double pattern_mirror_asymmetry(const PatternMatrix& m) {
    const int nd = int(m.dets.size());
    const double scale = std::max(m.max_value(), 1e-300);
    std::vector<int> mirrored(nd);
    for (int i = 0; i < nd; ++i) {
        const DetectorId md = mirror(m.dets[i]);
        mirrored[i] = int(std::lower_bound(m.dets.begin(), m.dets.end(), md) - m.dets.begin());
    }
    double worst = 0.0;
    for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nd; ++j)
            worst = std::max(worst,
                             std::abs(m.at(i, j) - m.at(mirrored[i], mirrored[j])) / scale);
    return worst;
}

double ode_residual_suite(const WalkParams& p) {
    // random small functions on the exponent lattice; the solver must
    // return exact solutions with y(0) = 0
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> degree(0, 2);
    const std::vector<ExponentKey> keys = {{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}};
    double worst = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        PolyExpFn forcing;
        for (ExponentKey key : keys) {
            if (unit(rng) < 0.0) continue;
            Poly poly(degree(rng) + 1);
            for (Complex& c : poly) c = Complex(unit(rng), unit(rng));
            forcing += PolyExpFn::term(key, poly);
        }
        if (forcing.is_zero()) continue;
        const ExponentKey rate = trial % 2 == 0 ? ExponentKey{1, 0} : ExponentKey{2, 0};
        const PolyExpFn y = solve_decay_ode(rate, forcing, p);
        const PolyExpFn residual =
            y.derivative(p) + rate.value(p) * y - forcing;
        const double scale = std::max(forcing.max_coeff(), y.max_coeff());
        worst = std::max(worst, residual.max_coeff() / scale);
        worst = std::max(worst, std::abs(y.eval(0.0, p)) / scale);
    }
    return worst;
}

} // namespace

ValidationReport run_validation(const WalkParams& params, const ValidationOptions& options) {
    params.validate();
    ValidationReport report;

    // single-photon unitarity
    {
        const AtomicAmplitudeMap amps = compute_atomic_amplitudes(params);
        double total = 0.0;
        for (DetectorId det : detectors(params.steps))
            total += detector_probability_single(det, amps, params);
        add_check(report, "single-photon unitarity", std::abs(total - 1.0), 1e-6,
                  "sum of detector probabilities");
    }

    const TwoPhotonSolver solver(params, options.corrupt_scale);
    const CorrelationEngine engine(solver, options.threads);

    add_check(report, "two-photon unitarity", std::abs(engine.total_probability() - 1.0), 1e-6,
              "total detection probability over ordered pairs");

    {
        const PatternMatrix m = engine.pattern(0.3, Normalization::Raw);
        add_check(report, "pattern swap symmetry", pattern_swap_asymmetry(m), 1e-12,
                  "ordered-pair swap at tau=0.3");
        add_check(report, "pattern mirror symmetry", pattern_mirror_asymmetry(m), 1e-10,
                  "x -> -x with L <-> R at tau=0.3");
    }

    {
        const LinearReference linear(params);
        const PatternMatrix ref = linear.pattern(0.0, Normalization::Max);
        double worst = 0.0;
        for (double tau : {0.7, 5.0}) {
            const PatternMatrix m = linear.pattern(tau, Normalization::Max);
            for (size_t i = 0; i < m.values.size(); ++i)
                worst = std::max(worst, std::abs(m.values[i] - ref.values[i]));
        }
        add_check(report, "linear pattern tau-invariance", worst, 1e-10,
                  "max-normalized pattern across tau in {0, 0.7, 5}");
    }

    {
        WalkParams oracle_params = params;
        oracle_params.steps = std::min(params.steps, options.oracle_max_steps);
        const TwoPhotonSolver oracle_solver(oracle_params, options.corrupt_scale);
        const oracle::OracleReport rk4 = oracle::compare_with_symbolic(
            oracle_solver, 10.0 / oracle_params.gamma, options.oracle_dt / oracle_params.gamma,
            1000, {1.0, 2.0, 5.0}, {0.0, 0.5, 2.0});
        std::ostringstream detail;
        detail << "A=" << rk4.dev_A << " C=" << rk4.dev_C << " E=" << rk4.dev_E
               << " D=" << rk4.dev_D << " pair=" << rk4.dev_pair
               << " (steps=" << oracle_params.steps << ")";
        add_check(report, "oracle equivalence", rk4.max(), 1e-8, detail.str());
    }

    add_check(report, "decay-ODE residuals", ode_residual_suite(params), 1e-12,
              "random forcing suite");
    return report;
}

std::string format_report(const ValidationReport& report) {
    std::ostringstream out;
    for (const CheckResult& c : report.checks) {
        out << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  measured=" << c.measured
            << " tolerance=" << c.tolerance;
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << "\n";
    }
    out << (report.all_passed() ? "ALL CHECKS PASSED" : "VALIDATION FAILED") << "\n";
    return out.str();
}

} // namespace galton
