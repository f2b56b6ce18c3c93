#pragma once

#include <vector>

#include "galton/two_photon.hpp"

namespace galton {

enum class Normalization { Raw, Max };

const char* normalization_name(Normalization n);

/// G values at a fixed delay over all ordered detector pairs, indexed in
/// detectors(N) order. Symmetric under pair swap by construction; raw
/// entries carry units 1/time^2.
struct PatternMatrix {
    int steps = 0;
    double tau = 0.0;
    Normalization norm = Normalization::Raw;
    std::vector<DetectorId> dets;
    std::vector<double> values; // row-major, size (2N+2)^2

    double at(int i, int j) const { return values[size_t(i) * dets.size() + j]; }
    double& at(int i, int j) { return values[size_t(i) * dets.size() + j]; }
    double max_value() const;
    double sum() const;
    PatternMatrix max_normalized() const;
};

// |amplitude(t, tau)|^2: the time-ordered density of detecting the first
// photon at t and the second at t + tau.
double gamma_density(const BilinearCorrelation& amp, double t, double tau);

// One time ordering integrated over the first detection time:
// integral_0^inf |amp(t, tau)|^2 dt, evaluated analytically.
double time_integrated_density(const BilinearCorrelation& amp, double tau, double merge_eps);

// G(tau): sum of both detector orderings. `ab` is the amplitude with the
// first detector earlier, `ba` the swapped assignment.
double g_tau(const BilinearCorrelation& ab, const BilinearCorrelation& ba, double merge_eps,
             double tau);
NumericPolyExpFn g_tau_curve(const BilinearCorrelation& ab, const BilinearCorrelation& ba,
                             double merge_eps);

/// Caches, per detector, the Gram matrices of its channel functions
/// ( integral f_k conj(f_l) dt and integral g_k conj(g_l) dtau ), after
/// which every pattern entry, G curve and the total probability are cheap
/// channel-space contractions. Read-only after construction.
class CorrelationEngine {
public:
    explicit CorrelationEngine(const TwoPhotonSolver& solver, int threads = 1);

    const TwoPhotonSolver& solver() const { return solver_; }

    double g(DetectorId a, DetectorId b, double tau) const;
    std::vector<double> g_grid(DetectorId a, DetectorId b, const std::vector<double>& taus) const;
    NumericPolyExpFn g_curve(DetectorId a, DetectorId b) const;

    PatternMatrix pattern(double tau, Normalization norm) const;

    // integral over t and tau of the time-ordered density, summed over all
    // ordered detector pairs; 1 for a lossless network.
    double total_probability() const;

private:
    // integral_0^inf |Psi(t, tau)|^2 dt for one time ordering, given the
    // later detector's channel values at tau
    double ordered_integral(int earlier, const std::vector<Complex>& later_vals) const;
    std::vector<Complex> eval_later(int det, double tau) const;

    const TwoPhotonSolver& solver_;
    int threads_;
    int nch_;
    // [detector][k * nch + l] Gram matrices; zero rows for absent channels
    std::vector<std::vector<Complex>> time_gram_;  // integral f_k conj(f_l) dt
    std::vector<std::vector<Complex>> delay_gram_; // integral g_k conj(g_l) dtau
    // Channel-pair traversal grouped by mirror orbits. Mirrored detectors
    // carry bit-identical channel data, and walking the contraction orbit by
    // orbit (adding the two members commutatively) makes mirrored pattern
    // entries bit-identical too, instead of merely close.
    std::vector<int> mirror_channel_;
    struct PairOrbit {
        int k, l;   // representative
        int mk, ml; // mirrored partner; equal to (k, l) for fixed pairs
    };
    std::vector<PairOrbit> pair_orbits_;
};

/// Two non-interacting photons routed through the linear reference walk.
/// G factorizes into a detector weight times a universal exponential in tau,
/// so the normalized pattern is delay-invariant.
class LinearReference {
public:
    explicit LinearReference(const WalkParams& p);

    const std::map<DetectorId, Complex>& amplitudes() const { return amps_; }
    double weight(DetectorId a, DetectorId b) const; // 4 |A_a A_b|^2
    double g(DetectorId a, DetectorId b, double tau) const;
    NumericPolyExpFn g_curve(DetectorId a, DetectorId b) const;
    PatternMatrix pattern(double tau, Normalization norm) const;
    double total_probability() const;

private:
    WalkParams params_;
    std::vector<DetectorId> dets_;
    std::map<DetectorId, Complex> amps_;
};

} // namespace galton
