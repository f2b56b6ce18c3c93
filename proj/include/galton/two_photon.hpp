#pragma once

#include <map>
#include <utility>
#include <vector>

#include "galton/single_photon.hpp"

namespace galton {

/// Equal-time two-excitation correlators, all with the -i emission phases
/// folded in:
///   bb(t)      both photons still in the source waveguide,
///   C_s(t)     one excitation on atom s, one photon in the source waveguide,
///   E_{s,s'}(t) excitations on two distinct atoms.
/// The diagonal E_{s,s} is identically zero (two-level atoms).
struct EqualTimeMap {
    PolyExpFn bb;
    std::map<Site, PolyExpFn> C;
    std::map<std::pair<Site, Site>, PolyExpFn> E; // canonical key: first < second

    // order-insensitive lookup; returns zero for the diagonal
    const PolyExpFn& pair(Site a, Site b) const;
};

// 2*sqrt(2)*kappa * e^{-2(kappa + i delta) t}
PolyExpFn compute_bb(const WalkParams& p);

// C_s(t) = sqrt(2) * sqrt(2 kappa) * e^{-(kappa + i delta) t} * A_s(t)
std::map<Site, PolyExpFn> compute_C(const AtomicAmplitudeMap& amps, const WalkParams& p);

// Pair recursion at rate 2*gamma, ordered by n + n'; edge sites couple to
// the partner's C function through the source waveguide.
std::map<std::pair<Site, Site>, PolyExpFn> compute_E(const AtomicAmplitudeMap& amps,
                                                     const std::map<Site, PolyExpFn>& C,
                                                     const WalkParams& p);

EqualTimeMap compute_equal_time(const AtomicAmplitudeMap& amps, const WalkParams& p);

/// One factorized two-photon amplitude: value(t, tau) = sum_k f_k(t) g_k(tau).
/// Every t-exponent and tau-exponent has a positive real part, so improper
/// integrals in both variables always exist.
struct BilinearTerm {
    NumericPolyExpFn time_part;  // f_k(t)
    NumericPolyExpFn delay_part; // g_k(tau)
};

struct BilinearCorrelation {
    std::vector<BilinearTerm> terms;
    Complex eval(double t, double tau) const;
};

/// Either the source-waveguide boundary field (carrying its 1/sqrt(2) weight
/// at detector assembly) or a specific atom.
struct OperatorDescriptor {
    bool is_boundary = true;
    Site site{};

    static OperatorDescriptor boundary() { return {true, {}}; }
    static OperatorDescriptor atom(Site s) { return {false, s}; }
};

/// Unequal-time correlator <later(t+tau) earlier(t)> resolved through the
/// single-excitation identity into products of equal-time two-photon
/// correlators (in t) and single-excitation propagators (in tau).
BilinearCorrelation projector_decompose(const OperatorDescriptor& later,
                                        const OperatorDescriptor& earlier,
                                        const EqualTimeMap& state,
                                        const AtomicAmplitudeMap& amps,
                                        const PropagatorTable& props, const WalkParams& p);

/// Builds every correlator of an N-step walk once and assembles two-photon
/// detector-pair amplitudes from them. The amplitude is organized by the
/// single-excitation channel left behind by the first detection: channel 0
/// is the source-waveguide mode, channel 1+i is atom i. All state is
/// immutable after construction and safe to share across threads.
class TwoPhotonSolver {
public:
    // amplitude_scale multiplies every assembled amplitude; it exists as a
    // corruption fixture for the validation suite and defaults to 1.
    explicit TwoPhotonSolver(const WalkParams& p, double amplitude_scale = 1.0);

    const WalkParams& params() const { return params_; }
    const std::vector<Site>& site_list() const { return sites_; }
    const std::vector<DetectorId>& detector_list() const { return detectors_; }
    int detector_index(DetectorId det) const;

    const AtomicAmplitudeMap& amplitudes() const { return amps_; }
    const EqualTimeMap& equal_time() const { return equal_time_; }
    const PropagatorTable& propagators() const { return props_; }

    int channel_count() const { return int(sites_.size()) + 1; }
    // f_k(t) of the detector in the earlier role / g_k(tau) in the later
    // role, indexed by channel; zero entries are empty functions.
    const std::vector<NumericPolyExpFn>& earlier_channels(DetectorId det) const;
    const std::vector<NumericPolyExpFn>& later_channels(DetectorId det) const;

    /// <vac| b_later(t+tau) b_earlier(t) |two-photon input>, assembled by
    /// pairing the shared channels of both detectors.
    BilinearCorrelation pair_amplitude(DetectorId earlier, DetectorId later) const;

    // Same amplitude assembled term by term from projector_decompose over
    // the (boundary + atoms) x (boundary + atoms) expansion. Quadratically
    // more terms; kept as the literal reference route for tests.
    BilinearCorrelation pair_amplitude_by_projectors(DetectorId earlier, DetectorId later) const;

private:
    WalkParams params_;
    double scale_;
    std::vector<Site> sites_;
    std::map<Site, int> site_index_;
    std::vector<DetectorId> detectors_;
    AtomicAmplitudeMap amps_;
    PropagatorTable props_;
    EqualTimeMap equal_time_;
    std::vector<std::vector<NumericPolyExpFn>> earlier_; // [detector][channel]
    std::vector<std::vector<NumericPolyExpFn>> later_;
};

} // namespace galton
