#pragma once

#include <map>

#include "galton/lattice.hpp"
#include "galton/polyexp.hpp"

namespace galton {

// A_s(t): single-excitation atomic amplitude of site s, with the emission
// phase -i folded in. Exponent keys stay in {(1,0), (0,1)}.
using AtomicAmplitudeMap = std::map<Site, PolyExpFn>;

// D_{source->s}(t): amplitude for an excitation placed on `source` at time 0
// to be found on atom s at time t. Zero outside the light cone of source;
// D_{source->source}(t) = e^{-gamma t}.
struct PropagatorMap {
    Site source;
    std::map<Site, PolyExpFn> to; // absent site means zero
};

using PropagatorTable = std::map<Site, PropagatorMap>;

// sqrt(2 kappa) e^{-(kappa + i delta) t}: the input pulse amplitude at the
// entry of the source waveguide, unit-normalized over [0, inf).
PolyExpFn boundary_amplitude(const WalkParams& p);

// Solves the driven single-excitation hierarchy in topological order.
AtomicAmplitudeMap compute_atomic_amplitudes(const WalkParams& p);

PropagatorMap compute_propagators(Site source, const WalkParams& p, int N);
PropagatorTable compute_all_propagators(const WalkParams& p);

// psi_det(t) = boundary_coeff * boundary_amplitude + sqrt(gamma) * sum A_s
// over the detector's atom chain.
PolyExpFn detector_wavefunction_single(DetectorId det, const AtomicAmplitudeMap& amps,
                                       const WalkParams& p);

// integral |psi_det|^2 dt over [0, inf)
double detector_probability_single(DetectorId det, const AtomicAmplitudeMap& amps,
                                   const WalkParams& p);

/// Reference walk through frequency-independent linear beamsplitters with
/// the narrowband coefficients r = -i*gamma / (i*gamma + delta) and
/// t = delta / (i*gamma + delta). Returns the output amplitude at every
/// detector; total probability is exactly 1.
std::map<DetectorId, Complex> linear_walk_amplitudes(const WalkParams& p);

} // namespace galton
