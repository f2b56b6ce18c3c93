#include "galton/single_photon.hpp"

#include <cmath>

namespace galton {

PolyExpFn boundary_amplitude(const WalkParams& p) {
    return PolyExpFn::exponential({0, 1}, std::sqrt(2.0 * p.kappa));
}

AtomicAmplitudeMap compute_atomic_amplitudes(const WalkParams& p) {
    p.validate();
    AtomicAmplitudeMap amps;
    // Edge sites are driven through the source beamsplitter; the chain of
    // constants sqrt(gamma) * (1/sqrt 2) * sqrt(2 kappa) = sqrt(kappa gamma)
    // is pinned by the unitarity and oracle tests. The board and drive are
    // x-symmetric, so only x >= 0 is solved and the left half is the
    // bit-identical reflection; downstream Gram matrices amplify rounding
    // noise enough that mirror symmetry must hold exactly, not just to
    // working precision.
    for (Site s : sites(p.steps)) {
        if (s.x < 0) continue;
        PolyExpFn forcing;
        for (Site q : predecessors(s)) forcing += Complex(-p.gamma) * amps.at(q);
        const double w = source_coefficient(s);
        if (w != 0.0)
            forcing += Complex(-std::sqrt(p.gamma) * w) * boundary_amplitude(p);
        amps.emplace(s, solve_decay_ode({1, 0}, forcing, p));
        if (s.x > 0) amps.emplace(mirror(s), amps.at(s));
    }
    return amps;
}

PropagatorMap compute_propagators(Site source, const WalkParams& p, int N) {
    PropagatorMap out{source, {}};
    out.to.emplace(source, PolyExpFn::exponential({1, 0}));
    const bool centered = source.x == 0; // reflect within the map, see below
    for (Site s : sites(N)) {
        if (s == source || !in_light_cone(source, s)) continue;
        if (centered && s.x < 0) continue;
        PolyExpFn forcing;
        for (Site q : predecessors(s)) {
            auto it = out.to.find(q);
            if (it != out.to.end()) forcing += Complex(-p.gamma) * it->second;
        }
        out.to.emplace(s, solve_decay_ode({1, 0}, forcing, p));
        if (centered && s.x > 0) out.to.emplace(mirror(s), out.to.at(s));
    }
    return out;
}

PropagatorTable compute_all_propagators(const WalkParams& p) {
    // transfer amplitudes mirror exactly: D_{m(a)->m(b)} = D_{a->b}; solve
    // the x > 0 sources and reflect the rest
    PropagatorTable table;
    for (Site s : sites(p.steps))
        if (s.x >= 0) table.emplace(s, compute_propagators(s, p, p.steps));
    for (Site s : sites(p.steps)) {
        if (s.x >= 0) continue;
        PropagatorMap reflected{s, {}};
        for (const auto& [dst, fn] : table.at(mirror(s)).to) reflected.to.emplace(mirror(dst), fn);
        table.emplace(s, std::move(reflected));
    }
    return table;
}

PolyExpFn detector_wavefunction_single(DetectorId det, const AtomicAmplitudeMap& amps,
                                       const WalkParams& p) {
    const DetectorExpansion exp = detector_expansion(det, p.steps);
    PolyExpFn psi = Complex(exp.boundary_coeff) * boundary_amplitude(p);
    const double sg = std::sqrt(p.gamma);
    for (Site s : exp.atoms) psi += Complex(sg) * amps.at(s);
    return psi;
}

double detector_probability_single(DetectorId det, const AtomicAmplitudeMap& amps,
                                   const WalkParams& p) {
    const NumericPolyExpFn psi = to_numeric(detector_wavefunction_single(det, amps, p), p);
    return npe_integrate_inf(npe_mul(psi, psi.conj(), p.collision_eps())).real();
}

std::map<DetectorId, Complex> linear_walk_amplitudes(const WalkParams& p) {
    p.validate();
    const Complex denom = Complex(0.0, p.gamma) + p.delta;
    const Complex r = Complex(0.0, -p.gamma) / denom; // direction-reversing
    const Complex t = p.delta / denom;                // direction-preserving

    // amplitude arriving at site (n, x) moving right (+1) / left (-1)
    struct Incoming {
        Complex right = 0.0, left = 0.0;
    };
    std::map<int, Incoming> layer;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    layer[1].right = inv_sqrt2;  // source output toward (1, 1)
    layer[-1].left = inv_sqrt2;  // source output toward (1, -1)

    std::map<DetectorId, Complex> out;
    for (DetectorId det : detectors(p.steps)) out.emplace(det, 0.0);

    for (int n = 1; n <= p.steps; ++n) {
        std::map<int, Incoming> next;
        for (const auto& [x, in] : layer) {
            const Complex leaving_right = t * in.right + r * in.left;
            const Complex leaving_left = t * in.left + r * in.right;
            if (n == p.steps) {
                out[{x, Dir::R}] += leaving_right;
                out[{x, Dir::L}] += leaving_left;
            } else {
                next[x + 1].right += leaving_right;
                next[x - 1].left += leaving_left;
            }
        }
        layer = std::move(next);
    }
    return out;
}

} // namespace galton
