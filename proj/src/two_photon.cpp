#include "galton/two_photon.hpp"

#include <algorithm>
#include <cmath>

namespace galton {

namespace {

std::pair<Site, Site> canonical(Site a, Site b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

const PolyExpFn& zero_fn() {
    static const PolyExpFn z;
    return z;
}

} // namespace

const PolyExpFn& EqualTimeMap::pair(Site a, Site b) const {
    if (a == b) return zero_fn();
    auto it = E.find(canonical(a, b));
    return it == E.end() ? zero_fn() : it->second;
}

PolyExpFn compute_bb(const WalkParams& p) {
    return PolyExpFn::exponential({0, 2}, 2.0 * std::sqrt(2.0) * p.kappa);
}

std::map<Site, PolyExpFn> compute_C(const AtomicAmplitudeMap& amps, const WalkParams& p) {
    const PolyExpFn envelope =
        PolyExpFn::exponential({0, 1}, std::sqrt(2.0) * std::sqrt(2.0 * p.kappa));
    std::map<Site, PolyExpFn> out;
    for (const auto& [s, a] : amps) out.emplace(s, envelope * a);
    return out;
}

std::map<std::pair<Site, Site>, PolyExpFn> compute_E(const AtomicAmplitudeMap&,
                                                     const std::map<Site, PolyExpFn>& C,
                                                     const WalkParams& p) {
    const std::vector<Site> all = sites(p.steps);
    std::vector<std::pair<Site, Site>> pairs;
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) pairs.push_back({all[i], all[j]});
    // increasing n + n' guarantees all forcing terms are already solved
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& a, const auto& b) {
                         return a.first.n + a.second.n < b.first.n + b.second.n;
                     });

    std::map<std::pair<Site, Site>, PolyExpFn> E;
    auto lookup = [&](Site a, Site b) -> const PolyExpFn& {
        if (a == b) return zero_fn();
        auto it = E.find(canonical(a, b));
        return it == E.end() ? zero_fn() : it->second;
    };

    // Pairs come in mirror orbits with bit-identical solutions; solve the
    // canonical representative of each orbit only.
    auto mirrored_key = [](const std::pair<Site, Site>& key) {
        return canonical(mirror(key.first), mirror(key.second));
    };

    const Complex edge_c = -std::sqrt(p.gamma / 2.0);
    for (const auto& key : pairs) {
        if (E.count(key)) continue; // mirror partner already filled it
        const auto& [s1, s2] = key;
        PolyExpFn forcing;
        for (Site q : predecessors(s1)) forcing += Complex(-p.gamma) * lookup(q, s2);
        for (Site q : predecessors(s2)) forcing += Complex(-p.gamma) * lookup(s1, q);
        if (source_coefficient(s1) != 0.0) forcing += edge_c * C.at(s2);
        if (source_coefficient(s2) != 0.0) forcing += edge_c * C.at(s1);
        E.emplace(key, solve_decay_ode({2, 0}, forcing, p));
        const auto mkey = mirrored_key(key);
        if (mkey != key) E.emplace(mkey, E.at(key));
    }
    return E;
}

EqualTimeMap compute_equal_time(const AtomicAmplitudeMap& amps, const WalkParams& p) {
    EqualTimeMap out;
    out.bb = compute_bb(p);
    out.C = compute_C(amps, p);
    out.E = compute_E(amps, out.C, p);
    return out;
}

Complex BilinearCorrelation::eval(double t, double tau) const {
    Complex acc = 0.0;
    for (const BilinearTerm& term : terms) acc += term.time_part.eval(t) * term.delay_part.eval(tau);
    return acc;
}

BilinearCorrelation projector_decompose(const OperatorDescriptor& later,
                                        const OperatorDescriptor& earlier,
                                        const EqualTimeMap& state,
                                        const AtomicAmplitudeMap& amps,
                                        const PropagatorTable& props, const WalkParams& p) {
    const PolyExpFn pulse_tau = PolyExpFn::exponential({0, 1}); // e^{-(kappa+i delta) tau}
    const double sqrt_2k = std::sqrt(2.0 * p.kappa);
    BilinearCorrelation out;
    auto push = [&](const PolyExpFn& f, const PolyExpFn& g) {
        if (f.is_zero() || g.is_zero()) return;
        out.terms.push_back({to_numeric(f, p), to_numeric(g, p)});
    };

    if (later.is_boundary && earlier.is_boundary) {
        // free propagation of the two-photon boundary correlator
        push(state.bb, pulse_tau);
    } else if (!later.is_boundary && earlier.is_boundary) {
        // waveguide channel: the remaining photon is still the input pulse
        push(PolyExpFn::exponential({0, 2}, std::sqrt(2.0) * sqrt_2k), amps.at(later.site));
        // atomic channels: excitation left on s'', picked up by the later atom
        for (const auto& [src, pmap] : props) {
            auto it = pmap.to.find(later.site);
            if (it != pmap.to.end()) push(state.C.at(src), it->second);
        }
    } else if (later.is_boundary && !earlier.is_boundary) {
        // the input-side field cannot receive atomic emission, so only the
        // waveguide channel survives
        push(state.C.at(earlier.site), pulse_tau);
    } else {
        push(Complex(1.0 / sqrt_2k) * state.C.at(earlier.site), amps.at(later.site));
        for (const auto& [src, pmap] : props) {
            auto it = pmap.to.find(later.site);
            if (it != pmap.to.end()) push(state.pair(earlier.site, src), it->second);
        }
    }
    return out;
}

TwoPhotonSolver::TwoPhotonSolver(const WalkParams& p, double amplitude_scale)
    : params_(p), scale_(amplitude_scale) {
    params_.validate();
    sites_ = sites(params_.steps);
    for (size_t i = 0; i < sites_.size(); ++i) site_index_.emplace(sites_[i], int(i));
    detectors_ = detectors(params_.steps);
    amps_ = compute_atomic_amplitudes(params_);
    props_ = compute_all_propagators(params_);
    equal_time_ = compute_equal_time(amps_, params_);

    const double sg = std::sqrt(params_.gamma);
    const double sqrt_2k = std::sqrt(2.0 * params_.kappa);
    const int nch = channel_count();
    earlier_.resize(detectors_.size());
    later_.resize(detectors_.size());

    for (size_t di = 0; di < detectors_.size(); ++di) {
        const DetectorExpansion exp = detector_expansion(detectors_[di], params_.steps);
        auto& f = earlier_[di];
        auto& g = later_[di];
        f.resize(nch);
        g.resize(nch);

        // channel 0, the source-waveguide mode. In the later role this is
        // the single-photon detector wavefunction divided by its sqrt(2 kappa)
        // mode normalization.
        PolyExpFn f_b = Complex(exp.boundary_coeff) * equal_time_.bb;
        PolyExpFn g_b = PolyExpFn::exponential({0, 1}, exp.boundary_coeff);
        for (Site s : exp.atoms) {
            f_b += Complex(sg) * equal_time_.C.at(s);
            g_b += Complex(sg / sqrt_2k) * amps_.at(s);
        }
        f[0] = to_numeric(Complex(scale_) * f_b, params_);
        g[0] = to_numeric(Complex(scale_) * g_b, params_);

        // atomic channels
        for (size_t i = 0; i < sites_.size(); ++i) {
            const Site mid = sites_[i];
            PolyExpFn f_i = Complex(exp.boundary_coeff) * equal_time_.C.at(mid);
            for (Site s : exp.atoms) f_i += Complex(sg) * equal_time_.pair(s, mid);
            if (!f_i.is_zero()) f[1 + i] = to_numeric(Complex(scale_) * f_i, params_);

            const PropagatorMap& pmap = props_.at(mid);
            PolyExpFn g_i;
            for (Site s : exp.atoms) {
                auto it = pmap.to.find(s);
                if (it != pmap.to.end()) g_i += it->second;
            }
            if (!g_i.is_zero()) g[1 + i] = to_numeric(Complex(scale_ * sg) * g_i, params_);
        }
    }
}

int TwoPhotonSolver::detector_index(DetectorId det) const {
    auto it = std::lower_bound(detectors_.begin(), detectors_.end(), det);
    if (it == detectors_.end() || *it != det)
        throw InvalidDetectorError("detector not on this board");
    return int(it - detectors_.begin());
}

const std::vector<NumericPolyExpFn>& TwoPhotonSolver::earlier_channels(DetectorId det) const {
    return earlier_[detector_index(det)];
}

const std::vector<NumericPolyExpFn>& TwoPhotonSolver::later_channels(DetectorId det) const {
    return later_[detector_index(det)];
}

BilinearCorrelation TwoPhotonSolver::pair_amplitude(DetectorId earlier, DetectorId later) const {
    const auto& f = earlier_channels(earlier);
    const auto& g = later_channels(later);
    BilinearCorrelation out;
    for (int k = 0; k < channel_count(); ++k) {
        if (f[k].is_zero() || g[k].is_zero()) continue;
        out.terms.push_back({f[k], g[k]});
    }
    return out;
}

BilinearCorrelation TwoPhotonSolver::pair_amplitude_by_projectors(DetectorId earlier,
                                                                  DetectorId later) const {
    const DetectorExpansion e1 = detector_expansion(earlier, params_.steps);
    const DetectorExpansion e2 = detector_expansion(later, params_.steps);
    const double sg = std::sqrt(params_.gamma);

    std::vector<std::pair<OperatorDescriptor, double>> ops1, ops2;
    if (e1.boundary_coeff != 0.0) ops1.push_back({OperatorDescriptor::boundary(), e1.boundary_coeff});
    for (Site s : e1.atoms) ops1.push_back({OperatorDescriptor::atom(s), sg});
    if (e2.boundary_coeff != 0.0) ops2.push_back({OperatorDescriptor::boundary(), e2.boundary_coeff});
    for (Site s : e2.atoms) ops2.push_back({OperatorDescriptor::atom(s), sg});

    BilinearCorrelation out;
    for (const auto& [op2, w2] : ops2) {
        for (const auto& [op1, w1] : ops1) {
            BilinearCorrelation part =
                projector_decompose(op2, op1, equal_time_, amps_, props_, params_);
            const Complex w = scale_ * scale_ * w1 * w2;
            for (BilinearTerm& term : part.terms) {
                term.time_part = term.time_part.scaled(w);
                out.terms.push_back(std::move(term));
            }
        }
    }
    return out;
}

} // namespace galton
