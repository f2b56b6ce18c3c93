#include "galton/observables.hpp"

#include <algorithm>
#include <cmath>

#include "galton/parallel.hpp"

namespace galton {

const char* normalization_name(Normalization n) {
    return n == Normalization::Raw ? "raw" : "max";
}

double PatternMatrix::max_value() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
}

double PatternMatrix::sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

PatternMatrix PatternMatrix::max_normalized() const {
    PatternMatrix out = *this;
    const double m = max_value();
    if (m > 0.0)
        for (double& v : out.values) v /= m;
    out.norm = Normalization::Max;
    return out;
}

double gamma_density(const BilinearCorrelation& amp, double t, double tau) {
    return std::norm(amp.eval(t, tau));
}

double time_integrated_density(const BilinearCorrelation& amp, double tau, double merge_eps) {
    // collapse to a single function of t at this tau, then integrate |.|^2
    NumericPolyExpFn h;
    for (const BilinearTerm& term : amp.terms)
        h = npe_add(h, term.time_part.scaled(term.delay_part.eval(tau)), merge_eps);
    if (h.is_zero()) return 0.0;
    return npe_integrate_product_inf(h, h.conj()).real();
}

double g_tau(const BilinearCorrelation& ab, const BilinearCorrelation& ba, double merge_eps,
             double tau) {
    return time_integrated_density(ab, tau, merge_eps) +
           time_integrated_density(ba, tau, merge_eps);
}

namespace {

// integral_0^inf |sum_k f_k(t) g_k(tau)|^2 dt as a function of tau:
// sum_{k,l} [integral f_k conj(f_l) dt] g_k(tau) conj(g_l)(tau)
NumericPolyExpFn one_ordering_curve(const BilinearCorrelation& amp, double eps) {
    NumericPolyExpFn curve;
    for (const BilinearTerm& tk : amp.terms) {
        for (const BilinearTerm& tl : amp.terms) {
            const Complex m = npe_integrate_product_inf(tk.time_part, tl.time_part.conj());
            curve = npe_add(curve, npe_mul(tk.delay_part, tl.delay_part.conj(), eps).scaled(m),
                            eps);
        }
    }
    return curve;
}

} // namespace

NumericPolyExpFn g_tau_curve(const BilinearCorrelation& ab, const BilinearCorrelation& ba,
                             double merge_eps) {
    return npe_add(one_ordering_curve(ab, merge_eps), one_ordering_curve(ba, merge_eps),
                   merge_eps);
}

// ---------------------------------------------------------------------------
// CorrelationEngine

CorrelationEngine::CorrelationEngine(const TwoPhotonSolver& solver, int threads)
    : solver_(solver), threads_(std::max(1, threads)), nch_(solver.channel_count()) {
    const auto& dets = solver_.detector_list();

    mirror_channel_.assign(nch_, 0);
    const auto& site_list = solver_.site_list();
    for (size_t i = 0; i < site_list.size(); ++i) {
        const Site m = mirror(site_list[i]);
        const int mi = int(std::lower_bound(site_list.begin(), site_list.end(), m) -
                           site_list.begin());
        mirror_channel_[1 + i] = 1 + mi;
    }
    for (int k = 0; k < nch_; ++k) {
        for (int l = 0; l < nch_; ++l) {
            const int mk = mirror_channel_[k], ml = mirror_channel_[l];
            if (std::make_pair(k, l) <= std::make_pair(mk, ml))
                pair_orbits_.push_back({k, l, mk, ml});
        }
    }
    time_gram_.resize(dets.size());
    delay_gram_.resize(dets.size());
    parallel_for(int(dets.size()), threads_, [&](int di) {
        const auto& f = solver_.earlier_channels(dets[di]);
        const auto& g = solver_.later_channels(dets[di]);
        auto& M = time_gram_[di];
        auto& Q = delay_gram_[di];
        M.assign(size_t(nch_) * nch_, 0.0);
        Q.assign(size_t(nch_) * nch_, 0.0);
        // both triangles are computed directly: filling the upper one by
        // conjugation permutes the internal summation order, which breaks
        // the bit-level mirror symmetry the pattern tests rely on
        for (int k = 0; k < nch_; ++k) {
            for (int l = 0; l < nch_; ++l) {
                if (!f[k].is_zero() && !f[l].is_zero())
                    M[size_t(k) * nch_ + l] = npe_integrate_product_inf(f[k], f[l].conj());
                if (!g[k].is_zero() && !g[l].is_zero())
                    Q[size_t(k) * nch_ + l] = npe_integrate_product_inf(g[k], g[l].conj());
            }
        }
    });
}

std::vector<Complex> CorrelationEngine::eval_later(int det, double tau) const {
    const auto& g = solver_.later_channels(solver_.detector_list()[det]);
    std::vector<Complex> vals(nch_, 0.0);
    for (int k = 0; k < nch_; ++k)
        if (!g[k].is_zero()) vals[k] = g[k].eval(tau);
    return vals;
}

double CorrelationEngine::ordered_integral(int earlier,
                                           const std::vector<Complex>& later_vals) const {
    const auto& M = time_gram_[earlier];
    auto term = [&](int k, int l) {
        return M[size_t(k) * nch_ + l] * later_vals[k] * std::conj(later_vals[l]);
    };
    Complex acc = 0.0;
    for (const PairOrbit& o : pair_orbits_) {
        Complex s = term(o.k, o.l);
        if (o.mk != o.k || o.ml != o.l) s += term(o.mk, o.ml);
        acc += s;
    }
    return acc.real();
}

double CorrelationEngine::g(DetectorId a, DetectorId b, double tau) const {
    const int ia = solver_.detector_index(a);
    const int ib = solver_.detector_index(b);
    const std::vector<Complex> ga = eval_later(ia, tau);
    const std::vector<Complex> gb = eval_later(ib, tau);
    return ordered_integral(ia, gb) + ordered_integral(ib, ga);
}

std::vector<double> CorrelationEngine::g_grid(DetectorId a, DetectorId b,
                                              const std::vector<double>& taus) const {
    std::vector<double> out(taus.size());
    for (size_t i = 0; i < taus.size(); ++i) out[i] = g(a, b, taus[i]);
    return out;
}

NumericPolyExpFn CorrelationEngine::g_curve(DetectorId a, DetectorId b) const {
    const double eps = solver_.params().collision_eps();
    NumericPolyExpFn curve;
    auto accumulate = [&](int earlier, int later) {
        const auto& M = time_gram_[earlier];
        const auto& g = solver_.later_channels(solver_.detector_list()[later]);
        for (int k = 0; k < nch_; ++k) {
            if (g[k].is_zero()) continue;
            for (int l = 0; l < nch_; ++l) {
                if (g[l].is_zero()) continue;
                const Complex m = M[size_t(k) * nch_ + l];
                if (m == Complex(0.0)) continue;
                curve = npe_add(curve, npe_mul(g[k], g[l].conj(), eps).scaled(m), eps);
            }
        }
    };
    const int ia = solver_.detector_index(a);
    const int ib = solver_.detector_index(b);
    accumulate(ia, ib);
    accumulate(ib, ia);
    return curve;
}

PatternMatrix CorrelationEngine::pattern(double tau, Normalization norm) const {
    const auto& dets = solver_.detector_list();
    const int nd = int(dets.size());
    std::vector<std::vector<Complex>> later_vals(nd);
    for (int d = 0; d < nd; ++d) later_vals[d] = eval_later(d, tau);

    PatternMatrix out;
    out.steps = solver_.params().steps;
    out.tau = tau;
    out.norm = Normalization::Raw;
    out.dets = dets;
    out.values.assign(size_t(nd) * nd, 0.0);
    parallel_for(nd, threads_, [&](int i) {
        for (int j = 0; j < nd; ++j) {
            out.at(i, j) =
                ordered_integral(i, later_vals[j]) + ordered_integral(j, later_vals[i]);
        }
    });
    return norm == Normalization::Max ? out.max_normalized() : out;
}

double CorrelationEngine::total_probability() const {
    const int nd = int(solver_.detector_list().size());
    std::vector<double> partial(nd, 0.0);
    parallel_for(nd, threads_, [&](int a) {
        Complex acc = 0.0;
        for (int b = 0; b < nd; ++b) {
            const auto& M = time_gram_[a];
            const auto& Q = delay_gram_[b];
            auto term = [&](int k, int l) {
                return M[size_t(k) * nch_ + l] * Q[size_t(k) * nch_ + l];
            };
            for (const PairOrbit& o : pair_orbits_) {
                Complex s = term(o.k, o.l);
                if (o.mk != o.k || o.ml != o.l) s += term(o.mk, o.ml);
                acc += s;
            }
        }
        partial[a] = acc.real();
    });
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

// ---------------------------------------------------------------------------
// LinearReference

LinearReference::LinearReference(const WalkParams& p)
    : params_(p), dets_(detectors(p.steps)), amps_(linear_walk_amplitudes(p)) {}

double LinearReference::weight(DetectorId a, DetectorId b) const {
    return 4.0 * std::norm(amps_.at(a)) * std::norm(amps_.at(b));
}

double LinearReference::g(DetectorId a, DetectorId b, double tau) const {
    return weight(a, b) * params_.kappa * std::exp(-2.0 * params_.kappa * tau);
}

NumericPolyExpFn LinearReference::g_curve(DetectorId a, DetectorId b) const {
    return NumericPolyExpFn::term(Complex(2.0 * params_.kappa, 0.0),
                                  Poly{weight(a, b) * params_.kappa});
}

PatternMatrix LinearReference::pattern(double tau, Normalization norm) const {
    const int nd = int(dets_.size());
    PatternMatrix out;
    out.steps = params_.steps;
    out.tau = tau;
    out.norm = Normalization::Raw;
    out.dets = dets_;
    out.values.assign(size_t(nd) * nd, 0.0);
    for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nd; ++j) out.at(i, j) = g(dets_[i], dets_[j], tau);
    return norm == Normalization::Max ? out.max_normalized() : out;
}

double LinearReference::total_probability() const {
    // sum over ordered pairs of |A_a A_b|^2; unit by single-photon unitarity
    double single = 0.0;
    for (const auto& [det, a] : amps_) single += std::norm(a);
    return single * single;
}

} // namespace galton
