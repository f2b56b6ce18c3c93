#include "galton/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace galton::oracle {

namespace {

using CVec = std::vector<Complex>;

// Classic fixed-step RK4 over a complex state vector.
class Rk4 {
public:
    explicit Rk4(size_t dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

    template <typename Deriv>
    void step(Deriv&& deriv, CVec& y, double t, double dt) {
        deriv(y, t, k1_);
        axpy(tmp_, y, k1_, 0.5 * dt);
        deriv(tmp_, t + 0.5 * dt, k2_);
        axpy(tmp_, y, k2_, 0.5 * dt);
        deriv(tmp_, t + 0.5 * dt, k3_);
        axpy(tmp_, y, k3_, dt);
        deriv(tmp_, t + dt, k4_);
        const double w = dt / 6.0;
        for (size_t i = 0; i < y.size(); ++i)
            y[i] += w * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }

private:
    static void axpy(CVec& out, const CVec& y, const CVec& k, double a) {
        for (size_t i = 0; i < y.size(); ++i) out[i] = y[i] + a * k[i];
    }
    CVec k1_, k2_, k3_, k4_, tmp_;
};

struct LatticeIndex {
    std::vector<Site> site_list;
    std::vector<std::vector<int>> preds; // per site, indices of predecessors
    std::vector<bool> edge;              // source-driven sites

    explicit LatticeIndex(int N) : site_list(sites(N)) {
        preds.resize(site_list.size());
        edge.resize(site_list.size());
        for (size_t i = 0; i < site_list.size(); ++i) {
            for (Site q : predecessors(site_list[i]))
                preds[i].push_back(index_of(q));
            edge[i] = source_coefficient(site_list[i]) != 0.0;
        }
    }

    int index_of(Site s) const {
        auto it = std::lower_bound(site_list.begin(), site_list.end(), s);
        return int(it - site_list.begin());
    }
};

} // namespace

Complex bb_value(const WalkParams& p, double t) {
    return 2.0 * std::sqrt(2.0) * p.kappa * std::exp(-2.0 * p.pulse_rate() * t);
}

int EqualTimeTrajectory::site_index(Site s) const {
    auto it = std::lower_bound(site_list.begin(), site_list.end(), s);
    if (it == site_list.end() || *it != s) throw std::out_of_range("site not on board");
    return int(it - site_list.begin());
}

int EqualTimeTrajectory::pair_index(int i, int j) const {
    if (i == j) return -1;
    const auto key = std::minmax(i, j);
    auto it = std::lower_bound(pair_list.begin(), pair_list.end(),
                               std::make_pair(key.first, key.second));
    return int(it - pair_list.begin());
}

EqualTimeTrajectory rk4_equal_time(const WalkParams& p, double t_max, double dt,
                                   int sample_stride) {
    p.validate();
    const LatticeIndex lat(p.steps);
    const int ns = int(lat.site_list.size());

    EqualTimeTrajectory out;
    out.site_list = lat.site_list;
    for (int i = 0; i < ns; ++i)
        for (int j = i + 1; j < ns; ++j) out.pair_list.push_back({i, j});
    const int np = int(out.pair_list.size());

    // pair lookups used inside the E derivative; diagonal entries map to -1
    std::vector<std::vector<std::pair<int, int>>> pair_preds(np); // (pair idx or -1 skip)
    auto pair_idx = [&](int i, int j) { return out.pair_index(i, j); };
    for (int q = 0; q < np; ++q) {
        const auto [i, j] = out.pair_list[q];
        for (int pi : lat.preds[i]) {
            const int k = pair_idx(pi, j);
            if (k >= 0) pair_preds[q].push_back({k, 0});
        }
        for (int pj : lat.preds[j]) {
            const int k = pair_idx(i, pj);
            if (k >= 0) pair_preds[q].push_back({k, 0});
        }
    }

    const double g = p.gamma;
    const Complex pulse = p.pulse_rate();
    const double drive_a = std::sqrt(p.kappa * p.gamma);
    const double drive_e = std::sqrt(p.gamma / 2.0);

    // state layout: [A(ns) | C(ns) | E(np)]
    const int dim = 2 * ns + np;
    CVec y(dim, 0.0);
    auto deriv = [&](const CVec& s, double t, CVec& ds) {
        const Complex e0 = std::exp(-pulse * t);
        const Complex bb = bb_value(p, t);
        for (int i = 0; i < ns; ++i) {
            Complex acc = -g * s[i];
            for (int pi : lat.preds[i]) acc -= g * s[pi];
            if (lat.edge[i]) acc -= drive_a * e0;
            ds[i] = acc;
        }
        for (int i = 0; i < ns; ++i) {
            Complex acc = -(g + pulse) * s[ns + i];
            for (int pi : lat.preds[i]) acc -= g * s[ns + pi];
            if (lat.edge[i]) acc -= drive_e * bb;
            ds[ns + i] = acc;
        }
        for (int q = 0; q < np; ++q) {
            const auto [i, j] = out.pair_list[q];
            Complex acc = -2.0 * g * s[2 * ns + q];
            for (const auto& [k, _] : pair_preds[q]) acc -= g * s[2 * ns + k];
            if (lat.edge[i]) acc -= drive_e * s[ns + j];
            if (lat.edge[j]) acc -= drive_e * s[ns + i];
            ds[2 * ns + q] = acc;
        }
    };

    Rk4 rk(dim);
    const long steps = std::lround(t_max / dt);
    auto sample = [&](double t) {
        out.times.push_back(t);
        out.A.emplace_back(y.begin(), y.begin() + ns);
        out.C.emplace_back(y.begin() + ns, y.begin() + 2 * ns);
        out.E.emplace_back(y.begin() + 2 * ns, y.end());
    };
    sample(0.0);
    for (long k = 0; k < steps; ++k) {
        rk.step(deriv, y, double(k) * dt, dt);
        if ((k + 1) % sample_stride == 0) sample(double(k + 1) * dt);
    }
    return out;
}

std::vector<std::vector<Complex>> rk4_site_system(const WalkParams& p, int N, CVec y0,
                                                  const std::function<Complex(double)>& edge_drive,
                                                  double t_max, double dt, int sample_stride) {
    const LatticeIndex lat(N);
    const int ns = int(lat.site_list.size());
    if (int(y0.size()) != ns) throw std::invalid_argument("rk4_site_system: bad y0 size");

    const double g = p.gamma;
    auto deriv = [&](const CVec& s, double t, CVec& ds) {
        const Complex drive = edge_drive ? edge_drive(t) : Complex(0.0);
        for (int i = 0; i < ns; ++i) {
            Complex acc = -g * s[i];
            for (int pi : lat.preds[i]) acc -= g * s[pi];
            if (lat.edge[i]) acc += drive;
            ds[i] = acc;
        }
    };

    Rk4 rk(ns);
    std::vector<std::vector<Complex>> samples;
    samples.push_back(y0);
    const long steps = std::lround(t_max / dt);
    for (long k = 0; k < steps; ++k) {
        rk.step(deriv, y0, double(k) * dt, dt);
        if ((k + 1) % sample_stride == 0) samples.push_back(y0);
    }
    return samples;
}

double OracleReport::max() const {
    return std::max({dev_A, dev_C, dev_E, dev_D, dev_pair});
}

OracleReport compare_with_symbolic(const TwoPhotonSolver& solver, double t_max, double dt,
                                   int sample_stride, const std::vector<double>& snap_times,
                                   const std::vector<double>& taus) {
    const WalkParams& p = solver.params();
    OracleReport rep;

    const EqualTimeTrajectory traj = rk4_equal_time(p, t_max, dt, sample_stride);
    const int ns = int(traj.site_list.size());

    // equal-time classes against the closed forms
    const auto& amps = solver.amplitudes();
    const auto& eq = solver.equal_time();
    for (size_t k = 0; k < traj.times.size(); ++k) {
        const double t = traj.times[k];
        for (int i = 0; i < ns; ++i) {
            const Site s = traj.site_list[i];
            rep.dev_A = std::max(rep.dev_A, std::abs(traj.A[k][i] - amps.at(s).eval(t, p)));
            rep.dev_C = std::max(rep.dev_C, std::abs(traj.C[k][i] - eq.C.at(s).eval(t, p)));
        }
        for (size_t q = 0; q < traj.pair_list.size(); ++q) {
            const auto [i, j] = traj.pair_list[q];
            const Complex sym = eq.pair(traj.site_list[i], traj.site_list[j]).eval(t, p);
            rep.dev_E = std::max(rep.dev_E, std::abs(traj.E[k][q] - sym));
        }
    }

    // propagators from every source
    for (int src = 0; src < ns; ++src) {
        CVec y0(ns, 0.0);
        y0[src] = 1.0;
        const auto d = rk4_site_system(p, p.steps, y0, nullptr, t_max, dt, sample_stride);
        const PropagatorMap& pmap = solver.propagators().at(traj.site_list[src]);
        for (size_t k = 0; k < d.size(); ++k) {
            const double t = double(k) * dt * sample_stride;
            for (int i = 0; i < ns; ++i) {
                auto it = pmap.to.find(traj.site_list[i]);
                const Complex sym = it == pmap.to.end() ? Complex(0.0) : it->second.eval(t, p);
                rep.dev_D = std::max(rep.dev_D, std::abs(d[k][i] - sym));
            }
        }
    }

    // Detector-pair amplitudes: restart the dynamics in the delay direction
    // from the equal-time snapshot. The two building blocks are
    //   Q_s(tau)     = <(-i a_s(t+tau)) b(t)>  starting from C(t),
    //   P_s^(e)(tau) = <(-i a_s(t+tau)) (-i a_e(t))>  starting from E(e,.)(t),
    // both driven through the edge sites by the free-field boundary
    // correlators, which decay exactly at the pulse rate.
    if (!snap_times.empty() && !taus.empty()) {
        const double tau_max = *std::max_element(taus.begin(), taus.end());
        // sample every step; pick indices nearest to the requested taus
        std::vector<long> tau_idx;
        for (double tau : taus) tau_idx.push_back(std::lround(tau / dt));

        const double drive_e = std::sqrt(p.gamma / 2.0);
        const Complex pulse = p.pulse_rate();
        const auto& dets = solver.detector_list();

        std::vector<DetectorExpansion> exps;
        for (DetectorId det : dets) exps.push_back(detector_expansion(det, p.steps));

        for (double t_snap : snap_times) {
            const long snap = std::lround(t_snap / (dt * sample_stride));
            if (snap < 0 || snap >= long(traj.times.size()))
                throw std::invalid_argument("snap time outside trajectory");
            const double t0 = traj.times[snap];
            const Complex bb0 = bb_value(p, t0);

            // Q system
            CVec q0 = traj.C[snap];
            const auto Q = rk4_site_system(
                p, p.steps, q0,
                [&](double tau) { return -drive_e * bb0 * std::exp(-pulse * tau); }, tau_max,
                dt, 1);

            // P systems, one per earlier site
            std::vector<std::vector<CVec>> P(ns);
            for (int e = 0; e < ns; ++e) {
                CVec y0(ns, 0.0);
                for (int i = 0; i < ns; ++i) {
                    const int q = traj.pair_index(e, i);
                    if (q >= 0) y0[i] = traj.E[snap][q];
                }
                const Complex ce = traj.C[snap][e];
                P[e] = rk4_site_system(
                    p, p.steps, y0,
                    [&, ce](double tau) { return -drive_e * ce * std::exp(-pulse * tau); },
                    tau_max, dt, 1);
            }

            const double sg = std::sqrt(p.gamma);
            for (size_t a = 0; a < dets.size(); ++a) {
                // earlier-detector dependent pieces
                Complex boundary_f = exps[a].boundary_coeff * bb0;
                for (Site s : exps[a].atoms) boundary_f += sg * traj.C[snap][traj.site_index(s)];
                for (size_t b = 0; b < dets.size(); ++b) {
                    const BilinearCorrelation sym = solver.pair_amplitude(dets[a], dets[b]);
                    for (size_t ti = 0; ti < taus.size(); ++ti) {
                        const double tau = taus[ti];
                        const long idx = tau_idx[ti];
                        Complex psi = exps[b].boundary_coeff * boundary_f *
                                      std::exp(-pulse * tau);
                        for (Site s2 : exps[b].atoms) {
                            const int i2 = traj.site_index(s2);
                            Complex atom_sum = exps[a].boundary_coeff * Q[idx][i2];
                            for (Site s1 : exps[a].atoms)
                                atom_sum += sg * P[traj.site_index(s1)][idx][i2];
                            psi += sg * atom_sum;
                        }
                        rep.dev_pair =
                            std::max(rep.dev_pair, std::abs(psi - sym.eval(t0, tau)));
                    }
                }
            }
        }
    }
    return rep;
}

} // namespace galton::oracle
