#pragma once

#include <functional>
#include <vector>

#include "galton/lattice.hpp"
#include "galton/two_photon.hpp"

namespace galton::oracle {

/// Fixed-step RK4 integration of the same correlator hierarchies the
/// symbolic pipeline solves in closed form. Shares only the lattice
/// bookkeeping with that pipeline — no polynomial-exponential kernels —
/// so agreement between the two is meaningful cross-validation.

/// Equal-time hierarchy samples: A (driven single excitation), C (one
/// excitation plus the waveguide photon) and E (two atomic excitations,
/// strictly off-diagonal pairs; the diagonal is held at zero by
/// construction).
struct EqualTimeTrajectory {
    std::vector<Site> site_list;
    std::vector<std::pair<int, int>> pair_list; // site indices, i < j
    std::vector<double> times;
    std::vector<std::vector<Complex>> A; // [sample][site]
    std::vector<std::vector<Complex>> C;
    std::vector<std::vector<Complex>> E; // [sample][pair]

    int site_index(Site s) const;
    // -1 for the diagonal
    int pair_index(int i, int j) const;
};

// both-photon boundary correlator, closed form
Complex bb_value(const WalkParams& p, double t);

EqualTimeTrajectory rk4_equal_time(const WalkParams& p, double t_max, double dt,
                                   int sample_stride);

/// RK4 for the homogeneous single-excitation system
///   y_s' = -gamma y_s - gamma sum_pred y - edge drive,
/// with edge_drive(t) added to every edge site. Returns trajectories
/// sampled every sample_stride steps, [sample][site].
std::vector<std::vector<Complex>> rk4_site_system(const WalkParams& p, int N,
                                                  std::vector<Complex> y0,
                                                  const std::function<Complex(double)>& edge_drive,
                                                  double t_max, double dt, int sample_stride);

struct OracleReport {
    double dev_A = 0.0;
    double dev_C = 0.0;
    double dev_E = 0.0;
    double dev_D = 0.0;    // atom-to-atom propagators
    double dev_pair = 0.0; // assembled detector-pair amplitudes
    double max() const;
};

/// Max absolute deviation between the RK4 and symbolic pipelines, per
/// correlator class. Detector-pair amplitudes are validated by restarting
/// the dynamics in the delay direction from RK4 equal-time snapshots at
/// `snap_times`, without ever inserting the single-excitation projector, so
/// the factorized assembly is genuinely exercised.
OracleReport compare_with_symbolic(const TwoPhotonSolver& solver, double t_max, double dt,
                                   int sample_stride, const std::vector<double>& snap_times,
                                   const std::vector<double>& taus);

} // namespace galton::oracle
