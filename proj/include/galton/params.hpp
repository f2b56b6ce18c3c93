#pragma once

#include <complex>
#include <stdexcept>

namespace galton {

using Complex = std::complex<double>;

/// Physical parameters of the walk, in units where the waveguide group
/// velocity is 1. All amplitudes are computed in the rotating frame, so the
/// carrier frequency never appears; only the detuning delta does.
struct WalkParams {
    double gamma = 1.0;   // atomic decay rate into the waveguide
    double kappa = 0.002; // bandwidth of the injected exponential pulse
    double delta = 1.0;   // pulse carrier detuning from the atomic resonance
    int steps = 9;        // number of walk steps N

    // decay constant of the injected pulse envelope, kappa + i*delta
    Complex pulse_rate() const { return Complex(kappa, delta); }

    // tolerance below which two distinct decay exponents are considered
    // pathologically close (see solve_decay_ode)
    double collision_eps() const { return 1e-12 * gamma; }

    void validate() const {
        if (!(gamma > 0.0)) throw std::invalid_argument("WalkParams: gamma must be > 0");
        if (!(kappa > 0.0)) throw std::invalid_argument("WalkParams: kappa must be > 0");
        if (steps < 1) throw std::invalid_argument("WalkParams: steps must be >= 1");
    }
};

} // namespace galton
