#pragma once

#include <stdexcept>
#include <string>

namespace galton {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two distinct exponent keys evaluate to nearly the same numeric rate.
// Signals pathological parameters (e.g. kappa ~ gamma with delta ~ 0);
// the caller must perturb kappa or delta.
struct NumericCollisionError : Error {
    using Error::Error;
};

// An improper integral over [0, inf) was requested for a term whose decay
// exponent has a non-positive real part.
struct DivergentIntegralError : Error {
    using Error::Error;
};

struct InvalidDetectorError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace galton
