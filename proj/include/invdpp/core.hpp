#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace invdpp {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Thrown when an argument falls outside a space's chart or an operation's
// stated preconditions.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when an iterative procedure (sampler, eigensolver, tail search)
// exhausts its budget.  The message carries the diagnostics.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double sq(double x) { return x * x; }
inline double abs2(cplx z) { return std::norm(z); }

} // namespace invdpp
