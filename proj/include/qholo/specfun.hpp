#pragma once

#include <complex>
#include <stdexcept>

namespace qholo {

using complex_t = std::complex<double>;

// Euler's constant, 20 significant digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Truncation control for the ascending series. The series are used for
// |t| <= 8; beyond that, cancellation in double precision erodes accuracy
// (see docs/series-validity.md for the measured error map).
struct SeriesCfg {
    double tol = 1e-12;
    int max_terms = 64;
};

struct SpecfunError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hankel functions of order 0, 1, 2 of the first (p=1) or second (p=2) kind,
// evaluated by their ascending series with the principal branch of log(t/2).
// t = 0 is a pole of the series and is rejected.
complex_t hankel0(int p, complex_t t, const SeriesCfg& cfg = {});
complex_t hankel1(int p, complex_t t, const SeriesCfg& cfg = {});

// Order 2 via the three-term recurrence t*H2 = 2*H1 - t*H0, never a series
// of its own.
complex_t hankel2(int p, complex_t t, const SeriesCfg& cfg = {});

}  // namespace qholo
