#include "qholo/specfun.hpp"

#include <cmath>
#include <string>

namespace qholo {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

const complex_t kImagUnit{0.0, 1.0};

void check_args(int p, complex_t t) {
    if (p != 1 && p != 2) throw SpecfunError("hankel: kind must be 1 or 2, got " + std::to_string(p));
    if (t == complex_t{}) throw SpecfunError("hankel: series pole at t = 0");
}

// (-1)^p
double kind_sign(int p) { return p == 1 ? -1.0 : 1.0; }

}  // namespace

// H0 for kind p:
//   (1 - (-1)^p (2i/pi)(log(t/2) + gamma)) * sum_{k>=0} (-1)^k t^{2k} / (2^{2k} (k!)^2)
//   + (2i/pi) * sum_{k>=1} (-1)^{k+p} t^{2k} / (2^{2k} (k!)^2) * h_k,
// where h_k = 1 + 1/2 + ... + 1/k. Terms accumulate in ascending k.
complex_t hankel0(int p, complex_t t, const SeriesCfg& cfg) {
    check_args(p, t);
    const double sp = kind_sign(p);
    const complex_t z2 = 0.25 * t * t;

    complex_t term{1.0, 0.0};  // (-1)^k t^{2k} / (2^{2k} (k!)^2)
    complex_t sum_a = term;    // Bessel-type sum
    complex_t sum_b{};         // harmonic-weighted sum, starts at k=1
    double harmonic = 0.0;

    int k = 0;
    for (; k < cfg.max_terms; ++k) {
        term *= -z2 / double((k + 1) * (k + 1));
        harmonic += 1.0 / double(k + 1);
        sum_a += term;
        sum_b += term * harmonic;
        if (std::abs(term) * (1.0 + harmonic) <= cfg.tol * (std::abs(sum_a) + 1.0)) break;
    }
    if (k == cfg.max_terms)
        throw SpecfunError("hankel0: series did not converge within max_terms");

    const complex_t log_part = std::log(0.5 * t) + kEulerGamma;
    const complex_t two_i_pi = 2.0 * kImagUnit / kPi;
    return (1.0 - sp * two_i_pi * log_part) * sum_a + sp * two_i_pi * sum_b;
}

// H1 for kind p:
//   (1 - (-1)^p (2i/pi)(log(t/2) + gamma)) * sum_{k>=0} (-1)^k t^{2k+1} / (2^{2k+1} k!(k+1)!)
//   + (-1)^p (2i/(pi t) + i t/(2 pi))
//   + (i/pi) * sum_{k>=1} (-1)^{k+p} t^{2k+1} / (2^{2k+1} k!(k+1)!) * (h_{k+1} + h_k).
complex_t hankel1(int p, complex_t t, const SeriesCfg& cfg) {
    check_args(p, t);
    const double sp = kind_sign(p);
    const complex_t z2 = 0.25 * t * t;

    complex_t term = 0.5 * t;  // (-1)^k t^{2k+1} / (2^{2k+1} k!(k+1)!)
    complex_t sum_a = term;
    complex_t sum_b{};
    double harmonic = 0.0;  // h_k

    int k = 0;
    for (; k < cfg.max_terms; ++k) {
        term *= -z2 / double((k + 1) * (k + 2));
        harmonic += 1.0 / double(k + 1);
        const double h_pair = 2.0 * harmonic + 1.0 / double(k + 2);  // h_{k+1} + h_k
        sum_a += term;
        sum_b += term * h_pair;
        if (std::abs(term) * (1.0 + h_pair) <= cfg.tol * (std::abs(sum_a) + 1.0)) break;
    }
    if (k == cfg.max_terms)
        throw SpecfunError("hankel1: series did not converge within max_terms");

    const complex_t log_part = std::log(0.5 * t) + kEulerGamma;
    const complex_t two_i_pi = 2.0 * kImagUnit / kPi;
    const complex_t pole_part = sp * kImagUnit * (2.0 / (kPi * t) + t / (2.0 * kPi));
    return (1.0 - sp * two_i_pi * log_part) * sum_a + pole_part + sp * (kImagUnit / kPi) * sum_b;
}

complex_t hankel2(int p, complex_t t, const SeriesCfg& cfg) {
    check_args(p, t);
    return 2.0 / t * hankel1(p, t, cfg) - hankel0(p, t, cfg);
}

}  // namespace qholo
