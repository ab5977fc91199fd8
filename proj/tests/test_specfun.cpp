#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "qholo/specfun.hpp"

using namespace qholo;

namespace {

// Reference values frozen from a 30-digit arbitrary-precision run (mpmath
// 1.3.0, hankel1/hankel2), rounded to double. Tolerances are relative to the
// magnitude of the value.
constexpr double kPi = 3.14159265358979323846;

void check_close(complex_t got, complex_t want, double rel = 5e-14) {
    CAPTURE(got.real());
    CAPTURE(got.imag());
    CAPTURE(want.real());
    CAPTURE(want.imag());
    CHECK(std::abs(got - want) <= rel * (1.0 + std::abs(want)));
}

}  // namespace

TEST_CASE("first-kind values at real arguments match the frozen references") {
    check_close(hankel0(1, 1.0), {0.76519768655796655145, 0.088256964215676957983});
    check_close(hankel1(1, 1.0), {0.44005058574493351596, -0.78121282130028871655});
    check_close(hankel0(1, 2.0), {0.22389077914123566805, 0.5103756726497451196});
    check_close(hankel1(1, 2.0), {0.5767248077568733872, -0.10703243154093754689});
    check_close(hankel0(1, 5.0), {-0.17759677131433830435, -0.30851762524903378007});
    check_close(hankel1(1, 5.0), {-0.32757913759146522204, 0.1478631433912268448});
    // the edge of the trusted range
    check_close(hankel0(1, 8.0), {0.17165080713755390609, 0.22352148938756622053}, 2e-12);
    check_close(hankel1(1, 8.0), {0.23463634685391462438, -0.15806046173124749426}, 2e-12);
}

TEST_CASE("second kind at positive real arguments is the complex conjugate") {
    check_close(hankel0(2, 1.0), std::conj(hankel0(1, 1.0)));
    check_close(hankel1(2, 1.0), std::conj(hankel1(1, 1.0)));
    check_close(hankel0(2, complex_t{0.5, -0.3}),
                std::conj(hankel0(1, complex_t{0.5, 0.3})));
    check_close(hankel1(2, complex_t{0.5, -0.3}),
                std::conj(hankel1(1, complex_t{0.5, 0.3})));
}

TEST_CASE("complex arguments match the frozen references") {
    check_close(hankel0(1, {0.5, 0.3}), {0.55209526604213278341, -0.42190526516640876096});
    check_close(hankel1(1, {0.5, 0.3}), {-0.30199977202508159594, -1.0302822509605400174});
    check_close(hankel0(1, {1.0, 0.5}), {0.43064462640653443808, -0.037156936324262793708});
    check_close(hankel1(1, {1.0, 0.5}), {0.099866780640321439566, -0.53622136501079570195});
}

TEST_CASE("negative real argument continues through the upper half plane") {
    // second-kind values on the negative axis, where the principal branch of
    // the logarithm continues from above
    check_close(hankel0(2, -2.0), {0.67167233742370700416, -0.5103756726497451196});
    check_close(hankel1(2, -2.0), {-1.7301744232706201616, -0.10703243154093754689});
}

TEST_CASE("logarithmic and pole behavior near zero") {
    check_close(hankel0(1, 1e-3), {0.999999750000015625, -4.471416611375923269}, 1e-13);
    check_close(hankel1(1, 1e-3), {0.00049999993750000260417, -636.62216723113942807}, 1e-13);
}

TEST_CASE("order-2 recurrence t*H2 = 2*H1 - t*H0 against frozen order-2 values") {
    check_close(hankel2(1, 1.0), {0.11490348493190048047, -1.6506826068162543911});
    check_close(hankel2(1, 2.0), {0.35283402861563771915, -0.61740810419068266648});
    for (double t : {0.3, 0.9, 1.7, 3.1, 4.9}) {
        const complex_t lhs = t * hankel2(1, t);
        const complex_t rhs = 2.0 * hankel1(1, t) - t * hankel0(1, t);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("wronskian of the two kinds is -4i/(pi t)") {
    for (complex_t t : {complex_t{0.7, 0.0}, complex_t{2.5, 0.0}, complex_t{0.5, 0.3},
                        complex_t{1.0, 0.5}}) {
        const complex_t w = hankel1(1, t) * hankel0(2, t) - hankel0(1, t) * hankel1(2, t);
        const complex_t want = complex_t{0.0, -4.0} / (kPi * t);
        CHECK(std::abs(w - want) < 1e-12 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("derivative identities hold at second order in the step") {
    // dH0/dt = -H1 and dH1/dt = (H0 - H2)/2, probed by central differences
    // at two steps; the error ratio should be near 4 (order 2)
    auto fd_resid = [](double h) {
        double worst = 0.0;
        for (double t : {0.4, 1.0, 2.2, 3.7}) {
            const complex_t d0 = (hankel0(1, t + h) - hankel0(1, t - h)) / (2.0 * h);
            const complex_t d1 = (hankel1(1, t + h) - hankel1(1, t - h)) / (2.0 * h);
            worst = std::max(worst, std::abs(d0 + hankel1(1, t)));
            worst = std::max(worst,
                             std::abs(d1 - 0.5 * (hankel0(1, t) - hankel2(1, t))));
        }
        return worst;
    };
    const double coarse = fd_resid(1e-2);
    const double fine = fd_resid(5e-3);
    const double order = std::log2(coarse / fine);
    CHECK(order > 1.6);
    CHECK(order < 2.4);
    // third derivatives grow like 1/t^4 toward the origin, so the absolute
    // residual at t = 0.4 dominates this bound
    CHECK(fine < 2e-3);
}

TEST_CASE("rejects the series pole and arguments outside the trusted range") {
    CHECK_THROWS_AS(hankel0(1, 0.0), SpecfunError);
    CHECK_THROWS_AS(hankel1(1, 0.0), SpecfunError);
    CHECK_THROWS_AS(hankel0(1, 50.0), SpecfunError);
    CHECK_THROWS_AS(hankel0(3, 1.0), SpecfunError);
}

TEST_CASE("truncation control is honored") {
    SeriesCfg tight;
    tight.max_terms = 3;
    CHECK_THROWS_AS(hankel0(1, 5.0, tight), SpecfunError);
    SeriesCfg loose;
    loose.tol = 1e-6;
    check_close(hankel0(1, 1.0, loose), {0.76519768655796655145, 0.088256964215676957983},
                1e-5);
}
