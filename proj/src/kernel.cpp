#include "qholo/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace qholo {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const complex_t kI{0.0, 1.0};

void check_off_origin(Vec2 z) {
    if (z.x == 0.0 && z.y == 0.0)
        throw std::domain_error("kernel: evaluation at the singular point z = 0");
}

}  // namespace

int select_branch(complex_t alpha) {
    if (alpha == complex_t{})
        throw std::domain_error("select_branch: alpha = 0 has no Hankel branch");
    if (alpha.imag() > 0.0) return 1;
    if (alpha.imag() < 0.0) return 2;
    return alpha.real() > 0.0 ? 1 : 2;
}

KernelCtx KernelCtx::make(complex_t alpha, const SeriesCfg& series) {
    KernelCtx ctx;
    ctx.alpha = alpha;
    ctx.p = (alpha == complex_t{}) ? 0 : select_branch(alpha);
    ctx.series = series;
    return ctx;
}

complex_t theta(const KernelCtx& ctx, Vec2 z) {
    check_off_origin(z);
    const double r = abs(z);
    if (ctx.zero_alpha()) return std::log(r) / (2.0 * kPi);
    const double sp = ctx.p == 1 ? -1.0 : 1.0;
    return sp * 0.25 * kI * hankel0(ctx.p, ctx.alpha * r, ctx.series);
}

CQuat cauchy_kernel(const KernelCtx& ctx, Vec2 z) {
    check_off_origin(z);
    const double r = abs(z);
    if (ctx.zero_alpha()) {
        const double s = -1.0 / (2.0 * kPi * r * r);
        return CQuat::vector(s * z.x, s * z.y, {});
    }
    const double sp = ctx.p == 1 ? -1.0 : 1.0;
    const complex_t t = ctx.alpha * r;
    const complex_t c = sp * 0.25 * kI * ctx.alpha;
    const complex_t h0 = hankel0(ctx.p, t, ctx.series);
    const complex_t h1 = hankel1(ctx.p, t, ctx.series);
    CQuat out = CQuat::scalar(c * h0);
    const complex_t radial = c * h1 / r;
    out.q1 = radial * z.x;
    out.q2 = radial * z.y;
    return out;
}

KernelSplit kernel_split(const KernelCtx& ctx, Vec2 z) {
    check_off_origin(z);
    const double r = abs(z);
    KernelSplit ks;
    const double s = -1.0 / (2.0 * kPi * r * r);
    ks.singular = CQuat::vector(s * z.x, s * z.y, {});
    ks.singular.q0 = ctx.alpha * std::log(r) / (2.0 * kPi);
    ks.smooth = cauchy_kernel(ctx, z) - ks.singular;
    return ks;
}

}  // namespace qholo
