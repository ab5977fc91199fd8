#pragma once

#include <span>
#include <vector>

#include "qholo/density.hpp"
#include "qholo/geometry.hpp"
#include "qholo/kernel.hpp"
#include "qholo/quat.hpp"

namespace qholo {

// Quadrature controls shared by the boundary and area integrals.
struct QuadSpec {
    // Base boundary node count. Evaluation closer to the curve than 3 node
    // spacings refines by factors of 4 (up to max_boundary_nodes), which
    // keeps the trapezoid error of near-boundary evaluations negligible.
    int boundary_nodes = 2048;
    int max_boundary_nodes = 262144;

    // Deleted-neighborhood radii, largest first. Default 0.2 * 2^-k, k = 0..6.
    std::vector<double> delta_schedule = default_deltas();

    // Area grid resolution (m x m over the bounding box) and the exclusion
    // disk radius for the graded polar patch around a singular point.
    // exclusion_radius <= 0 selects 0.05 * diameter.
    int area_resolution = 512;
    double exclusion_radius = 0.0;

    // Normal-approach offsets for boundary limits, largest first.
    std::vector<double> approach_hs = {1e-2, 1e-3, 1e-4};

    enum class Extrapolation { None, Richardson1 };
    Extrapolation extrapolation = Extrapolation::Richardson1;

    static std::vector<double> default_deltas();
};

// Cauchy-type transform Phi[f](z) = Integral_Gamma K(zeta - z) sigma f(zeta).
// Products keep kernel-sigma-density order (the algebra is noncommutative).
// z must not lie on the boundary band. Accumulation is compensated and in
// node order, so results are bit-reproducible.
CQuat cauchy_integral(const KernelCtx& ctx, const Curve& curve, const Density& f, Vec2 z,
                      const QuadSpec& spec = {});

// Same value assembled in the scalar-vector representation; agrees with
// to_pair(cauchy_integral(...)) up to roundoff.
PairField cauchy_integral_pair(const KernelCtx& ctx, const Curve& curve, const Density& f,
                               Vec2 z, const QuadSpec& spec = {});

// Mirrored transform with the kernel on the right of the density:
// Integral_Gamma f(zeta) sigma K(zeta - z). The natural domain of the
// unit-right first-order operator, as the left transform is of the unit-left
// one.
CQuat cauchy_integral_right(const KernelCtx& ctx, const Curve& curve, const Density& f,
                            Vec2 z, const QuadSpec& spec = {});

// Deleted-neighborhood limit F[f](t): the integral over Gamma minus a chordal
// delta-neighborhood of t of K(zeta - t) sigma (f(zeta) - f(t)), evaluated at
// every delta in the schedule and extrapolated. partials[k] is the value at
// deltas[k]. converged reports whether successive differences decreased; the
// value is returned either way.
struct DeletedSeq {
    std::vector<double> deltas;
    std::vector<CQuat> partials;
    CQuat value;
    bool converged = true;
};
DeletedSeq singular_integral(const KernelCtx& ctx, const Curve& curve, const Density& f, Vec2 t,
                             const QuadSpec& spec = {});

// Pair-form assembly of the same limit.
PairField singular_integral_pair(const KernelCtx& ctx, const Curve& curve, const Density& f,
                                 Vec2 t, const QuadSpec& spec = {});

// Scalar majorant limit: same deleted integral of |K| |sigma| |f(zeta)-f(t)|.
// Monotone nondecreasing as delta shrinks.
struct DavydovSeq {
    std::vector<double> deltas;
    std::vector<double> partials;
    double value = 0.0;
    bool converged = true;
};
DavydovSeq davydov_integral(const KernelCtx& ctx, const Curve& curve, const Density& f, Vec2 t,
                            const QuadSpec& spec = {});

// Area potential I(t) = -alpha * Integral over the interior of K(zeta - t).
// Midpoint cells with a graded polar patch when t is on or near the domain.
// Identically zero for alpha = 0.
CQuat area_integral(const KernelCtx& ctx, const Curve& curve, Vec2 t,
                    const QuadSpec& spec = {});

// max_z | Integral_Gamma <[Kvec, sigma] + K0 sigma, fvec> | over the probe
// points: how far f is from the class of densities whose transform has no
// scalar part. f must be vectorial (zero scalar part on Gamma).
double membership_defect(const KernelCtx& ctx, const Curve& curve, const Density& f,
                         std::span<const Vec2> zs, const QuadSpec& spec = {});

// Transform of a vectorial density via the vector-only integrand
//   [[Kvec,sigma] + K0 sigma, fvec] - <Kvec,sigma> fvec.
// Equals the vector part of cauchy_integral for f in the membership class.
Vec3c vector_cauchy_integral(const KernelCtx& ctx, const Curve& curve, const Density& f, Vec2 z,
                             const QuadSpec& spec = {});

enum class Side { Plus, Minus };  // Plus: interior limit, Minus: exterior

// Boundary values predicted by the jump relations:
//   Plus:  (I(t) + 1) f(t) + F[f](t)
//   Minus:  I(t) f(t)      + F[f](t)
CQuat plemelj_rhs(const KernelCtx& ctx, const Curve& curve, const Density& f, double param,
                  Side side, const QuadSpec& spec = {});
PairField plemelj_rhs_pair(const KernelCtx& ctx, const Curve& curve, const Density& f,
                           double param, Side side, const QuadSpec& spec = {});
// Vector-density form: [Ivec, f] + (I0 + chi) f + Fvec[f].
Vec3c vector_plemelj_rhs(const KernelCtx& ctx, const Curve& curve, const Density& f,
                         double param, Side side, const QuadSpec& spec = {});

// Transform values along the inward (Plus) or outward (Minus) normal at
// t = curve.point_at(param), one per approach offset, with the extrapolated
// boundary limit.
struct ApproachSeq {
    std::vector<double> hs;
    std::vector<CQuat> values;
    CQuat limit;
};
ApproachSeq boundary_limit(const KernelCtx& ctx, const Curve& curve, const Density& f,
                           double param, Side side, const QuadSpec& spec = {});

// Both limits, both predictions, and the residuals, for one boundary point.
struct JumpReport {
    double param = 0.0;
    Vec2 t;
    CQuat f_t;
    ApproachSeq plus, minus;
    CQuat rhs_plus, rhs_minus;
    double resid_plus = 0.0;   // |limit+ - rhs+|
    double resid_minus = 0.0;  // |limit- - rhs-|
    double resid_jump = 0.0;   // |(limit+ - limit-) - f(t)|
    double tolerance = 0.0;    // 1e-2 * (1 + |f(t)|) unless overridden
    bool pass = false;
};
JumpReport jump_report(const KernelCtx& ctx, const Curve& curve, const Density& f, double param,
                       const QuadSpec& spec = {}, double tol_scale = 1e-2);

}  // namespace qholo
