#include "qholo/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qholo {

namespace {

// 8-lane compensated accumulator for quaternion sums in a fixed order.
struct QuatAcc {
    KahanSum lane[8];

    void add(const CQuat& q) {
        lane[0].add(q.q0.real());
        lane[1].add(q.q0.imag());
        lane[2].add(q.q1.real());
        lane[3].add(q.q1.imag());
        lane[4].add(q.q2.real());
        lane[5].add(q.q2.imag());
        lane[6].add(q.q3.real());
        lane[7].add(q.q3.imag());
    }
    CQuat get() const {
        return {{lane[0].sum, lane[1].sum},
                {lane[2].sum, lane[3].sum},
                {lane[4].sum, lane[5].sum},
                {lane[6].sum, lane[7].sum}};
    }
};

struct Vec3Acc {
    KahanSum lane[6];
    void add(const Vec3c& v) {
        lane[0].add(v[0].real());
        lane[1].add(v[0].imag());
        lane[2].add(v[1].real());
        lane[3].add(v[1].imag());
        lane[4].add(v[2].real());
        lane[5].add(v[2].imag());
    }
    Vec3c get() const {
        return {complex_t{lane[0].sum, lane[1].sum},
                complex_t{lane[2].sum, lane[3].sum},
                complex_t{lane[4].sum, lane[5].sum}};
    }
};

int refined_count(const Curve& curve, double distance, const QuadSpec& spec) {
    int n = spec.boundary_nodes;
    const double len = curve.length();
    while (distance < 3.0 * len / n && 4LL * n <= spec.max_boundary_nodes) n *= 4;
    return n;
}

std::vector<BoundaryNode> nodes_near(const KernelCtx&, const Curve& curve, Vec2 z,
                                     const QuadSpec& spec) {
    if (curve.contains(z) == Region::Boundary)
        throw std::domain_error("cauchy_integral: z lies on the boundary band");
    return curve.nodes(refined_count(curve, curve.boundary_distance(z), spec));
}

// Node count for deleted-neighborhood integrals: spacing fine enough to
// resolve the smallest retained radius.
std::vector<BoundaryNode> nodes_for_deletion(const Curve& curve, const QuadSpec& spec) {
    const double dmin = *std::min_element(spec.delta_schedule.begin(), spec.delta_schedule.end());
    int n = spec.boundary_nodes;
    while (curve.length() / n > 0.25 * dmin && 4LL * n <= spec.max_boundary_nodes) n *= 4;
    return curve.nodes(n);
}

void check_schedule(const QuadSpec& spec) {
    if (spec.delta_schedule.empty())
        throw std::invalid_argument("delta schedule must not be empty");
    for (size_t k = 1; k < spec.delta_schedule.size(); ++k)
        if (spec.delta_schedule[k] >= spec.delta_schedule[k - 1])
            throw std::invalid_argument("delta schedule must strictly decrease");
}

// The vector line element of a node, <sigma> as a complex 3-vector.
Vec3c sigma_vec(const BoundaryNode& nd) { return {nd.sigma.q1, nd.sigma.q2, nd.sigma.q3}; }

// Kernel value split for the pair-form integrands: A = [Kvec, sigma] + K0 sigma
// and B = <Kvec, sigma>.
struct PairKernel {
    Vec3c a;
    complex_t b;
};

PairKernel pair_kernel(const KernelCtx& ctx, Vec2 w, const Vec3c& sv) {
    const CQuat k = cauchy_kernel(ctx, w);
    const Vec3c kv{k.q1, k.q2, k.q3};
    PairKernel pk;
    const Vec3c c = cross(kv, sv);
    pk.a = {c[0] + k.q0 * sv[0], c[1] + k.q0 * sv[1], c[2] + k.q0 * sv[2]};
    pk.b = dot(kv, sv);
    return pk;
}

void require_vectorial(const Density& f, const std::vector<BoundaryNode>& nodes) {
    for (const BoundaryNode& nd : nodes) {
        const CQuat v = f.eval(nd.point);
        if (std::abs(v.q0) > 1e-12 * (1.0 + norm(v)))
            throw std::invalid_argument("density must be vectorial (zero scalar part)");
    }
}

CQuat extrapolate(const std::vector<double>& steps, const std::vector<CQuat>& vals,
                  QuadSpec::Extrapolation mode) {
    if (mode == QuadSpec::Extrapolation::None || vals.size() < 2) return vals.back();
    // first-order Richardson on the finest pair
    const size_t n = vals.size();
    const double rho = steps[n - 2] / steps[n - 1];
    return (1.0 / (rho - 1.0)) * (rho * vals[n - 1] - vals[n - 2]);
}

bool differences_decrease(const std::vector<CQuat>& vals) {
    if (vals.size() < 3) return true;
    const double first = norm(vals[1] - vals[0]);
    const double last = norm(vals[vals.size() - 1] - vals[vals.size() - 2]);
    return last <= first + 1e-13;
}

}  // namespace

std::vector<double> QuadSpec::default_deltas() {
    std::vector<double> d(7);
    double v = 0.2;
    for (auto& x : d) {
        x = v;
        v *= 0.5;
    }
    return d;
}

CQuat cauchy_integral(const KernelCtx& ctx, const Curve& curve, const Density& f, Vec2 z,
                      const QuadSpec& spec) {
    QuatAcc acc;
    for (const BoundaryNode& nd : nodes_near(ctx, curve, z, spec))
        acc.add(cauchy_kernel(ctx, nd.point - z) * nd.sigma * f.eval(nd.point));
    return acc.get();
}

CQuat cauchy_integral_right(const KernelCtx& ctx, const Curve& curve, const Density& f,
                            Vec2 z, const QuadSpec& spec) {
    QuatAcc acc;
    for (const BoundaryNode& nd : nodes_near(ctx, curve, z, spec))
        acc.add(f.eval(nd.point) * nd.sigma * cauchy_kernel(ctx, nd.point - z));
    return acc.get();
}

PairField cauchy_integral_pair(const KernelCtx& ctx, const Curve& curve, const Density& f,
                               Vec2 z, const QuadSpec& spec) {
    KahanSum s_re, s_im;
    Vec3Acc vec;
    for (const BoundaryNode& nd : nodes_near(ctx, curve, z, spec)) {
        const PairField fv = to_pair(f.eval(nd.point));
        const PairKernel pk = pair_kernel(ctx, nd.point - z, sigma_vec(nd));
        const complex_t scalar = -(pk.b * fv.f0 + dot(pk.a, fv.fvec));
        s_re.add(scalar.real());
        s_im.add(scalar.imag());
        const Vec3c v = cross(pk.a, fv.fvec) - pk.b * fv.fvec + fv.f0 * pk.a;
        vec.add(v);
    }
    return {{s_re.sum, s_im.sum}, vec.get()};
}

DeletedSeq singular_integral(const KernelCtx& ctx, const Curve& curve, const Density& f, Vec2 t,
                             const QuadSpec& spec) {
    check_schedule(spec);
    (void)deleted_arc(curve, t, spec.delta_schedule.front());  // validates t on curve
    const auto nodes = nodes_for_deletion(curve, spec);
    const CQuat f_t = f.eval(t);
    const double dmin = spec.delta_schedule.back();

    // kernel products once per node, then one compensated pass per delta
    std::vector<double> chord(nodes.size());
    std::vector<CQuat> term(nodes.size());
    for (size_t j = 0; j < nodes.size(); ++j) {
        chord[j] = dist(nodes[j].point, t);
        if (chord[j] > dmin)
            term[j] = cauchy_kernel(ctx, nodes[j].point - t) * nodes[j].sigma *
                      (f.eval(nodes[j].point) - f_t);
    }

    DeletedSeq out;
    out.deltas = spec.delta_schedule;
    for (double delta : spec.delta_schedule) {
        QuatAcc acc;
        for (size_t j = 0; j < nodes.size(); ++j)
            if (chord[j] > delta) acc.add(term[j]);
        out.partials.push_back(acc.get());
    }
    out.converged = differences_decrease(out.partials);
    out.value = extrapolate(out.deltas, out.partials, spec.extrapolation);
    return out;
}

PairField singular_integral_pair(const KernelCtx& ctx, const Curve& curve, const Density& f,
                                 Vec2 t, const QuadSpec& spec) {
    check_schedule(spec);
    (void)deleted_arc(curve, t, spec.delta_schedule.front());
    const auto nodes = nodes_for_deletion(curve, spec);
    const PairField f_t = to_pair(f.eval(t));
    const double dmin = spec.delta_schedule.back();

    std::vector<double> chord(nodes.size());
    std::vector<complex_t> sc(nodes.size());
    std::vector<Vec3c> vc(nodes.size());
    for (size_t j = 0; j < nodes.size(); ++j) {
        chord[j] = dist(nodes[j].point, t);
        if (chord[j] <= dmin) continue;
        const PairField fv = to_pair(f.eval(nodes[j].point));
        const PairField d{fv.f0 - f_t.f0, {fv.fvec[0] - f_t.fvec[0], fv.fvec[1] - f_t.fvec[1],
                                           fv.fvec[2] - f_t.fvec[2]}};
        const PairKernel pk = pair_kernel(ctx, nodes[j].point - t, sigma_vec(nodes[j]));
        sc[j] = -(pk.b * d.f0 + dot(pk.a, d.fvec));
        vc[j] = cross(pk.a, d.fvec) - pk.b * d.fvec + d.f0 * pk.a;
    }

    std::vector<CQuat> partials;
    for (double delta : spec.delta_schedule) {
        KahanSum s_re, s_im;
        Vec3Acc vec;
        for (size_t j = 0; j < nodes.size(); ++j) {
            if (chord[j] <= delta) continue;
            s_re.add(sc[j].real());
            s_im.add(sc[j].imag());
            vec.add(vc[j]);
        }
        partials.push_back(from_pair({{s_re.sum, s_im.sum}, vec.get()}));
    }
    return to_pair(extrapolate(spec.delta_schedule, partials, spec.extrapolation));
}

DavydovSeq davydov_integral(const KernelCtx& ctx, const Curve& curve, const Density& f, Vec2 t,
                            const QuadSpec& spec) {
    check_schedule(spec);
    (void)deleted_arc(curve, t, spec.delta_schedule.front());
    const auto nodes = nodes_for_deletion(curve, spec);
    const CQuat f_t = f.eval(t);
    const double dmin = spec.delta_schedule.back();

    std::vector<double> chord(nodes.size()), mag(nodes.size(), 0.0);
    for (size_t j = 0; j < nodes.size(); ++j) {
        chord[j] = dist(nodes[j].point, t);
        if (chord[j] > dmin)
            mag[j] = norm(cauchy_kernel(ctx, nodes[j].point - t)) * norm(nodes[j].sigma) *
                     norm(f.eval(nodes[j].point) - f_t);
    }

    DavydovSeq out;
    out.deltas = spec.delta_schedule;
    for (double delta : spec.delta_schedule) {
        KahanSum acc;
        for (size_t j = 0; j < nodes.size(); ++j)
            if (chord[j] > delta) acc.add(mag[j]);
        out.partials.push_back(acc.sum);
    }
    // monotone by construction; convergence means increments shrink
    bool conv = true;
    if (out.partials.size() >= 3) {
        const double first = out.partials[1] - out.partials[0];
        const double last =
            out.partials[out.partials.size() - 1] - out.partials[out.partials.size() - 2];
        conv = last <= first + 1e-13;
    }
    out.converged = conv;
    if (spec.extrapolation == QuadSpec::Extrapolation::Richardson1 && out.partials.size() >= 2) {
        const size_t n = out.partials.size();
        const double rho = out.deltas[n - 2] / out.deltas[n - 1];
        out.value = (rho * out.partials[n - 1] - out.partials[n - 2]) / (rho - 1.0);
    } else {
        out.value = out.partials.back();
    }
    return out;
}

CQuat area_integral(const KernelCtx& ctx, const Curve& curve, Vec2 t, const QuadSpec& spec) {
    if (ctx.zero_alpha()) return {};
    double radius = spec.exclusion_radius > 0.0 ? spec.exclusion_radius
                                                : 0.05 * curve.diameter();
    std::optional<Exclusion> excl;
    if (curve.boundary_distance(t) <= radius || curve.contains(t) != Region::Exterior)
        excl = Exclusion{t, radius};
    QuatAcc acc;
    for (const AreaCell& cell : area_cells(curve, spec.area_resolution, excl)) {
        const Vec2 w = cell.point - t;
        if (w.x == 0.0 && w.y == 0.0) continue;  // degenerate cell center hit
        acc.add(cell.weight * cauchy_kernel(ctx, w));
    }
    return -ctx.alpha * acc.get();
}

double membership_defect(const KernelCtx& ctx, const Curve& curve, const Density& f,
                         std::span<const Vec2> zs, const QuadSpec& spec) {
    double worst = 0.0;
    for (const Vec2& z : zs) {
        const auto nodes = nodes_near(ctx, curve, z, spec);
        require_vectorial(f, nodes);
        KahanSum s_re, s_im;
        for (const BoundaryNode& nd : nodes) {
            const PairField fv = to_pair(f.eval(nd.point));
            const PairKernel pk = pair_kernel(ctx, nd.point - z, sigma_vec(nd));
            const complex_t v = dot(pk.a, fv.fvec);
            s_re.add(v.real());
            s_im.add(v.imag());
        }
        worst = std::max(worst, std::abs(complex_t{s_re.sum, s_im.sum}));
    }
    return worst;
}

Vec3c vector_cauchy_integral(const KernelCtx& ctx, const Curve& curve, const Density& f, Vec2 z,
                             const QuadSpec& spec) {
    const auto nodes = nodes_near(ctx, curve, z, spec);
    require_vectorial(f, nodes);
    Vec3Acc acc;
    for (const BoundaryNode& nd : nodes) {
        const PairField fv = to_pair(f.eval(nd.point));
        const PairKernel pk = pair_kernel(ctx, nd.point - z, sigma_vec(nd));
        acc.add(cross(pk.a, fv.fvec) - pk.b * fv.fvec);
    }
    return acc.get();
}

CQuat plemelj_rhs(const KernelCtx& ctx, const Curve& curve, const Density& f, double param,
                  Side side, const QuadSpec& spec) {
    const Vec2 t = curve.point_at(param);
    const CQuat i_t = area_integral(ctx, curve, t, spec);
    const CQuat f_t = f.eval(t);
    const CQuat jump = singular_integral(ctx, curve, f, t, spec).value;
    const CQuat factor = side == Side::Plus ? i_t + CQuat::scalar(1.0) : i_t;
    return factor * f_t + jump;
}

PairField plemelj_rhs_pair(const KernelCtx& ctx, const Curve& curve, const Density& f,
                           double param, Side side, const QuadSpec& spec) {
    const Vec2 t = curve.point_at(param);
    const PairField i_t = to_pair(area_integral(ctx, curve, t, spec));
    const PairField f_t = to_pair(f.eval(t));
    const PairField jump = singular_integral_pair(ctx, curve, f, t, spec);
    const complex_t chi = side == Side::Plus ? 1.0 : 0.0;

    PairField out;
    out.f0 = (i_t.f0 + chi) * f_t.f0 - dot(i_t.fvec, f_t.fvec) + jump.f0;
    const Vec3c c = cross(i_t.fvec, f_t.fvec);
    for (int k = 0; k < 3; ++k)
        out.fvec[k] = c[k] + (i_t.f0 + chi) * f_t.fvec[k] + f_t.f0 * i_t.fvec[k] + jump.fvec[k];
    return out;
}

Vec3c vector_plemelj_rhs(const KernelCtx& ctx, const Curve& curve, const Density& f,
                         double param, Side side, const QuadSpec& spec) {
    const Vec2 t = curve.point_at(param);
    require_vectorial(f, curve.nodes(64));
    const PairField i_t = to_pair(area_integral(ctx, curve, t, spec));
    const PairField f_t = to_pair(f.eval(t));
    const PairField jump = singular_integral_pair(ctx, curve, f, t, spec);
    const complex_t chi = side == Side::Plus ? 1.0 : 0.0;

    const Vec3c c = cross(i_t.fvec, f_t.fvec);
    Vec3c out;
    for (int k = 0; k < 3; ++k)
        out[k] = c[k] + (i_t.f0 + chi) * f_t.fvec[k] + jump.fvec[k];
    return out;
}

ApproachSeq boundary_limit(const KernelCtx& ctx, const Curve& curve, const Density& f,
                           double param, Side side, const QuadSpec& spec) {
    if (spec.approach_hs.empty())
        throw std::invalid_argument("approach_hs must not be empty");
    const Vec2 t = curve.point_at(param);
    const Vec2 n_out = curve.outward_normal_at(param);
    const double dir = side == Side::Plus ? -1.0 : 1.0;

    ApproachSeq out;
    out.hs = spec.approach_hs;
    for (double h : spec.approach_hs)
        out.values.push_back(cauchy_integral(ctx, curve, f, t + (dir * h) * n_out, spec));
    out.limit = extrapolate(out.hs, out.values, spec.extrapolation);
    return out;
}

JumpReport jump_report(const KernelCtx& ctx, const Curve& curve, const Density& f, double param,
                       const QuadSpec& spec, double tol_scale) {
    JumpReport rep;
    rep.param = param;
    rep.t = curve.point_at(param);
    rep.f_t = f.eval(rep.t);

    const CQuat i_t = area_integral(ctx, curve, rep.t, spec);
    const CQuat jump = singular_integral(ctx, curve, f, rep.t, spec).value;
    rep.rhs_plus = (i_t + CQuat::scalar(1.0)) * rep.f_t + jump;
    rep.rhs_minus = i_t * rep.f_t + jump;

    rep.plus = boundary_limit(ctx, curve, f, param, Side::Plus, spec);
    rep.minus = boundary_limit(ctx, curve, f, param, Side::Minus, spec);

    rep.resid_plus = norm(rep.plus.limit - rep.rhs_plus);
    rep.resid_minus = norm(rep.minus.limit - rep.rhs_minus);
    rep.resid_jump = norm((rep.plus.limit - rep.minus.limit) - rep.f_t);
    rep.tolerance = tol_scale * (1.0 + norm(rep.f_t));
    rep.pass = rep.resid_plus < rep.tolerance && rep.resid_minus < rep.tolerance &&
               rep.resid_jump < rep.tolerance;
    return rep;
}

}  // namespace qholo
