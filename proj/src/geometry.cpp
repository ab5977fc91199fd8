#include "qholo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace qholo {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr double kGaussX[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr double kGaussW[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

double wrap_param(double s) {
    s = std::fmod(s, kTwoPi);
    return s < 0.0 ? s + kTwoPi : s;
}

double signed_area(const std::vector<Vec2>& v) {
    double a = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const Vec2& p = v[i];
        const Vec2& q = v[(i + 1) % v.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

// Proper segment intersection test used to reject self-intersecting input.
int orient_sign(Vec2 a, Vec2 b, Vec2 c) {
    const double d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (d > 0.0) return 1;
    if (d < 0.0) return -1;
    return 0;
}

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const int o1 = orient_sign(a, b, c), o2 = orient_sign(a, b, d);
    const int o3 = orient_sign(c, d, a), o4 = orient_sign(c, d, b);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

double point_segment_distance(Vec2 z, Vec2 a, Vec2 b, Vec2* closest = nullptr) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double u = len2 > 0.0 ? dot(z - a, ab) / len2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    const Vec2 c = a + u * ab;
    if (closest) *closest = c;
    return dist(z, c);
}

}  // namespace

Curve Curve::circle(Vec2 center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("circle: radius must be positive");
    Curve c;
    c.kind_ = Kind::Circle;
    c.center_ = center;
    c.rx_ = c.ry_ = radius;
    c.finish_setup();
    return c;
}

Curve Curve::ellipse(Vec2 center, double semi_x, double semi_y) {
    if (!(semi_x > 0.0) || !(semi_y > 0.0))
        throw std::invalid_argument("ellipse: semi-axes must be positive");
    Curve c;
    c.kind_ = Kind::Ellipse;
    c.center_ = center;
    c.rx_ = semi_x;
    c.ry_ = semi_y;
    c.finish_setup();
    return c;
}

Curve Curve::polygon(std::vector<Vec2> vertices) {
    if (vertices.size() < 3) throw std::invalid_argument("polygon: need at least 3 vertices");
    const double area = signed_area(vertices);
    if (area == 0.0) throw std::invalid_argument("polygon: degenerate (zero area)");
    if (area < 0.0) std::reverse(vertices.begin(), vertices.end());
    const size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;  // shared vertex
            if (segments_cross(vertices[i], vertices[(i + 1) % n], vertices[j],
                               vertices[(j + 1) % n]))
                throw std::invalid_argument("polygon: self-intersecting outline");
        }
    }
    Curve c;
    c.kind_ = Kind::Polygon;
    c.verts_ = std::move(vertices);
    c.finish_setup();
    return c;
}

void Curve::finish_setup() {
    switch (kind_) {
        case Kind::Circle:
            length_ = kTwoPi * rx_;
            diameter_ = 2.0 * rx_;
            bbox_min_ = {center_.x - rx_, center_.y - ry_};
            bbox_max_ = {center_.x + rx_, center_.y + ry_};
            break;
        case Kind::Ellipse: {
            // Perimeter by trapezoid rule on |gamma'|, spectrally accurate.
            const int n = 4096;
            KahanSum acc;
            for (int j = 0; j < n; ++j) {
                const double s = kTwoPi * j / n;
                acc.add(std::hypot(rx_ * std::sin(s), ry_ * std::cos(s)));
            }
            length_ = acc.sum * kTwoPi / n;
            diameter_ = 2.0 * std::max(rx_, ry_);
            bbox_min_ = {center_.x - rx_, center_.y - ry_};
            bbox_max_ = {center_.x + rx_, center_.y + ry_};
            break;
        }
        case Kind::Polygon: {
            cumlen_.assign(verts_.size() + 1, 0.0);
            bbox_min_ = bbox_max_ = verts_[0];
            for (size_t i = 0; i < verts_.size(); ++i) {
                const Vec2 a = verts_[i];
                const Vec2 b = verts_[(i + 1) % verts_.size()];
                cumlen_[i + 1] = cumlen_[i] + dist(a, b);
                bbox_min_ = {std::min(bbox_min_.x, a.x), std::min(bbox_min_.y, a.y)};
                bbox_max_ = {std::max(bbox_max_.x, a.x), std::max(bbox_max_.y, a.y)};
            }
            length_ = cumlen_.back();
            diameter_ = 0.0;
            for (size_t i = 0; i < verts_.size(); ++i)
                for (size_t j = i + 1; j < verts_.size(); ++j)
                    diameter_ = std::max(diameter_, dist(verts_[i], verts_[j]));
            break;
        }
    }
}

std::string Curve::describe() const {
    char buf[160];
    switch (kind_) {
        case Kind::Circle:
            std::snprintf(buf, sizeof buf, "circle(center=(%g,%g), r=%g)", center_.x, center_.y, rx_);
            return buf;
        case Kind::Ellipse:
            std::snprintf(buf, sizeof buf, "ellipse(center=(%g,%g), a=%g, b=%g)", center_.x,
                          center_.y, rx_, ry_);
            return buf;
        case Kind::Polygon:
            std::snprintf(buf, sizeof buf, "polygon(%zu vertices, length=%g)", verts_.size(),
                          length_);
            return buf;
    }
    return "curve";
}

Vec2 Curve::point_at(double param) const {
    const double s = wrap_param(param);
    switch (kind_) {
        case Kind::Circle:
        case Kind::Ellipse:
            return {center_.x + rx_ * std::cos(s), center_.y + ry_ * std::sin(s)};
        case Kind::Polygon: {
            const double target = s / kTwoPi * length_;
            const auto it = std::upper_bound(cumlen_.begin(), cumlen_.end(), target);
            size_t e = std::min(verts_.size() - 1, size_t(it - cumlen_.begin()) - 1);
            const double u = (target - cumlen_[e]) / (cumlen_[e + 1] - cumlen_[e]);
            const Vec2 a = verts_[e];
            const Vec2 b = verts_[(e + 1) % verts_.size()];
            return a + u * (b - a);
        }
    }
    return {};
}

Vec2 Curve::outward_normal_at(double param) const {
    const double s = wrap_param(param);
    switch (kind_) {
        case Kind::Circle:
        case Kind::Ellipse: {
            // tangent (-rx sin, ry cos); outward normal = (t2, -t1)/|t|
            const Vec2 n{ry_ * std::cos(s), rx_ * std::sin(s)};
            const double len = abs(n);
            return {n.x / len, n.y / len};
        }
        case Kind::Polygon: {
            const double target = s / kTwoPi * length_;
            const auto it = std::upper_bound(cumlen_.begin(), cumlen_.end(), target);
            size_t e = std::min(verts_.size() - 1, size_t(it - cumlen_.begin()) - 1);
            const Vec2 a = verts_[e];
            const Vec2 b = verts_[(e + 1) % verts_.size()];
            const double len = dist(a, b);
            return {(b.y - a.y) / len, -(b.x - a.x) / len};
        }
    }
    return {};
}

std::vector<BoundaryNode> Curve::nodes(int n) const {
    if (n < 4) throw std::invalid_argument("nodes: need at least 4 nodes");
    std::vector<BoundaryNode> out;
    switch (kind_) {
        case Kind::Circle:
        case Kind::Ellipse: {
            out.reserve(n);
            const double h = kTwoPi / n;
            for (int j = 0; j < n; ++j) {
                const double s = h * j;
                BoundaryNode nd;
                nd.param = s;
                nd.point = point_at(s);
                // d_xi = -rx sin(s) ds, d_eta = ry cos(s) ds
                nd.sigma = CQuat::vector(ry_ * std::cos(s) * h, rx_ * std::sin(s) * h, {});
                out.push_back(nd);
            }
            break;
        }
        case Kind::Polygon: {
            const size_t ne = verts_.size();
            for (size_t e = 0; e < ne; ++e) {
                const Vec2 a = verts_[e];
                const Vec2 b = verts_[(e + 1) % ne];
                const double elen = cumlen_[e + 1] - cumlen_[e];
                const int panels =
                    std::max(1, int(std::lround(double(n) * elen / length_ / 8.0)));
                for (int pnl = 0; pnl < panels; ++pnl) {
                    for (int g = 0; g < 8; ++g) {
                        // map [-1,1] -> panel subinterval of [0,1] along the edge
                        const double u = (pnl + 0.5 + 0.5 * kGaussX[g]) / panels;
                        const double w = 0.5 * kGaussW[g] / panels;
                        BoundaryNode nd;
                        nd.point = a + u * (b - a);
                        nd.param = kTwoPi * (cumlen_[e] + u * elen) / length_;
                        nd.sigma = CQuat::vector((b.y - a.y) * w, -(b.x - a.x) * w, {});
                        out.push_back(nd);
                    }
                }
            }
            break;
        }
    }
    return out;
}

Region Curve::contains(Vec2 z, double tol) const {
    switch (kind_) {
        case Kind::Circle: {
            const double d = dist(z, center_) - rx_;
            if (std::abs(d) <= tol) return Region::Boundary;
            return d < 0.0 ? Region::Interior : Region::Exterior;
        }
        case Kind::Ellipse: {
            const double ux = (z.x - center_.x) / rx_;
            const double uy = (z.y - center_.y) / ry_;
            const double q = ux * ux + uy * uy - 1.0;
            // distance estimate |q| / |grad q|; exact distance only if close
            const double grad =
                2.0 * std::hypot(ux / rx_, uy / ry_);
            if (grad > 0.0 && std::abs(q) / grad > 4.0 * tol)
                return q < 0.0 ? Region::Interior : Region::Exterior;
            const double d = boundary_distance(z);
            if (d <= tol) return Region::Boundary;
            return q < 0.0 ? Region::Interior : Region::Exterior;
        }
        case Kind::Polygon: {
            double dmin = std::numeric_limits<double>::infinity();
            for (size_t i = 0; i < verts_.size(); ++i)
                dmin = std::min(dmin, point_segment_distance(z, verts_[i],
                                                             verts_[(i + 1) % verts_.size()]));
            if (dmin <= tol) return Region::Boundary;
            // even-odd ray crossing
            bool inside = false;
            for (size_t i = 0; i < verts_.size(); ++i) {
                const Vec2 a = verts_[i];
                const Vec2 b = verts_[(i + 1) % verts_.size()];
                if ((a.y > z.y) != (b.y > z.y)) {
                    const double xcross = a.x + (z.y - a.y) / (b.y - a.y) * (b.x - a.x);
                    if (z.x < xcross) inside = !inside;
                }
            }
            return inside ? Region::Interior : Region::Exterior;
        }
    }
    return Region::Exterior;
}

Vec2 Curve::nearest_point(Vec2 z) const {
    switch (kind_) {
        case Kind::Circle: {
            const Vec2 d = z - center_;
            const double r = abs(d);
            if (r == 0.0) return {center_.x + rx_, center_.y};  // tie: param 0
            return center_ + (rx_ / r) * d;
        }
        case Kind::Ellipse: {
            // Newton on g(s) = d/ds |gamma(s) - z|^2 from several starts.
            double best_d = std::numeric_limits<double>::infinity();
            Vec2 best{};
            for (int k = 0; k < 8; ++k) {
                double s = kTwoPi * (k + 0.37) / 8.0;
                for (int it = 0; it < 40; ++it) {
                    const double dx = rx_ * std::cos(s) - (z.x - center_.x);
                    const double dy = ry_ * std::sin(s) - (z.y - center_.y);
                    const double g = -dx * rx_ * std::sin(s) + dy * ry_ * std::cos(s);
                    const double gp = dx * -rx_ * std::cos(s) + rx_ * rx_ * std::sin(s) * std::sin(s)
                                      - dy * ry_ * std::sin(s) + ry_ * ry_ * std::cos(s) * std::cos(s);
                    if (gp == 0.0) break;
                    const double step = g / gp;
                    s -= step;
                    if (std::abs(step) < 1e-14) break;
                }
                const Vec2 p = point_at(s);
                const double d = dist(p, z);
                if (d < best_d) {
                    best_d = d;
                    best = p;
                }
            }
            return best;
        }
        case Kind::Polygon: {
            double best_d = std::numeric_limits<double>::infinity();
            Vec2 best{};
            for (size_t i = 0; i < verts_.size(); ++i) {
                Vec2 c;
                const double d =
                    point_segment_distance(z, verts_[i], verts_[(i + 1) % verts_.size()], &c);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            return best;
        }
    }
    return {};
}

double Curve::max_distance(Vec2 z) const {
    switch (kind_) {
        case Kind::Circle:
            return dist(z, center_) + rx_;
        case Kind::Ellipse: {
            double m = 0.0;
            const int n = 2048;
            for (int j = 0; j < n; ++j) m = std::max(m, dist(z, point_at(kTwoPi * j / n)));
            return m;
        }
        case Kind::Polygon: {
            double m = 0.0;
            for (const Vec2& v : verts_) m = std::max(m, dist(z, v));
            return m;
        }
    }
    return 0.0;
}

NodeFilter deleted_arc(const Curve& curve, Vec2 t, double delta, double tol) {
    if (curve.contains(t, tol) != Region::Boundary)
        throw std::invalid_argument("deleted_arc: t must lie on the curve");
    if (!(delta > 0.0) || delta > curve.diameter())
        throw std::invalid_argument("deleted_arc: delta must be in (0, diameter]");
    return NodeFilter{t, delta};
}

namespace {

// Fraction of a cell that lies inside the curve and outside the excluded
// disk, estimated on a subgrid of sample points. Used only for cells cut by
// the curve or by the disk rim, where an all-or-nothing test would leave an
// O(cell * perimeter) error in the quadrature weights.
double covered_fraction(const Curve& curve, Vec2 lo, double wx, double wy,
                        const Exclusion* exclude) {
    constexpr int kSub = 32;
    int inside = 0;
    for (int sy = 0; sy < kSub; ++sy) {
        for (int sx = 0; sx < kSub; ++sx) {
            const Vec2 p{lo.x + (sx + 0.5) * wx / kSub, lo.y + (sy + 0.5) * wy / kSub};
            if (exclude && dist(p, exclude->center) <= exclude->radius) continue;
            if (curve.contains(p) != Region::Interior) continue;
            ++inside;
        }
    }
    return double(inside) / (kSub * kSub);
}

}  // namespace

std::vector<AreaCell> area_cells(const Curve& curve, int m,
                                 const std::optional<Exclusion>& exclude) {
    if (m < 2) throw std::invalid_argument("area_cells: resolution must be at least 2");
    const Vec2 lo = curve.bbox_min();
    const Vec2 hi = curve.bbox_max();
    const double hx = (hi.x - lo.x) / m;
    const double hy = (hi.y - lo.y) / m;
    const double half_diag = 0.5 * std::hypot(hx, hy);
    const bool excluding = exclude && exclude->radius > 0.0;
    Exclusion disk{};
    if (excluding) disk = *exclude;

    std::vector<AreaCell> cells;
    cells.reserve(size_t(m) * m / 2);
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            const Vec2 c{lo.x + (ix + 0.5) * hx, lo.y + (iy + 0.5) * hy};
            const bool on_curve_rim = curve.boundary_distance(c) <= half_diag;
            const bool on_disk_rim =
                excluding && std::abs(dist(c, disk.center) - disk.radius) <= half_diag;
            if (!on_curve_rim && !on_disk_rim) {
                if (excluding && dist(c, disk.center) <= disk.radius) continue;
                if (curve.contains(c) != Region::Interior) continue;
                cells.push_back({c, hx * hy});
                continue;
            }
            const double frac = covered_fraction(curve, {c.x - 0.5 * hx, c.y - 0.5 * hy}, hx,
                                                 hy, excluding ? &disk : nullptr);
            if (frac > 0.0) cells.push_back({c, hx * hy * frac});
        }
    }
    if (excluding) {
        const int J = disk.radial;
        const int A = disk.angular;
        const double R = disk.radius;
        const bool patch_cut = !(curve.contains(disk.center) == Region::Interior &&
                                 curve.boundary_distance(disk.center) > R);
        for (int j = 0; j < J; ++j) {
            // graded radial edges rho_j = R (j/J)^2 concentrate cells where
            // the integrand peaks; the weight r (r1-r0) dphi integrates the
            // area element exactly ring by ring
            const double r0 = R * (double(j) / J) * (double(j) / J);
            const double r1 = R * (double(j + 1) / J) * (double(j + 1) / J);
            const double rc = 0.5 * (r0 + r1);
            const double w = rc * (r1 - r0) * (kTwoPi / A);
            for (int a = 0; a < A; ++a) {
                const double phi = kTwoPi * (a + 0.5) / A;
                const Vec2 p{disk.center.x + rc * std::cos(phi),
                             disk.center.y + rc * std::sin(phi)};
                if (!patch_cut) {
                    cells.push_back({p, w});
                    continue;
                }
                // the disk crosses the curve: prorate cells cut by it
                const double cell_diag = std::hypot(r1 - r0, rc * kTwoPi / A);
                if (curve.boundary_distance(p) > 0.5 * cell_diag) {
                    if (curve.contains(p) == Region::Interior) cells.push_back({p, w});
                    continue;
                }
                constexpr int kSub = 8;
                int inside = 0;
                for (int sr = 0; sr < kSub; ++sr) {
                    for (int sa = 0; sa < kSub; ++sa) {
                        const double rr = r0 + (sr + 0.5) * (r1 - r0) / kSub;
                        const double pp =
                            phi + ((sa + 0.5) / kSub - 0.5) * (kTwoPi / A);
                        const Vec2 q{disk.center.x + rr * std::cos(pp),
                                     disk.center.y + rr * std::sin(pp)};
                        if (curve.contains(q) == Region::Interior) ++inside;
                    }
                }
                if (inside > 0) cells.push_back({p, w * inside / (kSub * kSub)});
            }
        }
    }
    return cells;
}

}  // namespace qholo
