#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qholo/quat.hpp"
#include "qholo/vec.hpp"

namespace qholo {

// Quadrature node on a closed curve. sigma is the quaternion line element
//   sigma = d_eta * i1 - d_xi * i2
// integrated over the node's parameter cell, so nodes sum any boundary
// integrand as Sum integrand(point) * sigma. The arc-length weight |d_zeta|
// equals norm(sigma). param is the curve parameter in [0, 2pi).
struct BoundaryNode {
    Vec2 point;
    CQuat sigma;
    double param = 0.0;
};

// Midpoint cell of an area quadrature: integral ~ Sum f(point) * weight.
struct AreaCell {
    Vec2 point;
    double weight = 0.0;
};

enum class Region { Interior, Exterior, Boundary };

// Closed Jordan curve with positive (counterclockwise) orientation: a circle,
// an axis-aligned ellipse, or a simple polygon. Polygons are normalized to
// counterclockwise vertex order at construction and rejected if
// self-intersecting. The parameter runs over [0, 2pi), proportional to arc
// length for polygons.
class Curve {
  public:
    enum class Kind { Circle, Ellipse, Polygon };

    static Curve circle(Vec2 center, double radius);
    static Curve ellipse(Vec2 center, double semi_x, double semi_y);
    static Curve polygon(std::vector<Vec2> vertices);

    Kind kind() const { return kind_; }
    bool positively_oriented() const { return true; }
    double length() const { return length_; }
    double diameter() const { return diameter_; }
    int suggested_nodes() const { return kind_ == Kind::Polygon ? 1024 : 2048; }
    std::string describe() const;

    Vec2 point_at(double param) const;
    // Unit outward normal. For polygons, undefined at vertices; the edge
    // normal of the containing edge is returned.
    Vec2 outward_normal_at(double param) const;

    // Quadrature nodes: trapezoid rule in the parameter for smooth kinds
    // (spectrally accurate on closed curves), composite 8-point Gauss panels
    // per edge for polygons (no node ever lands on a vertex). The returned
    // count may differ slightly from n for polygons.
    std::vector<BoundaryNode> nodes(int n) const;

    // Point classification with a boundary band of half-width tol measured
    // as Euclidean distance to the curve.
    Region contains(Vec2 z, double tol = 1e-9) const;

    // Closest curve point. Circle: closed form (ties broken toward param 0);
    // ellipse: Newton on the parameter from multiple starts; polygon: best
    // per-edge projection.
    Vec2 nearest_point(Vec2 z) const;
    double boundary_distance(Vec2 z) const { return dist(z, nearest_point(z)); }

    // max over the curve of |zeta - z| (exact for circles and polygons,
    // dense parameter sampling for ellipses).
    double max_distance(Vec2 z) const;

    Vec2 bbox_min() const { return bbox_min_; }
    Vec2 bbox_max() const { return bbox_max_; }

  private:
    Curve() = default;

    Kind kind_ = Kind::Circle;
    Vec2 center_{};
    double rx_ = 0.0, ry_ = 0.0;   // circle: rx_ == ry_
    std::vector<Vec2> verts_;      // polygon only
    std::vector<double> cumlen_;   // polygon: cumulative edge lengths
    double length_ = 0.0;
    double diameter_ = 0.0;
    Vec2 bbox_min_{}, bbox_max_{};

    void finish_setup();
};

// Node filter for the deleted neighborhood Gamma \ {|zeta - t| <= delta}:
// retains nodes at chordal distance strictly greater than delta from t.
// t must lie on the curve (within tol) and 0 < delta <= diameter.
struct NodeFilter {
    Vec2 t;
    double delta = 0.0;
    bool retains(const BoundaryNode& node) const { return dist(node.point, t) > delta; }
};

NodeFilter deleted_arc(const Curve& curve, Vec2 t, double delta, double tol = 1e-9);

// Exclusion disk for area quadrature around a singular point.
struct Exclusion {
    Vec2 center;
    double radius = 0.0;
    // Polar patch resolution (radial x angular), radii graded as (j/J)^2 so
    // an integrand ~ 1/r is resolved near the center.
    int radial = 32;
    int angular = 32;
};

// Midpoint cells covering the interior: an m x m grid over the bounding box.
// Cells cut by the curve (or by the exclusion rim) enter with their covered
// area fraction instead of all or nothing. With an exclusion disk, uniform
// cells inside the disk give way to the graded polar patch; patch cells cut
// by the curve are prorated the same way. Radius 0 means no exclusion.
std::vector<AreaCell> area_cells(const Curve& curve, int m,
                                 const std::optional<Exclusion>& exclude = {});

}  // namespace qholo
