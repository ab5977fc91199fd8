#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qholo/geometry.hpp"

using namespace qholo;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Sum of x * sigma_1 over the nodes: Green's identity turns it into the
// enclosed area, an end-to-end check of points, weights and orientation.
double swept_area(const Curve& curve, int n) {
    KahanSum acc;
    for (const BoundaryNode& nd : curve.nodes(n)) acc.add(nd.point.x * nd.sigma.q1.real());
    return acc.sum;
}

CQuat sigma_total(const Curve& curve, int n) {
    CQuat total;
    for (const BoundaryNode& nd : curve.nodes(n)) total += nd.sigma;
    return total;
}

}  // namespace

TEST_CASE("circle basics") {
    const Curve c = Curve::circle({0.5, -0.25}, 2.0);
    CHECK(c.kind() == Curve::Kind::Circle);
    CHECK(c.length() == doctest::Approx(4.0 * kPi).epsilon(1e-12));
    CHECK(c.diameter() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(c.positively_oriented());
    CHECK(c.suggested_nodes() == 2048);
    CHECK(c.bbox_min().x == doctest::Approx(-1.5));
    CHECK(c.bbox_max().y == doctest::Approx(1.75));

    CHECK(c.contains({0.5, -0.25}) == Region::Interior);
    CHECK(c.contains({4.0, 0.0}) == Region::Exterior);
    CHECK(c.contains({2.5, -0.25}) == Region::Boundary);
    CHECK(c.contains({2.5 + 1e-12, -0.25}) == Region::Boundary);

    const Vec2 p0 = c.point_at(0.0);
    CHECK(p0.x == doctest::Approx(2.5));
    CHECK(p0.y == doctest::Approx(-0.25));
    const Vec2 n0 = c.outward_normal_at(0.0);
    CHECK(n0.x == doctest::Approx(1.0));
    CHECK(n0.y == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("nearest point and distances") {
    const Curve c = Curve::circle({0.0, 0.0}, 1.0);
    const Vec2 np = c.nearest_point({2.0, 0.0});
    CHECK(np.x == doctest::Approx(1.0));
    CHECK(np.y == doctest::Approx(0.0));
    CHECK(c.boundary_distance({2.0, 0.0}) == doctest::Approx(1.0));
    CHECK(c.boundary_distance({0.25, 0.0}) == doctest::Approx(0.75));
    CHECK(c.max_distance({0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(c.max_distance({2.0, 0.0}) == doctest::Approx(3.0));

    const Curve e = Curve::ellipse({0.0, 0.0}, 2.0, 1.0);
    CHECK(e.boundary_distance({3.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(e.boundary_distance({0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(e.max_distance({0.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("quadrature nodes close up and integrate areas exactly enough") {
    const Curve circle = Curve::circle({0.0, 0.0}, 1.0);
    const Curve ellipse = Curve::ellipse({0.3, 0.0}, 1.5, 0.75);
    const std::vector<Vec2> square = {{1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}};
    const Curve poly = Curve::polygon(square);

    // closed curve: the line element integrates to zero
    CHECK(norm(sigma_total(circle, 512)) < 1e-13);
    CHECK(norm(sigma_total(ellipse, 512)) < 1e-13);
    CHECK(norm(sigma_total(poly, 512)) < 1e-13);

    CHECK(swept_area(circle, 256) == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(swept_area(ellipse, 512) == doctest::Approx(kPi * 1.5 * 0.75).epsilon(1e-12));
    CHECK(swept_area(poly, 512) == doctest::Approx(4.0).epsilon(1e-12));

    // arc-length weights recover the perimeter
    double arc = 0.0;
    for (const BoundaryNode& nd : poly.nodes(512)) arc += norm(nd.sigma);
    CHECK(arc == doctest::Approx(8.0).epsilon(1e-12));

    // sigma points along the outward normal
    for (const BoundaryNode& nd : circle.nodes(64)) {
        const Vec2 n = circle.outward_normal_at(nd.param);
        const double along = nd.sigma.q1.real() * n.x + nd.sigma.q2.real() * n.y;
        CHECK(along > 0.99 * norm(nd.sigma));
    }
}

TEST_CASE("polygon orientation is normalized and crossings are rejected") {
    // clockwise input still sweeps positive area
    const Curve cw = Curve::polygon({{1.0, -1.0}, {-1.0, -1.0}, {-1.0, 1.0}, {1.0, 1.0}});
    CHECK(cw.positively_oriented());
    CHECK(swept_area(cw, 512) == doctest::Approx(4.0).epsilon(1e-12));

    CHECK_THROWS_AS(
        Curve::polygon({{0.0, 0.0}, {1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}}),
        std::invalid_argument);
    CHECK_THROWS_AS(Curve::polygon({{0.0, 0.0}, {1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Curve::circle({0.0, 0.0}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(Curve::ellipse({0.0, 0.0}, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("polygon parameter is proportional to arc length") {
    const Curve poly =
        Curve::polygon({{1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}});
    const Vec2 start = poly.point_at(0.0);
    CHECK(start.x == doctest::Approx(1.0));
    CHECK(start.y == doctest::Approx(1.0));
    // half the perimeter lands on the opposite corner
    const Vec2 half = poly.point_at(kPi);
    CHECK(half.x == doctest::Approx(-1.0));
    CHECK(half.y == doctest::Approx(-1.0));
    // a quarter of the perimeter is one full edge
    const Vec2 quarter = poly.point_at(kPi / 2.0);
    CHECK(quarter.x == doctest::Approx(-1.0));
    CHECK(quarter.y == doctest::Approx(1.0));
    CHECK(poly.suggested_nodes() == 1024);
    CHECK(poly.diameter() == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("ellipse normals point outward") {
    const Curve e = Curve::ellipse({0.0, 0.0}, 2.0, 1.0);
    for (double s : {0.0, 0.7, kPi / 2.0, 2.5, kPi, 4.4}) {
        const Vec2 p = e.point_at(s);
        const Vec2 n = e.outward_normal_at(s);
        CHECK(std::hypot(n.x, n.y) == doctest::Approx(1.0).epsilon(1e-12));
        // stepping outward leaves the region, stepping inward stays
        CHECK(e.contains({p.x + 1e-3 * n.x, p.y + 1e-3 * n.y}) == Region::Exterior);
        CHECK(e.contains({p.x - 1e-3 * n.x, p.y - 1e-3 * n.y}) == Region::Interior);
    }
}

TEST_CASE("deleted arc keeps exactly the nodes beyond the chordal radius") {
    const Curve c = Curve::circle({0.0, 0.0}, 1.0);
    const Vec2 t = c.point_at(0.0);
    const NodeFilter filter = deleted_arc(c, t, 0.5);
    int kept = 0, dropped = 0;
    for (const BoundaryNode& nd : c.nodes(1024)) {
        if (filter.retains(nd)) {
            CHECK(dist(nd.point, t) > 0.5);
            ++kept;
        } else {
            CHECK(dist(nd.point, t) <= 0.5);
            ++dropped;
        }
    }
    CHECK(kept > 0);
    CHECK(dropped > 0);
    // chord 0.5 on the unit circle spans 2*asin(0.25) of parameter on each
    // side of t
    const double expect_drop = 4.0 * std::asin(0.25) / (2.0 * kPi) * 1024;
    CHECK(std::abs(dropped - expect_drop) <= 2.0);

    CHECK_THROWS_AS(deleted_arc(c, {0.5, 0.5}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(deleted_arc(c, t, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(deleted_arc(c, t, 3.0), std::invalid_argument);
}

TEST_CASE("area cells tile the interior") {
    const Curve c = Curve::circle({0.0, 0.0}, 1.0);
    double total = 0.0;
    for (const AreaCell& cell : area_cells(c, 128)) {
        total += cell.weight;
        CHECK(cell.weight > 0.0);
    }
    CHECK(total == doctest::Approx(kPi).epsilon(2e-3));

    const Curve e = Curve::ellipse({0.0, 0.0}, 1.5, 0.75);
    double etotal = 0.0;
    for (const AreaCell& cell : area_cells(e, 128)) etotal += cell.weight;
    CHECK(etotal == doctest::Approx(kPi * 1.5 * 0.75).epsilon(2e-3));

    CHECK_THROWS_AS(area_cells(c, 1), std::invalid_argument);
}

TEST_CASE("area cells with an interior exclusion cover the disk with the patch") {
    const Curve c = Curve::circle({0.0, 0.0}, 1.0);
    Exclusion disk;
    disk.center = {0.3, 0.1};
    disk.radius = 0.05;
    const double full = (2.0 / 128) * (2.0 / 128);  // uniform cell area
    double total = 0.0, in_disk = 0.0;
    int patch_cells = 0;
    for (const AreaCell& cell : area_cells(c, 128, disk)) {
        total += cell.weight;
        const double d = dist(cell.point, disk.center);
        if (d <= disk.radius) {
            in_disk += cell.weight;
            ++patch_cells;
            // full uniform cells never reach inside the disk; everything
            // here is a graded-patch cell or a prorated rim sliver
            CHECK(cell.weight < full);
        }
    }
    // the tiling still covers the whole interior
    CHECK(total == doctest::Approx(kPi).epsilon(2e-3));
    // the disk carries at least its own area (polar rings sum to it
    // exactly), plus slivers of cut lattice cells whose midpoints fall
    // just inside the rim
    CHECK(in_disk >= kPi * 0.05 * 0.05 * 0.999);
    CHECK(in_disk < kPi * 0.05 * 0.05 * 2.0);
    CHECK(patch_cells >= 32 * 32);
}

TEST_CASE("area cells with an exclusion cut by the curve keep the total area") {
    const Curve c = Curve::circle({0.0, 0.0}, 1.0);
    Exclusion disk;
    disk.center = {1.0, 0.0};  // on the curve
    disk.radius = 0.1;
    double total = 0.0;
    for (const AreaCell& cell : area_cells(c, 128, disk)) total += cell.weight;
    // half the disk lies outside; prorating must keep only the inside half
    CHECK(total == doctest::Approx(kPi).epsilon(5e-3));
}

TEST_CASE("descriptions name the shape") {
    CHECK(Curve::circle({0.0, 0.0}, 1.0).describe() == "circle(center=(0,0), r=1)");
    CHECK(Curve::ellipse({0.0, 0.0}, 2.0, 1.0).describe() ==
          "ellipse(center=(0,0), a=2, b=1)");
    const std::string p =
        Curve::polygon({{1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}}).describe();
    CHECK(p.find("polygon") == 0);
    CHECK(p.find("4 vertices") != std::string::npos);
}
