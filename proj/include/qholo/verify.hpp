#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qholo/density.hpp"
#include "qholo/geometry.hpp"
#include "qholo/kernel.hpp"
#include "qholo/potential.hpp"
#include "qholo/quat.hpp"
#include "qholo/vec.hpp"

namespace qholo {

// A quaternion-valued field over the plane.
using FieldFn = std::function<CQuat(Vec2)>;

// Memoizing wrapper for expensive fields. Finite-difference stencils revisit
// the same points constantly, and a field backed by a boundary integral costs
// thousands of kernel evaluations per call.
class CachedField {
  public:
    explicit CachedField(FieldFn fn) : fn_(std::move(fn)) {}
    CQuat operator()(Vec2 z) const;

  private:
    FieldFn fn_;
    mutable std::map<std::pair<double, double>, CQuat> cache_;
};

// Sampling plan for derivative checks: a step size and probe points that keep
// clearance from the places a field is singular or expensive to evaluate.
struct FDGrid {
    double h = 1e-3;
    int stencil = 5;  // 3 = first-derivative cross, 5 = Laplacian cross
    std::vector<Vec2> points;

    // Picks `count` interior points of the curve with at least the given
    // clearance from it, spread deterministically over a coarse lattice.
    // Requires clearance > 2h so every stencil stays inside.
    static FDGrid interior(const Curve& curve, double clearance, double h, int count);
};

// Central differences, step h, one evaluation per stencil arm.
CQuat diff_x(const FieldFn& f, Vec2 z, double h);
CQuat diff_y(const FieldFn& f, Vec2 z, double h);
// 5-point Laplacian.
CQuat laplacian(const FieldFn& f, Vec2 z, double h);

// Complex first-order operators, acting componentwise: d/dx -+ i d/dy.
CQuat wirtinger(const FieldFn& f, Vec2 z, double h);
CQuat wirtinger_bar(const FieldFn& f, Vec2 z, double h);

// Dirac-type operators: quaternion units applied to the two first
// derivatives, on the left or on the right, plus conjugated-unit variants.
CQuat dirac_left(const FieldFn& f, Vec2 z, double h);
CQuat dirac_left_conj(const FieldFn& f, Vec2 z, double h);
CQuat dirac_right(const FieldFn& f, Vec2 z, double h);
CQuat dirac_right_conj(const FieldFn& f, Vec2 z, double h);

// Perturbed Dirac operators: the unit-side variant plus multiplication by a
// complex parameter (left/right multiplication coincide for scalars).
CQuat dirac_alpha_left(const FieldFn& f, Vec2 z, double h, complex_t alpha);
CQuat dirac_alpha_right(const FieldFn& f, Vec2 z, double h, complex_t alpha);

// Laplacian plus a complex wave-number term.
CQuat helmholtz(const FieldFn& f, Vec2 z, double h, complex_t lambda);

enum class Op {
    DiffX,
    DiffY,
    Wirtinger,
    WirtingerBar,
    DiracLeft,
    DiracLeftConj,
    DiracRight,
    DiracRightConj,
    DiracLeftAlpha,
    DiracRightAlpha,
    Laplacian,
    Helmholtz,
};

const char* op_name(Op op);
std::optional<Op> parse_op(std::string_view name);

// Applies the named operator at every grid point. `param` is the complex
// parameter of the perturbed Dirac operators, or the wave number of the
// Helmholtz operator; other operators ignore it.
std::vector<CQuat> apply_operator(Op op, const FieldFn& f, const FDGrid& grid,
                                  complex_t param = {});

// One certified statement about the library's objects.
enum class ClaimId {
    NormBound,           // product norm bound with its sharp witness
    SingularLimit,       // deleted-neighborhood integrals settle and vary continuously
    UnitDensityField,    // field of the unit density = area term + interior indicator
    AreaTermContinuity,  // area term extends continuously across the curve
    JumpFormulas,        // one-sided boundary limits match the reconstruction formulas
    PairJumpFormulas,    // scalar-vector form of the jump formulas
    VectorJumpFormulas,  // vector-only jump formulas for solenoidal-type densities
    Hyperholomorphy,     // reconstructed fields are annihilated by the adapted operators
    VectorSystem,        // divergence-free / rotation-eigenfield system
    ScalarVectorSystem,  // coupled scalar-vector first-order system
    PairDictionary,      // quaternion product matches its scalar-vector dictionary
};

const char* claim_id(ClaimId id);
const char* claim_title(ClaimId id);
std::optional<ClaimId> parse_claim(std::string_view id);
std::vector<ClaimId> all_claims();

// Pass thresholds, fixed per claim and versioned so reports stay comparable.
const char* tolerance_table_version();
double claim_tolerance(ClaimId id);

// Everything a certification run needs to know about its inputs.
struct Scenario {
    complex_t alpha{};
    Curve curve = Curve::circle({0.0, 0.0}, 1.0);
    Density density = Density::constant(CQuat::scalar(1.0));
    QuadSpec quad{};
    double fd_h = 1e-3;
    double fd_clearance = 0.3;
    int fd_points = 12;
    int boundary_samples = 8;
    std::string label;
};

std::string scenario_digest(const Scenario& sc);

// Outcome of one certified check. `residual` is the decisive worst-case
// measurement and pass requires residual < tolerance; `measurements` carries
// the named partial results behind it. Reports contain no timing data, so a
// repeated run is byte-identical.
struct CheckReport {
    std::string claim;
    std::string title;
    std::string scenario;
    std::vector<std::pair<std::string, double>> measurements;
    double residual = 0.0;
    std::optional<double> order_estimate;
    double tolerance = 0.0;
    bool pass = false;
    std::string notes;
};

CheckReport certify(ClaimId id, const Scenario& sc);

// One row of the reference certification: a claim and the scenario it runs on.
struct ReferenceCase {
    ClaimId id;
    Scenario scenario;
};

// Fixed claim-by-scenario matrix behind certify_reference(), in run order:
// unit circle, the four stock parameter values, the stock densities.
std::vector<ReferenceCase> reference_matrix();

// Runs every reference_matrix() row in order.
std::vector<CheckReport> certify_reference();

// Second-order identities tying the first-order operators to the Laplacian
// and the wave-number operator, checked on smooth closed-form trial fields.
CheckReport check_factorizations(complex_t alpha, const FDGrid& grid);

}  // namespace qholo
