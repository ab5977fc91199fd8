#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qholo/quat.hpp"
#include "qholo/vec.hpp"

namespace qholo {

// Parse or evaluation failure; position is a 0-based byte offset into the
// source text (evaluation errors reuse the offending node's position).
struct DensityError : std::runtime_error {
    DensityError(const std::string& msg, size_t position)
        : std::runtime_error(msg), position(position) {}
    size_t position;
};

namespace detail {
struct ExprNode;
}

// Boundary density: a quaternion-valued function of a plane point. Either a
// named builtin or a parsed expression over
//   literals (decimal, with a trailing i for imaginary), x, y, i, i1, i2, i3,
//   cos, sin, exp, log, abs, unary -, and + - * / with the usual precedence.
// The product is the full quaternion product; cos/sin/exp/log require scalar
// arguments and fail at evaluation otherwise (they are not lifted). See
// docs/expression-grammar.md for the grammar.
class Density {
  public:
    // q at every point.
    static Density constant(CQuat q);
    // cos(k s) + sin(k s) i3 with s = atan2(y, x).
    static Density fourier(int k);
    // Scalar variant: cos(k s) + i sin(k s).
    static Density fourier_scalar(int k);
    // x i1 + y i2.
    static Density coordinate();
    // Scalar variant: x + i y.
    static Density coordinate_scalar();
    // Parse an expression; throws DensityError on syntax errors.
    static Density parse(std::string_view text);

    CQuat eval(Vec2 z) const;
    CQuat operator()(Vec2 z) const { return eval(z); }

    // Canonical rendering. For expressions, parse(pretty()) prints the same
    // string again (pretty-print is a fixed point of parse).
    std::string describe() const;

    // Optional a-priori Holder exponent of the density (metadata only).
    std::optional<double> holder_hint;

  private:
    Density() = default;
    enum class Builtin { None, Constant, Fourier, FourierScalar, Coordinate, CoordinateScalar };
    Builtin builtin_ = Builtin::None;
    CQuat cval_{};
    int k_ = 0;
    std::shared_ptr<const detail::ExprNode> expr_;
};

}  // namespace qholo
