#pragma once

#include "qholo/quat.hpp"
#include "qholo/specfun.hpp"
#include "qholo/vec.hpp"

namespace qholo {

// Branch index for the Hankel kind: 1 if Im(alpha) > 0 or alpha is positive
// real, 2 if Im(alpha) < 0 or alpha is negative real. Keeps the series
// argument alpha*|z| on a single side of the log branch cut. alpha = 0 has
// no branch and is rejected here (the alpha = 0 kernels are closed-form).
int select_branch(complex_t alpha);

// Helmholtz parameter with its branch fixed once. p is derived from alpha at
// construction and reused by every evaluation.
struct KernelCtx {
    complex_t alpha{};
    int p = 0;  // 0 marks the alpha = 0 closed-form path
    SeriesCfg series{};

    static KernelCtx make(complex_t alpha, const SeriesCfg& series = {});
    bool zero_alpha() const { return p == 0; }
};

// Fundamental solution of diag(Delta + alpha^2):
//   theta(z) = (-1)^p (i/4) H0^(p)(alpha |z|)    for alpha != 0,
//   theta(z) = log|z| / (2 pi)                   for alpha  = 0.
// Scalar-valued; z = 0 is the singularity and is rejected.
complex_t theta(const KernelCtx& ctx, Vec2 z);

// Cauchy-type kernel K(z) = -(D_st + M^{-alpha})[theta], explicitly
//   K(z) = (-1)^p (i alpha/4) (H1^(p)(alpha|z|) z/|z| + H0^(p)(alpha|z|)),
//   K(z) = -z / (2 pi |z|^2)                      for alpha = 0,
// with z embedded as x*i1 + y*i2. Scalar part carries H0, vector part H1.
CQuat cauchy_kernel(const KernelCtx& ctx, Vec2 z);

// Additive split K = singular + smooth. The singular term
//   S(z) = -(1/(2 pi)) (z/|z|^2 - alpha log|z|)
// carries the 1/|z| pole in the vector part and the alpha log|z| growth in
// the scalar part; the remainder extends continuously to z = 0.
struct KernelSplit {
    CQuat singular;
    CQuat smooth;
};
KernelSplit kernel_split(const KernelCtx& ctx, Vec2 z);

}  // namespace qholo
