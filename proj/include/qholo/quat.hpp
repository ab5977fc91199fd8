#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "qholo/vec.hpp"

namespace qholo {

using complex_t = std::complex<double>;

inline constexpr complex_t kImag{0.0, 1.0};

// Compensated (Kahan) accumulator. Summation order is fixed by the caller,
// so results are bit-reproducible for a given input sequence.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// Quaternion with complex coefficients:
//   q = q0 + q1*i1 + q2*i2 + q3*i3,   qk in C,
// where i1*i2 = i3, i2*i3 = i1, i3*i1 = i2 and ik^2 = -1. The complex unit i
// commutes with all of i1, i2, i3. The algebra has zero divisors, e.g.
// (1 + i*i1)(1 - i*i1) = 0, so there is no multiplicative norm; see norm().
struct CQuat {
    complex_t q0{}, q1{}, q2{}, q3{};

    static CQuat scalar(complex_t s) { return {s, {}, {}, {}}; }
    static CQuat vector(complex_t v1, complex_t v2, complex_t v3) { return {{}, v1, v2, v3}; }

    CQuat& operator+=(const CQuat& r) {
        q0 += r.q0; q1 += r.q1; q2 += r.q2; q3 += r.q3;
        return *this;
    }
    CQuat& operator-=(const CQuat& r) {
        q0 -= r.q0; q1 -= r.q1; q2 -= r.q2; q3 -= r.q3;
        return *this;
    }
};

inline CQuat operator+(CQuat a, const CQuat& b) { return a += b; }
inline CQuat operator-(CQuat a, const CQuat& b) { return a -= b; }
inline CQuat operator-(const CQuat& a) { return {-a.q0, -a.q1, -a.q2, -a.q3}; }

inline CQuat operator*(complex_t s, const CQuat& a) { return {s * a.q0, s * a.q1, s * a.q2, s * a.q3}; }
inline CQuat operator*(const CQuat& a, complex_t s) { return s * a; }
inline CQuat operator*(double s, const CQuat& a) { return complex_t(s) * a; }
inline CQuat operator*(const CQuat& a, double s) { return complex_t(s) * a; }

// Full quaternion product (noncommutative).
inline CQuat operator*(const CQuat& a, const CQuat& b) {
    return {
        a.q0 * b.q0 - a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3,
        a.q0 * b.q1 + a.q1 * b.q0 + a.q2 * b.q3 - a.q3 * b.q2,
        a.q0 * b.q2 - a.q1 * b.q3 + a.q2 * b.q0 + a.q3 * b.q1,
        a.q0 * b.q3 + a.q1 * b.q2 - a.q2 * b.q1 + a.q3 * b.q0,
    };
}

// Quaternionic conjugate (negates the vector part; complex coefficients untouched).
inline CQuat conj(const CQuat& a) { return {a.q0, -a.q1, -a.q2, -a.q3}; }

// Squared Euclidean norm of the 8 real coordinates, compensated summation.
inline double norm_sq(const CQuat& a) {
    KahanSum k;
    k.add(a.q0.real() * a.q0.real());
    k.add(a.q0.imag() * a.q0.imag());
    k.add(a.q1.real() * a.q1.real());
    k.add(a.q1.imag() * a.q1.imag());
    k.add(a.q2.real() * a.q2.real());
    k.add(a.q2.imag() * a.q2.imag());
    k.add(a.q3.real() * a.q3.real());
    k.add(a.q3.imag() * a.q3.imag());
    return k.sum;
}

inline double norm(const CQuat& a) { return std::sqrt(norm_sq(a)); }

// Sharp constant in the submultiplicative bound |ab| <= sqrt(2)|a||b|,
// attained at a = b = 1 + i*i1.
inline constexpr double kNormBoundFactor = 1.4142135623730951;

// Embedding of the plane: (x, y) -> x*i1 + y*i2.
inline CQuat embed(Vec2 z) { return CQuat::vector(z.x, z.y, {}); }

// Scalar-vector ("pair") view of the same quaternion: F = (f0, fvec).
struct PairField {
    complex_t f0{};
    std::array<complex_t, 3> fvec{};
};

inline PairField to_pair(const CQuat& a) { return {a.q0, {a.q1, a.q2, a.q3}}; }
inline CQuat from_pair(const PairField& f) { return {f.f0, f.fvec[0], f.fvec[1], f.fvec[2]}; }

using Vec3c = std::array<complex_t, 3>;

// Bilinear dot product, no conjugation: <a,b> = a1 b1 + a2 b2 + a3 b3.
inline complex_t dot(const Vec3c& a, const Vec3c& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Formal determinant cross product with complex entries.
inline Vec3c cross(const Vec3c& a, const Vec3c& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

inline Vec3c operator+(const Vec3c& a, const Vec3c& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3c operator-(const Vec3c& a, const Vec3c& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3c operator*(complex_t s, const Vec3c& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double norm(const Vec3c& a) {
    return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

// Product in the pair representation:
//   ab = (a0 b0 - <avec,bvec>,  [avec,bvec] + a0 bvec + b0 avec).
// Same element as the quaternion product, grouped by scalar/vector parts.
inline PairField pair_mul(const PairField& a, const PairField& b) {
    PairField r;
    r.f0 = a.f0 * b.f0 - dot(a.fvec, b.fvec);
    Vec3c c = cross(a.fvec, b.fvec);
    for (int k = 0; k < 3; ++k) r.fvec[k] = c[k] + a.f0 * b.fvec[k] + b.f0 * a.fvec[k];
    return r;
}

}  // namespace qholo
