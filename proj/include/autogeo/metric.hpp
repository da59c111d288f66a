#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "autogeo/errors.hpp"

namespace autogeo {

// Diagonal metric of 3D (pseudo-)Euclidean space. index counts minus signs:
// index 0 -> diag(+,+,+), index 2 -> diag(+,-,-) with the 0-axis timelike.
struct Metric {
    int index = 0;
    std::array<double, 3> diag{1.0, 1.0, 1.0};

    static Metric euclidean() { return Metric{0, {1.0, 1.0, 1.0}}; }
    static Metric pseudo() { return Metric{2, {1.0, -1.0, -1.0}}; }
    static Metric from_name(const std::string& name);

    // Product of the diagonal entries (+1 for both supported signatures).
    double det() const { return diag[0] * diag[1] * diag[2]; }
};

struct Vec3 {
    std::array<double, 3> c{0.0, 0.0, 0.0};

    Vec3() = default;
    Vec3(double a, double b, double d) : c{a, b, d} {}

    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    Vec3 operator+(const Vec3& o) const { return {c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2]}; }
    Vec3 operator-(const Vec3& o) const { return {c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2]}; }
    Vec3 operator-() const { return {-c[0], -c[1], -c[2]}; }
    Vec3 operator*(double s) const { return {c[0] * s, c[1] * s, c[2] * s}; }
    Vec3 operator/(double s) const { return {c[0] / s, c[1] / s, c[2] / s}; }
    Vec3& operator+=(const Vec3& o) {
        c[0] += o.c[0]; c[1] += o.c[1]; c[2] += o.c[2];
        return *this;
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct Vec2 {
    std::array<double, 2> c{0.0, 0.0};

    Vec2() = default;
    Vec2(double a, double b) : c{a, b} {}

    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    Vec2 operator+(const Vec2& o) const { return {c[0] + o.c[0], c[1] + o.c[1]}; }
    Vec2 operator-(const Vec2& o) const { return {c[0] - o.c[0], c[1] - o.c[1]}; }
    Vec2 operator-() const { return {-c[0], -c[1]}; }
    Vec2 operator*(double s) const { return {c[0] * s, c[1] * s}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct Mat3 {
    // m[row][col]
    std::array<std::array<double, 3>, 3> m{};

    static Mat3 identity();

    double& operator()(int r, int c) { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    double operator()(int r, int c) const { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }

    Vec3 operator*(const Vec3& v) const;
    Mat3 operator*(const Mat3& o) const;
    Mat3 operator+(const Mat3& o) const;
    Mat3 operator*(double s) const;
    Mat3 transposed() const;
    double det() const;
    Mat3 inverse() const;
};

struct Mat2 {
    std::array<std::array<double, 2>, 2> m{};

    double& operator()(int r, int c) { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    double operator()(int r, int c) const { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }

    Vec2 operator*(const Vec2& v) const {
        return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
    }
    Mat2 operator*(double s) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * s;
        return r;
    }
};

// Rank-3 block of coefficients, symmetric handling left to the caller.
struct Ten3 {
    double v[3][3][3]{};

    double& operator()(int a, int b, int c) { return v[a][b][c]; }
    double operator()(int a, int b, int c) const { return v[a][b][c]; }
};

enum class CausalClass { TimelikePositive, SpacelikeNegative, Null };

// Relative threshold used to classify squared norms as null.
inline constexpr double kNullEps = 1e-9;

struct Norm {
    double magnitude = 0.0;
    CausalClass cls = CausalClass::Null;
};

// Metric inner product sum_a diag_a v^a w^a.
double dot(const Vec3& v, const Vec3& w, const Metric& g);

// sqrt(|v.v|) together with the causal class of v.v. The class is null when
// |v.v| <= kNullEps * max_a (v^a)^2.
Norm norm(const Vec3& v, const Metric& g);

// Covariant permutation-symbol product (v ^ w)_a = e_{abc} v^b w^c, e_{012} = +1.
Vec3 cov_cross(const Vec3& v, const Vec3& w);

// Metric cross product (v x w)^a = diag_a e_{abc} v^b w^c: the index of the
// covariant product raised with g, so that proper g-rotations act equivariantly.
Vec3 cross(const Vec3& v, const Vec3& w, const Metric& g);

// Lowered components (g v)_a.
Vec3 lower(const Vec3& v, const Metric& g);

// Natural pairing of a covariant with a contravariant vector (no metric).
double contract(const Vec3& cov, const Vec3& vec);

// det[a, b, c] of the component matrix; a metric-free density.
double triple(const Vec3& a, const Vec3& b, const Vec3& c);

// 2D dual (*w)_1 = -w^2, (*w)_2 = w^1 (e_{12} = +1).
Vec2 dual2(const Vec2& w);

inline double dot2(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

double linf(const Vec3& v);
double linf(const Mat3& m);
double norm2(const Vec3& v);  // plain Euclidean component norm, used for scales

// e^X by scaling-and-squaring; the Taylor series is cut when the term's
// max-abs entry drops below 1e-14.
Mat3 expm(const Mat3& x);

// Deterministic proper (pseudo-)rotation: exponential of a random element of
// the Lie algebra of the g-orthogonal group, generator entries uniform in
// [-1, 1]. Satisfies R^T G R = G to ~1e-12 and det R = +1.
Mat3 random_pseudo_rotation(std::uint64_t seed, const Metric& g);

}  // namespace autogeo
