#include "autogeo/metric.hpp"

#include <algorithm>
#include <cmath>

#include "autogeo/rng.hpp"

namespace autogeo {

Metric Metric::from_name(const std::string& name) {
    if (name == "euclid") return euclidean();
    if (name == "pseudo") return pseudo();
    throw DomainError("metric: unknown name '" + name + "' (expected euclid or pseudo)");
}

Mat3 Mat3::identity() {
    Mat3 r;
    r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
    return r;
}

Vec3 Mat3::operator*(const Vec3& v) const {
    Vec3 r;
    for (int i = 0; i < 3; ++i)
        r[i] = m[static_cast<std::size_t>(i)][0] * v[0] + m[static_cast<std::size_t>(i)][1] * v[1] +
               m[static_cast<std::size_t>(i)][2] * v[2];
    return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
            r(i, j) = s;
        }
    return r;
}

Mat3 Mat3::operator+(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = (*this)(i, j) + o(i, j);
    return r;
}

Mat3 Mat3::operator*(double s) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = (*this)(i, j) * s;
    return r;
}

Mat3 Mat3::transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
}

double Mat3::det() const {
    return (*this)(0, 0) * ((*this)(1, 1) * (*this)(2, 2) - (*this)(1, 2) * (*this)(2, 1)) -
           (*this)(0, 1) * ((*this)(1, 0) * (*this)(2, 2) - (*this)(1, 2) * (*this)(2, 0)) +
           (*this)(0, 2) * ((*this)(1, 0) * (*this)(2, 1) - (*this)(1, 1) * (*this)(2, 0));
}

Mat3 Mat3::inverse() const {
    const double d = det();
    Mat3 r;
    r(0, 0) = ((*this)(1, 1) * (*this)(2, 2) - (*this)(1, 2) * (*this)(2, 1)) / d;
    r(0, 1) = ((*this)(0, 2) * (*this)(2, 1) - (*this)(0, 1) * (*this)(2, 2)) / d;
    r(0, 2) = ((*this)(0, 1) * (*this)(1, 2) - (*this)(0, 2) * (*this)(1, 1)) / d;
    r(1, 0) = ((*this)(1, 2) * (*this)(2, 0) - (*this)(1, 0) * (*this)(2, 2)) / d;
    r(1, 1) = ((*this)(0, 0) * (*this)(2, 2) - (*this)(0, 2) * (*this)(2, 0)) / d;
    r(1, 2) = ((*this)(0, 2) * (*this)(1, 0) - (*this)(0, 0) * (*this)(1, 2)) / d;
    r(2, 0) = ((*this)(1, 0) * (*this)(2, 1) - (*this)(1, 1) * (*this)(2, 0)) / d;
    r(2, 1) = ((*this)(0, 1) * (*this)(2, 0) - (*this)(0, 0) * (*this)(2, 1)) / d;
    r(2, 2) = ((*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0)) / d;
    return r;
}

double dot(const Vec3& v, const Vec3& w, const Metric& g) {
    return g.diag[0] * v[0] * w[0] + g.diag[1] * v[1] * w[1] + g.diag[2] * v[2] * w[2];
}

Norm norm(const Vec3& v, const Metric& g) {
    const double q = dot(v, v, g);
    double scale = 0.0;
    for (int i = 0; i < 3; ++i) scale = std::max(scale, v[i] * v[i]);
    Norm n;
    n.magnitude = std::sqrt(std::abs(q));
    if (std::abs(q) <= kNullEps * scale)
        n.cls = CausalClass::Null;
    else
        n.cls = q > 0.0 ? CausalClass::TimelikePositive : CausalClass::SpacelikeNegative;
    return n;
}

Vec3 cov_cross(const Vec3& v, const Vec3& w) {
    return {v[1] * w[2] - v[2] * w[1], v[2] * w[0] - v[0] * w[2], v[0] * w[1] - v[1] * w[0]};
}

Vec3 cross(const Vec3& v, const Vec3& w, const Metric& g) {
    Vec3 c = cov_cross(v, w);
    return {g.diag[0] * c[0], g.diag[1] * c[1], g.diag[2] * c[2]};
}

Vec3 lower(const Vec3& v, const Metric& g) {
    return {g.diag[0] * v[0], g.diag[1] * v[1], g.diag[2] * v[2]};
}

double contract(const Vec3& cov, const Vec3& vec) {
    return cov[0] * vec[0] + cov[1] * vec[1] + cov[2] * vec[2];
}

double triple(const Vec3& a, const Vec3& b, const Vec3& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Vec2 dual2(const Vec2& w) { return {-w[1], w[0]}; }

double linf(const Vec3& v) {
    return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

double linf(const Mat3& m) {
    double r = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(m(i, j)));
    return r;
}

double norm2(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Mat3 expm(const Mat3& x) {
    // Scale so the argument is comfortably inside the series' sweet spot.
    int squarings = 0;
    double a = linf(x);
    while (a > 0.5) {
        a *= 0.5;
        ++squarings;
    }
    Mat3 xs = x * std::pow(0.5, squarings);

    Mat3 result = Mat3::identity();
    Mat3 term = Mat3::identity();
    for (int k = 1; k <= 40; ++k) {
        term = term * xs * (1.0 / k);
        result = result + term;
        if (linf(term) < 1e-14) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

Mat3 random_pseudo_rotation(std::uint64_t seed, const Metric& g) {
    SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + 0xda3e39cb94b95bdbULL);
    // Generator X with X^T G + G X = 0: X = G^{-1} S for skew S.
    const double s01 = rng.uniform(-1.0, 1.0);
    const double s02 = rng.uniform(-1.0, 1.0);
    const double s12 = rng.uniform(-1.0, 1.0);
    Mat3 skew;
    skew(0, 1) = s01; skew(1, 0) = -s01;
    skew(0, 2) = s02; skew(2, 0) = -s02;
    skew(1, 2) = s12; skew(2, 1) = -s12;
    Mat3 x;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) x(i, j) = skew(i, j) / g.diag[static_cast<std::size_t>(i)];
    return expm(x);
}

}  // namespace autogeo
