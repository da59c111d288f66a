#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "autogeo/metric.hpp"
#include "autogeo/rng.hpp"

using namespace autogeo;

namespace {
const Metric kEuclid = Metric::euclidean();
const Metric kPseudo = Metric::pseudo();

Mat3 metric_matrix(const Metric& g) {
    Mat3 m;
    for (int i = 0; i < 3; ++i) m(i, i) = g.diag[static_cast<std::size_t>(i)];
    return m;
}
}  // namespace

TEST_CASE("dot: basis projection and signature") {
    CHECK(dot(Vec3{1, 2, 3}, Vec3{1, 0, 0}, kEuclid) == doctest::Approx(1.0));
    CHECK(dot(Vec3{0, 1, 0}, Vec3{0, 1, 0}, kPseudo) == doctest::Approx(-1.0));
    CHECK(dot(Vec3{2, 1, 1}, Vec3{2, 1, 1}, kPseudo) == doctest::Approx(2.0));  // 4 - 1 - 1
}

TEST_CASE("norm: magnitude and causal class") {
    const Norm a = norm(Vec3{3, 4, 0}, kEuclid);
    CHECK(a.magnitude == doctest::Approx(5.0));
    CHECK(a.cls == CausalClass::TimelikePositive);

    const Norm b = norm(Vec3{2, 1, 1}, kPseudo);
    CHECK(b.magnitude == doctest::Approx(std::sqrt(2.0)));
    CHECK(b.cls == CausalClass::TimelikePositive);

    const Norm c = norm(Vec3{0, 1, 0}, kPseudo);
    CHECK(c.magnitude == doctest::Approx(1.0));
    CHECK(c.cls == CausalClass::SpacelikeNegative);

    CHECK(norm(Vec3{1, 1, 0}, kPseudo).cls == CausalClass::Null);
    CHECK(norm(Vec3{0, 0, 0}, kEuclid).cls == CausalClass::Null);
}

TEST_CASE("cross: cyclic basis and index raising") {
    const Vec3 e0{1, 0, 0}, e1{0, 1, 0}, e2{0, 0, 1};
    const Vec3 a = cross(e1, e2, kEuclid);
    CHECK(a[0] == doctest::Approx(1.0));
    CHECK(a[1] == doctest::Approx(0.0));
    CHECK(a[2] == doctest::Approx(0.0));

    // Index 2: the raised third component flips.
    const Vec3 b = cross(e0, e1, kPseudo);
    CHECK(b[0] == doctest::Approx(0.0));
    CHECK(b[1] == doctest::Approx(0.0));
    CHECK(b[2] == doctest::Approx(-1.0));

    const Vec3 v{0.3, -0.7, 0.2};
    const Vec3 c = cross(v, v, kPseudo);
    CHECK(linf(c) == doctest::Approx(0.0));
}

TEST_CASE("triple: determinant of components") {
    CHECK(triple(Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}) == doctest::Approx(1.0));
    CHECK(triple(Vec3{0, 0, 1}, Vec3{1, 1, 0}, Vec3{1, 0, 0}) == doctest::Approx(-1.0));
    const Vec3 a{0.4, -0.3, 0.9}, c{1.0, 2.0, 3.0};
    CHECK(triple(a, a, c) == doctest::Approx(0.0));
}

TEST_CASE("dual2 examples and double dual") {
    const Vec2 a = dual2(Vec2{1, 0});
    CHECK(a[0] == doctest::Approx(0.0));
    CHECK(a[1] == doctest::Approx(1.0));
    const Vec2 b = dual2(Vec2{0, 1});
    CHECK(b[0] == doctest::Approx(-1.0));
    CHECK(b[1] == doctest::Approx(0.0));
    const Vec2 c = dual2(dual2(Vec2{3, -2}));
    CHECK(c[0] == doctest::Approx(-3.0));
    CHECK(c[1] == doctest::Approx(2.0));
}

TEST_CASE("random_pseudo_rotation: isometry, orientation, determinism") {
    for (const Metric& g : {kEuclid, kPseudo}) {
        const Mat3 R = random_pseudo_rotation(0, g);
        const Mat3 G = metric_matrix(g);
        const Mat3 defect = R.transposed() * G * R + G * (-1.0);
        CHECK(linf(defect) <= 1e-12);
        CHECK(R.det() == doctest::Approx(1.0).epsilon(1e-12));
    }
    const Mat3 a = random_pseudo_rotation(0, kEuclid);
    const Mat3 b = random_pseudo_rotation(0, kEuclid);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(a(i, j) == b(i, j));
}

TEST_CASE("property: cross is metric-orthogonal to its factors") {
    for (const Metric& g : {kEuclid, kPseudo}) {
        SplitMix64 rng(17);
        for (int i = 0; i < 200; ++i) {
            const Vec3 v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            const Vec3 w{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            const Vec3 c = cross(v, w, g);
            const double scale = norm2(v) * norm2(w) * std::max(1.0, norm2(c));
            CHECK(std::abs(dot(c, v, g)) <= 1e-12 * std::max(1.0, scale));
            CHECK(std::abs(dot(c, w, g)) <= 1e-12 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("property: cross equivariance under proper rotations") {
    for (const Metric& g : {kEuclid, kPseudo}) {
        SplitMix64 rng(99);
        for (int i = 0; i < 100; ++i) {
            const Mat3 R = random_pseudo_rotation(1000 + static_cast<std::uint64_t>(i), g);
            const Vec3 v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            const Vec3 w{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            const Vec3 lhs = R * cross(v, w, g);
            const Vec3 rhs = cross(R * v, R * w, g);
            CHECK(linf(lhs - rhs) <= 1e-10);
        }
    }
}

TEST_CASE("property: triple transforms with det R") {
    SplitMix64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const Mat3 R = random_pseudo_rotation(7000 + static_cast<std::uint64_t>(i), kPseudo);
        const Vec3 a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const Vec3 b{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const Vec3 c{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        CHECK(triple(R * a, R * b, R * c) ==
              doctest::Approx(R.det() * triple(a, b, c)).epsilon(1e-9));
    }
}

TEST_CASE("expm of zero is identity") {
    const Mat3 r = expm(Mat3{});
    CHECK(linf(r + Mat3::identity() * (-1.0)) == doctest::Approx(0.0));
}
