#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "autogeo/euler_poisson.hpp"
#include "autogeo/rng.hpp"

using namespace autogeo;

namespace {

const Metric kEuclid = Metric::euclidean();
const Metric kPseudo = Metric::pseudo();

Vec3 sample_speed(SplitMix64& rng, const Metric& g) {
    while (true) {
        const Vec3 u{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const Norm n = norm(u, g);
        if (n.cls == CausalClass::TimelikePositive && n.magnitude >= 0.3) return u;
    }
}

GaugeTerm test_gauge(const Vec3& a) {
    GaugeTerm gauge;
    gauge.phi = [](const Vec3& u) {
        return u[1] * u[2] / (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    };
    gauge.grad_phi = [](const Vec3& u) {
        const double s = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        const double s2 = s * s;
        return Vec3{-2.0 * u[0] * u[1] * u[2] / s2, (u[2] * s - 2.0 * u[1] * u[1] * u[2]) / s2,
                    (u[1] * s - 2.0 * u[1] * u[2] * u[2]) / s2};
    };
    gauge.avec = a;
    return gauge;
}

}  // namespace

TEST_CASE("ep_expression: straight line, circle jet, hand value") {
    const ModelParams any_m{0.7, 0.0, kEuclid};
    const EPVector a = ep_expression(Jet2Point{{1, 0, 0}, {}, {}}, any_m);
    CHECK(linf(a.comps) == doctest::Approx(0.0));

    const ModelParams m0{0.0, 0.0, kEuclid};
    const EPVector b = ep_expression(Jet2Point{{0, 1, 0}, {-1, 0, 0}, {0, -1, 0}}, m0);
    CHECK(linf(b.comps) <= 1e-15);

    const ModelParams m1{1.0, 0.0, kEuclid};
    const EPVector c = ep_expression(Jet2Point{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, m1);
    CHECK(c[0] == doctest::Approx(0.0));
    CHECK(c[1] == doctest::Approx(2.0));
    CHECK(c[2] == doctest::Approx(0.0));
}

TEST_CASE("ep_expression: null speed rejected") {
    const ModelParams params{0.0, 0.0, kPseudo};
    CHECK_THROWS_AS(ep_expression(Jet2Point{{1, 1, 0}, {}, {}}, params), NullSpeedError);
    const ModelParams eu{0.0, 0.0, kEuclid};
    CHECK_THROWS_AS(ep_expression(Jet2Point{{0, 0, 0}, {}, {}}, eu), NullSpeedError);
}

TEST_CASE("property: Weierstrass orthogonality") {
    for (const Metric& g : {kEuclid, kPseudo}) {
        for (int i = 0; i < 1000; ++i) {
            SplitMix64 rng = sample_stream(3, static_cast<std::uint64_t>(i));
            const ModelParams params{rng.uniform(-2, 2), 0.0, g};
            const Vec3 u = sample_speed(rng, g);
            const Jet2Point jet{u,
                                {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)},
                                {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}};
            const EPVector e = ep_expression(jet, params);
            const double scale = std::max(norm2(e.comps) * norm2(u), 1e-300);
            CHECK(std::abs(contract(e.comps, u)) / scale <= 1e-12);
        }
    }
}

TEST_CASE("ep_reduced: hand values and chart guard") {
    const Vec2 a = ep_reduced(ContactJet{{0, 0}, {1, 0}, {0, 1}}, 0.0);
    CHECK(a[0] == doctest::Approx(1.0));
    CHECK(a[1] == doctest::Approx(0.0));

    const Vec2 b = ep_reduced(ContactJet{{0, 0}, {0, 0}, {0, 0}}, 1.5);
    CHECK(linf(Vec3{b[0], b[1], 0}) == doctest::Approx(0.0));

    const Vec2 c = ep_reduced(ContactJet{{0, 0}, {1, 0}, {0, 0}}, 2.0);
    CHECK(c[0] == doctest::Approx(2.0));
    CHECK(c[1] == doctest::Approx(0.0));
}

TEST_CASE("lagrangian: hand values and axis singularity") {
    const ModelParams m0{0.0, 0.0, kEuclid};
    // The base term at u=(1,1,0), u'=(0,0,1): triple [u,u',e0] = +1, |u| = sqrt 2.
    CHECK(lagrangian(0, Vec3{1, 1, 0}, Vec3{0, 0, 1}, m0) ==
          doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(lagrangian(2, Vec3{1, 0, 0}, Vec3{0, 1, 0}, m0) == doctest::Approx(0.0));

    const ModelParams m1{1.0, 0.0, kEuclid};
    CHECK(lagrangian(0, Vec3{1, 1, 0}, Vec3{0, 0, 0}, m1) == doctest::Approx(-std::sqrt(2.0)));

    CHECK_THROWS_AS(lagrangian(0, Vec3{1, 0, 0}, Vec3{0, 1, 0}, m0), AxisSingularError);
}

TEST_CASE("gauge constraint residual vanishes for the test gauge") {
    const GaugeTerm gauge = test_gauge(Vec3{0.2, -0.4, 0.9});
    SplitMix64 rng(12);
    for (int i = 0; i < 20; ++i) {
        const Vec3 u = sample_speed(rng, kEuclid);
        CHECK(std::abs(gauge_constraint_residual(gauge, u)) <= 1e-6);
    }
}

TEST_CASE("oracle: straight lines are extremals at m=0") {
    const ModelParams m0{0.0, 0.0, kEuclid};
    const CubicCurve line{{0.1, -0.2, 0.3}, {0.8, 0.5, 0.4}, {}, {}};
    const LagrangianFn L = [&](const Vec3& u, const Vec3& ud) {
        return lagrangian(0, u, ud, m0);
    };
    const EPVector e = ep_operator_oracle(L, line, 0.05);
    CHECK(linf(e.comps) <= 1e-6);
}

TEST_CASE("oracle: a pure total derivative yields zero") {
    const Vec3 a{0.7, -0.3, 0.4};
    const LagrangianFn L = [&](const Vec3& u, const Vec3&) { return contract(a, u); };
    const CubicCurve curve{{0.0, 0.1, 0.0}, {0.9, 0.4, 0.3}, {0.1, -0.2, 0.2}, {0.05, 0.1, -0.1}};
    const EPVector e = ep_operator_oracle(L, curve, 0.1);
    CHECK(linf(e.comps) <= 1e-6);
}

TEST_CASE("oracle: reproduces the closed-form expression on a cubic") {
    const ModelParams params{1.0, 0.0, kEuclid};
    // Curve with u=(1,2,0), u'=(0,1,1), u''=(1,0,0) at zeta = 0.
    const CubicCurve curve{{0.0, 0.0, 0.0}, {1.0, 2.0, 0.0}, {0.0, 0.5, 0.5},
                           {1.0 / 6.0, 0.0, 0.0}};
    const LagrangianFn L = [&](const Vec3& u, const Vec3& ud) {
        return lagrangian(0, u, ud, params);
    };
    const EPVector from_oracle = ep_operator_oracle(L, curve, 0.0);
    const EPVector direct =
        ep_expression(Jet2Point{{1, 2, 0}, {0, 1, 1}, {1, 0, 0}}, params);
    CHECK(linf(from_oracle.comps - direct.comps) <= 5e-5);
}

TEST_CASE("oracle: step range enforced") {
    const LagrangianFn L = [](const Vec3& u, const Vec3&) { return u[0]; };
    const CubicCurve curve{{}, {1, 0, 0}, {}, {}};
    CHECK_THROWS_AS(ep_operator_oracle(L, curve, 0.0, 1e-7), StepOutOfRangeError);
    CHECK_THROWS_AS(ep_operator_oracle(L, curve, 0.0, 0.5), StepOutOfRangeError);
}

TEST_CASE("property: oracle equivalence and gauge independence") {
    SplitMix64 rng(21);
    int done = 0;
    while (done < 30) {
        const CubicCurve curve{{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)},
                               {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)},
                               {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)},
                               {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}};
        const double zeta = rng.uniform(-0.2, 0.2);
        const int rho = done % 3;
        const Vec3 u = curve.d1(zeta);
        Vec3 e;
        e[rho] = 1.0;
        if (norm(u, kEuclid).magnitude < 0.3) continue;
        if (std::abs(dot(cross(u, e, kEuclid), cross(u, e, kEuclid), kEuclid)) < 0.1) continue;
        const ModelParams params{rng.uniform(-2, 2), 0.0, kEuclid};
        const LagrangianFn L = [&](const Vec3& uu, const Vec3& ud) {
            return lagrangian(rho, uu, ud, params);
        };
        const EPVector plain = ep_operator_oracle(L, curve, zeta);
        const EPVector direct =
            ep_expression(Jet2Point{curve.d1(zeta), curve.d2(zeta), curve.d3(zeta)}, params);
        CHECK(linf(plain.comps - direct.comps) <= 5e-5);

        const GaugeTerm gauge =
            test_gauge(Vec3{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
        const LagrangianFn Lg = [&](const Vec3& uu, const Vec3& ud) {
            return lagrangian(rho, uu, ud, params, gauge);
        };
        const EPVector gauged = ep_operator_oracle(Lg, curve, zeta);
        CHECK(linf(gauged.comps - plain.comps) <= 5e-5);
        ++done;
    }
}

TEST_CASE("extract_affine_coeffs: closed form and skewness") {
    const AffineCoeffs at0 = extract_affine_coeffs(Vec2{0, 0}, 0.7);
    CHECK(at0.Amat(0, 0) == doctest::Approx(0.0));
    CHECK(at0.Amat(0, 1) == doctest::Approx(1.0));
    CHECK(at0.Amat(1, 0) == doctest::Approx(-1.0));
    CHECK(at0.cvec[0] == doctest::Approx(0.0));
    CHECK(at0.cvec[1] == doctest::Approx(0.0));

    const AffineCoeffs at1 = extract_affine_coeffs(Vec2{1, 0}, 0.0);
    CHECK(at1.Amat(0, 1) == doctest::Approx(std::pow(2.0, -1.5)));
    CHECK(at1.Amat(1, 0) == doctest::Approx(-std::pow(2.0, -1.5)));

    SplitMix64 rng(9);
    for (int i = 0; i < 50; ++i) {
        const Vec2 v{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const AffineCoeffs c = extract_affine_coeffs(v, rng.uniform(-2, 2));
        CHECK(std::abs(c.Amat(0, 1) + c.Amat(1, 0)) <= 1e-12);
        CHECK(std::abs(c.Amat(0, 0)) <= 1e-12);
        CHECK(std::abs(c.Amat(1, 1)) <= 1e-12);
    }
}

TEST_CASE("helmholtz: clean coefficients pass, tampered B is caught") {
    const auto blocks = helmholtz_residuals(Vec2{0.3, -0.2}, 1.0, 1e-4);
    for (double b : blocks) CHECK(b <= 1e-6);

    const auto sym = helmholtz_residuals(Vec2{0, 0}, 0.0, 1e-4);
    for (double b : sym) CHECK(b <= 1e-8);

    CoeffField tampered = standard_coeff_field(1.0);
    const auto base_b = tampered.B;
    tampered.B = [base_b](const Vec2& v) {
        Mat2 b = base_b(v);
        b(0, 1) += 0.1;
        return b;
    };
    const auto bad = helmholtz_residuals(tampered, Vec2{0.3, -0.2}, 1e-4);
    CHECK(bad[1] >= 0.05);
}

TEST_CASE("equivariance_residual: identity, quarter turn, random rotation") {
    const ModelParams m1{1.0, 0.0, kEuclid};
    const Jet2Point jet{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(equivariance_residual(jet, m1, Mat3::identity()) == doctest::Approx(0.0));

    Mat3 quarter;  // 90 degrees about axis 2
    quarter(0, 1) = -1.0;
    quarter(1, 0) = 1.0;
    quarter(2, 2) = 1.0;
    CHECK(equivariance_residual(jet, m1, quarter) <= 1e-12);

    SplitMix64 rng(77);
    const ModelParams mp{0.5, 0.0, kPseudo};
    const Vec3 u = sample_speed(rng, kPseudo);
    const Jet2Point pjet{u,
                         {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)},
                         {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}};
    const Mat3 R = random_pseudo_rotation(7, kPseudo);
    CHECK(equivariance_residual(pjet, mp, R) <= 1e-10);
}

TEST_CASE("equivariance_residual: non-isometry rejected") {
    const ModelParams m1{1.0, 0.0, kEuclid};
    const Jet2Point jet{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    Mat3 stretch = Mat3::identity() * 1.5;
    CHECK_THROWS_AS(equivariance_residual(jet, m1, stretch), NotAnIsometryError);
}
