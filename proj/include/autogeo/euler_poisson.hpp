#pragma once

#include <array>
#include <functional>

#include "autogeo/metric.hpp"

namespace autogeo {

// Model constants of the third-order equation: torsion-like coupling m and
// the connection parameter A, together with the ambient metric.
struct ModelParams {
    double m = 0.0;
    double A = 0.0;
    Metric metric = Metric::euclidean();
};

// Second- and third-order velocity data at a point. Position is omitted: the
// whole system is autonomous. Valid points have timelike-positive u.
struct Jet2Point {
    Vec3 u;
    Vec3 udot;
    Vec3 uddot;
};

// (v, v', v'') on the contact chart, Euclidean 2D products throughout.
struct ContactJet {
    Vec2 v;
    Vec2 vprime;
    Vec2 vsecond;
};

// Coefficients of the affine normal form E = A.v'' + (v'.d_v)A.v' + B.v' + c.
struct AffineCoeffs {
    Mat2 Amat;
    Mat2 Bmat;
    Vec2 cvec;
};

// Optional total-derivative additions to the Lagrangian family:
// udot . grad_phi(u) + a . u, with u . grad_phi(u) = 0 required of phi.
struct GaugeTerm {
    std::function<double(const Vec3&)> phi;       // may be empty
    std::function<Vec3(const Vec3&)> grad_phi;    // analytic gradient; FD fallback if empty
    Vec3 avec;                                    // constant row vector (covariant)

    static GaugeTerm zero() { return GaugeTerm{}; }
};

// Residual of the constraint u . grad_phi(u) at a sample point (0 for valid terms).
double gauge_constraint_residual(const GaugeTerm& gauge, const Vec3& u);

// Covariant components E_rho of the third-order expression.
struct EPVector {
    Vec3 comps;

    double operator[](int i) const { return comps[i]; }
};

// The third-order expression at a jet:
//   E = lower[ (u''xu)/|u|^3 - 3(u'xu)(u'.u)/|u|^5 + m(u'(u.u) - u(u'.u))/|u|^3 ].
// All products are metric-aware; E contracted with u vanishes identically.
// Throws NullSpeedError unless u is timelike-positive.
EPVector ep_expression(const Jet2Point& p, const ModelParams& params);

// Planar contact form of the same expression:
//   E = -*v''/(1+v.v)^{3/2} + 3 *v' (v'.v)/(1+v.v)^{5/2}
//       + m[(1+v.v)v' - (v'.v)v]/(1+v.v)^{3/2}.
// Throws ChartViolationError when 1 + v.v <= 0.
Vec2 ep_reduced(const ContactJet& c, double m);

// Member rho of the Lagrangian family,
//   L_(rho) = u^rho [u, u', e_(rho)] / (|u| |u x e_(rho)|^2) - m|u|
//             + u'.grad_phi(u) + a.u .
// Throws AxisSingularError when u is parallel to the chosen frame axis
// (|u x e_(rho)|^2 <= 1e-8).
double lagrangian(int rho, const Vec3& u, const Vec3& udot, const ModelParams& params,
                  const GaugeTerm& gauge = GaugeTerm::zero());

inline constexpr double kAxisSingularEps = 1e-8;

// Cubic curve zeta -> x(zeta); all derivatives are exact.
struct CubicCurve {
    Vec3 c0, c1, c2, c3;

    Vec3 pos(double s) const { return c0 + c1 * s + c2 * (s * s) + c3 * (s * s * s); }
    Vec3 d1(double s) const { return c1 + c2 * (2.0 * s) + c3 * (3.0 * s * s); }
    Vec3 d2(double s) const { return c2 * 2.0 + c3 * (6.0 * s); }
    Vec3 d3(double) const { return c3 * 6.0; }
};

using LagrangianFn = std::function<double(const Vec3& u, const Vec3& udot)>;

// Independent variational oracle: evaluates
//   E_rho(L) = -D(dL/du^rho) + D^2(dL/du'^rho)
// along the cubic curve at zeta. Partials of L are 4th-order central
// differences with substep h; the total derivatives are 4th-order stencils in
// zeta, Richardson-extrapolated over the outer step. h must lie in
// [1e-6, 1e-2]; 1e-3 balances cancellation noise against truncation.
EPVector ep_operator_oracle(const LagrangianFn& L, const CubicCurve& curve, double zeta,
                            double h = 1e-3);

// Coefficient fields on the contact chart, as functions of v alone
// (the system is autonomous, so nothing depends on t or x).
struct CoeffField {
    std::function<Mat2(const Vec2&)> A;
    std::function<Mat2(const Vec2&)> B;
    std::function<Vec2(const Vec2&)> c;
};

// The closed-form field extracted from the planar expression:
//   A_ab = e_ab/(1+v.v)^{3/2},  B_ab = m[(1+v.v)d_ab - v_a v_b]/(1+v.v)^{3/2},  c = 0.
CoeffField standard_coeff_field(double m);

// Closed-form coefficients at v, self-checked against ep_reduced at three
// pseudo-random (v', v'') pairs to 1e-10.
AffineCoeffs extract_affine_coeffs(const Vec2& v, double m);

// Max-abs residual of each of the six variationality conditions on the given
// coefficient field at v. Autonomous reduction: every t- or x-derivative term
// vanishes, so blocks 4-6 exercise only the c field. v-derivatives are central
// differences with step h.
std::array<double, 6> helmholtz_residuals(const CoeffField& field, const Vec2& v, double h);

// Same, on the standard field for coupling m.
std::array<double, 6> helmholtz_residuals(const Vec2& v, double m, double h);

// Finite-group equivariance defect
//   | E(Ru, Ru', Ru'') - R^{-T} E(u, u', u'') |_inf
// for a proper (pseudo-)rotation R. Throws NotAnIsometryError when
// |R^T G R - G| > 1e-10.
double equivariance_residual(const Jet2Point& p, const ModelParams& params, const Mat3& R);

}  // namespace autogeo
