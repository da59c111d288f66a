#pragma once

#include "autogeo/euler_poisson.hpp"
#include "autogeo/metric.hpp"

namespace autogeo {

// Point of the second-order velocity space in homogeneous coordinates.
// The projection chart requires u^0 != 0.
struct HomogeneousState {
    Vec3 x;
    Vec3 u;
    Vec3 udot;
};

// Its image on R x T'E^2.
struct ContactState {
    double t = 0.0;
    Vec2 xa;
    Vec2 v;
    Vec2 vprime;
};

inline constexpr double kChartEps = 1e-9;

// The quotient map in coordinates:
//   t = x^0,  x^a,  v^a = u^a/u^0,  v'^a = u'^a/(u^0)^2 - u'^0 u^a/(u^0)^3.
// Invariant under (u, u') -> (s u, s^2 u') for s > 0 and under u' -> u' + eps u.
ContactState project_state(const HomogeneousState& s);

// Third-order extension of the projection: v'' obtained by differentiating the
// v' formula once more along the curve,
//   v''^a = u''^a/(u^0)^3 - 3 u'^a u'^0/(u^0)^4 - u''^0 u^a/(u^0)^4 + 3 (u'^0)^2 u^a/(u^0)^5.
ContactJet project_jet(const Vec3& u, const Vec3& udot, const Vec3& uddot);

// Drops the third-order expression onto the chart: E_a = E3_a / u^0 for
// a in {1,2}. The component E3_0 is redundant and must satisfy
// E3_0 = -(u^a/u^0) E3_a; a violation beyond 1e-10 x scale raises
// InconsistentDensityError.
Vec2 reduce_ep(const EPVector& E3, const Vec3& u);

// Homogeneous Lagrangian from a chart Lagrangian value: u^0 * L.
double lift_lagrangian(double L, double u0);

struct ContactCoeffs {
    Mat2 Acal;
    Mat2 Bcal;
    Vec2 cvec;
};

// Coefficient correspondence between the chart and homogeneous pictures:
//   Acal = (u^0)^{-2} A,  Bcal = (u^0)^{-1} B,  c = u^0 c.
ContactCoeffs coeff_correspondence(const AffineCoeffs& c2, double u0);

}  // namespace autogeo
