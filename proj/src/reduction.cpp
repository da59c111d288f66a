#include "autogeo/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace autogeo {

namespace {

void require_chart(double u0, double uscale) {
    if (std::abs(u0) <= kChartEps * std::max(1.0, uscale))
        throw ChartViolationError("u0: chart violation (u^0 ~ 0)");
}

}  // namespace

ContactState project_state(const HomogeneousState& s) {
    require_chart(s.u[0], linf(s.u));
    const double u0 = s.u[0];
    const double u02 = u0 * u0;
    const double u03 = u02 * u0;
    ContactState out;
    out.t = s.x[0];
    out.xa = {s.x[1], s.x[2]};
    out.v = {s.u[1] / u0, s.u[2] / u0};
    out.vprime = {s.udot[1] / u02 - s.udot[0] * s.u[1] / u03,
                  s.udot[2] / u02 - s.udot[0] * s.u[2] / u03};
    return out;
}

ContactJet project_jet(const Vec3& u, const Vec3& udot, const Vec3& uddot) {
    require_chart(u[0], linf(u));
    const double u0 = u[0];
    const double u02 = u0 * u0;
    const double u03 = u02 * u0;
    const double u04 = u03 * u0;
    const double u05 = u04 * u0;
    ContactJet j;
    for (int a = 0; a < 2; ++a) {
        const int i = a + 1;
        j.v[a] = u[i] / u0;
        j.vprime[a] = udot[i] / u02 - udot[0] * u[i] / u03;
        j.vsecond[a] = uddot[i] / u03 - 3.0 * udot[i] * udot[0] / u04 - uddot[0] * u[i] / u04 +
                       3.0 * udot[0] * udot[0] * u[i] / u05;
    }
    return j;
}

Vec2 reduce_ep(const EPVector& E3, const Vec3& u) {
    require_chart(u[0], linf(u));
    const double u0 = u[0];
    const Vec2 E{E3[1] / u0, E3[2] / u0};
    const double expected0 = -(u[1] * E3[1] + u[2] * E3[2]) / u0;
    const double scale = std::max(1.0, linf(E3.comps));
    if (std::abs(E3[0] - expected0) > 1e-10 * scale)
        throw InconsistentDensityError("E: density constraint E.u = 0 violated");
    return E;
}

double lift_lagrangian(double L, double u0) {
    require_chart(u0, std::abs(u0));
    return u0 * L;
}

ContactCoeffs coeff_correspondence(const AffineCoeffs& c2, double u0) {
    require_chart(u0, std::abs(u0));
    ContactCoeffs out;
    out.Acal = c2.Amat * (1.0 / (u0 * u0));
    out.Bcal = c2.Bmat * (1.0 / u0);
    out.cvec = c2.cvec * u0;
    return out;
}

}  // namespace autogeo
