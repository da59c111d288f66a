#pragma once

#include <utility>

#include "autogeo/euler_poisson.hpp"
#include "autogeo/metric.hpp"

namespace autogeo {

// Completion function of the solved third-order system:
//   Psi = (3/2)(u'.u')/(u.u) + 3A |(u' x u).(u' x u)|^{2/3} / (u.u).
// The u' square is the signed quadratic form; the cross term takes the
// absolute square (the 4/3 power needs a sign-free argument). Requires
// timelike-positive u; with A != 0 also u' x u away from null.
double psi(const Vec3& u, const Vec3& udot, double A, const Metric& g);

// Right-hand side of the solved system,
//   F = 3(u'.u)u'/(u.u) - 3[ (u'.u)^2/(u.u)^2 - (u'.u')/(2 u.u)
//                            - A |z.z|^{2/3}/(u.u) ] u - m u x u',
// with z = u x u'. Satisfies F.u = (u.u) Psi and embeds into the third-order
// expression: ep_expression(u, u', F) = 0.
Vec3 rhs_f(const Vec3& u, const Vec3& udot, const ModelParams& params);

// First-prolongation coefficient blocks of F in the flat autonomous frame,
// where the structure forms vanish and every coefficient is a plain partial:
//   F2 = dF/du', F1 = dF/du, F22 = d2F/du'du', F21 = d2F/du'du, F0 = F20 = 0.
struct FDeriv {
    Vec3 F;
    Mat3 F2;
    Mat3 F1;
    Mat3 F0;   // identically zero
    Ten3 F22;  // F22(rho, beta, gamma) = d2 F^rho / du'^beta du'^gamma
    Ten3 F21;  // F21(rho, beta, gamma) = d2 F^rho / du'^beta du^gamma
    Ten3 F20;  // identically zero
};

// Closed-form analytic partials. With A != 0 requires
// |u' x u| >= 0.1 |u||u'| (the 4/3 power is not C^2 at z = 0).
FDeriv f_derivatives(const Vec3& u, const Vec3& udot, const ModelParams& params);

struct ReducibilityResult {
    double mu = 0.0;
    double lambda = 0.0;
    double residual_mu = 0.0;      // metric norm of the part orthogonal to u
    double residual_lambda = 0.0;
    bool reducible = false;
};

// Least-squares multipliers of the two descent conditions
//   3F - F1.u - 2F2.u' = 3 mu u,   3u' - F2.u = 3 lambda u,
// with the residuals of the u-orthogonal components. Declared reducible when
// both residuals are <= 1e-8 x the scale of the left-hand sides.
ReducibilityResult reducibility_multipliers(const FDeriv& fd, const Vec3& u, const Vec3& udot,
                                            const Metric& g);

// Psi value with its analytic gradients, for the multiplier formulas.
struct PsiDerivs {
    double value = 0.0;
    Vec3 grad_u;     // covariant
    Vec3 grad_udot;  // covariant
};

// Multipliers from an arbitrary completion function:
//   mu = (2 Psi - 2 u'.dPsi/du' - u.dPsi/du)/3,
//   lambda = (u.u')/(u.u) - (u.dPsi/du')/3.
std::pair<double, double> mu_lambda_from_psi(const PsiDerivs& pd, const Vec3& u,
                                             const Vec3& udot, const Metric& g);

// Same, with the analytic partials of the model Psi; identically (0, 0).
std::pair<double, double> mu_lambda_analytic(const Vec3& u, const Vec3& udot, double A,
                                             const Metric& g);

// Second-order connection data at a point: Gamma1 = Gamma^rho_beta,
// Gamma2 = Gamma^rho_{beta gamma} (symmetric in beta, gamma).
struct ConnectionCoeffs {
    Mat3 Gamma1;
    Ten3 Gamma2;
};

struct Multipliers {
    double mu = 0.0;
    double lambda = 0.0;
    double lambda1 = 0.0;  // coefficient of u in the autoparallel equation
    double lambda2 = 0.0;  // coefficient of u'; always 2*lambda
};

// Connection attached to the solved system:
//   Gamma^rho_beta = F2/3,
//   Pi^rho_{bg}    = (F22.F1 + F21.F2)/9 + (2/27) F22.F2.F2,
//   Gamma^rho_{bg} = sym(Pi).
// (The F20-type term vanishes in the flat autonomous frame.)
ConnectionCoeffs attached_connection(const Vec3& u, const Vec3& udot, const ModelParams& params);

// Autoparallel transport right-hand side:
//   U''^rho = Gamma^rho_mu U'^mu + Gamma^rho_{mu nu} U^mu U^nu
//             + lambda2 U'^rho + lambda1 U^rho.
Vec3 autoparallel_rhs(const ConnectionCoeffs& cc, const Multipliers& mult, const Vec3& u,
                      const Vec3& udot);

// lambda1 assembled from the coefficients (d0, d1, d2) of the differential of
// lambda, reading the displayed term string as a plain sum:
//   lambda1 = d0.U + d1.U' + d2.U'' + mu(1 - d2.U)
//             - lambda(d1.U + (2/3) d2.(F2 U)) - 2 lambda^2.
double lambda1_from_differential(const Vec3& d0, const Vec3& d1, const Vec3& d2, double mu,
                                 double lambda, const Mat3& F2, const Vec3& u, const Vec3& udot,
                                 const Vec3& uddot);

}  // namespace autogeo
