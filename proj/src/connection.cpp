#include "autogeo/connection.hpp"

#include <algorithm>
#include <cmath>

namespace autogeo {

namespace {

Vec3 basis(int i) {
    Vec3 e;
    e[i] = 1.0;
    return e;
}

struct Point {
    // Scalar invariants and frequently reused vectors at (u, u').
    double p, q, r;      // u.u, u'.u, u'.u' (signed)
    Vec3 ul, udl;        // lowered u, u'
    Vec3 z;              // u x u' (contravariant)
    double zz, w, sz;    // z.z, |z.z|, sign(z.z)
    double W, W1, W4;    // w^{2/3}, w^{-1/3}, w^{-4/3} (A-term only)
    Vec3 a;              // (z ^ u): covariant cross of z with u
    Vec3 b;              // (u' ^ z)
};

Point analyze(const Vec3& u, const Vec3& udot, const Metric& g, bool need_cross_powers) {
    Point pt;
    pt.p = dot(u, u, g);
    pt.q = dot(udot, u, g);
    pt.r = dot(udot, udot, g);
    pt.ul = lower(u, g);
    pt.udl = lower(udot, g);
    pt.z = cross(u, udot, g);
    pt.zz = dot(pt.z, pt.z, g);
    pt.w = std::abs(pt.zz);
    pt.sz = pt.zz > 0.0 ? 1.0 : (pt.zz < 0.0 ? -1.0 : 0.0);
    if (need_cross_powers) {
        pt.W = std::pow(pt.w, 2.0 / 3.0);
        pt.W1 = std::pow(pt.w, -1.0 / 3.0);
        pt.W4 = std::pow(pt.w, -4.0 / 3.0);
    } else {
        pt.W = pt.W1 = pt.W4 = 0.0;
    }
    pt.a = cov_cross(pt.z, u);
    pt.b = cov_cross(udot, pt.z);
    return pt;
}

void require_timelike(const Vec3& u, const Metric& g) {
    if (norm(u, g).cls != CausalClass::TimelikePositive)
        throw NullSpeedError("u: null speed (timelike-positive u required)");
}

void require_cross_regular(const Vec3& u, const Vec3& udot, double A, const Metric& g) {
    if (A == 0.0) return;
    const Vec3 z = cross(u, udot, g);
    const double scale = dot(u, u, g) * std::abs(dot(udot, udot, g));
    if (std::abs(dot(z, z, g)) <= kNullEps * std::max(1e-30, scale))
        throw CrossSingularError("u x u': null cross with active A-term");
}

}  // namespace

double psi(const Vec3& u, const Vec3& udot, double A, const Metric& g) {
    require_timelike(u, g);
    require_cross_regular(u, udot, A, g);
    const double p = dot(u, u, g);
    const double r = dot(udot, udot, g);
    double val = 1.5 * r / p;
    if (A != 0.0) {
        const Vec3 z = cross(u, udot, g);
        val += 3.0 * A * std::pow(std::abs(dot(z, z, g)), 2.0 / 3.0) / p;
    }
    return val;
}

Vec3 rhs_f(const Vec3& u, const Vec3& udot, const ModelParams& params) {
    const Metric& g = params.metric;
    require_timelike(u, g);
    require_cross_regular(u, udot, params.A, g);
    const double p = dot(u, u, g);
    const double q = dot(udot, u, g);
    const double r = dot(udot, udot, g);
    const Vec3 z = cross(u, udot, g);
    double K = q * q / (p * p) - r / (2.0 * p);
    if (params.A != 0.0) K -= params.A * std::pow(std::abs(dot(z, z, g)), 2.0 / 3.0) / p;
    return udot * (3.0 * q / p) - u * (3.0 * K) - z * params.m;
}

FDeriv f_derivatives(const Vec3& u, const Vec3& udot, const ModelParams& params) {
    const Metric& g = params.metric;
    const double A = params.A;
    const double m = params.m;
    require_timelike(u, g);
    if (A != 0.0) {
        const Norm nu = norm(u, g), nd = norm(udot, g), nz = norm(cross(u, udot, g), g);
        if (nz.magnitude < 0.1 * nu.magnitude * nd.magnitude)
            throw CrossSingularError("u x u': too close to the A-term singular locus");
    }

    const Point pt = analyze(u, udot, g, A != 0.0);
    const double p = pt.p, q = pt.q, r = pt.r;
    const double p2 = p * p, p3 = p2 * p;

    // alpha = 3q/p and K = q^2/p^2 - r/(2p) - A W/p, so that
    // F = alpha u' - 3K u - m z.
    const double alpha = 3.0 * q / p;
    double K = q * q / p2 - r / (2.0 * p);
    if (A != 0.0) K -= A * pt.W / p;

    // Covariant gradients of the scalars.
    Vec3 alpha_du = pt.ul * (3.0 / p);
    Vec3 alpha_u = pt.udl * (3.0 / p) - pt.ul * (6.0 * q / p2);
    Vec3 K_du = pt.ul * (2.0 * q / p2) - pt.udl * (1.0 / p);
    Vec3 K_u = pt.udl * (2.0 * q / p2) - pt.ul * (4.0 * q * q / p3) + pt.ul * (r / p2);
    if (A != 0.0) {
        K_du += pt.a * (-(4.0 * A / (3.0 * p)) * pt.sz * pt.W1);
        K_u += pt.b * (-(4.0 * A / (3.0 * p)) * pt.sz * pt.W1) + pt.ul * (2.0 * A * pt.W / p2);
    }

    // Derivatives of z and of the covariant crosses a = z^u, b = u'^z.
    Vec3 dz_du[3], dz_dud[3], da_du[3], da_dud[3];
    for (int gidx = 0; gidx < 3; ++gidx) {
        const Vec3 e = basis(gidx);
        dz_du[gidx] = cross(e, udot, g);
        dz_dud[gidx] = cross(u, e, g);
        da_du[gidx] = cov_cross(dz_du[gidx], u) + cov_cross(pt.z, e);
        da_dud[gidx] = cov_cross(dz_dud[gidx], u);
    }

    // Scalar Hessian blocks (covariant in both slots).
    Mat3 alpha_duu, K_dudu, K_duu;
    for (int be = 0; be < 3; ++be) {
        for (int ga = 0; ga < 3; ++ga) {
            const double gbg = (be == ga) ? g.diag[static_cast<std::size_t>(be)] : 0.0;
            alpha_duu(be, ga) = 3.0 * gbg / p - 6.0 * pt.ul[be] * pt.ul[ga] / p2;
            K_dudu(be, ga) = 2.0 * pt.ul[be] * pt.ul[ga] / p2 - gbg / p;
            K_duu(be, ga) = 2.0 * (pt.udl[ga] * pt.ul[be] + pt.udl[be] * pt.ul[ga]) / p2 +
                            2.0 * q * gbg / p2 - 8.0 * q * pt.ul[be] * pt.ul[ga] / p3;
            if (A != 0.0) {
                const double W_dudu = -(8.0 / 9.0) * pt.W4 * pt.a[be] * pt.a[ga] +
                                      (4.0 / 3.0) * pt.sz * pt.W1 * da_dud[ga][be];
                K_dudu(be, ga) -= A * W_dudu / p;
                // d/du^ga of  -(4A sz /(3p)) W1 a_be.
                const double t = -(4.0 * A * pt.sz / 3.0) *
                                 (-(2.0 * pt.ul[ga] / p2) * pt.W1 * pt.a[be] -
                                  (2.0 * pt.sz / (3.0 * p)) * pt.W4 * pt.b[ga] * pt.a[be] +
                                  (pt.W1 / p) * da_du[ga][be]);
                K_duu(be, ga) += t;
            }
        }
    }

    FDeriv fd;
    fd.F = udot * alpha - u * (3.0 * K) - pt.z * m;
    for (int rho = 0; rho < 3; ++rho) {
        for (int be = 0; be < 3; ++be) {
            const double drb = (rho == be) ? 1.0 : 0.0;
            fd.F2(rho, be) = alpha_du[be] * udot[rho] + alpha * drb - 3.0 * K_du[be] * u[rho] -
                             m * dz_dud[be][rho];
            fd.F1(rho, be) = alpha_u[be] * udot[rho] - 3.0 * K * drb - 3.0 * K_u[be] * u[rho] -
                             m * dz_du[be][rho];
            for (int ga = 0; ga < 3; ++ga) {
                const double drg = (rho == ga) ? 1.0 : 0.0;
                fd.F22(rho, be, ga) = alpha_du[be] * drg + alpha_du[ga] * drb -
                                      3.0 * K_dudu(be, ga) * u[rho];
                // d/du^ga of the F2 column: the m-part is -m (u x e_be), whose
                // u-derivative is -m (e_ga x e_be).
                fd.F21(rho, be, ga) = alpha_duu(be, ga) * udot[rho] + alpha_u[ga] * drb -
                                      3.0 * K_duu(be, ga) * u[rho] - 3.0 * K_du[be] * drg -
                                      m * cross(basis(ga), basis(be), g)[rho];
            }
        }
    }
    return fd;
}

ReducibilityResult reducibility_multipliers(const FDeriv& fd, const Vec3& u, const Vec3& udot,
                                            const Metric& g) {
    require_timelike(u, g);
    const double p = dot(u, u, g);

    const Vec3 f1u = fd.F1 * u;
    const Vec3 f2ud = fd.F2 * udot;
    const Vec3 f2u = fd.F2 * u;
    const Vec3 lhs1 = fd.F * 3.0 - f1u - f2ud * 2.0;
    const Vec3 lhs2 = udot * 3.0 - f2u;

    ReducibilityResult res;
    res.mu = dot(lhs1, u, g) / (3.0 * p);
    res.lambda = dot(lhs2, u, g) / (3.0 * p);
    const Vec3 perp1 = lhs1 - u * (3.0 * res.mu);
    const Vec3 perp2 = lhs2 - u * (3.0 * res.lambda);
    res.residual_mu = std::sqrt(std::abs(dot(perp1, perp1, g)));
    res.residual_lambda = std::sqrt(std::abs(dot(perp2, perp2, g)));

    const double scale1 = 1.0 + 3.0 * norm2(fd.F) + norm2(f1u) + 2.0 * norm2(f2ud);
    const double scale2 = 1.0 + 3.0 * norm2(udot) + norm2(f2u);
    res.reducible = res.residual_mu <= 1e-8 * scale1 && res.residual_lambda <= 1e-8 * scale2;
    return res;
}

std::pair<double, double> mu_lambda_from_psi(const PsiDerivs& pd, const Vec3& u, const Vec3& udot,
                                             const Metric& g) {
    require_timelike(u, g);
    const double p = dot(u, u, g);
    const double q = dot(udot, u, g);
    const double mu =
        (2.0 * pd.value - 2.0 * contract(pd.grad_udot, udot) - contract(pd.grad_u, u)) / 3.0;
    const double lambda = q / p - contract(pd.grad_udot, u) / 3.0;
    return {mu, lambda};
}

std::pair<double, double> mu_lambda_analytic(const Vec3& u, const Vec3& udot, double A,
                                             const Metric& g) {
    require_timelike(u, g);
    require_cross_regular(u, udot, A, g);
    const Point pt = analyze(u, udot, g, A != 0.0);
    PsiDerivs pd;
    pd.value = 1.5 * pt.r / pt.p;
    pd.grad_udot = pt.udl * (3.0 / pt.p);
    pd.grad_u = pt.ul * (-3.0 * pt.r / (pt.p * pt.p));
    if (A != 0.0) {
        pd.value += 3.0 * A * pt.W / pt.p;
        pd.grad_udot += pt.a * (4.0 * A * pt.sz * pt.W1 / pt.p);
        pd.grad_u += pt.b * (4.0 * A * pt.sz * pt.W1 / pt.p) -
                     pt.ul * (6.0 * A * pt.W / (pt.p * pt.p));
    }
    return mu_lambda_from_psi(pd, u, udot, g);
}

ConnectionCoeffs attached_connection(const Vec3& u, const Vec3& udot, const ModelParams& params) {
    const FDeriv fd = f_derivatives(u, udot, params);
    ConnectionCoeffs cc;
    cc.Gamma1 = fd.F2 * (1.0 / 3.0);

    Ten3 pi;
    for (int rho = 0; rho < 3; ++rho)
        for (int be = 0; be < 3; ++be)
            for (int ga = 0; ga < 3; ++ga) {
                double s = 0.0;
                for (int mu = 0; mu < 3; ++mu) {
                    s += (fd.F22(rho, be, mu) * fd.F1(mu, ga) +
                          fd.F21(rho, be, mu) * fd.F2(mu, ga)) /
                         9.0;
                    for (int nu = 0; nu < 3; ++nu)
                        s += (2.0 / 27.0) * fd.F22(rho, be, mu) * fd.F2(mu, nu) * fd.F2(nu, ga);
                }
                pi(rho, be, ga) = s;
            }
    for (int rho = 0; rho < 3; ++rho)
        for (int be = 0; be < 3; ++be)
            for (int ga = 0; ga < 3; ++ga)
                cc.Gamma2(rho, be, ga) = 0.5 * (pi(rho, be, ga) + pi(rho, ga, be));
    return cc;
}

Vec3 autoparallel_rhs(const ConnectionCoeffs& cc, const Multipliers& mult, const Vec3& u,
                      const Vec3& udot) {
    Vec3 out = cc.Gamma1 * udot;
    for (int rho = 0; rho < 3; ++rho) {
        double s = 0.0;
        for (int mu = 0; mu < 3; ++mu)
            for (int nu = 0; nu < 3; ++nu) s += cc.Gamma2(rho, mu, nu) * u[mu] * u[nu];
        out[rho] += s + mult.lambda2 * udot[rho] + mult.lambda1 * u[rho];
    }
    return out;
}

double lambda1_from_differential(const Vec3& d0, const Vec3& d1, const Vec3& d2, double mu,
                                 double lambda, const Mat3& F2, const Vec3& u, const Vec3& udot,
                                 const Vec3& uddot) {
    return contract(d0, u) + contract(d1, udot) + contract(d2, uddot) +
           mu * (1.0 - contract(d2, u)) -
           lambda * (contract(d1, u) + (2.0 / 3.0) * contract(d2, F2 * u)) -
           2.0 * lambda * lambda;
}

}  // namespace autogeo
