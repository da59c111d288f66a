#include "autogeo/euler_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "autogeo/rng.hpp"

namespace autogeo {

namespace {

Vec3 basis(int rho) {
    Vec3 e;
    e[rho] = 1.0;
    return e;
}

void require_timelike(const Vec3& u, const Metric& g) {
    if (norm(u, g).cls != CausalClass::TimelikePositive)
        throw NullSpeedError("u: null speed (timelike-positive u required)");
}

}  // namespace

double gauge_constraint_residual(const GaugeTerm& gauge, const Vec3& u) {
    if (!gauge.phi) return 0.0;
    Vec3 grad;
    if (gauge.grad_phi) {
        grad = gauge.grad_phi(u);
    } else {
        const double h = 1e-6;
        for (int i = 0; i < 3; ++i) {
            Vec3 up = u, um = u;
            up[i] += h;
            um[i] -= h;
            grad[i] = (gauge.phi(up) - gauge.phi(um)) / (2.0 * h);
        }
    }
    return contract(grad, u);
}

EPVector ep_expression(const Jet2Point& p, const ModelParams& params) {
    const Metric& g = params.metric;
    require_timelike(p.u, g);
    const double s = norm(p.u, g).magnitude;
    const double s3 = s * s * s;
    const double s5 = s3 * s * s;
    const double uu = dot(p.u, p.u, g);
    const double q = dot(p.udot, p.u, g);

    const Vec3 contra = cross(p.uddot, p.u, g) / s3 - cross(p.udot, p.u, g) * (3.0 * q / s5) +
                        (p.udot * uu - p.u * q) * (params.m / s3);
    return EPVector{lower(contra, g)};
}

Vec2 ep_reduced(const ContactJet& c, double m) {
    const double w = 1.0 + dot2(c.v, c.v);
    if (w <= 0.0) throw ChartViolationError("v: chart violation (1 + v.v <= 0)");
    const double w32 = w * std::sqrt(w);
    const double w52 = w32 * w;
    const double pv = dot2(c.vprime, c.v);
    return dual2(c.vsecond) * (-1.0 / w32) + dual2(c.vprime) * (3.0 * pv / w52) +
           (c.vprime * w - c.v * pv) * (m / w32);
}

double lagrangian(int rho, const Vec3& u, const Vec3& udot, const ModelParams& params,
                  const GaugeTerm& gauge) {
    const Metric& g = params.metric;
    const Norm nu = norm(u, g);
    if (nu.cls == CausalClass::Null) throw NullSpeedError("u: null speed");
    const Vec3 e = basis(rho);
    const Vec3 ue = cross(u, e, g);
    const double ue2 = std::abs(dot(ue, ue, g));
    if (ue2 <= kAxisSingularEps)
        throw AxisSingularError("u: parallel to frame axis " + std::to_string(rho));

    double val = u[rho] * triple(u, udot, e) / (nu.magnitude * ue2) - params.m * nu.magnitude;
    if (gauge.phi) {
        Vec3 grad;
        if (gauge.grad_phi) {
            grad = gauge.grad_phi(u);
        } else {
            const double h = 1e-6;
            for (int i = 0; i < 3; ++i) {
                Vec3 up = u, um = u;
                up[i] += h;
                um[i] -= h;
                grad[i] = (gauge.phi(up) - gauge.phi(um)) / (2.0 * h);
            }
        }
        val += contract(grad, udot);
    }
    val += contract(gauge.avec, u);
    return val;
}

namespace {

// 4th-order central difference of L in one coordinate of u or udot.
double partial(const LagrangianFn& L, const Vec3& u, const Vec3& udot, int rho, bool wrt_udot,
               double h) {
    auto eval = [&](double t) {
        Vec3 uu = u, ud = udot;
        if (wrt_udot)
            ud[rho] += t;
        else
            uu[rho] += t;
        return L(uu, ud);
    };
    return (-eval(2.0 * h) + 8.0 * eval(h) - 8.0 * eval(-h) + eval(-2.0 * h)) / (12.0 * h);
}

// One 4th-order estimate of E at outer step k.
Vec3 oracle_pass(const LagrangianFn& L, const CubicCurve& curve, double zeta, double h, double k) {
    Vec3 result;
    for (int rho = 0; rho < 3; ++rho) {
        double q[5], p[5];
        for (int j = -2; j <= 2; ++j) {
            const double s = zeta + j * k;
            const Vec3 u = curve.d1(s);
            const Vec3 ud = curve.d2(s);
            q[j + 2] = partial(L, u, ud, rho, false, h);
            p[j + 2] = partial(L, u, ud, rho, true, h);
        }
        const double dq = (q[0] - 8.0 * q[1] + 8.0 * q[3] - q[4]) / (12.0 * k);
        const double d2p =
            (-p[0] + 16.0 * p[1] - 30.0 * p[2] + 16.0 * p[3] - p[4]) / (12.0 * k * k);
        result[rho] = -dq + d2p;
    }
    return result;
}

}  // namespace

EPVector ep_operator_oracle(const LagrangianFn& L, const CubicCurve& curve, double zeta,
                            double h) {
    if (!(h >= 1e-6 && h <= 1e-2)) throw StepOutOfRangeError("h: step out of [1e-6, 1e-2]");
    const double k = 2.4e-3;
    const Vec3 coarse = oracle_pass(L, curve, zeta, h, k);
    const Vec3 fine = oracle_pass(L, curve, zeta, h, k / 2.0);
    return EPVector{(fine * 16.0 - coarse) / 15.0};
}

CoeffField standard_coeff_field(double m) {
    CoeffField f;
    f.A = [](const Vec2& v) {
        const double w = 1.0 + dot2(v, v);
        const double w32 = w * std::sqrt(w);
        Mat2 a;
        a(0, 1) = 1.0 / w32;
        a(1, 0) = -1.0 / w32;
        return a;
    };
    f.B = [m](const Vec2& v) {
        const double w = 1.0 + dot2(v, v);
        const double w32 = w * std::sqrt(w);
        Mat2 b;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                b(i, j) = m * ((i == j ? w : 0.0) - v[i] * v[j]) / w32;
        return b;
    };
    f.c = [](const Vec2&) { return Vec2{}; };
    return f;
}

AffineCoeffs extract_affine_coeffs(const Vec2& v, double m) {
    const double w = 1.0 + dot2(v, v);
    if (w <= 0.0) throw ChartViolationError("v: chart violation (1 + v.v <= 0)");
    const CoeffField field = standard_coeff_field(m);
    AffineCoeffs out{field.A(v), field.B(v), field.c(v)};

    // Self-check against the closed-form planar expression at a few jets.
    const double w52 = w * w * std::sqrt(w);
    std::uint64_t bits = 0x9e3779b97f4a7c15ULL;
    std::memcpy(&bits, &v.c[0], sizeof(double));
    SplitMix64 rng(bits ^ 0xabcdef1234567890ULL);
    for (int trial = 0; trial < 3; ++trial) {
        const Vec2 vp{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const Vec2 vs{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        // (v'.d_v)A . v' with the analytic derivative of A.
        const Vec2 mid = (-dual2(vp)) * (-3.0 * dot2(v, vp) / w52);
        const Vec2 affine = out.Amat * vs + mid + out.Bmat * vp + out.cvec;
        const Vec2 direct = ep_reduced(ContactJet{v, vp, vs}, m);
        const Vec2 diff = affine - direct;
        if (std::max(std::abs(diff[0]), std::abs(diff[1])) > 1e-10)
            throw DomainError("affine coefficients: self-check against the planar expression failed");
    }
    return out;
}

namespace {

Mat2 fd_dA(const CoeffField& f, const Vec2& v, int axis, double h) {
    Vec2 vp = v, vm = v;
    vp[axis] += h;
    vm[axis] -= h;
    const Mat2 a = f.A(vp), b = f.A(vm);
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = (a(i, j) - b(i, j)) / (2.0 * h);
    return r;
}

Mat2 fd_dB(const CoeffField& f, const Vec2& v, int axis, double h) {
    Vec2 vp = v, vm = v;
    vp[axis] += h;
    vm[axis] -= h;
    const Mat2 a = f.B(vp), b = f.B(vm);
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = (a(i, j) - b(i, j)) / (2.0 * h);
    return r;
}

Vec2 fd_dc(const CoeffField& f, const Vec2& v, int axis, double h) {
    Vec2 vp = v, vm = v;
    vp[axis] += h;
    vm[axis] -= h;
    return (f.c(vp) - f.c(vm)) * (1.0 / (2.0 * h));
}

}  // namespace

std::array<double, 6> helmholtz_residuals(const CoeffField& field, const Vec2& v, double h) {
    if (1.0 + dot2(v, v) <= 0.0) throw ChartViolationError("v: chart violation");
    std::array<double, 6> res{};

    Mat2 dA[2] = {fd_dA(field, v, 0, h), fd_dA(field, v, 1, h)};
    Mat2 dB[2] = {fd_dB(field, v, 0, h), fd_dB(field, v, 1, h)};
    Vec2 dc[2] = {fd_dc(field, v, 0, h), fd_dc(field, v, 1, h)};
    const Mat2 B = field.B(v);

    // Every t- or x-derivative (and hence every D1 term) is identically zero
    // for coefficients depending on v alone.

    // 1: full antisymmetrization of d_{v a} A_{bc}.
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                const double alt = dA[a](b, c) - dA[b](a, c) + dA[b](c, a) - dA[c](b, a) +
                                   dA[c](a, b) - dA[a](c, b);
                res[0] = std::max(res[0], std::abs(alt / 6.0));
            }

    // 2: 2 B_[ab].
    res[1] = std::abs(B(0, 1) - B(1, 0));

    // 3: 2 d_{v[a} B_{b]c}.
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                res[2] = std::max(res[2], std::abs(dB[a](b, c) - dB[b](a, c)));

    // 4: d_{v(a} c_{b)}.
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            res[3] = std::max(res[3], std::abs(0.5 * (dc[a][b] + dc[b][a])));

    // 5: 2 d_{v c} d_{v[a} c_{b]} (second differences of c).
    for (int c = 0; c < 2; ++c) {
        Vec2 vp = v, vm = v;
        vp[c] += h;
        vm[c] -= h;
        Vec2 dcp[2] = {fd_dc(field, vp, 0, h), fd_dc(field, vp, 1, h)};
        Vec2 dcm[2] = {fd_dc(field, vm, 0, h), fd_dc(field, vm, 1, h)};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const double curlp = dcp[a][b] - dcp[b][a];
                const double curlm = dcm[a][b] - dcm[b][a];
                res[4] = std::max(res[4], std::abs((curlp - curlm) / (2.0 * h)));
            }
    }

    // 6: only t/x-derivative and D1 terms; identically zero here.
    res[5] = 0.0;
    return res;
}

std::array<double, 6> helmholtz_residuals(const Vec2& v, double m, double h) {
    return helmholtz_residuals(standard_coeff_field(m), v, h);
}

double equivariance_residual(const Jet2Point& p, const ModelParams& params, const Mat3& R) {
    const Metric& g = params.metric;
    // R^T G R = G check.
    Mat3 gm;
    for (int i = 0; i < 3; ++i) gm(i, i) = g.diag[static_cast<std::size_t>(i)];
    const Mat3 defect = R.transposed() * gm * R + gm * (-1.0);
    if (linf(defect) > 1e-10) throw NotAnIsometryError("R: not a metric isometry");

    const EPVector base = ep_expression(p, params);
    const Jet2Point rotated{R * p.u, R * p.udot, R * p.uddot};
    const EPVector moved = ep_expression(rotated, params);
    const Vec3 expected = R.transposed().inverse() * base.comps;
    return linf(moved.comps - expected);
}

}  // namespace autogeo
