#include "autogeo/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace autogeo {

namespace {

struct Deriv {
    Vec3 dx, du, dud;
};

Deriv flow(const Vec3& u, const Vec3& udot, const ModelParams& params, int stage) {
    try {
        return Deriv{u, udot, rhs_f(u, udot, params)};
    } catch (const DomainError& e) {
        throw DomainExitError(std::string(e.what()) + " (rk4 stage " + std::to_string(stage) + ")",
                              stage);
    }
}

bool finite(const State3& s) {
    for (int i = 0; i < 3; ++i)
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.u[i]) || !std::isfinite(s.udot[i]))
            return false;
    return std::isfinite(s.t);
}

}  // namespace

State3 step_rk4(const State3& s, const ModelParams& params, double h) {
    if (!(h > 0.0)) throw StepOutOfRangeError("h: must be positive");
    const Deriv k1 = flow(s.u, s.udot, params, 0);
    const Deriv k2 = flow(s.u + k1.du * (h / 2.0), s.udot + k1.dud * (h / 2.0), params, 1);
    const Deriv k3 = flow(s.u + k2.du * (h / 2.0), s.udot + k2.dud * (h / 2.0), params, 2);
    const Deriv k4 = flow(s.u + k3.du * h, s.udot + k3.dud * h, params, 3);

    State3 out;
    out.x = s.x + (k1.dx + (k2.dx + k3.dx) * 2.0 + k4.dx) * (h / 6.0);
    out.u = s.u + (k1.du + (k2.du + k3.du) * 2.0 + k4.du) * (h / 6.0);
    out.udot = s.udot + (k1.dud + (k2.dud + k3.dud) * 2.0 + k4.dud) * (h / 6.0);
    out.t = s.t + h;
    return out;
}

Trajectory integrate(const State3& s0, const ModelParams& params, double t_end, double h) {
    if (!(h > 0.0)) throw StepOutOfRangeError("h: must be positive");
    if (!(t_end > s0.t)) throw StepOutOfRangeError("t_end: must exceed the initial t");
    const double nsteps_real = (t_end - s0.t) / h;
    if (nsteps_real > kMaxSteps) throw StepBudgetError("step budget exceeded");
    const long long nsteps = static_cast<long long>(std::floor(nsteps_real + 1e-9));

    Trajectory traj;
    traj.params = params;
    traj.h = h;
    traj.samples.reserve(static_cast<std::size_t>(nsteps) + 1);

    // Validate the initial state through one flow evaluation.
    rhs_f(s0.u, s0.udot, params);
    traj.samples.push_back(s0);

    State3 cur = s0;
    for (long long i = 0; i < nsteps; ++i) {
        try {
            cur = step_rk4(cur, params, h);
        } catch (const DomainExitError& e) {
            traj.status = TrajectoryStatus::DomainExit;
            traj.exit_reason = e.what();
            break;
        }
        if (!finite(cur)) {
            traj.status = TrajectoryStatus::DomainExit;
            traj.exit_reason = "non-finite state";
            break;
        }
        traj.samples.push_back(cur);
    }

    for (const State3& s : traj.samples) {
        const EPVector e = ep_expression(Jet2Point{s.u, s.udot, rhs_f(s.u, s.udot, params)}, params);
        traj.max_ep_residual = std::max(traj.max_ep_residual, linf(e.comps));
    }
    return traj;
}

CurveDiagnostics curvature_torsion(const Vec3& u, const Vec3& udot, const Vec3& uddot,
                                   const Metric& g) {
    const Norm nu = norm(u, g);
    if (nu.cls == CausalClass::Null) throw NullSpeedError("u: null speed");
    const Vec3 z = cross(u, udot, g);
    const double zz = dot(z, z, g);

    CurveDiagnostics d;
    const Norm nz = norm(z, g);
    d.z_class = nz.cls;
    d.kappa = nz.magnitude / (nu.magnitude * nu.magnitude * nu.magnitude);
    const double scale = dot(u, u, g) * std::abs(dot(udot, udot, g));
    if (std::abs(zz) <= kNullEps * std::max(1e-30, std::abs(scale))) {
        d.kappa = 0.0;  // straight segment; tau left absent
        return d;
    }
    d.tau = triple(u, udot, uddot) / std::abs(zz);
    return d;
}

namespace {

double point_segment_dist2(const Vec3& p, const Vec3& a, const Vec3& b) {
    const Vec3 ab = b - a;
    const double len2 = ab[0] * ab[0] + ab[1] * ab[1] + ab[2] * ab[2];
    double t = 0.0;
    if (len2 > 0.0) {
        t = ((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1] + (p[2] - a[2]) * ab[2]) / len2;
        t = std::clamp(t, 0.0, 1.0);
    }
    const Vec3 c = a + ab * t;
    const Vec3 d = p - c;
    return d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
}

double mean_dist_to_polyline(const Trajectory& pts, const Trajectory& line) {
    double sum = 0.0;
    for (const State3& s : pts.samples) {
        double best = std::numeric_limits<double>::infinity();
        if (line.samples.size() == 1) {
            best = point_segment_dist2(s.x, line.samples[0].x, line.samples[0].x);
        } else {
            for (std::size_t i = 0; i + 1 < line.samples.size(); ++i)
                best = std::min(best,
                                point_segment_dist2(s.x, line.samples[i].x, line.samples[i + 1].x));
        }
        sum += std::sqrt(best);
    }
    return sum / static_cast<double>(pts.samples.size());
}

}  // namespace

double compare_images(const Trajectory& a, const Trajectory& b) {
    if (a.samples.empty() || b.samples.empty())
        throw EmptyTrajectoryError("trajectory: empty");
    return 0.5 * (mean_dist_to_polyline(a, b) + mean_dist_to_polyline(b, a));
}

}  // namespace autogeo
