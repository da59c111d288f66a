#include "autogeo/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "autogeo/connection.hpp"
#include "autogeo/euler_poisson.hpp"
#include "autogeo/integrate.hpp"
#include "autogeo/reduction.hpp"
#include "autogeo/rng.hpp"

namespace autogeo {

namespace {

Metric pick_metric(const SuiteOverrides& o, std::uint64_t i) {
    if (o.metric) return Metric::from_name(*o.metric);
    return (i % 2 == 0) ? Metric::euclidean() : Metric::pseudo();
}

Vec3 random_vec(SplitMix64& rng, double lo = -1.0, double hi = 1.0) {
    return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

// Speed vector: components uniform in [-1,1], resampled until timelike with
// |u| >= 0.3 (always satisfiable for both signatures).
Vec3 sample_speed(SplitMix64& rng, const Metric& g) {
    for (int tries = 0; tries < 100000; ++tries) {
        Vec3 u = random_vec(rng);
        const Norm n = norm(u, g);
        if (n.cls == CausalClass::TimelikePositive && n.magnitude >= 0.3) return u;
    }
    throw DomainError("sampling: could not draw an admissible speed");
}

// (u, u') admissible for the A-term derivative operations when requested:
// |u x u'| >= max(0.1, 0.1 |u||u'|).
void sample_pair(SplitMix64& rng, const Metric& g, bool cross_guard, Vec3& u, Vec3& udot) {
    for (int tries = 0; tries < 100000; ++tries) {
        u = sample_speed(rng, g);
        udot = random_vec(rng);
        if (!cross_guard) return;
        const double nz = norm(cross(u, udot, g), g).magnitude;
        const double floor =
            std::max(0.1, 0.1 * norm(u, g).magnitude * norm(udot, g).magnitude);
        if (nz >= floor) return;
    }
    throw DomainError("sampling: could not draw an admissible pair");
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

// ---------------------------------------------------------------------------

SuiteResult suite_weierstrass(const SuiteOverrides& o) {
    SuiteResult res{.suite = "weierstrass", .seed = o.seed};
    res.samples = o.samples.value_or(1000);
    res.tol = o.tol.value_or(1e-12);
    for (int i = 0; i < res.samples; ++i) {
        SplitMix64 rng = sample_stream(o.seed, static_cast<std::uint64_t>(i));
        const Metric g = pick_metric(o, static_cast<std::uint64_t>(i));
        const ModelParams params{o.m.value_or(rng.uniform(-2.0, 2.0)), 0.0, g};
        const Vec3 u = sample_speed(rng, g);
        const Jet2Point jet{u, random_vec(rng), random_vec(rng)};
        const EPVector e = ep_expression(jet, params);
        const double scale = std::max(norm2(e.comps) * norm2(u), 1e-300);
        res.max_residual = std::max(res.max_residual, std::abs(contract(e.comps, u)) / scale);
    }
    res.pass = res.max_residual <= res.tol;
    return res;
}

SuiteResult suite_lagrangian_oracle(const SuiteOverrides& o) {
    SuiteResult res{.suite = "lagrangian-oracle", .seed = o.seed};
    const int per_axis = o.samples.value_or(100);
    res.samples = 3 * per_axis;
    res.tol = o.tol.value_or(5e-5);
    const Metric g = Metric::euclidean();  // chart identities are Euclidean
    double max_gauge = 0.0;

    for (int rho = 0; rho < 3; ++rho) {
        const Vec3 e = [&] {
            Vec3 b;
            b[rho] = 1.0;
            return b;
        }();
        for (int i = 0; i < per_axis; ++i) {
            SplitMix64 rng =
                sample_stream(o.seed, static_cast<std::uint64_t>(rho * per_axis + i));
            CubicCurve curve;
            double zeta = 0.0;
            Vec3 u;
            for (int tries = 0;; ++tries) {
                if (tries > 100000) throw DomainError("sampling: no admissible curve");
                curve = CubicCurve{random_vec(rng), random_vec(rng), random_vec(rng),
                                   random_vec(rng)};
                zeta = rng.uniform(-0.2, 0.2);
                u = curve.d1(zeta);
                if (norm(u, g).magnitude < 0.3) continue;
                if (std::abs(dot(cross(u, e, g), cross(u, e, g), g)) < 0.1) continue;
                break;
            }
            const ModelParams params{o.m.value_or(rng.uniform(-2.0, 2.0)), 0.0, g};
            const LagrangianFn L = [&](const Vec3& uu, const Vec3& ud) {
                return lagrangian(rho, uu, ud, params);
            };
            const EPVector from_oracle = ep_operator_oracle(L, curve, zeta);
            const EPVector direct = ep_expression(
                Jet2Point{curve.d1(zeta), curve.d2(zeta), curve.d3(zeta)}, params);
            res.max_residual =
                std::max(res.max_residual, linf(from_oracle.comps - direct.comps));

            if (i % 5 == 0) {
                GaugeTerm gauge;
                gauge.phi = [](const Vec3& uu) {
                    return uu[1] * uu[2] / (uu[0] * uu[0] + uu[1] * uu[1] + uu[2] * uu[2]);
                };
                gauge.grad_phi = [](const Vec3& uu) {
                    const double s = uu[0] * uu[0] + uu[1] * uu[1] + uu[2] * uu[2];
                    const double s2 = s * s;
                    return Vec3{-2.0 * uu[0] * uu[1] * uu[2] / s2,
                                (uu[2] * s - 2.0 * uu[1] * uu[1] * uu[2]) / s2,
                                (uu[1] * s - 2.0 * uu[1] * uu[2] * uu[2]) / s2};
                };
                gauge.avec = random_vec(rng);
                const LagrangianFn Lg = [&](const Vec3& uu, const Vec3& ud) {
                    return lagrangian(rho, uu, ud, params, gauge);
                };
                const EPVector gauged = ep_operator_oracle(Lg, curve, zeta);
                max_gauge = std::max(max_gauge, linf(gauged.comps - from_oracle.comps));
            }
        }
    }
    res.note = "gauge-shift max " + fmt(max_gauge);
    res.pass = res.max_residual <= res.tol && max_gauge <= res.tol;
    return res;
}

SuiteResult suite_helmholtz(const SuiteOverrides& o) {
    SuiteResult res{.suite = "helmholtz", .seed = o.seed};
    res.tol = o.tol.value_or(1e-6);
    const double h = 1e-4;
    std::vector<double> ms = o.m ? std::vector<double>{*o.m} : std::vector<double>{0.0, 1.0, -2.0};

    const int grid = 5;
    res.samples = grid * grid * static_cast<int>(ms.size());
    for (double m : ms) {
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                const Vec2 v{-1.0 + 0.5 * i, -1.0 + 0.5 * j};
                const auto blocks = helmholtz_residuals(v, m, h);
                for (double b : blocks) res.max_residual = std::max(res.max_residual, b);
            }
    }

    // Detector sensitivity: a corrupted B must light up block 2.
    CoeffField tampered = standard_coeff_field(1.0);
    const auto base_b = tampered.B;
    tampered.B = [base_b](const Vec2& v) {
        Mat2 b = base_b(v);
        b(0, 1) += 0.1;
        return b;
    };
    const double detector = helmholtz_residuals(tampered, Vec2{0.3, -0.2}, h)[1];
    res.note = "tamper detector block-2 residual " + fmt(detector);
    res.pass = res.max_residual <= res.tol && detector >= 0.01;
    return res;
}

SuiteResult suite_equivariance(const SuiteOverrides& o) {
    SuiteResult res{.suite = "equivariance", .seed = o.seed};
    const int rotations = o.samples.value_or(200);
    const int jets = 20;
    res.samples = rotations * jets;
    res.tol = o.tol.value_or(1e-10);
    for (int i = 0; i < rotations; ++i) {
        const Metric g = pick_metric(o, static_cast<std::uint64_t>(i));
        const Mat3 R = random_pseudo_rotation(o.seed * 1000003ULL + static_cast<std::uint64_t>(i), g);
        for (int j = 0; j < jets; ++j) {
            SplitMix64 rng =
                sample_stream(o.seed, static_cast<std::uint64_t>(i) * 1000ULL + static_cast<std::uint64_t>(j));
            const double A = o.A.value_or(j % 2 == 0 ? 0.0 : 0.7);
            const ModelParams params{o.m.value_or(rng.uniform(-1.0, 1.0)), A, g};
            Vec3 u, udot;
            sample_pair(rng, g, A != 0.0, u, udot);
            const Jet2Point jet{u, udot, random_vec(rng)};
            res.max_residual = std::max(res.max_residual, equivariance_residual(jet, params, R));
            const Vec3 fr = rhs_f(R * u, R * udot, params);
            res.max_residual = std::max(res.max_residual, linf(fr - R * rhs_f(u, udot, params)));
        }
    }
    res.pass = res.max_residual <= res.tol;
    return res;
}

SuiteResult suite_reducibility(const SuiteOverrides& o) {
    SuiteResult res{.suite = "reducibility", .seed = o.seed};
    res.samples = o.samples.value_or(1000);
    res.tol = o.tol.value_or(1e-10);
    bool all_reducible = true;
    for (int i = 0; i < res.samples; ++i) {
        SplitMix64 rng = sample_stream(o.seed, static_cast<std::uint64_t>(i));
        const Metric g = pick_metric(o, static_cast<std::uint64_t>(i));
        const double m = o.m.value_or((i / 2) % 2 == 0 ? 0.0 : 1.0);
        const double A = o.A.value_or((i / 4) % 2 == 0 ? 0.0 : 1.0);
        const ModelParams params{m, A, g};
        Vec3 u, udot;
        sample_pair(rng, g, A != 0.0, u, udot);
        const FDeriv fd = f_derivatives(u, udot, params);
        const ReducibilityResult rr = reducibility_multipliers(fd, u, udot, g);
        all_reducible = all_reducible && rr.reducible;
        res.max_residual = std::max({res.max_residual, std::abs(rr.mu), std::abs(rr.lambda),
                                     rr.residual_mu, rr.residual_lambda});
        const auto [mu2, lambda2] = mu_lambda_analytic(u, udot, A, g);
        res.max_residual = std::max({res.max_residual, std::abs(mu2), std::abs(lambda2)});
    }
    res.pass = res.max_residual <= res.tol && all_reducible;
    return res;
}

SuiteResult suite_attachment(const SuiteOverrides& o) {
    SuiteResult res{.suite = "attachment", .seed = o.seed};
    res.samples = o.samples.value_or(1000);
    res.tol = o.tol.value_or(1e-8);
    for (int i = 0; i < res.samples; ++i) {
        SplitMix64 rng = sample_stream(o.seed, static_cast<std::uint64_t>(i));
        const Metric g = pick_metric(o, static_cast<std::uint64_t>(i));
        const double m = o.m.value_or((i / 2) % 2 == 0 ? 0.0 : 1.0);
        const double A = o.A.value_or((i / 4) % 2 == 0 ? 0.0 : 1.0);
        const ModelParams params{m, A, g};
        Vec3 u, udot;
        sample_pair(rng, g, A != 0.0, u, udot);
        const ConnectionCoeffs cc = attached_connection(u, udot, params);
        const Vec3 ap = autoparallel_rhs(cc, Multipliers{}, u, udot);
        const Vec3 f = rhs_f(u, udot, params);
        res.max_residual =
            std::max(res.max_residual, linf(ap - f) / std::max(1.0, linf(f)));
    }
    res.pass = res.max_residual <= res.tol;
    return res;
}

State3 circle_start() {
    return State3{Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}, Vec3{-1.0, 0.0, 0.0}, 0.0};
}

SuiteResult suite_geodesic_circle(const SuiteOverrides& o) {
    SuiteResult res{.suite = "geodesic-circle", .seed = o.seed};
    res.tol = o.tol.value_or(1e-9);
    const ModelParams params{0.0, 0.0, Metric::euclidean()};
    const Trajectory traj = integrate(circle_start(), params, 2.0 * std::numbers::pi, 1e-3);
    res.samples = static_cast<int>(traj.samples.size());

    double mean = 0.0;
    std::vector<double> kappas;
    kappas.reserve(traj.samples.size());
    double max_tau = 0.0;
    for (const State3& s : traj.samples) {
        const CurveDiagnostics d =
            curvature_torsion(s.u, s.udot, rhs_f(s.u, s.udot, params), params.metric);
        kappas.push_back(d.kappa);
        mean += d.kappa;
        if (d.tau) max_tau = std::max(max_tau, std::abs(*d.tau));
    }
    mean /= static_cast<double>(kappas.size());
    double var = 0.0;
    for (double k : kappas) var += (k - mean) * (k - mean);
    const double rel_std = std::sqrt(var / static_cast<double>(kappas.size())) / mean;
    const double closure = norm2(traj.samples.back().x - traj.samples.front().x);

    res.max_residual = closure;
    std::ostringstream note;
    note << "kappa std/mean " << fmt(rel_std) << " (tol 1e-6), max|tau| " << fmt(max_tau)
         << " (tol 1e-8), closure " << fmt(closure) << " (tol 1e-9)";
    if (traj.status == TrajectoryStatus::DomainExit)
        note << "; domain-exit at t=" << traj.samples.back().t << " [" << traj.exit_reason << "]";
    res.note = note.str();
    res.pass = traj.status == TrajectoryStatus::Complete && rel_std <= 1e-6 && max_tau <= 1e-8 &&
               closure <= res.tol;
    return res;
}

// Truncate a trajectory that winds counterclockwise around the x2-axis to the
// prefix covering [0, cut] in accumulated polar angle, interpolating the final
// sample so both compared arcs end at the same angle.
Trajectory truncate_by_angle(const Trajectory& traj, double cut) {
    Trajectory out;
    out.params = traj.params;
    out.h = traj.h;
    double prev = std::atan2(traj.samples.front().x[1], traj.samples.front().x[0]);
    double acc = 0.0;
    out.samples.push_back(traj.samples.front());
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const double ang = std::atan2(traj.samples[i].x[1], traj.samples[i].x[0]);
        double step = ang - prev;
        while (step < -std::numbers::pi) step += 2.0 * std::numbers::pi;
        while (step > std::numbers::pi) step -= 2.0 * std::numbers::pi;
        prev = ang;
        if (acc + step >= cut) {
            const double frac = (cut - acc) / step;
            State3 end = traj.samples[i - 1];
            const Vec3 d = traj.samples[i].x - traj.samples[i - 1].x;
            end.x = traj.samples[i - 1].x + d * frac;
            out.samples.push_back(end);
            return out;
        }
        acc += step;
        out.samples.push_back(traj.samples[i]);
    }
    throw DomainError("trajectory does not cover the requested arc");
}

SuiteResult suite_image_independence(const SuiteOverrides& o) {
    SuiteResult res{.suite = "image-independence", .seed = o.seed};
    res.tol = o.tol.value_or(1e-5);
    const double A = o.A.value_or(1.0);
    const ModelParams base{0.0, 0.0, Metric::euclidean()};
    const ModelParams with_a{0.0, A, Metric::euclidean()};
    // Both runs stop well before the parameter speed-up degrades the sweep;
    // the compared images are the common 0.5 rad arc.
    const Trajectory t0 = integrate(circle_start(), base, 0.55, 1e-3);
    const Trajectory t1 = integrate(circle_start(), with_a, 0.45, 1e-3);
    const Trajectory a0 = truncate_by_angle(t0, 0.5);
    const Trajectory a1 = truncate_by_angle(t1, 0.5);
    res.samples = static_cast<int>(a0.samples.size() + a1.samples.size());
    res.max_residual = compare_images(a0, a1);
    res.note = "A=0 vs A=" + fmt(A) + " over a 0.5 rad arc";
    res.pass = res.max_residual <= res.tol;
    return res;
}

SuiteResult suite_rk4_order(const SuiteOverrides& o) {
    SuiteResult res{.suite = "rk4-order", .seed = o.seed};
    res.tol = o.tol.value_or(0.2);
    res.samples = 3;
    const ModelParams params{o.m.value_or(1.0), o.A.value_or(0.0), Metric::euclidean()};
    const State3 s0{Vec3{0.0, 0.0, 0.0}, Vec3{1.0, 0.3, -0.2}, Vec3{0.2, 0.5, 0.4}, 0.0};
    const double t_end = 0.3;
    const Vec3 x1 = integrate(s0, params, t_end, 4e-3).samples.back().x;
    const Vec3 x2 = integrate(s0, params, t_end, 2e-3).samples.back().x;
    const Vec3 x3 = integrate(s0, params, t_end, 1e-3).samples.back().x;
    const double order = std::log2(norm2(x1 - x2) / norm2(x2 - x3));
    res.max_residual = std::abs(order - 4.0);
    res.note = "observed order " + fmt(order);
    res.pass = order >= 3.8 && order <= 4.2;
    return res;
}

SuiteResult suite_reduction(const SuiteOverrides& o) {
    SuiteResult res{.suite = "reduction", .seed = o.seed};
    res.samples = o.samples.value_or(500);
    res.tol = o.tol.value_or(1e-9);
    const Metric g = Metric::euclidean();
    for (int i = 0; i < res.samples; ++i) {
        SplitMix64 rng = sample_stream(o.seed, static_cast<std::uint64_t>(i));
        Vec3 u;
        // The chart correspondence is oriented: sample u^0 > 0.
        for (int tries = 0;; ++tries) {
            if (tries > 100000) throw DomainError("sampling: no admissible state");
            u = random_vec(rng);
            if (u[0] >= 0.25 && norm(u, g).magnitude >= 0.3) break;
        }
        const Vec3 udot = random_vec(rng);
        const Vec3 uddot = random_vec(rng);
        const double m = o.m.value_or(rng.uniform(-2.0, 2.0));
        const ModelParams params{m, 0.0, g};
        const EPVector e3 = ep_expression(Jet2Point{u, udot, uddot}, params);
        const Vec2 via_reduce = reduce_ep(e3, u);
        const Vec2 via_chart = ep_reduced(project_jet(u, udot, uddot), m);
        const Vec2 diff = via_reduce - via_chart;
        res.max_residual =
            std::max({res.max_residual, std::abs(diff[0]), std::abs(diff[1])});
    }
    res.pass = res.max_residual <= res.tol;
    return res;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "weierstrass",      "lagrangian-oracle", "helmholtz",
        "equivariance",     "reducibility",      "attachment",
        "geodesic-circle",  "image-independence", "rk4-order",
        "reduction"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOverrides& overrides) {
    const Timer timer;
    SuiteResult res;
    if (name == "weierstrass")
        res = suite_weierstrass(overrides);
    else if (name == "lagrangian-oracle")
        res = suite_lagrangian_oracle(overrides);
    else if (name == "helmholtz")
        res = suite_helmholtz(overrides);
    else if (name == "equivariance")
        res = suite_equivariance(overrides);
    else if (name == "reducibility")
        res = suite_reducibility(overrides);
    else if (name == "attachment")
        res = suite_attachment(overrides);
    else if (name == "geodesic-circle")
        res = suite_geodesic_circle(overrides);
    else if (name == "image-independence")
        res = suite_image_independence(overrides);
    else if (name == "rk4-order")
        res = suite_rk4_order(overrides);
    else if (name == "reduction")
        res = suite_reduction(overrides);
    else
        throw DomainError("suite: unknown name '" + name + "'");
    res.elapsed_seconds = timer.seconds();
    return res;
}

}  // namespace autogeo
