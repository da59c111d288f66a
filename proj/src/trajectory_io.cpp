#include "autogeo/trajectory_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace autogeo {

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

struct Row {
    const State3& s;
    CurveDiagnostics diag;
    double ep_res;
};

Row make_row(const State3& s, const ModelParams& params) {
    const Vec3 udd = rhs_f(s.u, s.udot, params);
    CurveDiagnostics diag = curvature_torsion(s.u, s.udot, udd, params.metric);
    const EPVector e = ep_expression(Jet2Point{s.u, s.udot, udd}, params);
    return Row{s, diag, linf(e.comps)};
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,x0,x1,x2,u0,u1,u2,du0,du1,du2,kappa,tau,ep_residual\n";
    for (const State3& s : traj.samples) {
        const Row row = make_row(s, traj.params);
        os << format_double(s.t);
        for (int i = 0; i < 3; ++i) os << ',' << format_double(s.x[i]);
        for (int i = 0; i < 3; ++i) os << ',' << format_double(s.u[i]);
        for (int i = 0; i < 3; ++i) os << ',' << format_double(s.udot[i]);
        os << ',' << format_double(row.diag.kappa) << ','
           << (row.diag.tau ? format_double(*row.diag.tau) : "nan") << ','
           << format_double(row.ep_res) << '\n';
    }
    if (traj.status == TrajectoryStatus::DomainExit)
        os << "# domain-exit t=" << format_double(traj.samples.back().t) << '\n';
}

void write_trajectory_json(std::ostream& os, const Trajectory& traj) {
    nlohmann::ordered_json doc;
    doc["scheme"] = traj.scheme;
    doc["h"] = traj.h;
    doc["status"] = traj.status == TrajectoryStatus::Complete ? "complete" : "domain-exit";
    if (traj.status == TrajectoryStatus::DomainExit) doc["exit_reason"] = traj.exit_reason;
    doc["max_ep_residual"] = traj.max_ep_residual;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const State3& s : traj.samples) {
        const Row row = make_row(s, traj.params);
        nlohmann::ordered_json r;
        r["t"] = s.t;
        r["x"] = {s.x[0], s.x[1], s.x[2]};
        r["u"] = {s.u[0], s.u[1], s.u[2]};
        r["du"] = {s.udot[0], s.udot[1], s.udot[2]};
        r["kappa"] = row.diag.kappa;
        if (row.diag.tau)
            r["tau"] = *row.diag.tau;
        else
            r["tau"] = nullptr;
        r["ep_residual"] = row.ep_res;
        rows.push_back(std::move(r));
    }
    doc["samples"] = std::move(rows);
    os << doc.dump(2) << '\n';
}

}  // namespace autogeo
