// Command-line front end: trajectory runs, the verification suites, and the
// chart projection, with CSV/JSON output and deterministic seeding.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "autogeo/integrate.hpp"
#include "autogeo/reduction.hpp"
#include "autogeo/trajectory_io.hpp"
#include "autogeo/verify.hpp"

namespace {

using namespace autogeo;

constexpr int kExitOk = 0;
constexpr int kExitSuiteFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;

bool parse_triple(const std::string& text, Vec3& out) {
    std::istringstream is(text);
    std::string tok;
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(is, tok, ',')) return false;
        try {
            std::size_t used = 0;
            out[i] = std::stod(tok, &used);
            if (used != tok.size()) return false;
        } catch (...) {
            return false;
        }
    }
    return !std::getline(is, tok, ',');
}

struct VecOpt {
    std::string text;
    bool set = false;
};

int fail_config(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kExitConfig;
}

struct IntegrateArgs {
    std::string metric = "euclid";
    double m = 0.0;
    double A = 0.0;
    std::string x = "0,0,0";
    std::string u = "1,0,0";
    std::string du = "0,0,0";
    double t_end = 1.0;
    double h = 1e-3;
    std::string output = "-";
    std::string format = "csv";
};

int run_integrate(const IntegrateArgs& args) {
    Metric g;
    try {
        g = Metric::from_name(args.metric);
    } catch (const DomainError& e) {
        return fail_config(e.what());
    }
    State3 s0;
    if (!parse_triple(args.x, s0.x)) return fail_config("x: expected three comma-separated numbers");
    if (!parse_triple(args.u, s0.u)) return fail_config("u: expected three comma-separated numbers");
    if (!parse_triple(args.du, s0.udot))
        return fail_config("du: expected three comma-separated numbers");

    const Norm nu = norm(s0.u, g);
    if (nu.cls == CausalClass::Null) return fail_config("u: null speed");
    if (nu.cls != CausalClass::TimelikePositive)
        return fail_config("u: not timelike-positive for the pseudo metric");
    if (!(args.h > 0.0)) return fail_config("h: must be positive");
    if (!(args.t_end > 0.0)) return fail_config("t-end: must be positive");
    if (args.format != "csv" && args.format != "json")
        return fail_config("format: expected csv or json");

    const ModelParams params{args.m, args.A, g};
    Trajectory traj;
    try {
        traj = integrate(s0, params, args.t_end, args.h);
    } catch (const StepBudgetError& e) {
        return fail_config(e.what());
    } catch (const DomainError& e) {
        return fail_config(std::string("initial state: ") + e.what());
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (args.output != "-") {
        file.open(args.output);
        if (!file) return fail_config("output: cannot open '" + args.output + "'");
        os = &file;
    }
    if (args.format == "csv")
        write_trajectory_csv(*os, traj);
    else
        write_trajectory_json(*os, traj);
    return traj.status == TrajectoryStatus::Complete ? kExitOk : kExitDomain;
}

struct VerifyArgs {
    std::vector<std::string> suites;
    std::optional<int> samples;
    std::uint64_t seed = 1;
    std::optional<double> m;
    std::optional<double> A;
    std::optional<std::string> metric;
    std::vector<std::string> tol_overrides;
    std::string output = "-";
};

int run_verify(const VerifyArgs& args) {
    std::vector<std::string> suites = args.suites.empty() ? suite_names() : args.suites;
    std::map<std::string, double> tols;
    double global_tol = 0.0;
    bool has_global_tol = false;
    for (const std::string& spec : args.tol_overrides) {
        const auto eq = spec.find('=');
        try {
            if (eq == std::string::npos) {
                global_tol = std::stod(spec);
                has_global_tol = true;
            } else {
                tols[spec.substr(0, eq)] = std::stod(spec.substr(eq + 1));
            }
        } catch (...) {
            return fail_config("tol: expected VALUE or suite=VALUE, got '" + spec + "'");
        }
    }
    for (const std::string& name : suites) {
        bool known = false;
        for (const std::string& n : suite_names()) known = known || n == name;
        if (!known) return fail_config("suite: unknown name '" + name + "'");
    }
    if (args.metric && *args.metric != "euclid" && *args.metric != "pseudo")
        return fail_config("metric: expected euclid or pseudo");

    nlohmann::ordered_json report = nlohmann::ordered_json::array();
    bool all_pass = true;
    for (const std::string& name : suites) {
        SuiteOverrides o;
        o.samples = args.samples;
        o.seed = args.seed;
        o.m = args.m;
        o.A = args.A;
        o.metric = args.metric;
        if (auto it = tols.find(name); it != tols.end())
            o.tol = it->second;
        else if (has_global_tol)
            o.tol = global_tol;
        const SuiteResult r = run_suite(name, o);
        nlohmann::ordered_json entry;
        entry["suite"] = r.suite;
        entry["samples"] = r.samples;
        entry["seed"] = r.seed;
        entry["max_residual"] = r.max_residual;
        entry["tol"] = r.tol;
        entry["pass"] = r.pass;
        if (!r.note.empty()) entry["note"] = r.note;
        report.push_back(std::move(entry));
        all_pass = all_pass && r.pass;
    }

    nlohmann::ordered_json doc;
    doc["suites"] = std::move(report);
    doc["all_pass"] = all_pass;

    if (args.output == "-") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream file(args.output);
        if (!file) return fail_config("output: cannot open '" + args.output + "'");
        file << doc.dump(2) << "\n";
    }
    return all_pass ? kExitOk : kExitSuiteFail;
}

struct ProjectArgs {
    std::string x = "0,0,0";
    std::string u;
    std::string du = "0,0,0";
};

int run_project(const ProjectArgs& args) {
    HomogeneousState s;
    if (!parse_triple(args.x, s.x)) return fail_config("x: expected three comma-separated numbers");
    if (!parse_triple(args.u, s.u)) return fail_config("u: expected three comma-separated numbers");
    if (!parse_triple(args.du, s.udot))
        return fail_config("du: expected three comma-separated numbers");

    ContactState c;
    try {
        c = project_state(s);
    } catch (const ChartViolationError&) {
        return fail_config("u0: chart violation");
    }
    nlohmann::ordered_json doc;
    doc["t"] = c.t;
    doc["x"] = {c.xa[0], c.xa[1]};
    doc["v"] = {c.v[0], c.v[1]};
    doc["vprime"] = {c.vprime[0], c.vprime[1]};
    std::cout << doc.dump() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Third-order variational dynamics in 3D (pseudo-)Euclidean space"};
    app.require_subcommand(1);

    IntegrateArgs iargs;
    CLI::App* cmd_i = app.add_subcommand("integrate", "Integrate the solved third-order system");
    cmd_i->add_option("--metric", iargs.metric, "euclid or pseudo");
    cmd_i->add_option("--m", iargs.m, "torsion-like coupling");
    cmd_i->add_option("--A", iargs.A, "connection parameter");
    cmd_i->add_option("--x", iargs.x, "initial position a,b,c");
    cmd_i->add_option("--u", iargs.u, "initial first derivative a,b,c");
    cmd_i->add_option("--du", iargs.du, "initial second derivative a,b,c");
    cmd_i->add_option("--t-end", iargs.t_end, "final parameter value")->required();
    cmd_i->add_option("--h", iargs.h, "fixed step size");
    cmd_i->add_option("-o,--output", iargs.output, "output path ('-' for stdout)");
    cmd_i->add_option("--format", iargs.format, "csv or json");

    VerifyArgs vargs;
    CLI::App* cmd_v = app.add_subcommand("verify", "Run verification suites");
    cmd_v->add_option("--suite", vargs.suites, "suite name (repeatable; default: all)");
    int samples_flag = -1;
    cmd_v->add_option("--samples", samples_flag, "sample-count override");
    cmd_v->add_option("--seed", vargs.seed, "base seed")->envname("AUTOGEO_SEED");
    double m_flag = 0.0, a_flag = 0.0;
    CLI::Option* m_opt = cmd_v->add_option("--m", m_flag, "fix the coupling m");
    CLI::Option* a_opt = cmd_v->add_option("--A", a_flag, "fix the parameter A");
    std::string metric_flag;
    CLI::Option* metric_opt = cmd_v->add_option("--metric", metric_flag, "restrict to one metric");
    cmd_v->add_option("--tol", vargs.tol_overrides,
                      "tolerance override, VALUE or suite=VALUE (repeatable)");
    cmd_v->add_option("-o,--output", vargs.output, "report path ('-' for stdout)");

    ProjectArgs pargs;
    CLI::App* cmd_p = app.add_subcommand("project", "Project a state onto the contact chart");
    cmd_p->add_option("--x", pargs.x, "position a,b,c");
    cmd_p->add_option("--u", pargs.u, "first derivative a,b,c")->required();
    cmd_p->add_option("--du", pargs.du, "second derivative a,b,c");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (cmd_i->parsed()) return run_integrate(iargs);
        if (cmd_v->parsed()) {
            if (samples_flag >= 0) vargs.samples = samples_flag;
            if (*m_opt) vargs.m = m_flag;
            if (*a_opt) vargs.A = a_flag;
            if (*metric_opt) vargs.metric = metric_flag;
            return run_verify(vargs);
        }
        if (cmd_p->parsed()) return run_project(pargs);
    } catch (const DomainError& e) {
        return fail_config(e.what());
    }
    return kExitConfig;
}
