#pragma once

#include <optional>
#include <string>
#include <vector>

#include "autogeo/connection.hpp"
#include "autogeo/euler_poisson.hpp"
#include "autogeo/metric.hpp"

namespace autogeo {

// One sample of the first-order system (x, u, u') at parameter t.
struct State3 {
    Vec3 x;
    Vec3 u;
    Vec3 udot;
    double t = 0.0;
};

enum class TrajectoryStatus { Complete, DomainExit };

struct Trajectory {
    std::vector<State3> samples;
    ModelParams params;
    double h = 0.0;
    std::string scheme = "rk4";
    TrajectoryStatus status = TrajectoryStatus::Complete;
    std::string exit_reason;            // set on DomainExit
    double max_ep_residual = 0.0;       // max |E|_inf of the solved system along the samples
};

inline constexpr double kMaxSteps = 1e7;

// One classical RK4 step of d/dt (x, u, u') = (u, u', F(u, u')).
// Throws DomainExitError naming the stage if an internal evaluation leaves
// the admissible domain.
State3 step_rk4(const State3& s, const ModelParams& params, double h);

// Fixed-step sweep from s0 to the last grid point <= t_end, recording every
// sample. Domain exits truncate the sweep and are reported in the result.
// Throws StepBudgetError when more than 1e7 steps would be needed.
Trajectory integrate(const State3& s0, const ModelParams& params, double t_end, double h);

struct CurveDiagnostics {
    double kappa = 0.0;
    std::optional<double> tau;  // absent on straight segments (u x u' null)
    CausalClass z_class = CausalClass::Null;
};

// First curvature and torsion of the curve element:
//   kappa = |u x u'| / |u|^3,   tau = [u, u', u''] / |u x u'|^2.
// Index-2 inputs use the same expressions with |.| norms; the causal class of
// u x u' is attached for interpretation.
CurveDiagnostics curvature_torsion(const Vec3& u, const Vec3& udot, const Vec3& uddot,
                                   const Metric& g);

// Symmetric mean point-to-polyline distance between the two position
// sequences: a parameter-independent comparison of curve images.
double compare_images(const Trajectory& a, const Trajectory& b);

}  // namespace autogeo
