#pragma once

#include <ostream>
#include <string>

#include "autogeo/integrate.hpp"

namespace autogeo {

// Shortest decimal representation that round-trips the double.
std::string format_double(double x);

// CSV rows `t,x0,x1,x2,u0,u1,u2,du0,du1,du2,kappa,tau,ep_residual` with a
// header line; `tau` prints as nan on straight segments. On a domain exit the
// file ends with the comment line `# domain-exit t=<t>`.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// Same content as a JSON document with stable key order.
void write_trajectory_json(std::ostream& os, const Trajectory& traj);

}  // namespace autogeo
