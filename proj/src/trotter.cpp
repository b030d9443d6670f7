#include "kitaev/evolve.hpp"

#include <cmath>
#include <vector>

#include "kitaev/error.hpp"
#include "kitaev/layer.hpp"

namespace kitaev::evolve {

TrotterAngles trotter_angles(const model::CouplingSet& cs, double dt) {
  const auto& s = cs.spin();
  return {(s.jx + s.jy) * dt / 4, (s.jx - s.jy) * dt / 4, s.jz * dt / 4,
          s.hz * dt / 2};
}

qsim::Circuit trotter_step(const model::CouplingSet& cs, int n_sites, double dt,
                           model::Boundary boundary) {
  if (!(dt > 0.0)) throw InvalidArgument("trotter_step: dt must be > 0");
  const auto ang = trotter_angles(cs, dt);
  const auto nb = model::bonds(n_sites, boundary).size();
  std::vector<double> bond(3 * nb);
  for (std::size_t b = 0; b < nb; ++b) {
    bond[3 * b] = ang.a;
    bond[3 * b + 1] = ang.b;
    bond[3 * b + 2] = ang.c;
  }
  const std::vector<double> site(static_cast<std::size_t>(n_sites), ang.theta);
  qsim::Circuit c;
  append_layer(c, n_sites, boundary, bond, site);
  return c;
}

long step_count(double t, double dt) {
  if (!(t >= 0.0)) throw InvalidArgument("evolve: t must be >= 0");
  if (!(dt > 0.0)) throw InvalidArgument("evolve: dt must be > 0");
  const double r = t / dt;
  const double n = std::round(r);
  if (std::abs(r - n) > 1e-9 * std::max(1.0, r)) {
    throw InvalidArgument("evolve: t = " + std::to_string(t) +
                          " is not a multiple of dt = " + std::to_string(dt));
  }
  return static_cast<long>(n);
}

void evolve_steps(qsim::StateVector& state, const qsim::Circuit& step,
                  long steps) {
  for (long i = 0; i < steps; ++i) qsim::apply(state, step);
}

qsim::StateVector evolve(qsim::StateVector state, const model::CouplingSet& cs,
                         int n_sites, double t, double dt,
                         model::Boundary boundary) {
  const long steps = step_count(t, dt);
  if (steps == 0) return state;
  evolve_steps(state, trotter_step(cs, n_sites, dt, boundary), steps);
  return state;
}

}  // namespace kitaev::evolve
