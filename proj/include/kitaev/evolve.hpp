#pragma once

#include "kitaev/model.hpp"
#include "kitaev/qsim/gate.hpp"
#include "kitaev/qsim/state.hpp"

namespace kitaev::evolve {

inline constexpr double kDefaultDt = 0.01;

/// Fixed angles of one first-order step of e^{-i H_S dt}:
///   a = (jx + jy) dt / 4, b = (jx - jy) dt / 4, c = jz dt / 4,
///   theta = hz dt / 2.
struct TrotterAngles {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double theta = 0.0;
};

TrotterAngles trotter_angles(const model::CouplingSet& cs, double dt);

/// One step, laid out as a single ansatz layer with constant angles. With
/// periodic boundary the wrap bond sits in the even-bond group.
qsim::Circuit trotter_step(const model::CouplingSet& cs, int n_sites, double dt,
                           model::Boundary boundary = model::Boundary::Open);

/// Number of steps for time t: round(t/dt), which must match t/dt within
/// 1e-9 relative tolerance.
long step_count(double t, double dt);

/// Applies `steps` repetitions of the step circuit in place. The state may
/// hold extra qubits above the chain (e.g. an ancilla); they are untouched.
void evolve_steps(qsim::StateVector& state, const qsim::Circuit& step,
                  long steps);

/// e^{-i H t} by repeated first-order steps.
qsim::StateVector evolve(qsim::StateVector state, const model::CouplingSet& cs,
                         int n_sites, double t, double dt = kDefaultDt,
                         model::Boundary boundary = model::Boundary::Open);

}  // namespace kitaev::evolve
