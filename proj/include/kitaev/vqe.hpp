#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/layer.hpp"
#include "kitaev/model.hpp"
#include "kitaev/optimize.hpp"
#include "kitaev/qsim/gate.hpp"
#include "kitaev/qsim/state.hpp"

namespace kitaev::vqe {

/// (4N - 3) M angles. Layer m (0-based) occupies [m (4N-3), (m+1)(4N-3)):
/// first (a, b, c) for bonds j = 1..N-1, then theta for sites 1..N.
using AnsatzAngles = Eigen::VectorXd;

int angle_count(int n_sites, int layers);
int angles_per_layer(int n_sites);

/// Ansatz circuit and, for each gate, the angle slot it depends on
/// (index -1 for the fixed X gate of the odd sector).
struct Ansatz {
  int n_sites = 0;
  int layers = 0;
  int parity = 1;
  qsim::Circuit gates;
  std::vector<LayerSlot> slots;
};

/// [X on qubit 0 if parity == -1], then per layer: odd bonds, even bonds,
/// Rz(2 theta) on every site. Requires N = 0 (mod 4).
Ansatz build_ansatz(int n_sites, int layers, const AnsatzAngles& angles,
                    int parity);

/// Ansatz applied to |0...0>.
qsim::StateVector prepare(int n_sites, int layers, const AnsatzAngles& angles,
                          int parity);

/// <psi(angles)| H_S (open) |psi(angles)>.
double energy(const model::CouplingSet& cs, int n_sites, int layers,
              const AnsatzAngles& angles, int parity);

/// Central finite differences with step h.
Eigen::VectorXd gradient(const model::CouplingSet& cs, int n_sites, int layers,
                         const AnsatzAngles& angles, int parity,
                         double h = 1e-6);

/// Exact gradient by reverse-mode propagation through the circuit. Returns
/// the energy and writes the gradient.
double energy_and_gradient(const model::CouplingSet& cs, int n_sites,
                           int layers, const AnsatzAngles& angles, int parity,
                           Eigen::VectorXd& grad);

enum class GradientMethod { Adjoint, FiniteDifference };

std::string to_string(GradientMethod m);
GradientMethod parse_gradient_method(const std::string& text);

struct VqeConfig {
  int layers = 4;
  int trials = 10;
  std::uint64_t seed = 7;
  opt::AnnealConfig anneal;
  opt::BfgsConfig bfgs;
  GradientMethod gradient = GradientMethod::Adjoint;
  /// Upper bound on concurrently running trials.
  int threads = 1;
};

struct TrialResult {
  double energy = 0.0;
  double anneal_energy = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

struct VqeResult {
  double energy = 0.0;
  AnsatzAngles angles;
  int best_trial = 0;
  std::vector<TrialResult> trials;
  int parity_requested = 1;
  double parity_measured = 0.0;
  /// True if the best trial met the BFGS stopping criterion.
  bool converged = false;
};

/// Multi-start SA + BFGS. Deterministic for a given config.
VqeResult optimize(const model::CouplingSet& cs, int n_sites,
                   const VqeConfig& config, int parity);

/// Versioned angle file (see docs/formats.md).
struct AngleFile {
  int n_sites = 0;
  int layers = 0;
  int parity = 1;
  AnsatzAngles angles;
};

std::string angles_to_text(const AngleFile& f);
AngleFile angles_from_text(const std::string& text);
void save_angles(const std::string& path, const AngleFile& f);
AngleFile load_angles(const std::string& path);

}  // namespace kitaev::vqe
