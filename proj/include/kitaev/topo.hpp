#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "kitaev/evolve.hpp"
#include "kitaev/model.hpp"
#include "kitaev/qsim/gate.hpp"
#include "kitaev/qsim/pauli.hpp"
#include "kitaev/qsim/state.hpp"
#include "kitaev/winding.hpp"

namespace kitaev::topo {

// ---- tight-binding layer (V ignored) ----

/// (epsilon_k, Delta_k) = (-t cos k - mu/2, -Delta sin k).
std::pair<double, double> tb_pseudo_vector(const model::CouplingSet& cs,
                                           double k);

/// Bogolon energy sqrt(epsilon_k^2 + Delta_k^2).
double tb_bogolon_energy(const model::CouplingSet& cs, double k);

/// Winding of the point (Delta_k, epsilon_k) around the origin, i.e. of
/// atan2(epsilon_k, Delta_k), accumulated over a uniform grid of k_resolution
/// points. This is minus the winding of phi_k = atan2(Delta_k, epsilon_k);
/// t > 0, Delta > 0, |mu| < 2t gives -1.
/// Throws IllDefinedWinding if min_k (epsilon_k^2 + Delta_k^2) <= 1e-12.
int tb_winding(const model::CouplingSet& cs, int k_resolution = 4096);

/// Ground energy of H_K (V = 0) with periodic boundary, minimized over the
/// two parity sectors: -sum_k xi_k over k = 2 pi l / N, with
/// xi_k = sqrt(eps_k^2 + Delta_k^2). The constant N mu / 2 from the
/// -mu (n - 1/2) term is included, i.e. this is -sum_k (xi_k + mu/2) + N mu/2.
double tb_ground_energy(const model::CouplingSet& cs, int n_sites);

// ---- circuit pipeline ----

enum class Backend { Direct, HadamardTest };

std::string to_string(Backend b);
Backend parse_backend(const std::string& text);

struct OverlapOptions {
  Backend backend = Backend::Direct;
  /// Shot count for the ancilla readout; exact <X> when unset.
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 1;
};

/// Re <gs| U(t)^dag L U(t) R |gs> with U the Trotter evolution and
/// L = gamma^s_j, R = gamma^a_jp. t must be a multiple of dt.
double overlap_re(const qsim::StateVector& gs, const model::CouplingSet& cs,
                  int j, int jp, double t, double dt,
                  model::Boundary boundary = model::Boundary::Open,
                  const OverlapOptions& opts = {});

/// Same, with the ground state given by a preparation circuit on |0...0>.
double overlap_re(const qsim::Circuit& gs_prep, int n_sites,
                  const model::CouplingSet& cs, int j, int jp, double t,
                  double dt, model::Boundary boundary = model::Boundary::Open,
                  const OverlapOptions& opts = {});

/// Same construction with arbitrary Pauli strings in place of the two
/// Majorana operators.
double overlap_re(const qsim::StateVector& gs, const model::CouplingSet& cs,
                  const qsim::PauliString& left, const qsim::PauliString& right,
                  double t, double dt, model::Boundary boundary,
                  const OverlapOptions& opts = {});

struct GreenConfig {
  double delta = 0.15;
  /// Cutoff T = t_delta / delta.
  double t_delta = 5.0;
  double dt = evolve::kDefaultDt;
  model::Boundary boundary = model::Boundary::Open;
  OverlapOptions overlap;
  int threads = 1;

  double cutoff() const { return t_delta / delta; }
  /// round(T / dt); the grid ends at steps() * dt.
  long steps() const;
  /// Throws InvalidArgument unless delta > 0, dt > 0 and T delta >= 1.
  void validate() const;
  /// Non-empty when T delta < 3.
  std::optional<std::string> warning() const;
};

/// -2 * trapezoid_{t in 0, dt, ..., T} e^{-delta t} Re<...> for one pair of
/// operators.
double green_rs(const qsim::StateVector& gs, const model::CouplingSet& cs,
                const qsim::PauliString& left, const qsim::PauliString& right,
                const GreenConfig& cfg);

/// g_{j,j'} for gamma^s_j, gamma^a_jp.
double green_rs(const qsim::StateVector& gs, const model::CouplingSet& cs,
                int j, int jp, const GreenConfig& cfg);

/// Full N x N matrix. The direct backend evolves N + 1 states; the
/// Hadamard-test backend evolves N ancilla registers.
Eigen::MatrixXd green_matrix(const qsim::StateVector& gs,
                             const model::CouplingSet& cs,
                             const GreenConfig& cfg);

ZkSeries pipeline_zk(const qsim::StateVector& gs, const model::CouplingSet& cs,
                     const GreenConfig& cfg);

}  // namespace kitaev::topo
