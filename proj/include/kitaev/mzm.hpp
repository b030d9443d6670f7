#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/model.hpp"
#include "kitaev/qsim/gate.hpp"
#include "kitaev/qsim/state.hpp"
#include "kitaev/vqe.hpp"

namespace kitaev::mzm {

enum class Backend { Direct, Circuit };

std::string to_string(Backend b);
Backend parse_backend(const std::string& text);

/// |<gs+| gamma_j^mode |gs->| from two states of opposite definite parity.
double transfer_amp(const qsim::StateVector& gs_plus,
                    const qsim::StateVector& gs_minus, int j,
                    model::MajoranaMode mode);

/// Same from preparation circuits on |0...0>. The circuit backend runs
/// prep(-), gamma, prep(+)^dag and returns sqrt(P(0...0)).
double transfer_amp(const qsim::Circuit& gs_plus_prep,
                    const qsim::Circuit& gs_minus_prep, int n_sites, int j,
                    model::MajoranaMode mode, Backend backend);

struct MzmProfile {
  int n_sites = 0;
  model::CouplingSet couplings;
  std::string source;  // "ed" or "vqe"
  std::vector<double> amplitude_s;
  std::vector<double> amplitude_a;
  double energy_plus = 0.0;
  double energy_minus = 0.0;
  /// False if either VQE run did not meet its stopping criterion.
  bool converged = true;
};

/// Profile from two given states.
MzmProfile profile_from_states(const qsim::StateVector& gs_plus,
                               const qsim::StateVector& gs_minus);

/// Profile from the open-chain ED ground states of both sectors.
MzmProfile profile_ed(const model::CouplingSet& cs, int n_sites);

/// Profile from VQE ground states of both sectors.
MzmProfile profile(const model::CouplingSet& cs, int n_sites,
                   const vqe::VqeConfig& config, Backend backend);

struct TbMajoranaRef {
  Eigen::VectorXd singular_values;  // ascending
  Eigen::MatrixXd u;                // columns in the same order
  Eigen::MatrixXd v;
  /// |U_{j1}| and |V_{j1}|.
  Eigen::VectorXd profile_s;
  Eigen::VectorXd profile_a;
  /// Set when the interaction is nonzero and was dropped.
  std::optional<std::string> warning;
};

/// SVD of the N x N tridiagonal matrix with diagonal eta, super-diagonal
/// g_minus and sub-diagonal g_plus. zeta is ignored.
TbMajoranaRef tb_svd(const model::CouplingSet& cs, int n_sites);

}  // namespace kitaev::mzm
