#include "kitaev/mzm.hpp"

#include <cmath>

#include "kitaev/ed.hpp"
#include "kitaev/error.hpp"
#include "kitaev/qsim/pauli.hpp"

namespace kitaev::mzm {

using model::MajoranaMode;
using qsim::StateVector;

std::string to_string(Backend b) {
  return b == Backend::Direct ? "direct" : "circuit";
}

Backend parse_backend(const std::string& text) {
  if (text == "direct") return Backend::Direct;
  if (text == "circuit") return Backend::Circuit;
  throw InvalidArgument("backend must be 'direct' or 'circuit'");
}

namespace {

// <P> for P = prod Z, or 0 if the state has no definite parity.
int definite_parity(const StateVector& s) {
  double p = 0.0;
  for (std::size_t b = 0; b < s.size(); ++b) {
    p += model::basis_parity(b) * std::norm(s[b]);
  }
  if (std::abs(p - 1.0) < 1e-8) return 1;
  if (std::abs(p + 1.0) < 1e-8) return -1;
  return 0;
}

void check_pair(const StateVector& plus, const StateVector& minus) {
  if (plus.n_qubits() != minus.n_qubits()) {
    throw InvalidArgument("transfer_amp: register sizes differ");
  }
  const int pp = definite_parity(plus);
  const int pm = definite_parity(minus);
  if (pp != 0 && pp == pm) {
    throw InvalidArgument(
        "transfer_amp: both states have the same parity; the amplitude "
        "vanishes identically");
  }
}

}  // namespace

double transfer_amp(const StateVector& gs_plus, const StateVector& gs_minus,
                    int j, MajoranaMode mode) {
  check_pair(gs_plus, gs_minus);
  StateVector v = gs_minus;
  qsim::apply_pauli(v, model::majorana_string(j, mode, v.n_qubits()));
  return std::abs(qsim::inner(gs_plus, v));
}

double transfer_amp(const qsim::Circuit& gs_plus_prep,
                    const qsim::Circuit& gs_minus_prep, int n_sites, int j,
                    MajoranaMode mode, Backend backend) {
  StateVector minus(n_sites);
  qsim::apply(minus, gs_minus_prep);
  if (backend == Backend::Direct) {
    StateVector plus(n_sites);
    qsim::apply(plus, gs_plus_prep);
    return transfer_amp(plus, minus, j, mode);
  }
  {
    StateVector plus(n_sites);
    qsim::apply(plus, gs_plus_prep);
    check_pair(plus, minus);
  }
  qsim::apply_pauli(minus, model::majorana_string(j, mode, n_sites));
  qsim::apply(minus, qsim::inverse(gs_plus_prep));
  return std::sqrt(qsim::prob_basis(minus, std::string(n_sites, '0')));
}

MzmProfile profile_from_states(const StateVector& gs_plus,
                               const StateVector& gs_minus) {
  MzmProfile p;
  p.n_sites = gs_plus.n_qubits();
  for (int j = 1; j <= p.n_sites; ++j) {
    p.amplitude_s.push_back(
        transfer_amp(gs_plus, gs_minus, j, MajoranaMode::Symmetric));
    p.amplitude_a.push_back(
        transfer_amp(gs_plus, gs_minus, j, MajoranaMode::Antisymmetric));
  }
  return p;
}

MzmProfile profile_ed(const model::CouplingSet& cs, int n_sites) {
  const auto sp = ed::diagonalize(cs, n_sites, model::Boundary::Open);
  auto p = profile_from_states(sp.state(1), sp.state(-1));
  p.couplings = cs;
  p.source = "ed";
  p.energy_plus = sp.ground_energy(1);
  p.energy_minus = sp.ground_energy(-1);
  return p;
}

MzmProfile profile(const model::CouplingSet& cs, int n_sites,
                   const vqe::VqeConfig& config, Backend backend) {
  const auto rp = vqe::optimize(cs, n_sites, config, 1);
  const auto rm = vqe::optimize(cs, n_sites, config, -1);
  const auto ap = vqe::build_ansatz(n_sites, config.layers, rp.angles, 1);
  const auto am = vqe::build_ansatz(n_sites, config.layers, rm.angles, -1);
  MzmProfile p;
  p.n_sites = n_sites;
  for (int j = 1; j <= n_sites; ++j) {
    p.amplitude_s.push_back(transfer_amp(ap.gates, am.gates, n_sites, j,
                                         MajoranaMode::Symmetric, backend));
    p.amplitude_a.push_back(transfer_amp(ap.gates, am.gates, n_sites, j,
                                         MajoranaMode::Antisymmetric, backend));
  }
  p.couplings = cs;
  p.source = "vqe";
  p.energy_plus = rp.energy;
  p.energy_minus = rm.energy;
  p.converged = rp.converged && rm.converged;
  return p;
}

TbMajoranaRef tb_svd(const model::CouplingSet& cs, int n_sites) {
  if (n_sites < 2) throw InvalidArgument("n_sites must be >= 2");
  const auto& m = cs.majorana();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_sites, n_sites);
  for (int i = 0; i < n_sites; ++i) {
    h(i, i) = m.eta;
    if (i + 1 < n_sites) {
      h(i, i + 1) = m.g_minus;
      h(i + 1, i) = m.g_plus;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeFullU |
                                               Eigen::ComputeFullV);
  TbMajoranaRef r;
  r.singular_values = svd.singularValues().reverse();
  r.u = svd.matrixU().rowwise().reverse();
  r.v = svd.matrixV().rowwise().reverse();
  r.profile_s = r.u.col(0).cwiseAbs();
  r.profile_a = r.v.col(0).cwiseAbs();
  if (m.zeta != 0.0) {
    r.warning = "interaction ignored in the tight-binding reference";
  }
  return r;
}

}  // namespace kitaev::mzm
