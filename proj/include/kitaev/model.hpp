#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/qsim/pauli.hpp"

namespace kitaev::model {

enum class Boundary { Open, Periodic };

std::string to_string(Boundary b);
Boundary parse_boundary(const std::string& text);

struct FermionView {
  double t = 0.0;      // hopping
  double delta = 0.0;  // p-wave pairing
  double v = 0.0;      // nearest-neighbour interaction
  double mu = 0.0;     // chemical potential
};

struct SpinView {
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
  double hz = 0.0;
};

struct MajoranaView {
  double g_plus = 0.0;
  double g_minus = 0.0;
  double zeta = 0.0;
  double eta = 0.0;
};

/// One parameter point, held simultaneously in its fermion, spin and
/// Majorana forms:
///   t = (jx + jy)/4, delta = (jx - jy)/4, v = jz, mu = hz,
///   g_pm = (t +- delta)/2, zeta = v/4, eta = mu/2.
class CouplingSet {
 public:
  CouplingSet() = default;

  static CouplingSet from_spin(double jx, double jy, double jz, double hz);
  static CouplingSet from_fermion(double t, double delta, double v, double mu);

  const FermionView& fermion() const { return fermion_; }
  const SpinView& spin() const { return spin_; }
  const MajoranaView& majorana() const { return majorana_; }

  /// Same point with jx and jy exchanged (delta -> -delta).
  CouplingSet swapped_xy() const;

 private:
  void fill_majorana();

  FermionView fermion_;
  SpinView spin_;
  MajoranaView majorana_;
};

inline constexpr int kDefaultDenseLimit = 14;

/// Bonds as 0-indexed qubit pairs (j, j+1); periodic appends (n-1, 0).
std::vector<std::pair<int, int>> bonds(int n_sites, Boundary boundary);

/// -sum_a J_a sum_j S^a_j S^a_{j+1} - hz sum_j S^z_j with S = sigma/2.
qsim::PauliSum spin_hamiltonian(const CouplingSet& cs, int n_sites,
                                Boundary boundary);

/// Nonzero matrix elements <row|H_K|col> of the fermion Hamiltonian for one
/// basis column. Basis index layout is the qubit layout: bit q = 0 means site
/// q+1 is occupied (n = S^z + 1/2), and the fermion operators carry the
/// Jordan-Wigner sign (-1)^{sum_{p<q} n_p}.
std::vector<std::pair<std::uint64_t, double>> fock_column(
    const CouplingSet& cs, int n_sites, Boundary boundary, std::uint64_t col);

/// Dense H_K. Periodic boundary adds the fermionic wrap bond (no spin twist).
Eigen::MatrixXd fermion_fock_matrix(const CouplingSet& cs, int n_sites,
                                    Boundary boundary,
                                    int dense_limit = kDefaultDenseLimit);

enum class MajoranaMode { Symmetric, Antisymmetric };

/// Jordan-Wigner image of gamma_j (j is 1-indexed):
///   gamma^s_j =  [prod_{i<j} (-Z_i)] X_j
///   gamma^a_j = -[prod_{i<j} (-Z_i)] Y_j
qsim::PauliString majorana_string(int site, MajoranaMode mode, int n_sites);

/// Majorana-form Hamiltonian assembled from majorana_string products. With
/// periodic boundary the wrap bond is the fermionic one.
qsim::PauliSum majorana_hamiltonian(const CouplingSet& cs, int n_sites,
                                    Boundary boundary);

/// Fermion parity prod_j Z_j. Only N = 0 (mod 4) is supported, where the
/// (-i)^N prefactor of the magnetization parity equals one.
qsim::PauliString parity_string(int n_sites);

/// Parity of a basis index, +1 or -1.
inline int basis_parity(std::uint64_t b) {
  return (__builtin_popcountll(b) & 1) ? -1 : 1;
}

/// Parameter point as read from a flat key-value file.
struct ParameterPoint {
  CouplingSet couplings;
  int n_sites = 12;
  Boundary boundary = Boundary::Open;
};

/// Accepts either {jx, jy, jz, hz} or {t, delta, v, mu}; mixing the two
/// families is an error. Missing keys of the chosen family default to zero.
ParameterPoint parameter_point_from_text(const std::string& text);
ParameterPoint load_parameter_point(const std::string& path);
std::string to_text(const ParameterPoint& p);

}  // namespace kitaev::model
