#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/model.hpp"
#include "kitaev/qsim/state.hpp"
#include "kitaev/winding.hpp"

namespace kitaev::ed {

/// Full eigendecomposition of one parity block. basis[i] is the register
/// index of block row i.
struct SectorSpectrum {
  int parity = +1;
  std::vector<std::uint64_t> basis;
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXd vectors;   // columns
};

/// Both parity blocks of H_K at one parameter point.
class Spectrum {
 public:
  Spectrum(model::CouplingSet cs, int n_sites, model::Boundary boundary,
           SectorSpectrum even, SectorSpectrum odd);

  const model::CouplingSet& couplings() const { return cs_; }
  int n_sites() const { return n_sites_; }
  model::Boundary boundary() const { return boundary_; }

  const SectorSpectrum& sector(int parity) const;
  double ground_energy(int parity) const;
  /// Parity of the lower of the two block ground states.
  int lowest_parity() const;

  /// Eigenvector `index` of the block, embedded in the full register.
  qsim::StateVector state(int parity, int index = 0) const;

 private:
  model::CouplingSet cs_;
  int n_sites_;
  model::Boundary boundary_;
  SectorSpectrum even_;
  SectorSpectrum odd_;
};

/// Whole spectrum with parity labels, merged and sorted. Intended for small
/// systems: states are stored densely.
struct EigenSolution {
  Eigen::VectorXd energies;
  Eigen::MatrixXd states;
  std::vector<int> parities;
};

inline constexpr int kDefaultEdLimit = 14;

/// Dense diagonalization of both parity blocks, built directly in the
/// fermion Fock basis (model::fock_column).
Spectrum diagonalize(const model::CouplingSet& cs, int n_sites,
                     model::Boundary boundary,
                     int dense_limit = kDefaultEdLimit);

/// Same as diagonalize, but reads/writes a binary cache file under
/// cache_dir keyed by the parameter point.
Spectrum diagonalize_cached(const model::CouplingSet& cs, int n_sites,
                            model::Boundary boundary,
                            const std::string& cache_dir,
                            int dense_limit = kDefaultEdLimit);

EigenSolution eigen_solution(const Spectrum& spectrum);

std::pair<double, qsim::StateVector> ground_in_parity(
    const model::CouplingSet& cs, int n_sites, model::Boundary boundary,
    int parity);

/// Cache file helpers. Layout (little-endian):
///   char[4] "KTED", u32 version (=1), i32 n_sites, i32 boundary (0 open,
///   1 periodic), f64 jx, jy, jz, hz, then for parity +1 and -1:
///   i32 parity, u64 dim, u64 basis[dim], f64 energies[dim],
///   f64 vectors[dim*dim] column-major.
void save_spectrum(const std::string& path, const Spectrum& spectrum);
Spectrum load_spectrum(const std::string& path);
std::string cache_key(const model::CouplingSet& cs, int n_sites,
                      model::Boundary boundary);

inline constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

/// Exact damped time integral
///   g = -2 int_0^T dt e^{-delta t} Re <gs| e^{iHt} L e^{-iHt} R |gs>
/// evaluated as a spectral sum over both parity blocks. With T infinite
/// this is -2 sum_n [Re(c_n) delta + Im(c_n) w_n] / (delta^2 + w_n^2),
/// c_n = <gs|L|n><n|R|gs>, w_n = E_n - E_gs. At delta = 0 and infinite T,
/// terms with |w_n| < 1e-12 are skipped (principal sum), and a degenerate
/// block ground state is rejected.
double green_exact(const Spectrum& spectrum, const qsim::PauliString& left,
                   const qsim::PauliString& right, double delta,
                   double cutoff_time = kInfiniteTime, int gs_parity = +1);

/// g_{j,j'} with L = gamma^s_j, R = gamma^a_{j'} (sites 1-indexed).
double green_rs_exact(const Spectrum& spectrum, int j, int jp, double delta,
                      double cutoff_time = kInfiniteTime, int gs_parity = +1);

/// Full N x N matrix g_{j,j'}; entry (j-1, j'-1).
Eigen::MatrixXd green_matrix_exact(const Spectrum& spectrum, double delta,
                                   double cutoff_time = kInfiniteTime,
                                   int gs_parity = +1);

topo::ZkSeries exact_zk(const Spectrum& spectrum, double delta,
                        double cutoff_time = kInfiniteTime, int gs_parity = +1);
topo::WindingResult exact_winding(const Spectrum& spectrum, double delta,
                                  double cutoff_time = kInfiniteTime,
                                  int gs_parity = +1);

}  // namespace kitaev::ed
