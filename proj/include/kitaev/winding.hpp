#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace kitaev::topo {

/// Complex many-body pseudo vector Z_k on the grid k = 2*pi*l/N,
/// l = -N/2 .. N/2-1 (ascending).
struct ZkSeries {
  std::vector<double> momenta;
  std::vector<std::complex<double>> values;
};

struct WindingResult {
  int winding = 0;
  /// Sum of principal-branch increments, in radians.
  double raw_angle = 0.0;
  /// Im log(Z_{k+dk} Z_k^*) for each k, cyclic.
  std::vector<double> increments;
  double min_abs = 0.0;
};

/// Momentum grid k_l = 2*pi*l/N for l = -N/2 .. N/2-1. N must be even.
std::vector<double> momentum_grid(int n_sites);

/// Z_k = (1/2N) sum_{j,j'} exp[-i (j - j') k] g_{j,j'}.
ZkSeries zk_series(const Eigen::MatrixXd& green, int n_sites);

/// Cyclic sum of Im log(Z_{k+dk} Z_k^*) over the grid divided by 2*pi.
/// Throws IllDefinedWinding if some |Z_k| < 1e-9 and InconsistentWinding if
/// the raw sum is more than 0.1 away from an integer.
WindingResult winding(const ZkSeries& zk);

/// Same accumulation without the validity checks (diagnostics).
WindingResult analyze_winding(const ZkSeries& zk);

}  // namespace kitaev::topo
