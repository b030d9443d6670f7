#include "kitaev/winding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kitaev/error.hpp"

namespace kitaev::topo {

std::vector<double> momentum_grid(int n_sites) {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw InvalidArgument("momentum grid needs an even N >= 2");
  }
  std::vector<double> k;
  k.reserve(static_cast<std::size_t>(n_sites));
  for (int l = -n_sites / 2; l < n_sites / 2; ++l) {
    k.push_back(2.0 * std::numbers::pi * l / n_sites);
  }
  return k;
}

ZkSeries zk_series(const Eigen::MatrixXd& green, int n_sites) {
  if (green.rows() != n_sites || green.cols() != n_sites) {
    throw InvalidArgument("zk_series: green matrix must be N x N");
  }
  ZkSeries out;
  out.momenta = momentum_grid(n_sites);
  for (double k : out.momenta) {
    std::complex<double> z = 0.0;
    for (int j = 0; j < n_sites; ++j) {
      for (int jp = 0; jp < n_sites; ++jp) {
        z += green(j, jp) * std::polar(1.0, -(j - jp) * k);
      }
    }
    out.values.push_back(z / (2.0 * n_sites));
  }
  return out;
}

WindingResult analyze_winding(const ZkSeries& zk) {
  const std::size_t n = zk.values.size();
  if (n < 2) throw InvalidArgument("winding: need at least two momenta");
  WindingResult r;
  r.min_abs = std::abs(zk.values[0]);
  for (const auto& z : zk.values) r.min_abs = std::min(r.min_abs, std::abs(z));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = zk.values[i];
    const auto& b = zk.values[(i + 1) % n];
    r.increments.push_back(std::arg(b * std::conj(a)));
    r.raw_angle += r.increments.back();
  }
  r.winding = static_cast<int>(
      std::lround(r.raw_angle / (2.0 * std::numbers::pi)));
  return r;
}

WindingResult winding(const ZkSeries& zk) {
  WindingResult r = analyze_winding(zk);
  if (r.min_abs < 1e-9) {
    throw IllDefinedWinding("min |Z_k| = " + std::to_string(r.min_abs) +
                            " is below 1e-9");
  }
  const double turns = r.raw_angle / (2.0 * std::numbers::pi);
  if (std::abs(turns - r.winding) > 0.1) {
    throw InconsistentWinding("accumulated angle is " + std::to_string(turns) +
                              " turns, not close to an integer");
  }
  return r;
}

}  // namespace kitaev::topo
