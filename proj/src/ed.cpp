#include "kitaev/ed.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <lapacke.h>

#include "kitaev/error.hpp"

namespace kitaev::ed {

using model::Boundary;
using model::CouplingSet;
using qsim::Complex;
using qsim::PauliString;
using qsim::StateVector;

Spectrum::Spectrum(CouplingSet cs, int n_sites, Boundary boundary,
                   SectorSpectrum even, SectorSpectrum odd)
    : cs_(cs),
      n_sites_(n_sites),
      boundary_(boundary),
      even_(std::move(even)),
      odd_(std::move(odd)) {}

const SectorSpectrum& Spectrum::sector(int parity) const {
  if (parity == 1) return even_;
  if (parity == -1) return odd_;
  throw InvalidArgument("parity must be +1 or -1");
}

double Spectrum::ground_energy(int parity) const {
  const auto& s = sector(parity);
  if (s.energies.size() == 0) throw std::logic_error("empty parity block");
  return s.energies(0);
}

int Spectrum::lowest_parity() const {
  return ground_energy(-1) < ground_energy(1) ? -1 : 1;
}

StateVector Spectrum::state(int parity, int index) const {
  const auto& s = sector(parity);
  if (index < 0 || index >= s.vectors.cols()) {
    throw InvalidArgument("eigenvector index out of range");
  }
  StateVector out(n_sites_);
  out[0] = 0.0;
  for (std::size_t i = 0; i < s.basis.size(); ++i) {
    out[s.basis[i]] = s.vectors(static_cast<Eigen::Index>(i), index);
  }
  return out;
}

namespace {

void check_size(int n_sites, int dense_limit) {
  if (n_sites < 2) throw InvalidArgument("n_sites must be >= 2");
  if (n_sites > dense_limit) {
    throw ResourceLimit("exact diagonalization: " + std::to_string(n_sites) +
                        " sites exceeds the dense limit of " +
                        std::to_string(dense_limit));
  }
}

// dsyevd plus a residual/orthogonality check. Some optimized BLAS builds
// return garbage on CPUs they misdetect, so a failed check means "use the
// fallback", not an error.
bool lapack_eigensolve(const Eigen::MatrixXd& h, Eigen::VectorXd& energies,
                       Eigen::MatrixXd& vectors) {
  const auto m = h.rows();
  energies.resize(m);
  vectors = h;
  const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L',
                                  static_cast<lapack_int>(m), vectors.data(),
                                  static_cast<lapack_int>(m), energies.data());
  if (info != 0) return false;
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff()) * double(m);
  const Eigen::MatrixXd r = h * vectors - vectors * energies.asDiagonal();
  if (!(r.cwiseAbs().maxCoeff() < 1e-12 * scale)) return false;
  const Eigen::MatrixXd g =
      vectors.transpose() * vectors - Eigen::MatrixXd::Identity(m, m);
  return g.cwiseAbs().maxCoeff() < 1e-12 * double(m);
}

SectorSpectrum solve_block(const CouplingSet& cs, int n_sites,
                           Boundary boundary, int parity) {
  const std::uint64_t dim = std::uint64_t{1} << n_sites;
  SectorSpectrum out;
  out.parity = parity;
  std::vector<std::int64_t> row_of(dim, -1);
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (model::basis_parity(b) == parity) {
      row_of[b] = static_cast<std::int64_t>(out.basis.size());
      out.basis.push_back(b);
    }
  }
  const auto m = static_cast<Eigen::Index>(out.basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    for (auto [r, v] : model::fock_column(cs, n_sites, boundary,
                                          out.basis[static_cast<size_t>(c)])) {
      const auto row = row_of[r];
      if (row < 0) throw std::logic_error("Hamiltonian mixes parity blocks");
      h(row, c) += v;
    }
  }
  // Once the LAPACK path has failed its check, stop trying it.
  static std::atomic<bool> lapack_usable{true};
  if (!lapack_usable || !lapack_eigensolve(h, out.energies, out.vectors)) {
    lapack_usable = false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("eigensolver failed to converge");
    }
    out.energies = es.eigenvalues();
    out.vectors = es.eigenvectors();
  }
  return out;
}

// FNV-1a over the raw parameter bytes.
std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

constexpr std::array<char, 4> kMagic{'K', 'T', 'E', 'D'};
constexpr std::uint32_t kCacheVersion = 1;

template <class T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("truncated spectrum cache file");
  return v;
}

void put_sector(std::ofstream& out, const SectorSpectrum& s) {
  put(out, static_cast<std::int32_t>(s.parity));
  const auto dim = static_cast<std::uint64_t>(s.basis.size());
  put(out, dim);
  out.write(reinterpret_cast<const char*>(s.basis.data()),
            static_cast<std::streamsize>(dim * sizeof(std::uint64_t)));
  out.write(reinterpret_cast<const char*>(s.energies.data()),
            static_cast<std::streamsize>(dim * sizeof(double)));
  out.write(reinterpret_cast<const char*>(s.vectors.data()),
            static_cast<std::streamsize>(dim * dim * sizeof(double)));
}

SectorSpectrum get_sector(std::ifstream& in, int n_sites) {
  SectorSpectrum s;
  s.parity = get<std::int32_t>(in);
  const auto dim = get<std::uint64_t>(in);
  if (dim != (std::uint64_t{1} << (n_sites - 1))) {
    throw std::runtime_error("spectrum cache: block size mismatch");
  }
  const auto m = static_cast<Eigen::Index>(dim);
  s.basis.resize(dim);
  s.energies.resize(m);
  s.vectors.resize(m, m);
  in.read(reinterpret_cast<char*>(s.basis.data()),
          static_cast<std::streamsize>(dim * sizeof(std::uint64_t)));
  in.read(reinterpret_cast<char*>(s.energies.data()),
          static_cast<std::streamsize>(dim * sizeof(double)));
  in.read(reinterpret_cast<char*>(s.vectors.data()),
          static_cast<std::streamsize>(dim * dim * sizeof(double)));
  if (!in) throw std::runtime_error("truncated spectrum cache file");
  return s;
}

// Finite-T damped Fourier factor int_0^T e^{-(delta + i w) t} dt.
Complex damped_factor(double delta, double w, double cutoff) {
  const Complex z{delta, w};
  if (std::isinf(cutoff)) return 1.0 / z;
  if (std::abs(z) < 1e-14) return cutoff;
  return (1.0 - std::exp(-z * cutoff)) / z;
}

void check_green_args(const Spectrum& sp, double delta, double cutoff,
                      int gs_parity) {
  if (!(delta >= 0.0)) throw InvalidArgument("damping delta must be >= 0");
  if (!(cutoff > 0.0)) throw InvalidArgument("cutoff time must be > 0");
  const auto& s = sp.sector(gs_parity);
  if (delta == 0.0 && std::isinf(cutoff) && s.energies.size() > 1 &&
      s.energies(1) - s.energies(0) < 1e-8) {
    throw DegenerateGroundState(
        "ground state is degenerate within its parity block; use delta > 0");
  }
}

// <n|v> for every eigenvector n of the sector.
Eigen::VectorXcd project(const SectorSpectrum& s, const StateVector& v) {
  const auto m = static_cast<Eigen::Index>(s.basis.size());
  Eigen::VectorXcd x(m);
  for (Eigen::Index i = 0; i < m; ++i) x(i) = v[s.basis[static_cast<size_t>(i)]];
  return s.vectors.transpose() * x;
}

// Damped factor F_n for every eigenstate, per sector.
struct Weights {
  Eigen::VectorXcd even;
  Eigen::VectorXcd odd;
};

Weights factors(const Spectrum& sp, double delta, double cutoff,
                int gs_parity) {
  const double e0 = sp.ground_energy(gs_parity);
  Weights w;
  for (int p : {1, -1}) {
    const auto& s = sp.sector(p);
    Eigen::VectorXcd f(s.energies.size());
    for (Eigen::Index n = 0; n < f.size(); ++n) {
      const double om = s.energies(n) - e0;
      if (delta == 0.0 && std::isinf(cutoff) && std::abs(om) < 1e-12) {
        f(n) = 0.0;  // principal sum
      } else {
        f(n) = damped_factor(delta, om, cutoff);
      }
    }
    (p == 1 ? w.even : w.odd) = f;
  }
  return w;
}

}  // namespace

Spectrum diagonalize(const CouplingSet& cs, int n_sites, Boundary boundary,
                     int dense_limit) {
  check_size(n_sites, dense_limit);
  return Spectrum(cs, n_sites, boundary, solve_block(cs, n_sites, boundary, 1),
                  solve_block(cs, n_sites, boundary, -1));
}

std::string cache_key(const CouplingSet& cs, int n_sites, Boundary boundary) {
  const auto& s = cs.spin();
  const std::array<double, 4> p{s.jx, s.jy, s.jz, s.hz};
  std::uint64_t h = 14695981039346656037ULL;
  h = fnv1a(p.data(), sizeof(p), h);
  const std::array<std::int32_t, 2> meta{n_sites,
                                         boundary == Boundary::Open ? 0 : 1};
  h = fnv1a(meta.data(), sizeof(meta), h);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string("ed_") + buf + ".bin";
}

void save_spectrum(const std::string& path, const Spectrum& sp) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(kMagic.data(), kMagic.size());
  put(out, kCacheVersion);
  put(out, static_cast<std::int32_t>(sp.n_sites()));
  put(out, static_cast<std::int32_t>(sp.boundary() == Boundary::Open ? 0 : 1));
  const auto& s = sp.couplings().spin();
  for (double x : {s.jx, s.jy, s.jz, s.hz}) put(out, x);
  put_sector(out, sp.sector(1));
  put_sector(out, sp.sector(-1));
  if (!out) throw std::runtime_error("write failed: " + path);
}

Spectrum load_spectrum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) {
    throw std::runtime_error(path + ": not a spectrum cache file");
  }
  if (get<std::uint32_t>(in) != kCacheVersion) {
    throw std::runtime_error(path + ": unsupported cache version");
  }
  const int n = get<std::int32_t>(in);
  if (n < 2 || n > 30) throw std::runtime_error(path + ": bad n_sites");
  const auto boundary =
      get<std::int32_t>(in) == 0 ? Boundary::Open : Boundary::Periodic;
  std::array<double, 4> p{};
  for (auto& x : p) x = get<double>(in);
  const auto cs = CouplingSet::from_spin(p[0], p[1], p[2], p[3]);
  auto even = get_sector(in, n);
  auto odd = get_sector(in, n);
  if (even.parity != 1 || odd.parity != -1) {
    throw std::runtime_error(path + ": bad sector labels");
  }
  return Spectrum(cs, n, boundary, std::move(even), std::move(odd));
}

Spectrum diagonalize_cached(const CouplingSet& cs, int n_sites,
                            Boundary boundary, const std::string& cache_dir,
                            int dense_limit) {
  namespace fs = std::filesystem;
  check_size(n_sites, dense_limit);
  const fs::path path = fs::path(cache_dir) / cache_key(cs, n_sites, boundary);
  if (fs::exists(path)) {
    auto sp = load_spectrum(path.string());
    const auto& a = sp.couplings().spin();
    const auto& b = cs.spin();
    if (sp.n_sites() == n_sites && sp.boundary() == boundary && a.jx == b.jx &&
        a.jy == b.jy && a.jz == b.jz && a.hz == b.hz) {
      return sp;
    }
  }
  auto sp = diagonalize(cs, n_sites, boundary, dense_limit);
  fs::create_directories(cache_dir);
  save_spectrum(path.string(), sp);
  return sp;
}

EigenSolution eigen_solution(const Spectrum& sp) {
  const auto& e = sp.sector(1);
  const auto& o = sp.sector(-1);
  const Eigen::Index dim = Eigen::Index{1} << sp.n_sites();
  std::vector<std::pair<double, std::pair<int, Eigen::Index>>> order;
  for (Eigen::Index i = 0; i < e.energies.size(); ++i) {
    order.push_back({e.energies(i), {1, i}});
  }
  for (Eigen::Index i = 0; i < o.energies.size(); ++i) {
    order.push_back({o.energies(i), {-1, i}});
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  EigenSolution out;
  out.energies.resize(dim);
  out.states = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const auto [p, i] = order[static_cast<size_t>(c)].second;
    const auto& s = sp.sector(p);
    out.energies(c) = order[static_cast<size_t>(c)].first;
    out.parities.push_back(p);
    for (std::size_t r = 0; r < s.basis.size(); ++r) {
      out.states(static_cast<Eigen::Index>(s.basis[r]), c) =
          s.vectors(static_cast<Eigen::Index>(r), i);
    }
  }
  return out;
}

std::pair<double, StateVector> ground_in_parity(const CouplingSet& cs,
                                                int n_sites, Boundary boundary,
                                                int parity) {
  if (parity != 1 && parity != -1) {
    throw InvalidArgument("parity must be +1 or -1");
  }
  check_size(n_sites, kDefaultEdLimit);
  SectorSpectrum s = solve_block(cs, n_sites, boundary, parity);
  StateVector v(n_sites);
  v[0] = 0.0;
  for (std::size_t i = 0; i < s.basis.size(); ++i) {
    v[s.basis[i]] = s.vectors(static_cast<Eigen::Index>(i), 0);
  }
  return {s.energies(0), v};
}

double green_exact(const Spectrum& sp, const PauliString& left,
                   const PauliString& right, double delta, double cutoff,
                   int gs_parity) {
  check_green_args(sp, delta, cutoff, gs_parity);
  if (left.n_qubits() != sp.n_sites() || right.n_qubits() != sp.n_sites()) {
    throw InvalidArgument("operator size does not match the spectrum");
  }
  const StateVector gs = sp.state(gs_parity, 0);
  StateVector r = gs;
  qsim::apply_pauli(r, right);
  // <gs|L|n> = conj(<n|L^dagger|gs>)
  PauliString ldag = left;
  ldag.set_coefficient(std::conj(left.coefficient()));
  StateVector l = gs;
  qsim::apply_pauli(l, ldag);
  const Weights w = factors(sp, delta, cutoff, gs_parity);
  double g = 0.0;
  for (int p : {1, -1}) {
    const auto& s = sp.sector(p);
    const Eigen::VectorXcd a = project(s, r);
    const Eigen::VectorXcd b = project(s, l);
    const auto& f = p == 1 ? w.even : w.odd;
    for (Eigen::Index n = 0; n < a.size(); ++n) {
      g += (std::conj(b(n)) * a(n) * f(n)).real();
    }
  }
  return -2.0 * g;
}

double green_rs_exact(const Spectrum& sp, int j, int jp, double delta,
                      double cutoff, int gs_parity) {
  const int n = sp.n_sites();
  return green_exact(
      sp, model::majorana_string(j, model::MajoranaMode::Symmetric, n),
      model::majorana_string(jp, model::MajoranaMode::Antisymmetric, n), delta,
      cutoff, gs_parity);
}

Eigen::MatrixXd green_matrix_exact(const Spectrum& sp, double delta,
                                   double cutoff, int gs_parity) {
  check_green_args(sp, delta, cutoff, gs_parity);
  const int n = sp.n_sites();
  const StateVector gs = sp.state(gs_parity, 0);
  const Weights w = factors(sp, delta, cutoff, gs_parity);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (int p : {1, -1}) {
    const auto& s = sp.sector(p);
    const auto m = static_cast<Eigen::Index>(s.basis.size());
    Eigen::MatrixXcd a(m, n);
    Eigen::MatrixXcd b(m, n);
    for (int j = 1; j <= n; ++j) {
      StateVector va = gs;
      qsim::apply_pauli(
          va, model::majorana_string(j, model::MajoranaMode::Antisymmetric, n));
      StateVector vs = gs;
      qsim::apply_pauli(
          vs, model::majorana_string(j, model::MajoranaMode::Symmetric, n));
      a.col(j - 1) = project(s, va);
      b.col(j - 1) = project(s, vs);
    }
    const auto& f = p == 1 ? w.even : w.odd;
    a = f.asDiagonal() * a;
    g += (b.adjoint() * a).real();
  }
  return -2.0 * g;
}

topo::ZkSeries exact_zk(const Spectrum& sp, double delta, double cutoff,
                        int gs_parity) {
  return topo::zk_series(green_matrix_exact(sp, delta, cutoff, gs_parity),
                         sp.n_sites());
}

topo::WindingResult exact_winding(const Spectrum& sp, double delta,
                                  double cutoff, int gs_parity) {
  return topo::winding(exact_zk(sp, delta, cutoff, gs_parity));
}

}  // namespace kitaev::ed
