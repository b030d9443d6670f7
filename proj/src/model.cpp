#include "kitaev/model.hpp"

#include <bit>
#include <cmath>
#include <optional>

#include "kitaev/error.hpp"
#include "kitaev/io.hpp"

namespace kitaev::model {

using qsim::Complex;
using qsim::Pauli;
using qsim::PauliString;
using qsim::PauliSum;

std::string to_string(Boundary b) {
  return b == Boundary::Open ? "open" : "periodic";
}

Boundary parse_boundary(const std::string& text) {
  if (text == "open" || text == "obc") return Boundary::Open;
  if (text == "periodic" || text == "pbc") return Boundary::Periodic;
  throw InvalidArgument("boundary must be 'open' or 'periodic', got '" + text +
                        "'");
}

CouplingSet CouplingSet::from_spin(double jx, double jy, double jz, double hz) {
  CouplingSet cs;
  cs.spin_ = {jx, jy, jz, hz};
  cs.fermion_ = {(jx + jy) / 4, (jx - jy) / 4, jz, hz};
  cs.fill_majorana();
  return cs;
}

CouplingSet CouplingSet::from_fermion(double t, double delta, double v,
                                      double mu) {
  CouplingSet cs;
  cs.fermion_ = {t, delta, v, mu};
  cs.spin_ = {2 * (t + delta), 2 * (t - delta), v, mu};
  cs.fill_majorana();
  return cs;
}

void CouplingSet::fill_majorana() {
  majorana_ = {(fermion_.t + fermion_.delta) / 2,
               (fermion_.t - fermion_.delta) / 2, fermion_.v / 4,
               fermion_.mu / 2};
}

CouplingSet CouplingSet::swapped_xy() const {
  return from_spin(spin_.jy, spin_.jx, spin_.jz, spin_.hz);
}

std::vector<std::pair<int, int>> bonds(int n_sites, Boundary boundary) {
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j + 1 < n_sites; ++j) out.emplace_back(j, j + 1);
  if (boundary == Boundary::Periodic && n_sites > 2) {
    out.emplace_back(n_sites - 1, 0);
  }
  return out;
}

namespace {

void check_sites(int n_sites) {
  if (n_sites < 2) {
    throw InvalidArgument("n_sites must be >= 2, got " +
                          std::to_string(n_sites));
  }
  if (n_sites > 62) throw InvalidArgument("n_sites must be <= 62");
}

PauliString two_site(int n, int a, int b, Pauli p, double c) {
  PauliString s(n, c);
  s.set(a, p).set(b, p);
  return s;
}

inline int occupation(std::uint64_t b, int q) {
  return 1 - static_cast<int>((b >> q) & 1U);
}

struct Ladder {
  int site;
  bool dagger;
};

// Applies the operator product ops[0] ops[1] ... to basis state b (rightmost
// first). Returns the signed result or nullopt when it annihilates b.
std::optional<std::pair<double, std::uint64_t>> apply_ladders(
    std::uint64_t b, std::initializer_list<Ladder> ops) {
  double sign = 1.0;
  for (auto it = std::rbegin(ops); it != std::rend(ops); ++it) {
    const int n = occupation(b, it->site);
    if (it->dagger == (n == 1)) return std::nullopt;
    // (-1)^{number of occupied sites before q}
    const std::uint64_t below = (std::uint64_t{1} << it->site) - 1;
    const int empty_below = std::popcount(b & below);
    if ((it->site - empty_below) & 1) sign = -sign;
    b ^= std::uint64_t{1} << it->site;
  }
  return std::make_pair(sign, b);
}

}  // namespace

PauliSum spin_hamiltonian(const CouplingSet& cs, int n_sites,
                          Boundary boundary) {
  check_sites(n_sites);
  const auto& s = cs.spin();
  PauliSum h(n_sites);
  for (auto [a, b] : bonds(n_sites, boundary)) {
    h.add(two_site(n_sites, a, b, Pauli::X, -s.jx / 4));
    h.add(two_site(n_sites, a, b, Pauli::Y, -s.jy / 4));
    h.add(two_site(n_sites, a, b, Pauli::Z, -s.jz / 4));
  }
  for (int q = 0; q < n_sites; ++q) {
    PauliString z(n_sites, -s.hz / 2);
    h.add(z.set(q, Pauli::Z));
  }
  return h.canonical();
}

std::vector<std::pair<std::uint64_t, double>> fock_column(
    const CouplingSet& cs, int n_sites, Boundary boundary, std::uint64_t col) {
  const auto& f = cs.fermion();
  std::vector<std::pair<std::uint64_t, double>> out;
  double diag = 0.0;
  auto push = [&](double coef, std::initializer_list<Ladder> ops) {
    if (coef == 0.0) return;
    if (auto r = apply_ladders(col, ops)) {
      out.emplace_back(r->second, coef * r->first);
    }
  };
  for (auto [i, j] : bonds(n_sites, boundary)) {
    push(-f.t, {{i, true}, {j, false}});
    push(-f.t, {{j, true}, {i, false}});
    push(-f.delta, {{i, true}, {j, true}});
    push(-f.delta, {{j, false}, {i, false}});
    diag -= f.v * (occupation(col, i) - 0.5) * (occupation(col, j) - 0.5);
  }
  for (int q = 0; q < n_sites; ++q) diag -= f.mu * (occupation(col, q) - 0.5);
  out.emplace_back(col, diag);
  return out;
}

Eigen::MatrixXd fermion_fock_matrix(const CouplingSet& cs, int n_sites,
                                    Boundary boundary, int dense_limit) {
  check_sites(n_sites);
  if (n_sites > dense_limit) {
    throw ResourceLimit("fermion_fock_matrix: " + std::to_string(n_sites) +
                        " sites exceeds the dense limit of " +
                        std::to_string(dense_limit));
  }
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (auto [r, v] : fock_column(cs, n_sites, boundary,
                                   static_cast<std::uint64_t>(c))) {
      h(static_cast<Eigen::Index>(r), c) += v;
    }
  }
  return h;
}

PauliString majorana_string(int site, MajoranaMode mode, int n_sites) {
  if (site < 1 || site > n_sites) {
    throw InvalidArgument("majorana_string: site " + std::to_string(site) +
                          " outside 1.." + std::to_string(n_sites));
  }
  const int q = site - 1;
  // prod_{i<q} (-Z_i) contributes (-1)^q.
  double sign = (q % 2 == 0) ? 1.0 : -1.0;
  if (mode == MajoranaMode::Antisymmetric) sign = -sign;
  PauliString p(n_sites, sign);
  for (int i = 0; i < q; ++i) p.set(i, Pauli::Z);
  p.set(q, mode == MajoranaMode::Symmetric ? Pauli::X : Pauli::Y);
  return p;
}

PauliSum majorana_hamiltonian(const CouplingSet& cs, int n_sites,
                              Boundary boundary) {
  check_sites(n_sites);
  const auto& m = cs.majorana();
  const Complex i{0.0, 1.0};
  auto gs = [&](int q) {
    return majorana_string(q + 1, MajoranaMode::Symmetric, n_sites);
  };
  auto ga = [&](int q) {
    return majorana_string(q + 1, MajoranaMode::Antisymmetric, n_sites);
  };
  PauliSum h(n_sites);
  for (auto [a, b] : bonds(n_sites, boundary)) {
    h.add(-i * m.g_minus * (gs(a) * ga(b)));
    h.add(i * m.g_plus * (ga(a) * gs(b)));
    h.add(m.zeta * (gs(a) * ga(a) * gs(b) * ga(b)));
  }
  for (int q = 0; q < n_sites; ++q) h.add(-i * m.eta * (gs(q) * ga(q)));
  return h.canonical();
}

PauliString parity_string(int n_sites) {
  if (n_sites < 1 || n_sites % 4 != 0) {
    throw UnsupportedSize(
        "fermion parity is defined here only for N = 0 (mod 4), where the "
        "(-i)^N prefactor is 1; got N = " +
        std::to_string(n_sites));
  }
  PauliString p(n_sites);
  for (int q = 0; q < n_sites; ++q) p.set(q, Pauli::Z);
  return p;
}

ParameterPoint parameter_point_from_text(const std::string& text) {
  const auto cfg = io::KeyValueConfig::parse(text);
  const bool spin = cfg.has("jx") || cfg.has("jy") || cfg.has("jz") ||
                    cfg.has("hz");
  const bool fermion = cfg.has("t") || cfg.has("delta") || cfg.has("v") ||
                       cfg.has("mu");
  if (spin && fermion) {
    throw InvalidArgument(
        "parameter file mixes spin (jx, jy, jz, hz) and fermion "
        "(t, delta, v, mu) keys");
  }
  ParameterPoint p;
  if (fermion) {
    p.couplings = CouplingSet::from_fermion(
        cfg.get_double("t").value_or(0.0), cfg.get_double("delta").value_or(0.0),
        cfg.get_double("v").value_or(0.0), cfg.get_double("mu").value_or(0.0));
  } else {
    p.couplings = CouplingSet::from_spin(
        cfg.get_double("jx").value_or(0.0), cfg.get_double("jy").value_or(0.0),
        cfg.get_double("jz").value_or(0.0), cfg.get_double("hz").value_or(0.0));
  }
  if (auto n = cfg.get_int("n_sites")) p.n_sites = *n;
  if (auto b = cfg.get("boundary")) p.boundary = parse_boundary(*b);
  return p;
}

ParameterPoint load_parameter_point(const std::string& path) {
  return parameter_point_from_text(io::read_file(path));
}

std::string to_text(const ParameterPoint& p) {
  const auto& s = p.couplings.spin();
  std::string out;
  out += "jx = " + io::format_double(s.jx) + "\n";
  out += "jy = " + io::format_double(s.jy) + "\n";
  out += "jz = " + io::format_double(s.jz) + "\n";
  out += "hz = " + io::format_double(s.hz) + "\n";
  out += "n_sites = " + std::to_string(p.n_sites) + "\n";
  out += "boundary = " + to_string(p.boundary) + "\n";
  return out;
}

}  // namespace kitaev::model
