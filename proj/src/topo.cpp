#include "kitaev/topo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>

#include "kitaev/error.hpp"

namespace kitaev::topo {

using model::CouplingSet;
using model::MajoranaMode;
using qsim::Complex;
using qsim::Gate;
using qsim::PauliString;
using qsim::StateVector;

std::pair<double, double> tb_pseudo_vector(const CouplingSet& cs, double k) {
  const auto& f = cs.fermion();
  return {-f.t * std::cos(k) - f.mu / 2, -f.delta * std::sin(k)};
}

double tb_bogolon_energy(const CouplingSet& cs, double k) {
  const auto [e, d] = tb_pseudo_vector(cs, k);
  return std::hypot(e, d);
}

int tb_winding(const CouplingSet& cs, int k_resolution) {
  if (k_resolution < 8) throw InvalidArgument("k_resolution must be >= 8");
  double total = 0.0;
  double prev = 0.0;
  double min_norm = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= k_resolution; ++i) {
    const double k = -std::numbers::pi + 2 * std::numbers::pi * i / k_resolution;
    const auto [e, d] = tb_pseudo_vector(cs, k);
    min_norm = std::min(min_norm, e * e + d * d);
    const double ang = std::atan2(e, d);
    if (i > 0) total += std::remainder(ang - prev, 2 * std::numbers::pi);
    prev = ang;
  }
  // the pseudo vector vanishes exactly at cos k = -mu/(2t) when Delta = 0,
  // which a finite grid can miss
  const auto& f = cs.fermion();
  if (f.delta == 0.0 && f.t != 0.0 && std::abs(f.mu / (2 * f.t)) <= 1.0) {
    min_norm = 0.0;
  }
  if (min_norm <= 1e-12) {
    throw IllDefinedWinding("tight-binding spectrum is gapless");
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

double tb_ground_energy(const CouplingSet& cs, int n_sites) {
  if (n_sites < 2) throw InvalidArgument("n_sites must be >= 2");
  double e = 0.0;
  for (int l = -n_sites / 2; l < n_sites - n_sites / 2; ++l) {
    e -= tb_bogolon_energy(cs, 2 * std::numbers::pi * l / n_sites);
  }
  return e;
}

std::string to_string(Backend b) {
  return b == Backend::Direct ? "direct" : "hadamard-test";
}

Backend parse_backend(const std::string& text) {
  if (text == "direct") return Backend::Direct;
  if (text == "hadamard-test" || text == "hadamard") return Backend::HadamardTest;
  throw InvalidArgument("backend must be 'direct' or 'hadamard-test'");
}

long GreenConfig::steps() const {
  return std::lround(cutoff() / dt);
}

void GreenConfig::validate() const {
  if (!(delta > 0.0)) throw InvalidArgument("delta must be > 0");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be > 0");
  if (!(t_delta >= 1.0)) throw InvalidArgument("T * delta must be >= 1");
  if (steps() < 1) throw InvalidArgument("cutoff time shorter than dt");
  if (threads < 1) throw InvalidArgument("threads must be >= 1");
  if (overlap.shots && *overlap.shots == 0) {
    throw InvalidArgument("shots must be >= 1");
  }
}

std::optional<std::string> GreenConfig::warning() const {
  if (t_delta < 3.0) {
    return "T * delta = " + std::to_string(t_delta) +
           " < 3: finite-time truncation is not small";
  }
  return std::nullopt;
}

namespace {

PauliString widen(const PauliString& p, int n) {
  PauliString out(n, p.coefficient());
  for (int q = 0; q < p.n_qubits(); ++q) out.set(q, p.letter(q));
  return out;
}

// Re <a| P |b> without materializing P|b>.
double re_matrix_element(const StateVector& a, const PauliString& p,
                         const StateVector& b) {
  const std::uint64_t x = p.x_mask();
  Complex acc = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    acc += std::conj(a[i ^ x]) * p.phase_on(i) * b[i];
  }
  return (p.coefficient() * acc).real();
}

void check_ops(const StateVector& gs, const PauliString& l,
               const PauliString& r) {
  if (l.n_qubits() != gs.n_qubits() || r.n_qubits() != gs.n_qubits()) {
    throw InvalidArgument("operator size does not match the state");
  }
}

StateVector with_ancilla(const StateVector& gs) {
  const int n = gs.n_qubits();
  StateVector s(n + 1);
  for (std::size_t i = 0; i < gs.size(); ++i) s[i] = gs[i];
  return s;
}

// <X> on the top qubit, exact or sampled.
double ancilla_x(StateVector s, const OverlapOptions& opts,
                 std::mt19937_64* rng) {
  const std::size_t half = s.size() / 2;
  if (!opts.shots) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < half; ++i) acc += std::conj(s[i]) * s[i + half];
    return 2.0 * acc.real();
  }
  qsim::apply(s, Gate::h(s.n_qubits() - 1));
  double p0 = 0.0;
  for (std::size_t i = 0; i < half; ++i) p0 += std::norm(s[i]);
  std::binomial_distribution<std::uint64_t> draw(*opts.shots,
                                                 std::clamp(p0, 0.0, 1.0));
  const auto zeros = draw(*rng);
  return 2.0 * static_cast<double>(zeros) / static_cast<double>(*opts.shots) -
         1.0;
}

// Hadamard-test register after H and the anti-controlled right operator.
StateVector hadamard_register(const StateVector& gs, const PauliString& right) {
  const int n = gs.n_qubits();
  StateVector s = with_ancilla(gs);
  qsim::apply(s, Gate::h(n));
  qsim::apply(s, qsim::decompose_controlled_pauli(n, widen(right, n + 1), 0));
  return s;
}

double hadamard_readout(const StateVector& reg, const PauliString& left,
                        const OverlapOptions& opts, std::mt19937_64* rng) {
  const int n = reg.n_qubits() - 1;
  StateVector s = reg;
  qsim::apply(s, qsim::decompose_controlled_pauli(n, widen(left, n + 1), 1));
  return ancilla_x(std::move(s), opts, rng);
}

std::mt19937_64 column_rng(std::uint64_t seed, std::size_t column) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffU),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(column)};
  return std::mt19937_64(seq);
}

// Accumulates -2 * trapezoid sums for the given columns of rights.
void green_columns(const StateVector& gs, const CouplingSet& cs,
                   const std::vector<PauliString>& lefts,
                   const std::vector<PauliString>& rights,
                   const GreenConfig& cfg, std::size_t c0, std::size_t c1,
                   Eigen::MatrixXd& g) {
  const int n = gs.n_qubits();
  const long steps = cfg.steps();
  const auto step = evolve::trotter_step(cs, n, cfg.dt, cfg.boundary);
  auto weight = [&](long i) {
    const double w = cfg.dt * std::exp(-cfg.delta * cfg.dt * i);
    return (i == 0 || i == steps) ? 0.5 * w : w;
  };

  if (cfg.overlap.backend == Backend::Direct) {
    StateVector u = gs;
    std::vector<StateVector> v;
    for (std::size_t c = c0; c < c1; ++c) {
      v.push_back(gs);
      qsim::apply_pauli(v.back(), rights[c]);
    }
    for (long i = 0; i <= steps; ++i) {
      const double w = weight(i);
      for (std::size_t r = 0; r < lefts.size(); ++r) {
        StateVector lu = u;
        // <u|L|v> = <L^dag u|v>
        PauliString ldag = lefts[r];
        ldag.set_coefficient(std::conj(ldag.coefficient()));
        qsim::apply_pauli(lu, ldag);
        for (std::size_t c = c0; c < c1; ++c) {
          g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
              w * qsim::inner(lu, v[c - c0]).real();
        }
      }
      if (i == steps) break;
      qsim::apply(u, step);
      for (auto& s : v) qsim::apply(s, step);
    }
  } else {
    for (std::size_t c = c0; c < c1; ++c) {
      auto rng = column_rng(cfg.overlap.seed, c);
      StateVector reg = hadamard_register(gs, rights[c]);
      for (long i = 0; i <= steps; ++i) {
        const double w = weight(i);
        for (std::size_t r = 0; r < lefts.size(); ++r) {
          g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
              w * hadamard_readout(reg, lefts[r], cfg.overlap, &rng);
        }
        if (i == steps) break;
        qsim::apply(reg, step);
      }
    }
  }
  for (std::size_t c = c0; c < c1; ++c) {
    g.col(static_cast<Eigen::Index>(c)) *= -2.0;
  }
}

Eigen::MatrixXd green_block(const StateVector& gs, const CouplingSet& cs,
                            const std::vector<PauliString>& lefts,
                            const std::vector<PauliString>& rights,
                            const GreenConfig& cfg) {
  cfg.validate();
  for (const auto& l : lefts) check_ops(gs, l, l);
  for (const auto& r : rights) check_ops(gs, r, r);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(lefts.size()),
      static_cast<Eigen::Index>(rights.size()));
  const std::size_t nc = rights.size();
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), nc);
  if (workers <= 1) {
    green_columns(gs, cs, lefts, rights, cfg, 0, nc, g);
    return g;
  }
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t c0 = nc * w / workers;
    const std::size_t c1 = nc * (w + 1) / workers;
    jobs.push_back(std::async(std::launch::async, [&, c0, c1] {
      green_columns(gs, cs, lefts, rights, cfg, c0, c1, g);
    }));
  }
  for (auto& j : jobs) j.get();
  return g;
}

}  // namespace

double overlap_re(const StateVector& gs, const CouplingSet& cs,
                  const PauliString& left, const PauliString& right, double t,
                  double dt, model::Boundary boundary,
                  const OverlapOptions& opts) {
  check_ops(gs, left, right);
  const int n = gs.n_qubits();
  const long steps = evolve::step_count(t, dt);
  const auto step = evolve::trotter_step(cs, n, dt, boundary);
  if (opts.backend == Backend::Direct) {
    StateVector u = gs;
    StateVector v = gs;
    qsim::apply_pauli(v, right);
    evolve::evolve_steps(u, step, steps);
    evolve::evolve_steps(v, step, steps);
    return re_matrix_element(u, left, v);
  }
  if (opts.shots && *opts.shots == 0) {
    throw InvalidArgument("shots must be >= 1");
  }
  StateVector reg = hadamard_register(gs, right);
  evolve::evolve_steps(reg, step, steps);
  auto rng = column_rng(opts.seed, 0);
  return hadamard_readout(reg, left, opts, &rng);
}

double overlap_re(const StateVector& gs, const CouplingSet& cs, int j, int jp,
                  double t, double dt, model::Boundary boundary,
                  const OverlapOptions& opts) {
  const int n = gs.n_qubits();
  return overlap_re(gs, cs, model::majorana_string(j, MajoranaMode::Symmetric, n),
                    model::majorana_string(jp, MajoranaMode::Antisymmetric, n),
                    t, dt, boundary, opts);
}

double overlap_re(const qsim::Circuit& gs_prep, int n_sites,
                  const CouplingSet& cs, int j, int jp, double t, double dt,
                  model::Boundary boundary, const OverlapOptions& opts) {
  StateVector gs(n_sites);
  qsim::apply(gs, gs_prep);
  return overlap_re(gs, cs, j, jp, t, dt, boundary, opts);
}

double green_rs(const StateVector& gs, const CouplingSet& cs,
                const PauliString& left, const PauliString& right,
                const GreenConfig& cfg) {
  return green_block(gs, cs, {left}, {right}, cfg)(0, 0);
}

double green_rs(const StateVector& gs, const CouplingSet& cs, int j, int jp,
                const GreenConfig& cfg) {
  const int n = gs.n_qubits();
  return green_rs(gs, cs, model::majorana_string(j, MajoranaMode::Symmetric, n),
                  model::majorana_string(jp, MajoranaMode::Antisymmetric, n),
                  cfg);
}

Eigen::MatrixXd green_matrix(const StateVector& gs, const CouplingSet& cs,
                             const GreenConfig& cfg) {
  const int n = gs.n_qubits();
  std::vector<PauliString> lefts;
  std::vector<PauliString> rights;
  for (int j = 1; j <= n; ++j) {
    lefts.push_back(model::majorana_string(j, MajoranaMode::Symmetric, n));
    rights.push_back(model::majorana_string(j, MajoranaMode::Antisymmetric, n));
  }
  return green_block(gs, cs, lefts, rights, cfg);
}

ZkSeries pipeline_zk(const StateVector& gs, const CouplingSet& cs,
                     const GreenConfig& cfg) {
  return zk_series(green_matrix(gs, cs, cfg), gs.n_qubits());
}

}  // namespace kitaev::topo
