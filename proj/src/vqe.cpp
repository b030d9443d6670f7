#include "kitaev/vqe.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <sstream>

#include "kitaev/error.hpp"
#include "kitaev/io.hpp"
#include "kitaev/qsim/pauli.hpp"

namespace kitaev::vqe {

using qsim::Complex;
using qsim::Gate;
using qsim::GateKind;
using qsim::StateVector;

int angles_per_layer(int n_sites) { return 4 * n_sites - 3; }

int angle_count(int n_sites, int layers) {
  return angles_per_layer(n_sites) * layers;
}

namespace {

void check_shape(int n_sites, int layers, int parity) {
  if (n_sites < 4 || n_sites % 4 != 0) {
    throw UnsupportedSize("ansatz requires N = 0 (mod 4), got N = " +
                          std::to_string(n_sites));
  }
  if (layers < 1) throw InvalidArgument("layers must be >= 1");
  if (parity != 1 && parity != -1) {
    throw InvalidArgument("parity must be +1 or -1");
  }
}

double measured_parity(const StateVector& s) {
  double p = 0.0;
  for (std::size_t b = 0; b < s.size(); ++b) {
    p += model::basis_parity(b) * std::norm(s[b]);
  }
  return p;
}

// <l| G |r> for the generator G of a parametrized gate, dU/dangle = i G U.
Complex generator_overlap(const Gate& g, const StateVector& l,
                          const StateVector& r) {
  const std::size_t dim = l.size();
  Complex acc = 0.0;
  switch (g.kind()) {
    case GateKind::XXPlusYY:
    case GateKind::XXMinusYY: {
      const auto t = g.targets();
      const std::size_t mask = (std::size_t{1} << t[0]) | (std::size_t{1} << t[1]);
      const bool equal_bits = g.kind() == GateKind::XXMinusYY;
      for (std::size_t b = 0; b < dim; ++b) {
        const bool same = (((b >> t[0]) ^ (b >> t[1])) & 1U) == 0;
        if (same == equal_bits) acc += std::conj(l[b ^ mask]) * r[b];
      }
      return acc;
    }
    case GateKind::ZZ: {
      const auto t = g.targets();
      for (std::size_t b = 0; b < dim; ++b) {
        const bool odd = ((b >> t[0]) ^ (b >> t[1])) & 1U;
        const Complex v = std::conj(l[b]) * r[b];
        acc += odd ? -v : v;
      }
      return acc;
    }
    case GateKind::Rotation:
      if (g.axis() == qsim::Axis::Z) {
        const int q = g.targets()[0];
        for (std::size_t b = 0; b < dim; ++b) {
          const Complex v = std::conj(l[b]) * r[b];
          acc += ((b >> q) & 1U) ? -v : v;
        }
        return 0.5 * acc;
      }
      [[fallthrough]];
    default: {
      const auto gen = qsim::generator(g, l.n_qubits());
      return qsim::inner(l, qsim::apply_sum(gen, r));
    }
  }
}

}  // namespace

Ansatz build_ansatz(int n_sites, int layers, const AnsatzAngles& angles,
                    int parity) {
  check_shape(n_sites, layers, parity);
  if (angles.size() != angle_count(n_sites, layers)) {
    throw InvalidArgument("ansatz expects " +
                          std::to_string(angle_count(n_sites, layers)) +
                          " angles, got " + std::to_string(angles.size()));
  }
  Ansatz a;
  a.n_sites = n_sites;
  a.layers = layers;
  a.parity = parity;
  if (parity == -1) {
    a.gates.push_back(Gate::x(0));
    a.slots.push_back({-1, 0.0});
  }
  const int per = angles_per_layer(n_sites);
  const int nbond = 3 * (n_sites - 1);
  for (int m = 0; m < layers; ++m) {
    const double* base = angles.data() + static_cast<std::ptrdiff_t>(m) * per;
    append_layer(a.gates, n_sites, model::Boundary::Open,
                 {base, static_cast<std::size_t>(nbond)},
                 {base + nbond, static_cast<std::size_t>(n_sites)}, &a.slots,
                 m * per);
  }
  return a;
}

StateVector prepare(int n_sites, int layers, const AnsatzAngles& angles,
                    int parity) {
  const Ansatz a = build_ansatz(n_sites, layers, angles, parity);
  StateVector s(n_sites);
  qsim::apply(s, a.gates);
  return s;
}

double energy(const model::CouplingSet& cs, int n_sites, int layers,
              const AnsatzAngles& angles, int parity) {
  const auto h = model::spin_hamiltonian(cs, n_sites, model::Boundary::Open);
  return qsim::expect(prepare(n_sites, layers, angles, parity), h);
}

Eigen::VectorXd gradient(const model::CouplingSet& cs, int n_sites, int layers,
                         const AnsatzAngles& angles, int parity, double h) {
  Eigen::VectorXd g(angles.size());
  AnsatzAngles x = angles;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double x0 = x(i);
    x(i) = x0 + h;
    const double ep = energy(cs, n_sites, layers, x, parity);
    x(i) = x0 - h;
    const double em = energy(cs, n_sites, layers, x, parity);
    x(i) = x0;
    g(i) = (ep - em) / (2 * h);
  }
  return g;
}

double energy_and_gradient(const model::CouplingSet& cs, int n_sites,
                           int layers, const AnsatzAngles& angles, int parity,
                           Eigen::VectorXd& grad) {
  const Ansatz a = build_ansatz(n_sites, layers, angles, parity);
  const auto h = model::spin_hamiltonian(cs, n_sites, model::Boundary::Open);
  StateVector phi(n_sites);
  qsim::apply(phi, a.gates);
  StateVector lam = qsim::apply_sum(h, phi);
  const double e = qsim::inner(phi, lam).real();
  grad = Eigen::VectorXd::Zero(angles.size());
  for (std::size_t k = a.gates.size(); k-- > 0;) {
    const Gate& g = a.gates[k];
    const LayerSlot& slot = a.slots[k];
    if (slot.index >= 0) {
      // dE/dx = 2 Re <lam| i G |phi>
      grad(slot.index) +=
          -2.0 * slot.scale * generator_overlap(g, lam, phi).imag();
    }
    const Gate inv = g.inverse();
    qsim::apply(phi, inv);
    qsim::apply(lam, inv);
  }
  return e;
}

std::string to_string(GradientMethod m) {
  return m == GradientMethod::Adjoint ? "adjoint" : "finite-difference";
}

GradientMethod parse_gradient_method(const std::string& text) {
  if (text == "adjoint") return GradientMethod::Adjoint;
  if (text == "finite-difference" || text == "fd") {
    return GradientMethod::FiniteDifference;
  }
  throw InvalidArgument("gradient must be 'adjoint' or 'finite-difference'");
}

namespace {

struct TrialOutput {
  TrialResult summary;
  AnsatzAngles angles;
};

TrialOutput run_trial(const model::CouplingSet& cs, int n_sites,
                      const VqeConfig& cfg, int parity, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffU),
                    static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> init(-std::numbers::pi,
                                              std::numbers::pi);
  AnsatzAngles x0(angle_count(n_sites, cfg.layers));
  for (auto& v : x0) v = init(rng);

  const auto f = [&](const Eigen::VectorXd& x) {
    return energy(cs, n_sites, cfg.layers, x, parity);
  };
  const auto fg = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    if (cfg.gradient == GradientMethod::FiniteDifference) {
      g = gradient(cs, n_sites, cfg.layers, x, parity);
      return f(x);
    }
    return energy_and_gradient(cs, n_sites, cfg.layers, x, parity, g);
  };

  const auto sa = opt::anneal(f, x0, cfg.anneal, rng);
  const auto bf = opt::bfgs(fg, sa.x, cfg.bfgs);
  TrialOutput out;
  out.summary.energy = bf.value;
  out.summary.anneal_energy = sa.value;
  out.summary.iterations = bf.iterations;
  out.summary.evaluations = bf.evaluations;
  out.summary.converged = bf.converged;
  out.angles = bf.x;
  return out;
}

}  // namespace

VqeResult optimize(const model::CouplingSet& cs, int n_sites,
                   const VqeConfig& config, int parity) {
  check_shape(n_sites, config.layers, parity);
  if (config.trials < 1) throw InvalidArgument("trials must be >= 1");
  const int threads = std::max(1, config.threads);
  std::vector<TrialOutput> outs(static_cast<std::size_t>(config.trials));
  for (int start = 0; start < config.trials; start += threads) {
    const int stop = std::min(config.trials, start + threads);
    std::vector<std::future<TrialOutput>> jobs;
    for (int t = start; t < stop; ++t) {
      jobs.push_back(std::async(threads > 1 ? std::launch::async
                                            : std::launch::deferred,
                                [&, t] {
                                  return run_trial(cs, n_sites, config, parity,
                                                   t);
                                }));
    }
    for (int t = start; t < stop; ++t) {
      outs[static_cast<std::size_t>(t)] =
          jobs[static_cast<std::size_t>(t - start)].get();
    }
  }
  VqeResult r;
  r.parity_requested = parity;
  for (int t = 0; t < config.trials; ++t) {
    const auto& o = outs[static_cast<std::size_t>(t)];
    r.trials.push_back(o.summary);
    if (t == 0 || o.summary.energy < r.energy) {
      r.energy = o.summary.energy;
      r.angles = o.angles;
      r.best_trial = t;
    }
  }
  r.converged = r.trials[static_cast<std::size_t>(r.best_trial)].converged;
  r.parity_measured =
      measured_parity(prepare(n_sites, config.layers, r.angles, parity));
  return r;
}

std::string angles_to_text(const AngleFile& f) {
  check_shape(f.n_sites, f.layers, f.parity);
  if (f.angles.size() != angle_count(f.n_sites, f.layers)) {
    throw InvalidArgument("angle file: count does not match n_sites/layers");
  }
  std::ostringstream out;
  out << "# kitaev ansatz angles\n"
      << "format_version = 1\n"
      << "n_sites = " << f.n_sites << "\n"
      << "layers = " << f.layers << "\n"
      << "parity = " << f.parity << "\n"
      << "# m j kind value\n";
  const int per = angles_per_layer(f.n_sites);
  const char* kinds[] = {"a", "b", "c"};
  for (int m = 0; m < f.layers; ++m) {
    for (int b = 0; b < f.n_sites - 1; ++b) {
      for (int k = 0; k < 3; ++k) {
        out << m + 1 << ' ' << b + 1 << ' ' << kinds[k] << ' '
            << io::format_double(f.angles(m * per + 3 * b + k)) << "\n";
      }
    }
    for (int q = 0; q < f.n_sites; ++q) {
      out << m + 1 << ' ' << q + 1 << " theta "
          << io::format_double(f.angles(m * per + 3 * (f.n_sites - 1) + q))
          << "\n";
    }
  }
  return out.str();
}

AngleFile angles_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string header;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.find('=') != std::string::npos) {
      header += line + "\n";
    } else {
      rows.push_back(line);
    }
  }
  const auto cfg = io::KeyValueConfig::parse(header);
  if (cfg.get_int("format_version").value_or(0) != 1) {
    throw InvalidArgument("angle file: unsupported or missing format_version");
  }
  AngleFile f;
  f.n_sites = cfg.get_int("n_sites").value_or(0);
  f.layers = cfg.get_int("layers").value_or(0);
  f.parity = cfg.get_int("parity").value_or(0);
  check_shape(f.n_sites, f.layers, f.parity);
  const int per = angles_per_layer(f.n_sites);
  f.angles = AnsatzAngles::Constant(angle_count(f.n_sites, f.layers), NAN);
  for (const auto& row : rows) {
    std::istringstream rs(row);
    int m = 0;
    int j = 0;
    std::string kind;
    std::string value;
    if (!(rs >> m >> j >> kind >> value)) {
      throw InvalidArgument("angle file: malformed line '" + row + "'");
    }
    int idx = -1;
    if (m >= 1 && m <= f.layers) {
      if (kind == "theta" && j >= 1 && j <= f.n_sites) {
        idx = (m - 1) * per + 3 * (f.n_sites - 1) + (j - 1);
      } else if ((kind == "a" || kind == "b" || kind == "c") && j >= 1 &&
                 j < f.n_sites) {
        idx = (m - 1) * per + 3 * (j - 1) + (kind[0] - 'a');
      }
    }
    if (idx < 0) throw InvalidArgument("angle file: bad label in '" + row + "'");
    std::size_t used = 0;
    double v = NAN;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || !std::isfinite(v)) {
      throw InvalidArgument("angle file: bad value in '" + row + "'");
    }
    f.angles(idx) = v;
  }
  if (f.angles.hasNaN()) throw InvalidArgument("angle file: missing angles");
  return f;
}

void save_angles(const std::string& path, const AngleFile& f) {
  io::write_file(path, angles_to_text(f));
}

AngleFile load_angles(const std::string& path) {
  return angles_from_text(io::read_file(path));
}

}  // namespace kitaev::vqe
