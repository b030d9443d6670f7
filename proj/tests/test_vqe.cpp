#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "kitaev/ed.hpp"
#include "kitaev/error.hpp"
#include "kitaev/optimize.hpp"
#include "kitaev/vqe.hpp"
#include "oracle.hpp"

using namespace kitaev;
using model::Boundary;
using model::CouplingSet;
using oracle::Mat;

namespace {

vqe::AnsatzAngles random_angles(int n, int layers, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  vqe::AnsatzAngles a(vqe::angle_count(n, layers));
  for (auto& x : a) x = u(rng);
  return a;
}

// <P> with P = prod Z evaluated straight from the amplitudes.
double parity_of(const qsim::StateVector& s) {
  double p = 0.0;
  for (std::size_t b = 0; b < s.size(); ++b) {
    p += ((__builtin_popcountll(b) & 1) ? -1.0 : 1.0) * std::norm(s[b]);
  }
  return p;
}

vqe::VqeConfig quick_config(int layers, int trials) {
  vqe::VqeConfig c;
  c.layers = layers;
  c.trials = trials;
  c.anneal.steps = 200;
  return c;
}

}  // namespace

TEST(Ansatz, AngleCount) {
  EXPECT_EQ(vqe::angle_count(8, 2), 58);
  EXPECT_EQ(vqe::angle_count(12, 4), 180);
  const auto a = vqe::build_ansatz(8, 2, vqe::AnsatzAngles::Zero(58), 1);
  EXPECT_EQ(a.slots.size(), a.gates.size());
  int max_slot = -1;
  for (const auto& s : a.slots) max_slot = std::max(max_slot, s.index);
  EXPECT_EQ(max_slot, 57);
  EXPECT_THROW(vqe::build_ansatz(8, 2, vqe::AnsatzAngles::Zero(57), 1),
               InvalidArgument);
  EXPECT_THROW(vqe::build_ansatz(6, 1, vqe::AnsatzAngles::Zero(21), 1),
               UnsupportedSize);
  EXPECT_THROW(vqe::build_ansatz(8, 0, vqe::AnsatzAngles::Zero(0), 1),
               InvalidArgument);
}

TEST(Ansatz, GateOrderWithinLayer) {
  const int n = 8;
  const auto a = vqe::build_ansatz(n, 1, vqe::AnsatzAngles::Zero(29), -1);
  ASSERT_EQ(a.gates.front().kind(), qsim::GateKind::PauliX);
  EXPECT_EQ(a.gates.front().targets()[0], 0);
  // 7 bonds x 3 gates, then 8 Rz
  ASSERT_EQ(a.gates.size(), 1U + 21U + 8U);
  std::vector<int> first_qubits;
  for (std::size_t i = 1; i < 22; i += 3) {
    first_qubits.push_back(std::min(a.gates[i].targets()[0], a.gates[i].targets()[1]));
  }
  EXPECT_EQ(first_qubits, (std::vector<int>{0, 2, 4, 6, 1, 3, 5}));
  for (std::size_t i = 22; i < a.gates.size(); ++i) {
    EXPECT_EQ(a.gates[i].kind(), qsim::GateKind::Rotation);
    EXPECT_EQ(a.gates[i].axis(), qsim::Axis::Z);
  }
}

TEST(Ansatz, SiteAngleDrivesRzTwiceTheta) {
  const int n = 4;
  vqe::AnsatzAngles x = vqe::AnsatzAngles::Zero(13);
  x(9 + 2) = 0.3;  // theta of site 3
  const auto s = vqe::prepare(n, 1, x, 1);
  // Rz(0.6) on |0> gives e^{i 0.3}
  EXPECT_NEAR(std::abs(s[0] - std::polar(1.0, 0.3)), 0.0, 1e-14);
}

TEST(Ansatz, ZeroAnglesActAsIdentity) {
  const auto s = vqe::prepare(12, 3, vqe::AnsatzAngles::Zero(135), 1);
  EXPECT_NEAR(std::abs(s[0] - 1.0), 0.0, 1e-14);
  const auto t = vqe::prepare(12, 3, vqe::AnsatzAngles::Zero(135), -1);
  EXPECT_NEAR(std::abs(t[1] - 1.0), 0.0, 1e-14);
}

TEST(Ansatz, ParityConservedOverRandomDraws) {
  std::mt19937_64 rng(2024);
  for (int parity : {1, -1}) {
    for (int draw = 0; draw < 100; ++draw) {
      const auto s = vqe::prepare(8, 2, random_angles(8, 2, rng), parity);
      EXPECT_NEAR(parity_of(s), parity, 1e-10);
      EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    }
  }
}

TEST(Ansatz, BondGatesCommute) {
  const Mat xx = oracle::op2(2, 0, 'X', 1, 'X');
  const Mat yy = oracle::op2(2, 0, 'Y', 1, 'Y');
  const Mat zz = oracle::op2(2, 0, 'Z', 1, 'Z');
  const qsim::Complex i1{0, 1};
  const Mat ua = oracle::expm(i1 * 0.7 * (xx + yy) / 2.0);
  const Mat ub = oracle::expm(i1 * -1.3 * (xx - yy) / 2.0);
  const Mat uc = oracle::expm(i1 * 0.4 * zz);
  EXPECT_LT((ua * ub - ub * ua).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((ua * uc - uc * ua).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((ub * uc - uc * ub).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Energy, FieldOnlyChain) {
  const auto cs = CouplingSet::from_spin(0, 0, 0, 1);
  EXPECT_NEAR(vqe::energy(cs, 12, 2, vqe::AnsatzAngles::Zero(90), 1), -6.0, 1e-12);
  EXPECT_NEAR(vqe::energy(cs, 12, 2, vqe::AnsatzAngles::Zero(90), -1), -5.0, 1e-12);
}

TEST(Energy, MatchesDenseExpectation) {
  std::mt19937_64 rng(3);
  const auto cs = CouplingSet::from_spin(1, 0.5, 0.3, 0.2);
  const auto x = random_angles(4, 2, rng);
  const auto s = vqe::prepare(4, 2, x, -1);
  const Mat h = oracle::spin_chain(4, 1, 0.5, 0.3, 0.2, false);
  const auto v = oracle::vec(s);
  EXPECT_NEAR(vqe::energy(cs, 4, 2, x, -1), v.dot(h * v).real(), 1e-13);
}

TEST(Energy, VariationalBound) {
  std::mt19937_64 rng(11);
  const auto cs = CouplingSet::from_spin(1, 0.5, 0.4, 0.1);
  for (int parity : {1, -1}) {
    const double e0 = ed::ground_in_parity(cs, 8, Boundary::Open, parity).first;
    for (int draw = 0; draw < 20; ++draw) {
      EXPECT_GE(vqe::energy(cs, 8, 2, random_angles(8, 2, rng), parity),
                e0 - 1e-9);
    }
  }
}

TEST(Gradient, FiniteDifferenceIsDeterministic) {
  std::mt19937_64 rng(4);
  const auto cs = CouplingSet::from_spin(1, 0.5, 0.3, 0.2);
  const auto x = random_angles(4, 2, rng);
  const auto g = vqe::gradient(cs, 4, 2, x, 1);
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    auto p = x;
    auto m = x;
    p(i) += h;
    m(i) -= h;
    const double want =
        (vqe::energy(cs, 4, 2, p, 1) - vqe::energy(cs, 4, 2, m, 1)) / (2 * h);
    EXPECT_EQ(g(i), want) << i;
  }
  EXPECT_EQ(g, vqe::gradient(cs, 4, 2, x, 1));
}

TEST(Gradient, MatchesFourthOrderStencil) {
  std::mt19937_64 rng(5);
  const auto cs = CouplingSet::from_spin(1, 0.5, 0.3, 0.2);
  for (int parity : {1, -1}) {
    const auto x = random_angles(4, 2, rng);
    const auto g = vqe::gradient(cs, 4, 2, x, parity);
    Eigen::VectorXd adj;
    const double e = vqe::energy_and_gradient(cs, 4, 2, x, parity, adj);
    EXPECT_NEAR(e, vqe::energy(cs, 4, 2, x, parity), 1e-13);
    const double h = 1e-3;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      auto at = [&](double d) {
        auto y = x;
        y(i) += d;
        return vqe::energy(cs, 4, 2, y, parity);
      };
      const double want =
          (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
      EXPECT_NEAR(g(i), want, 1e-8) << i;
      EXPECT_NEAR(adj(i), want, 1e-8) << i;
    }
  }
}

TEST(Gradient, AdjointAgreesWithFiniteDifferenceAtTwelveSites) {
  std::mt19937_64 rng(6);
  const auto cs = CouplingSet::from_spin(1, 0.5, 0.2, 0.01);
  const auto x = random_angles(12, 1, rng);
  Eigen::VectorXd adj;
  vqe::energy_and_gradient(cs, 12, 1, x, 1, adj);
  EXPECT_LT((adj - vqe::gradient(cs, 12, 1, x, 1)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Gradient, StationaryAtFieldOnlyOptimum) {
  const auto cs = CouplingSet::from_spin(0, 0, 0, 1);
  const auto g = vqe::gradient(cs, 8, 2, vqe::AnsatzAngles::Zero(58), 1);
  EXPECT_LT(g.cwiseAbs().maxCoeff(), 1e-5);
}

TEST(Optimizer, BfgsOnRosenbrock) {
  const auto fg = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    const double a = 1 - x(0);
    const double b = x(1) - x(0) * x(0);
    g.resize(2);
    g(0) = -2 * a - 400 * x(0) * b;
    g(1) = 200 * b;
    return a * a + 100 * b * b;
  };
  opt::BfgsConfig cfg;
  cfg.tolerance = 1e-14;
  const auto r = opt::bfgs(fg, Eigen::Vector2d(-1.2, 1.0), cfg);
  EXPECT_NEAR(r.x(0), 1.0, 1e-5);
  EXPECT_NEAR(r.x(1), 1.0, 1e-5);
  EXPECT_TRUE(r.converged);
}

TEST(Optimizer, AnnealReturnsBestVisited) {
  const auto f = [](const Eigen::VectorXd& x) { return (x.array() - 0.5).square().sum(); };
  std::mt19937_64 rng(1);
  const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(3, 2.0);
  const auto r = opt::anneal(f, x0, {}, rng);
  EXPECT_LE(r.value, f(x0));
  EXPECT_DOUBLE_EQ(r.value, f(r.x));
  EXPECT_LT(r.value, 0.1);
}

TEST(Optimize, FieldOnlyChainReachesProductState) {
  const auto cs = CouplingSet::from_spin(0, 0, 0, 1);
  for (int parity : {1, -1}) {
    const auto r = vqe::optimize(cs, 8, quick_config(1, 2), parity);
    EXPECT_NEAR(r.energy, parity == 1 ? -4.0 : -3.0, 1e-6);
    EXPECT_NEAR(r.parity_measured, parity, 1e-10);
    EXPECT_EQ(r.parity_requested, parity);
    EXPECT_EQ(r.trials.size(), 2U);
  }
}

TEST(Optimize, SmallChainReachesExactGroundEnergy) {
  const auto cs = CouplingSet::from_spin(1, 0.5, 0, 0.01);
  const double e0 = ed::ground_in_parity(cs, 4, Boundary::Open, 1).first;
  const auto r = vqe::optimize(cs, 4, quick_config(2, 3), 1);
  EXPECT_LT(r.energy - e0, 1e-6);
  EXPECT_GE(r.energy, e0 - 1e-9);
}

TEST(Optimize, ReproducibleForFixedSeed) {
  const auto cs = CouplingSet::from_spin(1, 0.5, 0.2, 0.1);
  auto cfg = quick_config(1, 3);
  const auto a = vqe::optimize(cs, 4, cfg, 1);
  const auto b = vqe::optimize(cs, 4, cfg, 1);
  cfg.threads = 3;
  const auto c = vqe::optimize(cs, 4, cfg, 1);
  EXPECT_EQ(a.energy, b.energy);
  EXPECT_EQ(a.angles, b.angles);
  EXPECT_EQ(a.energy, c.energy);
  EXPECT_EQ(a.angles, c.angles);
  EXPECT_EQ(a.best_trial, c.best_trial);
  for (std::size_t t = 0; t < a.trials.size(); ++t) {
    EXPECT_EQ(a.trials[t].energy, c.trials[t].energy);
  }
  cfg.seed = 8;
  const auto d = vqe::optimize(cs, 4, cfg, 1);
  EXPECT_NE(a.trials[0].anneal_energy, d.trials[0].anneal_energy);
}

TEST(Optimize, FiniteDifferenceGradientOption) {
  const auto cs = CouplingSet::from_spin(1, 0.5, 0, 0.01);
  auto cfg = quick_config(2, 3);
  cfg.gradient = vqe::GradientMethod::FiniteDifference;
  const auto r = vqe::optimize(cs, 4, cfg, 1);
  const double e0 = ed::ground_in_parity(cs, 4, Boundary::Open, 1).first;
  EXPECT_GE(r.energy, e0 - 1e-9);
  EXPECT_LT(r.energy - e0, 1e-6);
  EXPECT_EQ(vqe::parse_gradient_method("fd"), vqe::GradientMethod::FiniteDifference);
  EXPECT_EQ(vqe::parse_gradient_method(vqe::to_string(vqe::GradientMethod::Adjoint)),
            vqe::GradientMethod::Adjoint);
  EXPECT_THROW(vqe::parse_gradient_method("newton"), InvalidArgument);
}

TEST(AngleFile, RoundTrip) {
  std::mt19937_64 rng(9);
  vqe::AngleFile f{8, 2, -1, random_angles(8, 2, rng)};
  const auto text = vqe::angles_to_text(f);
  EXPECT_NE(text.find("format_version = 1"), std::string::npos);
  EXPECT_NE(text.find("\n2 7 c "), std::string::npos);
  EXPECT_NE(text.find("\n1 8 theta "), std::string::npos);
  const auto g = vqe::angles_from_text(text);
  EXPECT_EQ(g.n_sites, 8);
  EXPECT_EQ(g.layers, 2);
  EXPECT_EQ(g.parity, -1);
  EXPECT_EQ(g.angles, f.angles);

  const auto path = std::filesystem::temp_directory_path() / "kitaev_angles_test.txt";
  vqe::save_angles(path.string(), f);
  EXPECT_EQ(vqe::load_angles(path.string()).angles, f.angles);
  std::filesystem::remove(path);
}

TEST(AngleFile, RejectsMalformedInput) {
  vqe::AngleFile f{4, 1, 1, vqe::AnsatzAngles::Zero(13)};
  const auto text = vqe::angles_to_text(f);
  auto replace = [&](const std::string& a, const std::string& b) {
    auto t = text;
    t.replace(t.find(a), a.size(), b);
    return t;
  };
  EXPECT_THROW(vqe::angles_from_text(replace("format_version = 1", "format_version = 2")),
               InvalidArgument);
  EXPECT_THROW(vqe::angles_from_text(replace("1 4 theta 0\n", "")), InvalidArgument);
  EXPECT_THROW(vqe::angles_from_text(replace("1 4 theta 0", "1 4 phi 0")),
               InvalidArgument);
  EXPECT_THROW(vqe::angles_from_text(replace("1 4 theta 0", "1 9 theta 0")),
               InvalidArgument);
  EXPECT_THROW(vqe::angles_from_text(replace("1 4 theta 0", "1 4 theta x")),
               InvalidArgument);
  EXPECT_THROW(vqe::angles_to_text({4, 1, 1, vqe::AnsatzAngles::Zero(12)}),
               InvalidArgument);
}
