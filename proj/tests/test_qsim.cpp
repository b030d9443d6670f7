#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "kitaev/error.hpp"
#include "kitaev/model.hpp"
#include "kitaev/qsim/gate.hpp"
#include "kitaev/qsim/pauli.hpp"
#include "kitaev/qsim/state.hpp"
#include "oracle.hpp"

using namespace kitaev;
using namespace kitaev::qsim;
using oracle::Mat;

namespace {

const Complex I1{0, 1};

Mat proj(int n, int q, int value) {
  const Mat z = oracle::op(n, q, 'Z');
  const Mat id = oracle::identity(n);
  return value == 0 ? Mat((id + z) / 2) : Mat((id - z) / 2);
}

// Reference matrix of a gate on an n-qubit register.
Mat reference(const Gate& g, int n) {
  const auto t = g.targets();
  const double a = g.angle();
  switch (g.kind()) {
    case GateKind::PauliX:
      return oracle::op(n, t[0], 'X');
    case GateKind::Hadamard:
      return (oracle::op(n, t[0], 'X') + oracle::op(n, t[0], 'Z')) /
             std::sqrt(2.0);
    case GateKind::Rotation: {
      const char c = g.axis() == Axis::X ? 'X' : g.axis() == Axis::Y ? 'Y' : 'Z';
      return oracle::expm(I1 * (a / 2) * oracle::op(n, t[0], c));
    }
    case GateKind::Phase:
      return proj(n, t[0], 0) + std::exp(I1 * a) * proj(n, t[0], 1);
    case GateKind::CNOT:
      return proj(n, g.control(), 0) +
             proj(n, g.control(), 1) * oracle::op(n, t[0], 'X');
    case GateKind::CZ:
      return proj(n, g.control(), 0) +
             proj(n, g.control(), 1) * oracle::op(n, t[0], 'Z');
    case GateKind::CY:
      return proj(n, g.control(), 0) +
             proj(n, g.control(), 1) * oracle::op(n, t[0], 'Y');
    case GateKind::XXPlusYY:
      return oracle::expm(I1 * a *
                          (oracle::op2(n, t[0], 'X', t[1], 'X') +
                           oracle::op2(n, t[0], 'Y', t[1], 'Y')) /
                          2.0);
    case GateKind::XXMinusYY:
      return oracle::expm(I1 * a *
                          (oracle::op2(n, t[0], 'X', t[1], 'X') -
                           oracle::op2(n, t[0], 'Y', t[1], 'Y')) /
                          2.0);
    case GateKind::ZZ:
      return oracle::expm(I1 * a * oracle::op2(n, t[0], 'Z', t[1], 'Z'));
    case GateKind::ControlledPauli: {
      const int v = g.control_value();
      return proj(n, g.control(), v) * oracle::dense(*g.pauli()) +
             proj(n, g.control(), 1 - v);
    }
  }
  return {};
}

std::vector<Gate> sample_gates(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-4, 4);
  std::vector<Gate> gs;
  for (int q = 0; q < n; ++q) {
    gs.push_back(Gate::x(q));
    gs.push_back(Gate::h(q));
    gs.push_back(Gate::rx(q, ang(rng)));
    gs.push_back(Gate::ry(q, ang(rng)));
    gs.push_back(Gate::rz(q, ang(rng)));
    gs.push_back(Gate::phase(q, ang(rng)));
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      gs.push_back(Gate::cnot(p, q));
      gs.push_back(Gate::cz(p, q));
      gs.push_back(Gate::cy(p, q));
      gs.push_back(Gate::xx_plus_yy(p, q, ang(rng)));
      gs.push_back(Gate::xx_minus_yy(p, q, ang(rng)));
      gs.push_back(Gate::zz(p, q, ang(rng)));
    }
  }
  std::string pl(static_cast<std::size_t>(n), 'I');
  std::string rl = pl;
  const char cyc[] = {'X', 'Y', 'Z'};
  for (int q = 1; q < n; ++q) pl[q] = cyc[(q - 1) % 3];
  for (int q = 0; q < n; ++q) rl[q] = q == 1 ? 'I' : cyc[(q + 2) % 3];
  PauliString p(pl, -I1);
  gs.push_back(Gate::controlled_pauli(0, p, 1));
  gs.push_back(Gate::controlled_pauli(0, p, 0));
  PauliString r(rl, 1.0);
  gs.push_back(Gate::controlled_pauli(1, r, 1));
  return gs;
}

std::string random_letters(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 3);
  std::string s;
  for (int q = 0; q < n; ++q) s += "IXYZ"[d(rng)];
  return s;
}

}  // namespace

TEST(StateVector, InitBasisExamples) {
  const auto s = init_basis(2, "00");
  EXPECT_EQ(s[0], Complex(1.0));
  EXPECT_EQ(s[1], Complex(0.0));
  EXPECT_EQ(s[2], Complex(0.0));
  EXPECT_EQ(s[3], Complex(0.0));

  const auto p = init_basis(12, std::string(12, '0'));
  EXPECT_EQ(p[0], Complex(1.0));
  EXPECT_NEAR(p.norm(), 1.0, 1e-15);

  const auto m = init_basis(4, "1000");
  EXPECT_EQ(m[1], Complex(1.0));
  EXPECT_NEAR(m.norm(), 1.0, 1e-15);
}

TEST(StateVector, InitBasisRejectsLengthMismatch) {
  EXPECT_THROW(init_basis(3, "00"), InvalidArgument);
  EXPECT_THROW(init_basis(0, ""), InvalidArgument);
}

TEST(Apply, RejectsOutOfRangeIndex) {
  StateVector s(2);
  EXPECT_THROW(kitaev::qsim::apply(s, Gate::x(2)), InvalidArgument);
  EXPECT_THROW(kitaev::qsim::apply(s, Gate::cnot(0, 3)), InvalidArgument);
  EXPECT_THROW(Gate::cnot(1, 1), InvalidArgument);
}

TEST(Apply, ZeroRotationIsIdentity) {
  std::mt19937_64 rng(1);
  const auto s0 = oracle::random_state(3, rng);
  auto s = s0;
  kitaev::qsim::apply(s, Gate::rz(1, 0.0));
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i], s0[i]);
}

TEST(Apply, ZZPiTwiceKeepsProbabilities) {
  std::mt19937_64 rng(2);
  const auto s0 = oracle::random_state(3, rng);
  auto s = s0;
  kitaev::qsim::apply(s, Gate::zz(0, 2, std::numbers::pi));
  kitaev::qsim::apply(s, Gate::zz(0, 2, std::numbers::pi));
  const Complex phase = s[0] / s0[0];
  EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(std::norm(s[i]), std::norm(s0[i]), 1e-12);
    EXPECT_NEAR(std::abs(s[i] - phase * s0[i]), 0.0, 1e-12);
  }
}

TEST(Apply, XXPlusYYQuarterTurnOnOneZero) {
  // |01>: qubit 0 in |0>, qubit 1 in |1>
  auto s = init_basis(2, "01");
  kitaev::qsim::apply(s, Gate::xx_plus_yy(0, 1, std::numbers::pi / 2));
  const Mat u = oracle::expm(I1 * (std::numbers::pi / 2) *
                             (oracle::op2(2, 0, 'X', 1, 'X') +
                              oracle::op2(2, 0, 'Y', 1, 'Y')) /
                             2.0);
  const oracle::Vec ref = u * oracle::vec(init_basis(2, "01"));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(s[i] - ref(static_cast<Eigen::Index>(i))), 0.0, 1e-12);
  }
  EXPECT_NEAR(std::abs(s[bits_to_index("10")] - I1), 0.0, 1e-12);
}

TEST(Apply, EveryGateMatchesDenseMatrix) {
  std::mt19937_64 rng(3);
  const int n = 4;
  for (const Gate& g : sample_gates(n, rng)) {
    const auto s0 = oracle::random_state(n, rng);
    auto s = s0;
    kitaev::qsim::apply(s, g);
    const oracle::Vec ref = reference(g, n) * oracle::vec(s0);
    const double err = (oracle::vec(s) - ref).cwiseAbs().maxCoeff();
    EXPECT_LT(err, 1e-12) << g.name();
    EXPECT_NEAR(s.norm(), 1.0, 1e-12) << g.name();
  }
}

TEST(Apply, InverseUndoesGate) {
  std::mt19937_64 rng(4);
  for (const Gate& g : sample_gates(4, rng)) {
    const auto s0 = oracle::random_state(4, rng);
    auto s = s0;
    kitaev::qsim::apply(s, g);
    kitaev::qsim::apply(s, g.inverse());
    EXPECT_LT((oracle::vec(s) - oracle::vec(s0)).norm(), 1e-12) << g.name();
  }
}

TEST(Apply, NormPreservedOverLongSequence) {
  std::mt19937_64 rng(5);
  auto gates = sample_gates(5, rng);
  auto s = oracle::random_state(5, rng);
  for (int rep = 0; rep < 20; ++rep) kitaev::qsim::apply(s, gates);
  EXPECT_LT(std::abs(s.norm() - 1.0), 1e-10);
}

TEST(Gate, LocalMatrixIsUnitary) {
  std::mt19937_64 rng(6);
  for (const Gate& g : sample_gates(3, rng)) {
    const auto m = g.matrix();
    const auto d = static_cast<Eigen::Index>(std::sqrt(double(m.size())) + 0.5);
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        u(m.data(), d, d);
    EXPECT_LT((u * u.adjoint() - Mat::Identity(d, d)).cwiseAbs().maxCoeff(),
              1e-12);
  }
}

TEST(Gate, DecomposedControlledPauliMatchesGate) {
  std::mt19937_64 rng(7);
  for (int cv : {0, 1}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::string letters = random_letters(4, rng);
      letters[2] = 'I';
      const PauliString p(letters, trial % 2 ? Complex(-1.0) : I1);
      const auto s0 = oracle::random_state(4, rng);
      auto a = s0;
      auto b = s0;
      kitaev::qsim::apply(a, Gate::controlled_pauli(2, p, cv));
      kitaev::qsim::apply(b, decompose_controlled_pauli(2, p, cv));
      for (const auto& g : decompose_controlled_pauli(2, p, cv)) {
        EXPECT_NE(g.kind(), GateKind::ControlledPauli);
      }
      EXPECT_LT((oracle::vec(a) - oracle::vec(b)).norm(), 1e-12);
    }
  }
}

TEST(Gate, GeneratorGivesDerivative) {
  const double h = 1e-5;
  const double th = 0.37;
  const int n = 3;
  for (const Gate& g :
       {Gate::rx(1, th), Gate::ry(0, th), Gate::rz(2, th),
        Gate::xx_plus_yy(0, 2, th), Gate::xx_minus_yy(1, 2, th),
        Gate::zz(0, 1, th)}) {
    auto make = [&](double x) {
      switch (g.kind()) {
        case GateKind::Rotation: return Gate::rotation(g.axis(), g.targets()[0], x);
        case GateKind::XXPlusYY: return Gate::xx_plus_yy(g.targets()[0], g.targets()[1], x);
        case GateKind::XXMinusYY: return Gate::xx_minus_yy(g.targets()[0], g.targets()[1], x);
        default: return Gate::zz(g.targets()[0], g.targets()[1], x);
      }
    };
    const Mat du = (reference(make(th + h), n) - reference(make(th - h), n)) / (2 * h);
    const Mat ref = I1 * oracle::dense(generator(g, n)) * reference(g, n);
    EXPECT_LT((du - ref).cwiseAbs().maxCoeff(), 1e-8) << g.name();
  }
}

TEST(Pauli, ApplyXOnFirstQubit) {
  StateVector s(3);
  apply_pauli(s, PauliString("XII"));
  EXPECT_EQ(s[bits_to_index("100")], Complex(1.0));
}

TEST(Pauli, HermitianStringIsInvolution) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const PauliString p(random_letters(5, rng));
    const auto s0 = oracle::random_state(5, rng);
    auto s = s0;
    apply_pauli(s, p);
    apply_pauli(s, p);
    EXPECT_LT((oracle::vec(s) - oracle::vec(s0)).norm(), 1e-13);
  }
}

TEST(Pauli, ApplyMatchesKronecker) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    const PauliString p(random_letters(4, rng), Complex(0.3, -0.8));
    const auto s0 = oracle::random_state(4, rng);
    auto s = s0;
    apply_pauli(s, p);
    EXPECT_LT((oracle::vec(s) - oracle::dense(p) * oracle::vec(s0)).norm(),
              1e-13);
  }
}

TEST(Pauli, ProductMatchesKronecker) {
  std::mt19937_64 rng(10);
  for (int n = 1; n <= 4; ++n) {
    for (int t = 0; t < 40; ++t) {
      const PauliString a(random_letters(n, rng), Complex(0.5, 1.5));
      const PauliString b(random_letters(n, rng), Complex(-2.0, 0.25));
      const PauliString c = a * b;
      EXPECT_EQ(c.n_qubits(), n);
      EXPECT_LT((oracle::dense(c) - oracle::dense(a) * oracle::dense(b))
                    .cwiseAbs()
                    .maxCoeff(),
                1e-13);
      const Mat ab = oracle::dense(a) * oracle::dense(b);
      const Mat ba = oracle::dense(b) * oracle::dense(a);
      EXPECT_EQ(commutes(a, b), (ab - ba).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST(Pauli, SumCanonicalMergesAndDrops) {
  PauliSum h(2);
  h.add(PauliString("XX", 0.5));
  h.add(PauliString("XX", 0.25));
  h.add(PauliString("ZI", 1.0));
  h.add(PauliString("ZI", -1.0));
  const auto c = h.canonical();
  ASSERT_EQ(c.terms().size(), 1U);
  EXPECT_EQ(c.terms()[0].letters(), "XX");
  EXPECT_NEAR(c.terms()[0].coefficient().real(), 0.75, 1e-15);
  EXPECT_LT((oracle::dense(h) - oracle::dense(c)).norm(), 1e-14);
}

TEST(Inner, Examples) {
  std::mt19937_64 rng(11);
  const auto x = oracle::random_state(4, rng);
  EXPECT_NEAR(std::abs(inner(x, x) - Complex(1.0)), 0.0, 1e-13);
  EXPECT_EQ(inner(init_basis(2, "00"), init_basis(2, "11")), Complex(0.0));
  const auto y = oracle::random_state(4, rng);
  EXPECT_LE(std::abs(inner(x, y)), 1.0 + 1e-10);
  EXPECT_THROW(inner(StateVector(2), StateVector(3)), InvalidArgument);
}

TEST(Expect, Examples) {
  PauliSum z(12);
  z.add(PauliString(std::string("Z") + std::string(11, 'I')));
  EXPECT_NEAR(expect(StateVector(12), z), 1.0, 1e-15);

  const auto cs = model::CouplingSet::from_spin(0, 0, 0, 1);
  const auto h = model::spin_hamiltonian(cs, 12, model::Boundary::Open);
  EXPECT_NEAR(expect(StateVector(12), h), -6.0, 1e-12);
}

TEST(Expect, RejectsNonHermitian) {
  PauliSum h(2);
  h.add(PauliString("XZ", Complex(0.0, 1.0)));
  EXPECT_THROW(expect(StateVector(2), h), InvalidArgument);
}

TEST(Expect, HermitianSumsGiveRealValues) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    PauliSum h(5);
    for (int k = 0; k < 8; ++k) h.add(PauliString(random_letters(5, rng), g(rng)));
    const auto s = oracle::random_state(5, rng);
    const Complex full = oracle::vec(s).dot(oracle::dense(h) * oracle::vec(s));
    EXPECT_LT(std::abs(full.imag()), 1e-9);
    EXPECT_NEAR(expect(s, h), full.real(), 1e-12);
  }
}

TEST(Probability, Examples) {
  EXPECT_NEAR(prob_basis(StateVector(5), "00000"), 1.0, 1e-15);
  std::mt19937_64 rng(13);
  const auto s = oracle::random_state(6, rng);
  double total = 0.0;
  for (std::uint64_t b = 0; b < s.size(); ++b) {
    total += prob_basis(s, index_to_bits(b, 6));
  }
  EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(Probability, SampledFrequenciesWithinFiveSigma) {
  std::mt19937_64 rng(14);
  const auto s = oracle::random_state(4, rng);
  const std::size_t shots = 1000000;
  const auto counts = sample(s, shots, 99);
  std::size_t total = 0;
  for (std::uint64_t b = 0; b < s.size(); ++b) {
    const double p = std::norm(s[b]);
    const auto it = counts.find(b);
    const double c = it == counts.end() ? 0.0 : double(it->second);
    total += static_cast<std::size_t>(c);
    const double sigma = std::sqrt(shots * p * (1 - p));
    EXPECT_LE(std::abs(c - shots * p), 5 * sigma + 1e-9) << b;
  }
  EXPECT_EQ(total, shots);
  EXPECT_EQ(sample(s, 1000, 5), sample(s, 1000, 5));
}
