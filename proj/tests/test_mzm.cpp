#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kitaev/ed.hpp"
#include "kitaev/error.hpp"
#include "kitaev/mzm.hpp"
#include "kitaev/qsim/pauli.hpp"
#include "kitaev/vqe.hpp"
#include "oracle.hpp"

using namespace kitaev;
using model::Boundary;
using model::CouplingSet;
using model::MajoranaMode;

namespace {

vqe::AnsatzAngles random_angles(int n, int layers, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.2, 3.2);
  vqe::AnsatzAngles x(vqe::angle_count(n, layers));
  for (auto& a : x) a = u(rng);
  return x;
}

void expect_profile_matches_svd(const mzm::MzmProfile& p, const CouplingSet& cs,
                                double tol) {
  const auto ref = mzm::tb_svd(cs, p.n_sites);
  for (int j = 0; j < p.n_sites; ++j) {
    EXPECT_NEAR(p.amplitude_s[j], ref.profile_s(j), tol) << "site " << j + 1;
    EXPECT_NEAR(p.amplitude_a[j], ref.profile_a(j), tol) << "site " << j + 1;
  }
}

int argmax(const std::vector<double>& v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin()) + 1;
}

}  // namespace

TEST(TbSvd, IdealPointHasDecoupledCorners) {
  const int n = 8;
  const auto r = mzm::tb_svd(CouplingSet::from_spin(1, 0, 0, 0), n);
  EXPECT_NEAR(r.singular_values(0), 0.0, 1e-14);
  for (int j = 0; j < n; ++j) {
    EXPECT_NEAR(r.profile_s(j), j == 0 ? 1.0 : 0.0, 1e-14);
    EXPECT_NEAR(r.profile_a(j), j == n - 1 ? 1.0 : 0.0, 1e-14);
  }
  EXPECT_FALSE(r.warning.has_value());
}

TEST(TbSvd, AscendingUnitColumnsAndNormalEquations) {
  for (auto [jx, jy, hz] : {std::tuple{1.0, 0.5, 0.0}, std::tuple{1.0, 0.5, 3.0},
                            std::tuple{0.3, -0.8, 0.4}}) {
    const auto cs = CouplingSet::from_spin(jx, jy, 0, hz);
    const int n = 7;
    const auto r = mzm::tb_svd(cs, n);
    const auto& m = cs.majorana();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      h(i, i) = m.eta;
      if (i + 1 < n) {
        h(i, i + 1) = m.g_minus;
        h(i + 1, i) = m.g_plus;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.transpose() * h);
    for (int l = 0; l < n; ++l) {
      if (l > 0) EXPECT_LE(r.singular_values(l - 1), r.singular_values(l));
      EXPECT_GE(r.singular_values(l), 0.0);
      EXPECT_NEAR(r.singular_values(l) * r.singular_values(l), es.eigenvalues()(l), 1e-12);
      EXPECT_NEAR(r.u.col(l).norm(), 1.0, 1e-12);
      EXPECT_NEAR(r.v.col(l).norm(), 1.0, 1e-12);
      EXPECT_LT((h * r.v.col(l) - r.singular_values(l) * r.u.col(l)).norm(), 1e-12);
    }
  }
}

TEST(TbSvd, LargeChemicalPotentialIsGapped) {
  // mu > 2t: smallest singular value stays away from zero as N grows
  const auto cs = CouplingSet::from_fermion(1, 0.5, 0, 3);
  for (int n : {6, 12, 24}) {
    const auto r = mzm::tb_svd(cs, n);
    EXPECT_GT(r.singular_values(0), 0.2) << n;
  }
  EXPECT_LT(mzm::tb_svd(CouplingSet::from_fermion(1, 0.5, 0, 0), 24).singular_values(0),
            1e-4);
}

TEST(TbSvd, SignedSumsReproduceFreeSpectrum) {
  const int n = 6;
  const auto cs = CouplingSet::from_spin(1, 0.5, 0, 0.7);
  const auto r = mzm::tb_svd(cs, n);
  std::vector<double> sums;
  for (int occ = 0; occ < (1 << n); ++occ) {
    double e = 0.0;
    for (int l = 0; l < n; ++l) {
      const double nl = (occ >> l) & 1;
      e += -2.0 * r.singular_values(l) * (nl - 0.5);
    }
    sums.push_back(e);
  }
  std::sort(sums.begin(), sums.end());
  const auto ev = oracle::eigenvalues(oracle::spin_chain(n, 1, 0.5, 0, 0.7, false));
  ASSERT_EQ(static_cast<std::size_t>(ev.size()), sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) EXPECT_NEAR(sums[i], ev(i), 1e-10) << i;
}

TEST(TbSvd, InteractionWarns) {
  EXPECT_TRUE(mzm::tb_svd(CouplingSet::from_spin(1, 0.5, 0.3, 0), 6).warning.has_value());
}

TEST(TransferAmp, IdealKitaevPointHasUnitEdgeModes) {
  const int n = 8;
  const auto p = mzm::profile_ed(CouplingSet::from_spin(1, 0, 0, 0), n);
  for (int j = 1; j <= n; ++j) {
    EXPECT_NEAR(p.amplitude_s[j - 1], j == 1 ? 1.0 : 0.0, 1e-8) << j;
    EXPECT_NEAR(p.amplitude_a[j - 1], j == n ? 1.0 : 0.0, 1e-8) << j;
  }
  EXPECT_EQ(p.source, "ed");
  EXPECT_NEAR(p.energy_plus, p.energy_minus, 1e-10);
}

TEST(TransferAmp, EdProfileMatchesSvdAtFreePoints) {
  for (auto [jx, jy, hz] : {std::tuple{1.0, 0.5, 0.0}, std::tuple{1.0, 0.2, 0.3},
                            std::tuple{0.5, 1.0, 0.2}}) {
    const auto cs = CouplingSet::from_spin(jx, jy, 0, hz);
    const auto ref = mzm::tb_svd(cs, 8);
    ASSERT_GT(ref.singular_values(1) - ref.singular_values(0), 1e-6);
    expect_profile_matches_svd(mzm::profile_ed(cs, 8), cs, 1e-8);
  }
}

TEST(TransferAmp, TwelveSiteProfileMatchesSvd) {
  const auto cs = CouplingSet::from_spin(1, 0.5, 0, 0);
  const auto p = mzm::profile_ed(cs, 12);
  expect_profile_matches_svd(p, cs, 1e-8);
  EXPECT_EQ(argmax(p.amplitude_s), 1);
  EXPECT_EQ(argmax(p.amplitude_a), 12);
  // eta = 0: the modes live on one sublattice and decay away from the edge
  for (int j = 1; j + 2 <= 12; j += 2) {
    EXPECT_GT(p.amplitude_s[j - 1], p.amplitude_s[j + 1]) << j;
    EXPECT_LT(p.amplitude_s[j], 1e-8) << j;
    EXPECT_GT(p.amplitude_a[12 - j], p.amplitude_a[10 - j]) << j;
  }
}

TEST(TransferAmp, PairingSignSwapsEdges) {
  const int n = 8;
  const auto a = mzm::profile_ed(CouplingSet::from_spin(1, 0.5, 0, 0), n);
  const auto b = mzm::profile_ed(CouplingSet::from_spin(0.5, 1, 0, 0), n);
  EXPECT_EQ(argmax(a.amplitude_s), 1);
  EXPECT_EQ(argmax(a.amplitude_a), n);
  EXPECT_EQ(argmax(b.amplitude_s), n);
  EXPECT_EQ(argmax(b.amplitude_a), 1);
  // swapping the couplings transposes the Majorana matrix
  for (int j = 0; j < n; ++j) {
    EXPECT_NEAR(a.amplitude_s[j], b.amplitude_a[j], 1e-8);
    EXPECT_NEAR(a.amplitude_a[j], b.amplitude_s[j], 1e-8);
  }
}

TEST(TransferAmp, TrivialPointHasNoUnitEdgeAmplitude) {
  const auto p = mzm::profile_ed(CouplingSet::from_spin(1, 0.5, 0, 1), 8);
  for (double v : p.amplitude_s) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0 + 1e-12);
  }
  EXPECT_LT(*std::max_element(p.amplitude_s.begin(), p.amplitude_s.end()), 0.99);
}

TEST(TransferAmp, SelectionRuleWithinSector) {
  std::mt19937_64 rng(3);
  const int n = 8;
  for (int parity : {1, -1}) {
    const auto s = vqe::prepare(n, 2, random_angles(n, 2, rng), parity);
    for (int j = 1; j <= n; ++j) {
      for (auto mode : {MajoranaMode::Symmetric, MajoranaMode::Antisymmetric}) {
        auto v = s;
        qsim::apply_pauli(v, model::majorana_string(j, mode, n));
        EXPECT_LT(std::abs(qsim::inner(s, v)), 1e-12);
      }
    }
  }
}

TEST(TransferAmp, SameParityRejected) {
  std::mt19937_64 rng(4);
  const int n = 4;
  const auto x = random_angles(n, 2, rng);
  const auto s = vqe::prepare(n, 2, x, 1);
  EXPECT_THROW(mzm::transfer_amp(s, s, 1, MajoranaMode::Symmetric), InvalidArgument);
  const auto prep = vqe::build_ansatz(n, 2, x, 1).gates;
  for (auto b : {mzm::Backend::Direct, mzm::Backend::Circuit}) {
    EXPECT_THROW(mzm::transfer_amp(prep, prep, n, 1, MajoranaMode::Symmetric, b),
                 InvalidArgument);
  }
}

TEST(TransferAmp, CircuitBackendMatchesDirect) {
  std::mt19937_64 rng(5);
  const int n = 8;
  for (int rep = 0; rep < 3; ++rep) {
    const auto pp = vqe::build_ansatz(n, 2, random_angles(n, 2, rng), 1).gates;
    const auto pm = vqe::build_ansatz(n, 2, random_angles(n, 2, rng), -1).gates;
    for (int j = 1; j <= n; ++j) {
      for (auto mode : {MajoranaMode::Symmetric, MajoranaMode::Antisymmetric}) {
        const double d = mzm::transfer_amp(pp, pm, n, j, mode, mzm::Backend::Direct);
        const double c = mzm::transfer_amp(pp, pm, n, j, mode, mzm::Backend::Circuit);
        EXPECT_NEAR(c, d, 1e-10) << j;
        EXPECT_LE(d, 1.0 + 1e-12);
      }
    }
  }
}

TEST(MzmProfile, VariationalStatesApproachSvd) {
  const auto cs = CouplingSet::from_spin(1, 0.5, 0, 0);
  vqe::VqeConfig cfg;
  cfg.layers = 2;
  cfg.trials = 3;
  cfg.anneal.steps = 200;
  const auto p = mzm::profile(cs, 4, cfg, mzm::Backend::Circuit);
  EXPECT_EQ(p.source, "vqe");
  EXPECT_TRUE(p.converged);
  expect_profile_matches_svd(p, cs, 1e-2);
  const auto d = mzm::profile(cs, 4, cfg, mzm::Backend::Direct);
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(p.amplitude_s[j], d.amplitude_s[j], 1e-10);
}

TEST(MzmBackend, ParseRoundTrip) {
  for (auto b : {mzm::Backend::Direct, mzm::Backend::Circuit}) {
    EXPECT_EQ(mzm::parse_backend(mzm::to_string(b)), b);
  }
  EXPECT_THROW(mzm::parse_backend("qpu"), InvalidArgument);
}
