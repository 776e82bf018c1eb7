// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ris/ao.hpp"

using namespace ris;
using testutil::unit_terms;
using testutil::unit_triple;

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

double se_with(const RankOneTerms& terms, PhaseVector theta, std::size_t n, double value, Snr rho) {
  theta(idx(n - 1)) = value;
  return spectral_efficiency(terms, theta, rho);
}

}  // namespace

TEST(OptimalPhase, FlatObjectiveGivesZero) {
  const ChannelTriple t = unit_triple({3, 2, 1}, 2);
  const RankOneTerms terms(CMatrix::Zero(2, 3), t.h_t, t.h_r);
  EXPECT_EQ(optimal_phase_n(terms, PhaseVector::Constant(1, 1.3), 1, Snr(5.0)), 0.0);
}

TEST(OptimalPhase, MatchesFineGridForOneElement) {
  const std::size_t points = 100000;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const RankOneTerms terms = unit_terms({4, 2, 1}, s);
    const Snr rho(10.0);
    const double theta = optimal_phase_n(terms, PhaseVector::Zero(1), 1, rho);
    const auto [grid_best, arg] = testutil::grid_search(terms, rho.linear(), points);
    const double se = se_with(terms, PhaseVector::Zero(1), 1, theta, rho);
    EXPECT_GE(se, grid_best - 1e-12);
    const double gap = std::abs(std::remainder(theta - arg(0), kTwoPi));
    EXPECT_LE(gap, kTwoPi / static_cast<double>(points));
  }
}

TEST(OptimalPhase, BeatsRandomProbes) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const RankOneTerms terms = unit_terms({4, 3, 6}, s);
    const PhaseVector theta = random_phases(6, s + 50);
    const Snr rho(20.0);
    const std::size_t n = 1 + s % 6;
    const double best = se_with(terms, theta, n, optimal_phase_n(terms, theta, n, rho), rho);
    for (int k = 0; k < 1000; ++k) EXPECT_GE(best, se_with(terms, theta, n, u(rng), rho) - 1e-12);
  }
}

TEST(OptimalPhase, EigenvalueIsTraceOfRankOneProduct) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const RankOneTerms terms = unit_terms({4, 3, 5}, s);
    const PhaseVector theta = random_phases(5, s);
    const Snr rho(4.0);
    const std::size_t n = 1 + s % 5;
    const CMatrix a = compute_A_n(terms, theta, n, rho);
    const CMatrix b = compute_B_n(terms, theta, n, rho);
    Eigen::ComplexEigenSolver<CMatrix> es(a.inverse() * b);
    const CVector ev = es.eigenvalues();
    Eigen::Index imax = 0;
    ev.cwiseAbs().maxCoeff(&imax);
    const cdouble lambda = rank_one_eigenvalue(terms, theta, n, rho);
    EXPECT_LT(std::abs(lambda - ev(imax)), 1e-9 * std::max(1.0, std::abs(lambda)));
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (k == imax) continue;
      EXPECT_LT(std::abs(ev(k)), 1e-9 * std::abs(lambda));
    }
  }
}

TEST(AoSweep, SingleElementIsOneUpdate) {
  const RankOneTerms terms = unit_terms({4, 2, 1}, 9);
  const PhaseVector start = PhaseVector::Constant(1, 2.0);
  const PhaseVector out = ao_sweep(terms, start, Snr(3.0));
  EXPECT_NEAR(out(0), wrap_phase(optimal_phase_n(terms, start, 1, Snr(3.0))), 1e-12);
}

TEST(AoSweep, NeverDecreasesSe) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const RankOneTerms terms = unit_terms({4, 2, 8}, s);
    const Snr rho = Snr::from_db(-10.0 + 5.0 * static_cast<double>(s % 8));
    PhaseVector theta = random_phases(8, s);
    double se = spectral_efficiency(terms, theta, rho);
    for (int k = 0; k < 5; ++k) {
      theta = ao_sweep(terms, theta, rho);
      const double next = spectral_efficiency(terms, theta, rho);
      EXPECT_GE(next, se - 1e-12);
      se = next;
    }
  }
}

TEST(AoSweep, ElementUpdatesAreMonotone) {
  std::mt19937_64 rng(11);
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const RankOneTerms terms = unit_terms({4, 2, 8}, s);
    const Snr rho = Snr::from_db(-10.0 + 5.0 * static_cast<double>(s % 8));
    PhaseVector theta = random_phases(8, s + 7);
    const std::size_t n = 1 + rng() % 8;
    const double before = spectral_efficiency(terms, theta, rho);
    theta(idx(n - 1)) = optimal_phase_n(terms, theta, n, rho);
    EXPECT_GE(spectral_efficiency(terms, theta, rho), before - 1e-12);
  }
}

TEST(AoRefine, TraceConverges) {
  const RankOneTerms terms = unit_terms({4, 2, 16}, 4);
  AoConfig cfg;
  cfg.max_sweeps = 1000;
  const AoResult r = ao_refine(terms, random_phases(16, 1), Snr(10.0), cfg);
  ASSERT_GE(r.se_trace.size(), 2u);
  EXPECT_LT(r.sweeps_used, cfg.max_sweeps);
  EXPECT_LT(std::abs(r.se_trace.back() - r.se_trace[r.se_trace.size() - 2]), cfg.se_tol);
  for (std::size_t i = 1; i < r.se_trace.size(); ++i) EXPECT_GE(r.se_trace[i], r.se_trace[i - 1] - 1e-12);
  EXPECT_DOUBLE_EQ(r.se, spectral_efficiency(terms, r.theta, Snr(10.0)));
}

TEST(AoOptimize, OneStartOneSweepIsOneSweep) {
  const RankOneTerms terms = unit_terms({4, 2, 8}, 4);
  AoConfig cfg;
  cfg.num_starts = 1;
  cfg.max_sweeps = 1;
  const AoResult r = ao_optimize(terms, Snr(5.0), cfg);
  const PhaseVector ref = ao_sweep(terms, random_phases(8, mix_seed(cfg.seed, 0)), Snr(5.0));
  EXPECT_EQ(r.theta, ref);
  EXPECT_EQ(r.sweeps_used, 1u);
}

TEST(AoOptimize, MoreStartsNeverWorse) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const RankOneTerms terms = unit_terms({4, 2, 8}, s);
    AoConfig one;
    one.num_starts = 1;
    AoConfig five = one;
    five.num_starts = 5;
    EXPECT_GE(ao_optimize(terms, Snr(10.0), five).se, ao_optimize(terms, Snr(10.0), one).se);
  }
}

TEST(AoOptimize, ExtraStartIsIncluded) {
  const RankOneTerms terms = unit_terms({4, 2, 8}, 21);
  const PhaseVector start = random_phases(8, 99);
  AoConfig cfg;
  cfg.num_starts = 1;
  const std::vector<PhaseVector> extra{start};
  const AoResult r = ao_optimize(terms, Snr(10.0), cfg, extra);
  EXPECT_GE(r.se, ao_refine(terms, start, Snr(10.0), cfg).se);
  EXPECT_GE(r.se, spectral_efficiency(terms, start, Snr(10.0)));
}

TEST(AoOptimize, MatchesTwoElementGrid) {
  for (std::uint64_t s = 0; s < 2; ++s) {
    const RankOneTerms terms = unit_terms({4, 2, 2}, s);
    const Snr rho(10.0);
    const AoResult r = ao_optimize(terms, rho, AoConfig{});
    const double grid = testutil::grid_search(terms, rho.linear(), 1000).first;
    EXPECT_NEAR(r.se, grid, 1e-3);
  }
}

TEST(AoOptimize, BadConfigThrows) {
  const RankOneTerms terms = unit_terms({2, 2, 2}, 1);
  AoConfig cfg;
  cfg.num_starts = 0;
  EXPECT_THROW(ao_optimize(terms, Snr(1.0), cfg), std::invalid_argument);
  const std::vector<PhaseVector> bad{PhaseVector::Zero(3)};
  EXPECT_THROW(ao_optimize(terms, Snr(1.0), AoConfig{}, bad), std::invalid_argument);
}

TEST(AoOptimize, CountsFlops) {
  const RankOneTerms terms = unit_terms({4, 2, 8}, 1);
  OpCounter c;
  ao_optimize(terms, Snr(10.0), AoConfig{}, {}, &c);
  EXPECT_GT(c.flops, 0u);
}

TEST(RandomPhases, Deterministic) { EXPECT_EQ(random_phases(10, 5), random_phases(10, 5)); }

TEST(RandomPhases, MeanIsPi) {
  const PhaseVector p = random_phases(100000, 42);
  EXPECT_NEAR(p.mean(), std::numbers::pi, 0.02);
  EXPECT_GE(p.minCoeff(), 0.0);
  EXPECT_LT(p.maxCoeff(), kTwoPi);
}

TEST(RandomPhases, EmptyForZero) { EXPECT_EQ(random_phases(0, 1).size(), 0); }

TEST(NoRis, ZeroDirectIsZero) {
  const ChannelTriple t = unit_triple({3, 2, 4}, 2);
  const RankOneTerms terms(CMatrix::Zero(2, 3), t.h_t, t.h_r);
  EXPECT_EQ(no_ris_se(terms, Snr(10.0)), 0.0);
}

TEST(NoRis, EqualsSeWithReflectionsRemoved) {
  const RankOneTerms terms = unit_terms({3, 2, 4}, 2);
  const RankOneTerms bare = terms.without_reflection();
  EXPECT_DOUBLE_EQ(no_ris_se(terms, Snr(10.0)), spectral_efficiency(bare, random_phases(4, 1), Snr(10.0)));
}

TEST(NoRis, NeverAboveAo) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const ChannelTriple t = gen_channel_triple({4, 2, 8}, s, s + 1, ChannelTemplate{});
    const RankOneTerms terms = rank_one_terms(t);
    const Snr rho(1e14);
    EXPECT_LE(no_ris_se(t, rho), ao_optimize(terms, rho, AoConfig{}).se);
  }
}
