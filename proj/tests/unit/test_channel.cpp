// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ris/channel.hpp"

using namespace ris;

TEST(PathLoss, ReferenceDistanceGivesBeta0) { EXPECT_DOUBLE_EQ(path_loss(1.0, 3.5, 1e-3), 1e-3); }

TEST(PathLoss, HundredMetresSquareLaw) { EXPECT_NEAR(path_loss(100.0, 2.0, 1e-3), 1e-7, 1e-22); }

TEST(PathLoss, FractionalExponent) {
  // 1e-3 * 2^-2.8 evaluated with mpmath at 30 digits
  EXPECT_NEAR(path_loss(2.0, 2.8, 1e-3), 1.435872943746293758e-4, 1e-18);
}

TEST(PathLoss, RejectsNonPositiveDistance) {
  EXPECT_THROW(path_loss(0.0, 2.0, 1e-3), std::domain_error);
  EXPECT_THROW(path_loss(-1.0, 2.0, 1e-3), std::domain_error);
}

TEST(PathLoss, DecreasesWithDistance) {
  double prev = path_loss(1.0, 2.8, 1e-3);
  for (double d = 1.5; d < 200.0; d *= 1.5) {
    const double cur = path_loss(d, 2.8, 1e-3);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

TEST(Steering, ZeroFrequencyIsAllOnes) {
  const CVector a = steering_vector(4, 0.0);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(a(i), cdouble(1.0, 0.0));
}

TEST(Steering, HalfWavelength) {
  const CVector a = steering_vector(2, std::numbers::pi);
  EXPECT_NEAR(std::abs(a(0) - cdouble(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a(1) - cdouble(-1, 0)), 0.0, 1e-15);
}

TEST(Steering, QuarterTurn) {
  const CVector a = steering_vector(3, std::numbers::pi / 2);
  EXPECT_NEAR(std::abs(a(0) - cdouble(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a(1) - cdouble(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a(2) - cdouble(-1, 0)), 0.0, 1e-15);
}

TEST(Rician, ZeroKappaIsTheGaussianDraw) {
  for (std::uint64_t s : {1u, 2u, 99u}) {
    EXPECT_EQ(gen_rician(2, 2, 0.0, s), gen_complex_gaussian(2, 2, s));
  }
}

TEST(Rician, HugeKappaHasUnitModulus) {
  const CMatrix h = gen_rician(2, 2, 1e12, 5);
  for (Eigen::Index i = 0; i < h.size(); ++i) EXPECT_NEAR(std::abs(h(i)), 1.0, 1e-5);
}

TEST(Rician, InfiniteKappaIsPureLos) {
  const CMatrix h = gen_rician(3, 4, std::numeric_limits<double>::infinity(), 5);
  for (Eigen::Index i = 0; i < h.size(); ++i) EXPECT_NEAR(std::abs(h(i)), 1.0, 1e-14);
}

TEST(Rician, NegativeKappaThrows) { EXPECT_THROW(gen_rician(2, 2, -0.1, 1), std::domain_error); }

TEST(Rician, UnitMeanPowerAtKappaThree) {
  // 10^5 entries pooled over seeds
  double acc = 0.0;
  std::size_t count = 0;
  for (std::uint64_t s = 0; s < 25000; ++s) {
    const CMatrix h = gen_rician(2, 2, 3.0, mix_seed(77, s));
    acc += h.squaredNorm();
    count += 4;
  }
  EXPECT_NEAR(acc / static_cast<double>(count), 1.0, 0.02);
}

TEST(Rician, Deterministic) { EXPECT_EQ(gen_rician(3, 5, 2.5, 42), gen_rician(3, 5, 2.5, 42)); }

TEST(Geometry, WithinTemplateRanges) {
  const ChannelTemplate tmpl{};
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const SystemGeometry g = sample_geometry(tmpl, s);
    EXPECT_GT(g.ris.x, tmpl.x_ris_min);
    EXPECT_LE(g.ris.x, tmpl.x_ris_max);
    EXPECT_EQ(g.ris.y, 0.0);
    EXPECT_NEAR(g.ris_ms(), tmpl.ms_distance, 1e-12);
    EXPECT_EQ(g.bs.x, 0.0);
    EXPECT_EQ(g.bs.y, 0.0);
  }
}

TEST(ChannelTriple, EightByTwoFortyShapes) {
  const ChannelTriple t = gen_channel_triple({8, 2, 40}, 1, 2, ChannelTemplate{});
  EXPECT_EQ(t.h_d.rows(), 2);
  EXPECT_EQ(t.h_d.cols(), 8);
  EXPECT_EQ(t.h_t.rows(), 40);
  EXPECT_EQ(t.h_t.cols(), 8);
  EXPECT_EQ(t.h_r.rows(), 2);
  EXPECT_EQ(t.h_r.cols(), 40);
  EXPECT_EQ(t.dims(), (Dims{8, 2, 40}));
}

TEST(ChannelTriple, SameSeedsSameTriple) {
  const ChannelTriple a = gen_channel_triple({4, 2, 8}, 3, 4, ChannelTemplate{});
  const ChannelTriple b = gen_channel_triple({4, 2, 8}, 3, 4, ChannelTemplate{});
  EXPECT_EQ(a.h_d, b.h_d);
  EXPECT_EQ(a.h_t, b.h_t);
  EXPECT_EQ(a.h_r, b.h_r);
  EXPECT_EQ(a.large_scale.kappa_t, b.large_scale.kappa_t);
}

TEST(ChannelTriple, DifferentFadingSeedsDiffer) {
  const ChannelTriple a = gen_channel_triple({4, 2, 8}, 3, 4, ChannelTemplate{});
  const ChannelTriple b = gen_channel_triple({4, 2, 8}, 3, 5, ChannelTemplate{});
  EXPECT_NE(a.h_t, b.h_t);
}

TEST(ChannelTriple, KappaWithinRange) {
  const ChannelTemplate tmpl{};
  for (std::uint64_t s = 0; s < 500; ++s) {
    const ChannelTriple t = gen_channel_triple({1, 1, 1}, s, s + 1, tmpl);
    EXPECT_GE(t.large_scale.kappa_t, tmpl.kappa_min);
    EXPECT_LE(t.large_scale.kappa_t, tmpl.kappa_max);
    EXPECT_GE(t.large_scale.kappa_r, tmpl.kappa_min);
    EXPECT_LE(t.large_scale.kappa_r, tmpl.kappa_max);
  }
}

TEST(ChannelTriple, ScalarRayleighIsCircularGaussian) {
  ChannelTemplate tmpl{};
  tmpl.kappa_min = tmpl.kappa_max = 0.0;
  tmpl.base.beta0 = 1.0;
  tmpl.base.eps_d = tmpl.base.eps_t = tmpl.base.eps_r = 0.0;
  const std::size_t m = 40000;
  double re = 0, im = 0, re2 = 0, im2 = 0, reim = 0, p4 = 0;
  for (std::size_t s = 0; s < m; ++s) {
    const cdouble h = gen_channel_triple({1, 1, 1}, s, mix_seed(5, s), tmpl).h_d(0, 0);
    re += h.real();
    im += h.imag();
    re2 += h.real() * h.real();
    im2 += h.imag() * h.imag();
    reim += h.real() * h.imag();
    p4 += std::norm(h) * std::norm(h);
  }
  const double md = static_cast<double>(m);
  EXPECT_NEAR(re / md, 0.0, 0.015);
  EXPECT_NEAR(im / md, 0.0, 0.015);
  EXPECT_NEAR(re2 / md, 0.5, 0.015);
  EXPECT_NEAR(im2 / md, 0.5, 0.015);
  EXPECT_NEAR(reim / md, 0.0, 0.015);
  // |h|^2 ~ Exp(1) so E|h|^4 = 2
  EXPECT_NEAR(p4 / md, 2.0, 0.08);
}

TEST(ChannelTriple, GainsMatchGeometry) {
  const ChannelTriple t = gen_channel_triple({2, 2, 4}, 8, 9, ChannelTemplate{});
  EXPECT_DOUBLE_EQ(t.gains.direct, path_loss(t.geometry.bs_ms(), 3.5, 1e-3));
  EXPECT_DOUBLE_EQ(t.gains.bs_ris, path_loss(t.geometry.bs_ris(), 2.0, 1e-3));
  EXPECT_DOUBLE_EQ(t.gains.ris_ms, path_loss(t.geometry.ris_ms(), 2.8, 1e-3));
}

TEST(Normalize, UnitGainIsIdentity) {
  ChannelTriple t = testutil::unit_triple({3, 2, 5}, 1);
  const NormalizedTriple n = normalize_triple(t);
  EXPECT_EQ(n.h_d, t.h_d);
  EXPECT_EQ(n.h_t, t.h_t);
  EXPECT_EQ(n.h_r, t.h_r);
}

TEST(Normalize, RemovesDirectPathLoss) {
  double acc = 0.0;
  std::size_t count = 0;
  for (std::uint64_t s = 0; s < 5000; ++s) {
    ChannelTriple t = testutil::unit_triple({4, 2, 1}, s);
    t.h_d *= std::sqrt(1e-7);
    t.gains.direct = 1e-7;
    acc += normalize_triple(t).h_d.squaredNorm();
    count += 8;
  }
  EXPECT_NEAR(acc / static_cast<double>(count), 1.0, 0.03);
}

TEST(Normalize, RoundTrip) {
  const ChannelTriple t = gen_channel_triple({8, 2, 40}, 12, 13, ChannelTemplate{});
  const ChannelTriple back = denormalize_triple(normalize_triple(t));
  EXPECT_LT((back.h_d - t.h_d).norm() / t.h_d.norm(), 1e-12);
  EXPECT_LT((back.h_t - t.h_t).norm() / t.h_t.norm(), 1e-12);
  EXPECT_LT((back.h_r - t.h_r).norm() / t.h_r.norm(), 1e-12);
}

TEST(Normalize, RejectsZeroGain) {
  ChannelTriple t = testutil::unit_triple({1, 1, 1}, 1);
  t.gains.bs_ris = 0.0;
  EXPECT_THROW(normalize_triple(t), std::domain_error);
}

TEST(MixSeed, SpreadsIndices) {
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
  EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));
  EXPECT_EQ(mix_seed(1, 7), mix_seed(1, 7));
}
