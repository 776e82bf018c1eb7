// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "ris/types.hpp"

namespace ris {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point2& a, const Point2& b) noexcept;

/// BS at the origin, RIS on the x-axis, MS near the RIS.
struct SystemGeometry {
  Point2 bs{0.0, 0.0};
  Point2 ris{};
  Point2 ms{};

  double bs_ms() const noexcept { return distance(bs, ms); }
  double bs_ris() const noexcept { return distance(bs, ris); }
  double ris_ms() const noexcept { return distance(ris, ms); }
};

/// Path-loss exponents and Rician factors of the three links.
struct LargeScaleParams {
  double beta0 = 1e-3;  // linear gain at the 1 m reference distance
  double eps_d = 3.5;
  double eps_t = 2.0;
  double eps_r = 2.8;
  double kappa_d = 0.0;
  double kappa_t = 0.0;
  double kappa_r = 0.0;
};

/// Sampling template for gen_channel_triple: the fixed large-scale
/// parameters plus the ranges the random quantities are drawn from.
struct ChannelTemplate {
  LargeScaleParams base{};
  double kappa_min = 0.0;
  double kappa_max = 10.0;
  double x_ris_min = 20.0;  // exclusive
  double x_ris_max = 100.0;
  double ms_distance = 2.0;
};

/// Linear large-scale power gains of the three links.
struct LinkGains {
  double direct = 1.0;  // BS-MS
  double bs_ris = 1.0;  // BS-RIS
  double ris_ms = 1.0;  // RIS-MS
};

struct ChannelTriple {
  CMatrix h_d;  // Nr x Nt
  CMatrix h_t;  // N x Nt
  CMatrix h_r;  // Nr x N
  LargeScaleParams large_scale{};
  SystemGeometry geometry{};
  LinkGains gains{};

  Dims dims() const;
};

/// Channels with the large-scale gains divided out. `gains` keeps the
/// scales that were removed so the raw triple can be rebuilt.
struct NormalizedTriple {
  CMatrix h_d;
  CMatrix h_t;
  CMatrix h_r;
  LinkGains gains{};

  Dims dims() const;
};

/// beta0 * d^(-eps) as a linear power gain. Throws std::domain_error for d <= 0.
double path_loss(double d, double eps, double beta0);

/// exp(j k w), k = 0..n-1.
CVector steering_vector(std::size_t n, double spatial_freq);

/// i.i.d. CN(0, 1) entries, deterministic in `seed`.
CMatrix gen_complex_gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// sqrt(k/(k+1)) LOS + sqrt(1/(k+1)) NLOS with a ULA outer-product LOS
/// term. The NLOS part equals gen_complex_gaussian(rows, cols, seed).
CMatrix gen_rician(std::size_t rows, std::size_t cols, double kappa, std::uint64_t seed);

/// Draws x_RIS in (x_ris_min, x_ris_max] and an MS bearing uniform on the
/// circle of radius ms_distance around the RIS.
SystemGeometry sample_geometry(const ChannelTemplate& tmpl, std::uint64_t geometry_seed);

/// Builds a channel for a fixed placement; Rician factors and fading
/// come from `fading_seed`.
ChannelTriple gen_channel_triple_at(const Dims& dims, const SystemGeometry& geometry,
                                    std::uint64_t fading_seed, const ChannelTemplate& tmpl);

ChannelTriple gen_channel_triple(const Dims& dims, std::uint64_t geometry_seed,
                                 std::uint64_t fading_seed, const ChannelTemplate& tmpl);

NormalizedTriple normalize_triple(const ChannelTriple& raw);

/// Re-applies the stored scales. Geometry and Rician factors are not
/// part of a NormalizedTriple and come back default-initialized.
ChannelTriple denormalize_triple(const NormalizedTriple& normalized);

/// splitmix64 step; used to derive per-sample and per-link seeds.
std::uint64_t mix_seed(std::uint64_t root, std::uint64_t index) noexcept;

}  // namespace ris
