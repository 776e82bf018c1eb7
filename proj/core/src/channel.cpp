// SPDX-License-Identifier: Apache-2.0
#include "ris/channel.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace ris {

namespace {

constexpr std::uint64_t kLosStream = 0x4c4f53;  // "LOS"

double uniform01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Half-wavelength ULA: spatial frequency pi sin(phi), phi uniform on [-pi/2, pi/2).
double random_spatial_freq(std::mt19937_64& rng) {
  const double phi = (uniform01(rng) - 0.5) * std::numbers::pi;
  return std::numbers::pi * std::sin(phi);
}

}  // namespace

double distance(const Point2& a, const Point2& b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

Dims ChannelTriple::dims() const {
  return {static_cast<std::size_t>(h_d.cols()), static_cast<std::size_t>(h_d.rows()),
          static_cast<std::size_t>(h_t.rows())};
}

Dims NormalizedTriple::dims() const {
  return {static_cast<std::size_t>(h_d.cols()), static_cast<std::size_t>(h_d.rows()),
          static_cast<std::size_t>(h_t.rows())};
}

std::uint64_t mix_seed(std::uint64_t root, std::uint64_t index) noexcept {
  std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double path_loss(double d, double eps, double beta0) {
  if (!(d > 0.0)) throw std::domain_error("path_loss: distance must be positive");
  return beta0 * std::pow(d, -eps);
}

CVector steering_vector(std::size_t n, double spatial_freq) {
  if (n == 0) throw std::invalid_argument("steering_vector: need at least one element");
  CVector a(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    a[static_cast<Eigen::Index>(k)] = std::polar(1.0, static_cast<double>(k) * spatial_freq);
  }
  return a;
}

CMatrix gen_complex_gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = {re, im};
    }
  }
  return m;
}

CMatrix gen_rician(std::size_t rows, std::size_t cols, double kappa, std::uint64_t seed) {
  if (!(kappa >= 0.0)) throw std::domain_error("gen_rician: K-factor must be non-negative");
  CMatrix nlos = gen_complex_gaussian(rows, cols, seed);
  if (kappa == 0.0) return nlos;

  std::mt19937_64 rng(mix_seed(seed, kLosStream));
  const double w_arrival = random_spatial_freq(rng);
  const double w_departure = random_spatial_freq(rng);
  const CMatrix los = steering_vector(rows, w_arrival) * steering_vector(cols, w_departure).adjoint();

  if (std::isinf(kappa)) return los;
  return std::sqrt(kappa / (kappa + 1.0)) * los + std::sqrt(1.0 / (kappa + 1.0)) * nlos;
}

SystemGeometry sample_geometry(const ChannelTemplate& tmpl, std::uint64_t geometry_seed) {
  if (!(tmpl.x_ris_max > tmpl.x_ris_min) || !(tmpl.x_ris_min >= 0.0)) {
    throw std::invalid_argument("sample_geometry: need 0 <= x_ris_min < x_ris_max");
  }
  if (!(tmpl.ms_distance > 0.0)) throw std::invalid_argument("sample_geometry: ms_distance must be positive");
  std::mt19937_64 rng(geometry_seed);
  SystemGeometry g;
  // x_max - u (x_max - x_min) with u in [0, 1) lands in (x_min, x_max]
  g.ris = {tmpl.x_ris_max - uniform01(rng) * (tmpl.x_ris_max - tmpl.x_ris_min), 0.0};
  const double bearing = kTwoPi * uniform01(rng);
  g.ms = {g.ris.x + tmpl.ms_distance * std::cos(bearing), tmpl.ms_distance * std::sin(bearing)};
  return g;
}

ChannelTriple gen_channel_triple_at(const Dims& dims, const SystemGeometry& geometry,
                                    std::uint64_t fading_seed, const ChannelTemplate& tmpl) {
  check_dims(dims);
  if (!(tmpl.kappa_max >= tmpl.kappa_min) || !(tmpl.kappa_min >= 0.0)) {
    throw std::invalid_argument("gen_channel_triple: need 0 <= kappa_min <= kappa_max");
  }
  ChannelTriple out;
  out.geometry = geometry;
  out.large_scale = tmpl.base;

  std::mt19937_64 rng(fading_seed);
  out.large_scale.kappa_t = tmpl.kappa_min + uniform01(rng) * (tmpl.kappa_max - tmpl.kappa_min);
  out.large_scale.kappa_r = tmpl.kappa_min + uniform01(rng) * (tmpl.kappa_max - tmpl.kappa_min);

  const auto& ls = out.large_scale;
  out.gains.direct = path_loss(geometry.bs_ms(), ls.eps_d, ls.beta0);
  out.gains.bs_ris = path_loss(geometry.bs_ris(), ls.eps_t, ls.beta0);
  out.gains.ris_ms = path_loss(geometry.ris_ms(), ls.eps_r, ls.beta0);

  out.h_d = std::sqrt(out.gains.direct) * gen_rician(dims.nr, dims.nt, ls.kappa_d, mix_seed(fading_seed, 1));
  out.h_t = std::sqrt(out.gains.bs_ris) * gen_rician(dims.n, dims.nt, ls.kappa_t, mix_seed(fading_seed, 2));
  out.h_r = std::sqrt(out.gains.ris_ms) * gen_rician(dims.nr, dims.n, ls.kappa_r, mix_seed(fading_seed, 3));
  return out;
}

ChannelTriple gen_channel_triple(const Dims& dims, std::uint64_t geometry_seed, std::uint64_t fading_seed,
                                 const ChannelTemplate& tmpl) {
  return gen_channel_triple_at(dims, sample_geometry(tmpl, geometry_seed), fading_seed, tmpl);
}

NormalizedTriple normalize_triple(const ChannelTriple& raw) {
  const LinkGains& g = raw.gains;
  if (!(g.direct > 0.0) || !(g.bs_ris > 0.0) || !(g.ris_ms > 0.0)) {
    throw std::domain_error("normalize_triple: recorded path-loss gains must be positive");
  }
  NormalizedTriple out;
  out.h_d = raw.h_d / std::sqrt(g.direct);
  out.h_t = raw.h_t / std::sqrt(g.bs_ris);
  out.h_r = raw.h_r / std::sqrt(g.ris_ms);
  out.gains = g;
  return out;
}

ChannelTriple denormalize_triple(const NormalizedTriple& normalized) {
  ChannelTriple out;
  const LinkGains& g = normalized.gains;
  out.h_d = normalized.h_d * std::sqrt(g.direct);
  out.h_t = normalized.h_t * std::sqrt(g.bs_ris);
  out.h_r = normalized.h_r * std::sqrt(g.ris_ms);
  out.gains = g;
  return out;
}

}  // namespace ris
