// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "ris/channel.hpp"
#include "ris/spectral.hpp"

namespace testutil {

// Unit-variance channels with no path loss, for tests that want O(1) SE.
inline ris::ChannelTriple unit_triple(const ris::Dims& dims, std::uint64_t seed) {
  ris::ChannelTriple t;
  t.h_d = ris::gen_complex_gaussian(dims.nr, dims.nt, ris::mix_seed(seed, 1));
  t.h_t = ris::gen_complex_gaussian(dims.n, dims.nt, ris::mix_seed(seed, 2));
  t.h_r = ris::gen_complex_gaussian(dims.nr, dims.n, ris::mix_seed(seed, 3));
  return t;
}

inline ris::RankOneTerms unit_terms(const ris::Dims& dims, std::uint64_t seed) {
  const auto t = unit_triple(dims, seed);
  return ris::RankOneTerms(t.h_d, t.h_t, t.h_r);
}

// det of a square complex matrix by Gaussian elimination with partial
// pivoting in long double, deliberately not via Eigen.
inline std::complex<long double> det_gauss(const ris::CMatrix& m) {
  using cld = std::complex<long double>;
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::vector<cld>> a(n, std::vector<cld>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i][j] = cld(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).real(),
                    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).imag());
  cld det = 1.0L;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (std::abs(a[piv][k]) == 0.0L) return 0.0L;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const cld f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

// log2 det(I + rho H H^H) through det_gauss.
inline double se_oracle(const ris::CMatrix& h, double rho) {
  const auto nr = h.rows();
  ris::CMatrix m = ris::CMatrix::Identity(nr, nr) + rho * h * h.adjoint();
  return static_cast<double>(std::log2(std::abs(det_gauss(m))));
}

// log2 det(I2 + rho H H^H) for a two-row H, in closed form.
inline double se_two_rows(const ris::CMatrix& h, double rho) {
  const double a = h.row(0).squaredNorm();
  const double b = h.row(1).squaredNorm();
  const double c = std::norm(h.row(0).dot(h.row(1)));
  return std::log2((1.0 + rho * a) * (1.0 + rho * b) - rho * rho * c);
}

// Best SE over a uniform grid of `points` phases per element, N = 1 or 2,
// Nr = 2. Returns the maximum and the maximizing phases.
inline std::pair<double, ris::PhaseVector> grid_search(const ris::RankOneTerms& terms, double rho,
                                                       std::size_t points) {
  const std::size_t n = terms.num_elements();
  const double step = ris::kTwoPi / static_cast<double>(points);
  std::vector<ris::cdouble> ph(points);
  for (std::size_t i = 0; i < points; ++i) ph[i] = std::polar(1.0, step * static_cast<double>(i));
  double best = -1.0;
  ris::PhaseVector arg = ris::PhaseVector::Zero(static_cast<Eigen::Index>(n));
  ris::CMatrix h(terms.rows(), terms.cols());
  if (n == 1) {
    for (std::size_t i = 0; i < points; ++i) {
      h = terms[0] + ph[i] * terms[1];
      const double se = se_two_rows(h, rho);
      if (se > best) {
        best = se;
        arg(0) = step * static_cast<double>(i);
      }
    }
  } else {
    ris::CMatrix partial(terms.rows(), terms.cols());
    for (std::size_t i = 0; i < points; ++i) {
      partial = terms[0] + ph[i] * terms[1];
      for (std::size_t j = 0; j < points; ++j) {
        h = partial + ph[j] * terms[2];
        const double se = se_two_rows(h, rho);
        if (se > best) {
          best = se;
          arg(0) = step * static_cast<double>(i);
          arg(1) = step * static_cast<double>(j);
        }
      }
    }
  }
  return {best, arg};
}

}  // namespace testutil
