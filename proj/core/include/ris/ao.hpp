// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ris/spectral.hpp"

namespace ris {

struct AoConfig {
  std::size_t num_starts = 10;
  std::size_t max_sweeps = 100;
  double se_tol = 1e-4;
  std::uint64_t seed = 1;

  void validate() const;
};

struct AoResult {
  PhaseVector theta;
  double se = 0.0;
  std::size_t sweeps_used = 0;
  std::vector<double> se_trace;  // SE of the winning start, before and after each sweep
};

/// Maximizer of SE over theta_n with all other phases fixed.
///
/// A_n^-1 B_n has rank one, so its only non-zero eigenvalue is its trace.
/// With B_n = rho H_(n) G_n^H,
///   det(A_n + e^{j theta} B_n + e^{-j theta} B_n^H) = det(A_n) (c + 2 Re(e^{j theta} lambda))
/// for a theta-free c, so the maximizer is theta_n = -arg(lambda).
/// Returns 0 when lambda vanishes (SE is then flat in theta_n).
double optimal_phase_n(const RankOneTerms& terms, const PhaseVector& theta, std::size_t n, Snr rho);

/// The sole non-zero eigenvalue of A_n^-1 B_n via its trace.
cdouble rank_one_eigenvalue(const RankOneTerms& terms, const PhaseVector& theta, std::size_t n,
                            Snr rho);

/// One cyclic pass n = 1..N, each update using the latest phases.
PhaseVector ao_sweep(const RankOneTerms& terms, const PhaseVector& theta_in, Snr rho,
                     OpCounter* counter = nullptr);

/// Single start: sweep until |dSE| < se_tol or max_sweeps.
AoResult ao_refine(const RankOneTerms& terms, const PhaseVector& start, Snr rho, const AoConfig& cfg,
                   OpCounter* counter = nullptr);

/// Best of cfg.num_starts seeded random starts plus any `extra_starts`.
AoResult ao_optimize(const RankOneTerms& terms, Snr rho, const AoConfig& cfg,
                     std::span<const PhaseVector> extra_starts = {}, OpCounter* counter = nullptr);

/// i.i.d. uniform on [0, 2pi).
PhaseVector random_phases(std::size_t n, std::uint64_t seed);

/// SE of the direct link alone.
double no_ris_se(const RankOneTerms& terms, Snr rho);
double no_ris_se(const ChannelTriple& triple, Snr rho);

}  // namespace ris
