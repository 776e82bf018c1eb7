// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ris/channel.hpp"
#include "ris/types.hpp"

namespace ris {

/// The N+1 matrices whose phase-weighted sum is the effective channel:
/// index 0 is H_d, index n >= 1 is (column n of H_r)(row n of H_t).
class RankOneTerms {
 public:
  RankOneTerms() = default;
  RankOneTerms(const CMatrix& h_d, const CMatrix& h_t, const CMatrix& h_r);

  std::size_t num_elements() const noexcept { return terms_.empty() ? 0 : terms_.size() - 1; }
  std::size_t rows() const noexcept { return nr_; }
  std::size_t cols() const noexcept { return nt_; }
  Dims dims() const noexcept { return {nt_, nr_, num_elements()}; }

  /// i in [0, N]; 0 is the direct channel.
  const CMatrix& operator[](std::size_t i) const { return terms_[i]; }
  const std::vector<CMatrix>& terms() const noexcept { return terms_; }

  /// Receive-side factor r_n (column n-1 of H_r), n in [1, N].
  CVector receive_factor(std::size_t n) const { return h_r_.col(static_cast<Eigen::Index>(n - 1)); }
  /// Transmit-side row t_n^H (row n-1 of H_t), n in [1, N].
  Eigen::RowVectorXcd transmit_factor(std::size_t n) const {
    return h_t_.row(static_cast<Eigen::Index>(n - 1));
  }

  /// Copy with every reflected term (n >= 1) set to zero.
  RankOneTerms without_reflection() const;

 private:
  std::size_t nt_ = 0;
  std::size_t nr_ = 0;
  CMatrix h_t_;
  CMatrix h_r_;
  std::vector<CMatrix> terms_;
};

/// Counts 6 NrNt flops per reflected term when `counter` is given.
RankOneTerms rank_one_terms(const ChannelTriple& triple, OpCounter* counter = nullptr);
RankOneTerms rank_one_terms(const NormalizedTriple& triple, OpCounter* counter = nullptr);

/// Sum_i exp(j theta_i) H_(i) with theta_0 = 0.
CMatrix assemble_effective_channel(const RankOneTerms& terms, const PhaseVector& theta);

/// H_d + H_r diag(exp(j theta)) H_t, without going through the terms.
CMatrix assemble_direct(const CMatrix& h_d, const CMatrix& h_t, const CMatrix& h_r,
                        const PhaseVector& theta);

/// log2 det(I + rho H H^H) in bits/s/Hz.
double spectral_efficiency(const CMatrix& h, Snr rho);
double spectral_efficiency(const RankOneTerms& terms, const PhaseVector& theta, Snr rho);

/// A_n = I + rho G_n G_n^H + rho H_(n) H_(n)^H, G_n the sum without term n.
CMatrix compute_A_n(const RankOneTerms& terms, const PhaseVector& theta, std::size_t n, Snr rho);

/// B_n = rho H_(n) G_n^H.
CMatrix compute_B_n(const RankOneTerms& terms, const PhaseVector& theta, std::size_t n, Snr rho);

/// dSE/dtheta_n = (2 rho / ln 2) Re tr(M^-1 j e^{j theta_n} H_(n) H^H),
/// M = I + rho H H^H.
RVector se_gradient(const RankOneTerms& terms, const PhaseVector& theta, Snr rho);

}  // namespace ris
