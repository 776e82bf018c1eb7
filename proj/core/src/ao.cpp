// SPDX-License-Identifier: Apache-2.0
#include "ris/ao.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace ris {

namespace {

double phase_from_eigenvalue(cdouble lambda) {
  if (std::abs(lambda) <= std::numeric_limits<double>::min()) return 0.0;
  return wrap_phase(-std::arg(lambda));
}

// Operation count of one element update on an Nr x Nt channel.
std::uint64_t update_flops(std::uint64_t nr, std::uint64_t nt) {
  const std::uint64_t g = 8 * nr * nt;               // G = H - e^{j theta} H_(n)
  const std::uint64_t gram = 2 * 8 * nr * nr * nt;   // G G^H and H_(n) H_(n)^H
  const std::uint64_t u = 8 * nr * nt;               // G t_n
  const std::uint64_t solve = 8 * (nr * nr * nr / 3 + 2 * nr * nr);
  const std::uint64_t refresh = 8 * nr * nt;         // H = G + e^{j theta} H_(n)
  return g + gram + u + solve + 8 * nr + refresh;
}

std::uint64_t se_flops(std::uint64_t nr, std::uint64_t nt) {
  return 8 * nr * nr * nt + 8 * (nr * nr * nr / 3) + 20 * nr;
}

// Updates theta in place, carrying the effective channel along.
void sweep_in_place(const RankOneTerms& terms, PhaseVector& theta, double rho, OpCounter* counter) {
  CMatrix h = assemble_effective_channel(terms, theta);
  const Eigen::Index nr = static_cast<Eigen::Index>(terms.rows());
  CMatrix a(nr, nr);
  for (std::size_t n = 1; n <= terms.num_elements(); ++n) {
    const auto k = static_cast<Eigen::Index>(n - 1);
    const CMatrix& hn = terms[n];
    const CMatrix g = h - std::polar(1.0, theta[k]) * hn;

    a.setIdentity();
    a.noalias() += rho * g * g.adjoint();
    a.noalias() += rho * hn * hn.adjoint();

    // lambda = tr(A^-1 B) = rho (G t_n)^H A^-1 r_n
    const CVector u = g * terms.transmit_factor(n).adjoint();
    const CVector r = terms.receive_factor(n);
    const cdouble lambda = rho * u.dot(a.llt().solve(r));

    theta[k] = phase_from_eigenvalue(lambda);
    h = g + std::polar(1.0, theta[k]) * hn;
    if (counter) counter->add(update_flops(terms.rows(), terms.cols()));
  }
}

}  // namespace

void AoConfig::validate() const {
  if (num_starts < 1) throw std::invalid_argument("AoConfig: num_starts must be >= 1");
  if (max_sweeps < 1) throw std::invalid_argument("AoConfig: max_sweeps must be >= 1");
  if (!(se_tol > 0.0)) throw std::invalid_argument("AoConfig: se_tol must be positive");
}

cdouble rank_one_eigenvalue(const RankOneTerms& terms, const PhaseVector& theta, std::size_t n, Snr rho) {
  const CMatrix a = compute_A_n(terms, theta, n, rho);
  const CMatrix b = compute_B_n(terms, theta, n, rho);
  return a.llt().solve(b).trace();
}

double optimal_phase_n(const RankOneTerms& terms, const PhaseVector& theta, std::size_t n, Snr rho) {
  return phase_from_eigenvalue(rank_one_eigenvalue(terms, theta, n, rho));
}

PhaseVector ao_sweep(const RankOneTerms& terms, const PhaseVector& theta_in, Snr rho, OpCounter* counter) {
  PhaseVector theta = wrap_phases(theta_in);
  sweep_in_place(terms, theta, rho.linear(), counter);
  return theta;
}

AoResult ao_refine(const RankOneTerms& terms, const PhaseVector& start, Snr rho, const AoConfig& cfg,
                   OpCounter* counter) {
  cfg.validate();
  AoResult result;
  result.theta = wrap_phases(start);
  result.se = spectral_efficiency(terms, result.theta, rho);
  result.se_trace.push_back(result.se);

  const std::uint64_t se_cost = se_flops(terms.rows(), terms.cols());
  if (counter) counter->add(se_cost);
  for (std::size_t sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    sweep_in_place(terms, result.theta, rho.linear(), counter);
    const double se = spectral_efficiency(terms, result.theta, rho);
    if (counter) counter->add(se_cost);
    result.se_trace.push_back(se);
    ++result.sweeps_used;
    const double delta = std::abs(se - result.se);
    result.se = se;
    if (delta < cfg.se_tol) break;
  }
  return result;
}

AoResult ao_optimize(const RankOneTerms& terms, Snr rho, const AoConfig& cfg,
                     std::span<const PhaseVector> extra_starts, OpCounter* counter) {
  cfg.validate();
  const std::size_t n = terms.num_elements();
  AoResult best;
  bool have_best = false;
  auto consider = [&](AoResult candidate) {
    if (!have_best || candidate.se > best.se) {
      best = std::move(candidate);
      have_best = true;
    }
  };
  for (const PhaseVector& start : extra_starts) {
    if (static_cast<std::size_t>(start.size()) != n) {
      throw std::invalid_argument("ao_optimize: extra start has " + std::to_string(start.size()) +
                                  " phases, expected " + std::to_string(n));
    }
    consider(ao_refine(terms, start, rho, cfg, counter));
  }
  for (std::size_t k = 0; k < cfg.num_starts; ++k) {
    consider(ao_refine(terms, random_phases(n, mix_seed(cfg.seed, k)), rho, cfg, counter));
  }
  return best;
}

PhaseVector random_phases(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
  PhaseVector theta(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta[i] = wrap_phase(uniform(rng));
  return theta;
}

double no_ris_se(const RankOneTerms& terms, Snr rho) { return spectral_efficiency(terms[0], rho); }

double no_ris_se(const ChannelTriple& triple, Snr rho) { return spectral_efficiency(triple.h_d, rho); }

}  // namespace ris
