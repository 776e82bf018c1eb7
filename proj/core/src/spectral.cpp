// SPDX-License-Identifier: Apache-2.0
#include "ris/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ris {

namespace {

void check_theta(const RankOneTerms& terms, const PhaseVector& theta) {
  if (static_cast<std::size_t>(theta.size()) != terms.num_elements()) {
    throw std::invalid_argument("phase vector has " + std::to_string(theta.size()) +
                                " entries, expected " + std::to_string(terms.num_elements()));
  }
}

void check_index(const RankOneTerms& terms, std::size_t n) {
  if (n < 1 || n > terms.num_elements()) {
    throw std::out_of_range("element index " + std::to_string(n) + " outside [1, " +
                            std::to_string(terms.num_elements()) + "]");
  }
}

// Sum over i != skip of e^{j theta_i} H_(i); skip = 0 keeps every reflected term.
CMatrix partial_sum(const RankOneTerms& terms, const PhaseVector& theta, std::size_t skip) {
  CMatrix g = terms[0];
  for (std::size_t i = 1; i <= terms.num_elements(); ++i) {
    if (i == skip) continue;
    g += std::polar(1.0, theta[static_cast<Eigen::Index>(i - 1)]) * terms[i];
  }
  return g;
}

CMatrix gram_plus_identity(const CMatrix& h, double rho) {
  CMatrix m = CMatrix::Identity(h.rows(), h.rows());
  m.noalias() += rho * h * h.adjoint();
  return m;
}

}  // namespace

RankOneTerms::RankOneTerms(const CMatrix& h_d, const CMatrix& h_t, const CMatrix& h_r)
    : nt_(static_cast<std::size_t>(h_d.cols())),
      nr_(static_cast<std::size_t>(h_d.rows())),
      h_t_(h_t),
      h_r_(h_r) {
  if (h_t.cols() != h_d.cols() || h_r.rows() != h_d.rows() || h_r.cols() != h_t.rows()) {
    throw std::invalid_argument("rank_one_terms: inconsistent channel dimensions");
  }
  const auto n = static_cast<std::size_t>(h_t.rows());
  terms_.reserve(n + 1);
  terms_.push_back(h_d);
  for (Eigen::Index k = 0; k < h_t.rows(); ++k) {
    terms_.push_back(h_r.col(k) * h_t.row(k));
  }
}

RankOneTerms RankOneTerms::without_reflection() const {
  RankOneTerms out = *this;
  out.h_t_.setZero();
  out.h_r_.setZero();
  for (std::size_t i = 1; i < out.terms_.size(); ++i) out.terms_[i].setZero();
  return out;
}

namespace {

void count_rank_one(const RankOneTerms& terms, OpCounter* counter) {
  if (counter) counter->add(6 * terms.rows() * terms.cols() * terms.num_elements());
}

}  // namespace

RankOneTerms rank_one_terms(const ChannelTriple& triple, OpCounter* counter) {
  RankOneTerms terms(triple.h_d, triple.h_t, triple.h_r);
  count_rank_one(terms, counter);
  return terms;
}

RankOneTerms rank_one_terms(const NormalizedTriple& triple, OpCounter* counter) {
  RankOneTerms terms(triple.h_d, triple.h_t, triple.h_r);
  count_rank_one(terms, counter);
  return terms;
}

CMatrix assemble_effective_channel(const RankOneTerms& terms, const PhaseVector& theta) {
  check_theta(terms, theta);
  return partial_sum(terms, theta, 0);
}

CMatrix assemble_direct(const CMatrix& h_d, const CMatrix& h_t, const CMatrix& h_r,
                        const PhaseVector& theta) {
  if (theta.size() != h_t.rows()) throw std::invalid_argument("assemble_direct: phase count mismatch");
  CVector alpha(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) alpha[i] = std::polar(1.0, theta[i]);
  return h_d + h_r * alpha.asDiagonal() * h_t;
}

double spectral_efficiency(const CMatrix& h, Snr rho) {
  if (!h.allFinite()) throw std::domain_error("spectral_efficiency: non-finite channel entries");
  const CMatrix m = gram_plus_identity(h, rho.linear());

  Eigen::LLT<CMatrix> llt(m);
  double log_det = 0.0;
  if (llt.info() == Eigen::Success) {
    const CMatrix& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i) log_det += 2.0 * std::log(l(i, i).real());
  } else {
    // M >= I in exact arithmetic; only reachable through rounding on huge rho.
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(m, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
      log_det += std::log(std::max(eig.eigenvalues()[i], 1.0));
    }
  }
  return std::max(0.0, log_det / std::numbers::ln2);
}

double spectral_efficiency(const RankOneTerms& terms, const PhaseVector& theta, Snr rho) {
  return spectral_efficiency(assemble_effective_channel(terms, theta), rho);
}

CMatrix compute_A_n(const RankOneTerms& terms, const PhaseVector& theta, std::size_t n, Snr rho) {
  check_theta(terms, theta);
  check_index(terms, n);
  const CMatrix g = partial_sum(terms, theta, n);
  CMatrix a = gram_plus_identity(g, rho.linear());
  a.noalias() += rho.linear() * terms[n] * terms[n].adjoint();
  return a;
}

CMatrix compute_B_n(const RankOneTerms& terms, const PhaseVector& theta, std::size_t n, Snr rho) {
  check_theta(terms, theta);
  check_index(terms, n);
  const CMatrix g = partial_sum(terms, theta, n);
  return rho.linear() * terms[n] * g.adjoint();
}

RVector se_gradient(const RankOneTerms& terms, const PhaseVector& theta, Snr rho) {
  check_theta(terms, theta);
  if (!theta.allFinite()) throw std::domain_error("se_gradient: non-finite phases");
  const CMatrix h = partial_sum(terms, theta, 0);
  if (!h.allFinite()) throw std::domain_error("se_gradient: non-finite channel entries");

  const CMatrix m = gram_plus_identity(h, rho.linear());
  const CMatrix m_inv = m.llt().solve(CMatrix::Identity(m.rows(), m.cols()));
  // tr(M^-1 H_(n) H^H) = t_n^H (H^H M^-1) r_n for H_(n) = r_n t_n^H
  const CMatrix w = h.adjoint() * m_inv;

  const double scale = 2.0 * rho.linear() / std::numbers::ln2;
  const std::size_t n_elems = terms.num_elements();
  RVector grad(static_cast<Eigen::Index>(n_elems));
  for (std::size_t n = 1; n <= n_elems; ++n) {
    const cdouble tr = (terms.transmit_factor(n) * w * terms.receive_factor(n))(0, 0);
    const cdouble jalpha = cdouble(0.0, 1.0) * std::polar(1.0, theta[static_cast<Eigen::Index>(n - 1)]);
    grad[static_cast<Eigen::Index>(n - 1)] = scale * (jalpha * tr).real();
  }
  return grad;
}

}  // namespace ris
