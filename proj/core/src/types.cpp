// SPDX-License-Identifier: Apache-2.0
#include "ris/types.hpp"

#include <cmath>
#include <string>

namespace ris {

void check_dims(const Dims& dims) {
  if (dims.nt == 0 || dims.nr == 0 || dims.n == 0) {
    throw std::invalid_argument("dimensions must be >= 1, got (" + std::to_string(dims.nt) + ", " +
                                std::to_string(dims.nr) + ", " + std::to_string(dims.n) + ")");
  }
}

Snr::Snr(double linear) : linear_(linear) {
  if (!(linear > 0.0) || !std::isfinite(linear)) {
    throw std::domain_error("SNR must be positive and finite");
  }
}

Snr Snr::from_db(double db) { return Snr(db_to_linear(db)); }

double Snr::db() const { return 10.0 * std::log10(linear_); }

double wrap_phase(double theta) noexcept {
  double wrapped = std::fmod(theta, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2pi
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return wrapped;
}

PhaseVector wrap_phases(const PhaseVector& theta) {
  PhaseVector out(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) out[i] = wrap_phase(theta[i]);
  return out;
}

}  // namespace ris
