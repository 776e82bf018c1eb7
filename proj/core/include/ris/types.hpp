// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace ris {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// RIS phase shifts in radians, one per reflecting element.
using PhaseVector = Eigen::VectorXd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Antenna/element counts of one RIS-aided link.
struct Dims {
  std::size_t nt = 0;  // BS antennas
  std::size_t nr = 0;  // MS antennas
  std::size_t n = 0;   // RIS elements

  friend bool operator==(const Dims&, const Dims&) = default;
};

void check_dims(const Dims& dims);

/// Linear transmit-power-to-noise ratio.
class Snr {
 public:
  explicit Snr(double linear);
  static Snr from_db(double db);

  double linear() const noexcept { return linear_; }
  double db() const;

 private:
  double linear_;
};

/// Wraps a phase into [0, 2pi).
double wrap_phase(double theta) noexcept;
PhaseVector wrap_phases(const PhaseVector& theta);

/// Running count of floating-point operations (a complex multiply counts 6,
/// a complex multiply-add 8, a real multiply-add 2, a sigmoid 4). Pass one
/// to the metered routines to count what they execute.
struct OpCounter {
  std::uint64_t flops = 0;

  void add(std::uint64_t n) noexcept { flops += n; }
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace ris
