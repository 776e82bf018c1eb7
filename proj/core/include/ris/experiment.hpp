// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ris/config.hpp"
#include "ris/dataset.hpp"
#include "ris/lpsnet.hpp"

namespace ris {

/// P_BS / (N0 B) with P_BS in dBm and N0 in dBm/Hz.
double rho_from_power(double pbs_dbm, double bandwidth_hz, double noise_dbm_per_hz);

/// Normalizes each triple and attaches a rho_train drawn from
/// mix_seed(seed, i).
std::vector<Sample> build_training_samples(const std::vector<ChannelTriple>& triples, InputMode mode,
                                           double rho0_db, std::uint64_t seed);

inline constexpr const char* kSchemeLpsnet = "lpsnet";
inline constexpr const char* kSchemeAo = "ao";
inline constexpr const char* kSchemeRandom = "random";
inline constexpr const char* kSchemeNoRis = "no_ris";

struct EvalRecord {
  std::string scheme;
  std::size_t instance = 0;
  double pbs_dbm = 0.0;
  double se = 0.0;
  double wall_time_s = 0.0;
};

struct EvalSummaryRow {
  double pbs_dbm = 0.0;
  double lpsnet = 0.0;
  double ao = 0.0;
  double random = 0.0;
  double no_ris = 0.0;
  double ratio = 0.0;  // lpsnet / ao
};

struct EvaluationReport {
  std::vector<EvalRecord> records;
  std::vector<EvalSummaryRow> per_power;
  EvalSummaryRow overall;  // pbs_dbm unused; means over every record
};

/// SE of LPSNet, AO, random phases and no RIS for every test instance and
/// every P_BS point. The random-phase vector is one of AO's starts.
EvaluationReport evaluate_schemes(const ExperimentConfig& cfg, const MLPParams& params,
                                  InputMode mode, const std::vector<ChannelTriple>& test);

struct PositionRow {
  double x_ms = 0.0;
  double lpsnet = 0.0;
  double ao = 0.0;
  double random = 0.0;
  double no_ris = 0.0;
};

/// Mean SE per scheme at each MS x-coordinate, RIS fixed at (x_ris, 0) and
/// MS at (x_ms, y_ms). Every grid point reuses the same fading seeds.
std::vector<PositionRow> sweep_position(const ExperimentConfig& cfg, const MLPParams& params,
                                        InputMode mode);

std::vector<double> position_grid(const PositionSweepConfig& sweep);

struct TimingReport {
  Dims dims{};
  std::size_t instances = 0;
  double lpsnet_median_s = 0.0;
  double ao_median_s = 0.0;
  std::uint64_t lpsnet_flops = 0;
  std::uint64_t ao_median_flops = 0;
  std::uint64_t lpsnet_flops_doubled_n = 0;

  double time_ratio() const { return lpsnet_median_s / ao_median_s; }
  double flop_ratio() const {
    return static_cast<double>(lpsnet_flops) / static_cast<double>(ao_median_flops);
  }
  double doubling_ratio() const {
    return static_cast<double>(lpsnet_flops_doubled_n) / static_cast<double>(lpsnet_flops);
  }
};

/// Median wall time of LPSNet inference (features + forward) and of full
/// AO on the same channel instances. A network whose shape does not match
/// the timing dims is replaced by a Glorot-initialized one of the right shape.
TimingReport measure_timing(const ExperimentConfig& cfg, const MLPParams* params, InputMode mode);

/// FLOPs of one LPSNet inference with the default network for `dims`.
std::uint64_t lpsnet_inference_flops(const Dims& dims, InputMode mode);

void write_eval_csv(const std::filesystem::path& path, const EvaluationReport& report);
void write_eval_summary_csv(const std::filesystem::path& path, const EvaluationReport& report);
void write_loss_csv(const std::filesystem::path& path, const TrainResult& result);
void write_position_csv(const std::filesystem::path& path, const std::vector<PositionRow>& rows);
void write_timing_csv(const std::filesystem::path& path, const TimingReport& report);

}  // namespace ris
