// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ris/ao.hpp"
#include "ris/channel.hpp"
#include "ris/lpsnet.hpp"

namespace ris {

enum class Profile { desk, full };

Profile parse_profile(std::string_view text);

struct DatasetConfig {
  std::size_t train_size = 2000;
  std::size_t test_size = 500;
  std::uint64_t geometry_seed = 11;
  std::uint64_t fading_seed = 23;
  /// Test seeds are the training roots plus this offset.
  std::uint64_t test_seed_offset = 1000003;
};

struct NetConfig {
  /// Empty means the default for the system size (see MLPConfig::for_system).
  std::vector<std::size_t> hidden_layers;
  InputMode input_mode = InputMode::structured;
};

struct SnrSweepConfig {
  std::vector<double> pbs_dbm{20, 25, 30, 35, 40, 45, 50};
  double bandwidth_hz = 10e6;
  double noise_dbm_per_hz = -170.0;
};

struct PositionSweepConfig {
  double x_ris = 100.0;
  double x_ms_min = 80.0;
  double x_ms_max = 120.0;
  std::size_t points = 41;
  double y_ms = -2.0;
  double pbs_dbm = 40.0;
  std::size_t instances = 100;
};

struct TimingConfig {
  std::size_t instances = 100;
  /// Overrides `dims` for the timing run when set.
  std::optional<Dims> dims = Dims{8, 2, 40};
};

struct ExperimentConfig {
  Dims dims{4, 2, 8};
  DatasetConfig dataset{};
  ChannelTemplate channel{};
  NetConfig net{};
  TrainConfig train{};
  AoConfig ao{};
  SnrSweepConfig snr{};
  PositionSweepConfig sweep{};
  TimingConfig timing{};
  std::filesystem::path out_dir = "out";

  static ExperimentConfig defaults(Profile profile);

  MLPConfig mlp_config() const;

  /// Re-derives every seed root from one value.
  void apply_seed(std::uint64_t seed);

  void validate() const;
};

/// Profile defaults overridden by the TOML document.
ExperimentConfig parse_config(std::string_view toml_text, Profile profile);
ExperimentConfig load_config(const std::filesystem::path& path, Profile profile);

}  // namespace ris
