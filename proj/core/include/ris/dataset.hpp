// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ris/channel.hpp"

namespace ris {

// File layout:
//   "RISD" | u32 version | u64 header byte length | JSON header | payload
// The payload is little-endian f32, interleaved (re, im), column-major,
// with each sample's H_d, H_t, H_r back to back. Per-sample geometry,
// Rician factors and link gains live in the header "samples" array as
// [x_ris, x_ms, y_ms, kappa_t, kappa_r, gain_d, gain_t, gain_r].
inline constexpr std::uint32_t kDatasetVersion = 1;

struct DatasetHeader {
  Dims dims{};
  std::string split = "train";
  std::uint64_t geometry_seed = 0;
  std::uint64_t fading_seed = 0;
  ChannelTemplate channel{};
};

struct Dataset {
  DatasetHeader header;
  std::vector<ChannelTriple> samples;
};

/// Number of f32 payload values per sample: 2 (NrNt + NNt + NrN).
std::size_t floats_per_sample(const Dims& dims);

std::vector<std::uint8_t> serialize_dataset(const Dataset& dataset);
Dataset deserialize_dataset(const std::vector<std::uint8_t>& bytes);

void write_dataset(const std::filesystem::path& path, const Dataset& dataset);
Dataset read_dataset(const std::filesystem::path& path);

/// Samples `count` triples from seed roots; sample i uses
/// mix_seed(root, i) for both the geometry and fading streams.
Dataset generate_dataset(const Dims& dims, std::size_t count, std::uint64_t geometry_seed,
                         std::uint64_t fading_seed, const ChannelTemplate& tmpl,
                         std::string split = "train");

/// Rounds every channel entry through f32, matching what a file stores.
ChannelTriple quantize_f32(const ChannelTriple& triple);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

}  // namespace ris
