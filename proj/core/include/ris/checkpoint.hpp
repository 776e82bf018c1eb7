// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ris/lpsnet.hpp"

namespace ris {

// Layout, all integers and floats little-endian:
//   "LPSN" | u32 version | u32 layer count | per layer: u32 in, u32 out
//   then per layer: out*in f64 weights (row-major), out f64 biases.
inline constexpr std::uint32_t kCheckpointVersion = 1;

std::vector<std::uint8_t> serialize_checkpoint(const MLPParams& params);
MLPParams deserialize_checkpoint(const std::vector<std::uint8_t>& bytes);

void save_checkpoint(const std::filesystem::path& path, const MLPParams& params);
MLPParams load_checkpoint(const std::filesystem::path& path);

}  // namespace ris
