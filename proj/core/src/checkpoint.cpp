// SPDX-License-Identifier: Apache-2.0
#include "ris/checkpoint.hpp"

#include <limits>

#include "bytes.hpp"
#include "ris/dataset.hpp"

namespace ris {

namespace {

constexpr char kMagic[4] = {'L', 'P', 'S', 'N'};

}  // namespace

std::vector<std::uint8_t> serialize_checkpoint(const MLPParams& params) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  detail::put_le<std::uint32_t>(out, kCheckpointVersion);
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(params.layers.size()));
  for (const auto& l : params.layers) {
    detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(l.weights.cols()));
    detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(l.weights.rows()));
  }
  for (const auto& l : params.layers) {
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) detail::put_le<double>(out, l.weights(r, c));
    }
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) detail::put_le<double>(out, l.bias[r]);
  }
  return out;
}

MLPParams deserialize_checkpoint(const std::vector<std::uint8_t>& bytes) {
  detail::ByteReader in(bytes, "checkpoint");
  if (in.get_string(4) != std::string(kMagic, 4)) throw std::runtime_error("checkpoint: bad magic");
  const auto version = in.get<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
  }
  const auto count = in.get<std::uint32_t>();
  if (count == 0 || count > 1024) throw std::runtime_error("checkpoint: implausible layer count");

  MLPParams params;
  std::uint32_t prev_out = 0;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto fan_in = in.get<std::uint32_t>();
    const auto fan_out = in.get<std::uint32_t>();
    if (fan_in == 0 || fan_out == 0) throw std::runtime_error("checkpoint: zero-sized layer");
    if (i > 0 && fan_in != prev_out) throw std::runtime_error("checkpoint: layer shapes do not chain");
    prev_out = fan_out;
    params.layers.push_back({RMatrix(fan_out, fan_in), RVector(fan_out)});
  }
  std::size_t expected = 0;
  for (const auto& l : params.layers) expected += 8 * static_cast<std::size_t>(l.weights.size() + l.bias.size());
  if (in.remaining() != expected) throw std::runtime_error("checkpoint: payload size does not match header");

  for (auto& l : params.layers) {
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) l.weights(r, c) = in.get<double>();
    }
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) l.bias[r] = in.get<double>();
  }
  return params;
}

void save_checkpoint(const std::filesystem::path& path, const MLPParams& params) {
  write_file_bytes(path, serialize_checkpoint(params));
}

MLPParams load_checkpoint(const std::filesystem::path& path) { return deserialize_checkpoint(read_file_bytes(path)); }

}  // namespace ris
