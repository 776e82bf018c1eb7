// SPDX-License-Identifier: Apache-2.0
#include "ris/dataset.hpp"

#include <fstream>
#include <iterator>

#include <nlohmann/json.hpp>

#include "bytes.hpp"
#include "ris/parallel.hpp"

namespace ris {

namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'R', 'I', 'S', 'D'};
constexpr std::size_t kMetaFields = 8;

json template_to_json(const ChannelTemplate& t) {
  return {{"beta0", t.base.beta0},         {"eps_d", t.base.eps_d},     {"eps_t", t.base.eps_t},
          {"eps_r", t.base.eps_r},         {"kappa_d", t.base.kappa_d}, {"kappa_min", t.kappa_min},
          {"kappa_max", t.kappa_max},      {"x_ris_min", t.x_ris_min},  {"x_ris_max", t.x_ris_max},
          {"ms_distance", t.ms_distance}};
}

ChannelTemplate template_from_json(const json& j) {
  ChannelTemplate t;
  t.base.beta0 = j.at("beta0").get<double>();
  t.base.eps_d = j.at("eps_d").get<double>();
  t.base.eps_t = j.at("eps_t").get<double>();
  t.base.eps_r = j.at("eps_r").get<double>();
  t.base.kappa_d = j.at("kappa_d").get<double>();
  t.kappa_min = j.at("kappa_min").get<double>();
  t.kappa_max = j.at("kappa_max").get<double>();
  t.x_ris_min = j.at("x_ris_min").get<double>();
  t.x_ris_max = j.at("x_ris_max").get<double>();
  t.ms_distance = j.at("ms_distance").get<double>();
  return t;
}

void put_matrix(std::vector<std::uint8_t>& out, const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      detail::put_le<float>(out, static_cast<float>(m(i, j).real()));
      detail::put_le<float>(out, static_cast<float>(m(i, j).imag()));
    }
  }
}

CMatrix get_matrix(detail::ByteReader& in, std::size_t rows, std::size_t cols) {
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const float re = in.get<float>();
      const float im = in.get<float>();
      m(i, j) = {re, im};
    }
  }
  return m;
}

CMatrix quantize(const CMatrix& m) {
  return m.unaryExpr([](const cdouble& z) {
    return cdouble(static_cast<float>(z.real()), static_cast<float>(z.imag()));
  });
}

}  // namespace

std::size_t floats_per_sample(const Dims& dims) {
  return 2 * (dims.nr * dims.nt + dims.n * dims.nt + dims.nr * dims.n);
}

ChannelTriple quantize_f32(const ChannelTriple& triple) {
  ChannelTriple out = triple;
  out.h_d = quantize(triple.h_d);
  out.h_t = quantize(triple.h_t);
  out.h_r = quantize(triple.h_r);
  return out;
}

std::vector<std::uint8_t> serialize_dataset(const Dataset& dataset) {
  const DatasetHeader& h = dataset.header;
  check_dims(h.dims);

  json meta = json::array();
  for (const ChannelTriple& s : dataset.samples) {
    if (!(s.dims() == h.dims)) throw std::invalid_argument("serialize_dataset: sample dims differ from header");
    meta.push_back({s.geometry.ris.x, s.geometry.ms.x, s.geometry.ms.y, s.large_scale.kappa_t,
                    s.large_scale.kappa_r, s.gains.direct, s.gains.bs_ris, s.gains.ris_ms});
  }
  const json header = {
      {"format", "ris-pbf-dataset"},
      {"dims", {{"nt", h.dims.nt}, {"nr", h.dims.nr}, {"n", h.dims.n}}},
      {"count", dataset.samples.size()},
      {"split", h.split},
      {"seeds", {{"geometry", h.geometry_seed}, {"fading", h.fading_seed}}},
      {"params", template_to_json(h.channel)},
      {"samples", std::move(meta)},
  };
  const std::string text = header.dump();

  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.reserve(16 + text.size() + 4 * floats_per_sample(h.dims) * dataset.samples.size());
  detail::put_le<std::uint32_t>(out, kDatasetVersion);
  detail::put_le<std::uint64_t>(out, text.size());
  out.insert(out.end(), text.begin(), text.end());
  for (const ChannelTriple& s : dataset.samples) {
    put_matrix(out, s.h_d);
    put_matrix(out, s.h_t);
    put_matrix(out, s.h_r);
  }
  return out;
}

Dataset deserialize_dataset(const std::vector<std::uint8_t>& bytes) {
  detail::ByteReader in(bytes, "dataset");
  if (in.get_string(4) != std::string(kMagic, 4)) throw std::runtime_error("dataset: bad magic");
  const auto version = in.get<std::uint32_t>();
  if (version != kDatasetVersion) throw std::runtime_error("dataset: unsupported version " + std::to_string(version));
  const auto header_len = in.get<std::uint64_t>();
  if (header_len > in.remaining()) throw std::runtime_error("dataset: header length exceeds file size");

  json header;
  try {
    header = json::parse(in.get_string(static_cast<std::size_t>(header_len)));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("dataset: malformed header: ") + e.what());
  }

  Dataset ds;
  try {
    const json& d = header.at("dims");
    ds.header.dims = {d.at("nt").get<std::size_t>(), d.at("nr").get<std::size_t>(), d.at("n").get<std::size_t>()};
    ds.header.split = header.at("split").get<std::string>();
    ds.header.geometry_seed = header.at("seeds").at("geometry").get<std::uint64_t>();
    ds.header.fading_seed = header.at("seeds").at("fading").get<std::uint64_t>();
    ds.header.channel = template_from_json(header.at("params"));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("dataset: incomplete header: ") + e.what());
  }
  check_dims(ds.header.dims);

  const auto count = header.at("count").get<std::size_t>();
  const json& meta = header.at("samples");
  if (!meta.is_array() || meta.size() != count) throw std::runtime_error("dataset: sample metadata count mismatch");
  const Dims dims = ds.header.dims;
  if (in.remaining() != 4 * floats_per_sample(dims) * count) {
    throw std::runtime_error("dataset: payload length does not match header count");
  }

  ds.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const json& m = meta[i];
    if (!m.is_array() || m.size() != kMetaFields) throw std::runtime_error("dataset: malformed sample metadata");
    ChannelTriple s;
    s.geometry.ris = {m[0].get<double>(), 0.0};
    s.geometry.ms = {m[1].get<double>(), m[2].get<double>()};
    s.large_scale = ds.header.channel.base;
    s.large_scale.kappa_t = m[3].get<double>();
    s.large_scale.kappa_r = m[4].get<double>();
    s.gains = {m[5].get<double>(), m[6].get<double>(), m[7].get<double>()};
    s.h_d = get_matrix(in, dims.nr, dims.nt);
    s.h_t = get_matrix(in, dims.n, dims.nt);
    s.h_r = get_matrix(in, dims.nr, dims.n);
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

void write_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  write_file_bytes(path, serialize_dataset(dataset));
}

Dataset read_dataset(const std::filesystem::path& path) { return deserialize_dataset(read_file_bytes(path)); }

Dataset generate_dataset(const Dims& dims, std::size_t count, std::uint64_t geometry_seed,
                         std::uint64_t fading_seed, const ChannelTemplate& tmpl, std::string split) {
  check_dims(dims);
  Dataset ds;
  ds.header = {dims, std::move(split), geometry_seed, fading_seed, tmpl};
  ds.samples.resize(count);
  parallel_for(count, [&](std::size_t i) {
    ds.samples[i] = quantize_f32(gen_channel_triple(dims, mix_seed(geometry_seed, i), mix_seed(fading_seed, i), tmpl));
  });
  return ds;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::runtime_error("error reading '" + path.string() + "'");
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("error writing '" + path.string() + "'");
}

}  // namespace ris
