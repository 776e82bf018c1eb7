// SPDX-License-Identifier: Apache-2.0
#include "ris/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ris/ao.hpp"
#include "ris/csv.hpp"
#include "ris/parallel.hpp"

namespace ris {

namespace {

constexpr std::uint64_t kRandomStream = 0x52414e44ULL;  // "RAND"
constexpr std::uint64_t kSweepStream = 0x5357454550ULL;
constexpr std::uint64_t kTimingStream = 0x54494d45ULL;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  const double s = std::chrono::duration<double>(Clock::now() - start).count();
  return std::max(s, 1e-9);  // clock resolution floor
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void check_network(const MLPParams& params, const Dims& dims, InputMode mode) {
  if (params.input_dim() != feature_length(dims, mode) || params.output_dim() != dims.n) {
    throw std::invalid_argument("network shape (" + std::to_string(params.input_dim()) + " -> " +
                                std::to_string(params.output_dim()) + ") does not match " +
                                std::string(to_string(mode)) + " input for the dataset dims");
  }
}

PhaseVector lpsnet_phases(const MLPParams& params, InputMode mode, const NormalizedTriple& normalized,
                          OpCounter* counter = nullptr) {
  const RankOneTerms terms = mode == InputMode::structured ? rank_one_terms(normalized, counter) : RankOneTerms{};
  return forward(params, build_input(mode, normalized, terms, counter), kTwoPi, counter).phases;
}

struct SchemeSe {
  double lpsnet = 0.0;
  double ao = 0.0;
  double random = 0.0;
  double no_ris = 0.0;
};

}  // namespace

double rho_from_power(double pbs_dbm, double bandwidth_hz, double noise_dbm_per_hz) {
  if (!(bandwidth_hz > 0.0)) throw std::domain_error("rho_from_power: bandwidth must be positive");
  const double noise_dbm = noise_dbm_per_hz + 10.0 * std::log10(bandwidth_hz);
  return db_to_linear(pbs_dbm - noise_dbm);
}

std::vector<Sample> build_training_samples(const std::vector<ChannelTriple>& triples, InputMode mode,
                                           double rho0_db, std::uint64_t seed) {
  std::vector<Sample> samples(triples.size());
  parallel_for(triples.size(), [&](std::size_t i) {
    samples[i] = make_sample(normalize_triple(triples[i]), mode, draw_training_snr(rho0_db, mix_seed(seed, i)));
  });
  return samples;
}

EvaluationReport evaluate_schemes(const ExperimentConfig& cfg, const MLPParams& params, InputMode mode,
                                  const std::vector<ChannelTriple>& test) {
  if (test.empty()) throw std::invalid_argument("evaluate_schemes: empty test set");
  const Dims dims = test.front().dims();
  check_network(params, dims, mode);

  const auto& powers = cfg.snr.pbs_dbm;
  const std::size_t n_pow = powers.size();
  std::vector<std::vector<EvalRecord>> per_instance(test.size());

  parallel_for(test.size(), [&](std::size_t i) {
    const ChannelTriple& raw = test[i];
    const NormalizedTriple normalized = normalize_triple(raw);
    const RankOneTerms terms = rank_one_terms(raw);

    auto start = Clock::now();
    const PhaseVector lps = lpsnet_phases(params, mode, normalized);
    const double lps_time = seconds_since(start);

    auto& out = per_instance[i];
    out.reserve(4 * n_pow);
    for (std::size_t p = 0; p < n_pow; ++p) {
      const Snr rho(rho_from_power(powers[p], cfg.snr.bandwidth_hz, cfg.snr.noise_dbm_per_hz));
      const std::uint64_t stream = i * n_pow + p;

      out.push_back({kSchemeLpsnet, i, powers[p], spectral_efficiency(terms, lps, rho), lps_time});

      start = Clock::now();
      const PhaseVector rnd = random_phases(dims.n, mix_seed(mix_seed(cfg.ao.seed, kRandomStream), stream));
      const double rnd_se = spectral_efficiency(terms, rnd, rho);
      const double rnd_time = seconds_since(start);

      AoConfig ao_cfg = cfg.ao;
      ao_cfg.seed = mix_seed(cfg.ao.seed, stream);
      start = Clock::now();
      const AoResult ao = ao_optimize(terms, rho, ao_cfg, std::span<const PhaseVector>(&rnd, 1));
      const double ao_time = seconds_since(start);
      out.push_back({kSchemeAo, i, powers[p], ao.se, ao_time});
      out.push_back({kSchemeRandom, i, powers[p], rnd_se, rnd_time});

      start = Clock::now();
      const double nr_se = no_ris_se(terms, rho);
      out.push_back({kSchemeNoRis, i, powers[p], nr_se, seconds_since(start)});
    }
  });

  EvaluationReport report;
  report.per_power.resize(n_pow);
  for (std::size_t p = 0; p < n_pow; ++p) report.per_power[p].pbs_dbm = powers[p];
  for (auto& recs : per_instance) {
    for (std::size_t k = 0; k < recs.size(); ++k) {
      const EvalRecord& r = recs[k];
      EvalSummaryRow& row = report.per_power[k / 4];
      if (r.scheme == kSchemeLpsnet) row.lpsnet += r.se;
      else if (r.scheme == kSchemeAo) row.ao += r.se;
      else if (r.scheme == kSchemeRandom) row.random += r.se;
      else row.no_ris += r.se;
    }
    std::move(recs.begin(), recs.end(), std::back_inserter(report.records));
  }
  const double count = static_cast<double>(test.size());
  for (auto& row : report.per_power) {
    row.lpsnet /= count;
    row.ao /= count;
    row.random /= count;
    row.no_ris /= count;
    row.ratio = row.lpsnet / row.ao;
    report.overall.lpsnet += row.lpsnet / static_cast<double>(n_pow);
    report.overall.ao += row.ao / static_cast<double>(n_pow);
    report.overall.random += row.random / static_cast<double>(n_pow);
    report.overall.no_ris += row.no_ris / static_cast<double>(n_pow);
  }
  report.overall.ratio = report.overall.lpsnet / report.overall.ao;
  return report;
}

std::vector<double> position_grid(const PositionSweepConfig& sweep) {
  std::vector<double> grid(sweep.points);
  if (sweep.points == 1) {
    grid[0] = sweep.x_ms_min;
    return grid;
  }
  const double step = (sweep.x_ms_max - sweep.x_ms_min) / static_cast<double>(sweep.points - 1);
  for (std::size_t k = 0; k < sweep.points; ++k) grid[k] = sweep.x_ms_min + step * static_cast<double>(k);
  return grid;
}

std::vector<PositionRow> sweep_position(const ExperimentConfig& cfg, const MLPParams& params, InputMode mode) {
  check_network(params, cfg.dims, mode);
  const PositionSweepConfig& sw = cfg.sweep;
  const Snr rho(rho_from_power(sw.pbs_dbm, cfg.snr.bandwidth_hz, cfg.snr.noise_dbm_per_hz));
  const std::uint64_t fading_root = mix_seed(cfg.dataset.fading_seed, kSweepStream);

  std::vector<PositionRow> rows;
  for (double x : position_grid(sw)) {
    SystemGeometry geometry;
    geometry.ris = {sw.x_ris, 0.0};
    geometry.ms = {x, sw.y_ms};

    std::vector<SchemeSe> se(sw.instances);
    parallel_for(sw.instances, [&](std::size_t k) {
      const ChannelTriple raw = gen_channel_triple_at(cfg.dims, geometry, mix_seed(fading_root, k), cfg.channel);
      const RankOneTerms terms = rank_one_terms(raw);
      const PhaseVector lps = lpsnet_phases(params, mode, normalize_triple(raw));
      const PhaseVector rnd = random_phases(cfg.dims.n, mix_seed(mix_seed(cfg.ao.seed, kRandomStream), k));
      AoConfig ao_cfg = cfg.ao;
      ao_cfg.seed = mix_seed(cfg.ao.seed, k);
      se[k] = {spectral_efficiency(terms, lps, rho),
               ao_optimize(terms, rho, ao_cfg, std::span<const PhaseVector>(&rnd, 1)).se,
               spectral_efficiency(terms, rnd, rho), no_ris_se(terms, rho)};
    });

    PositionRow row;
    row.x_ms = x;
    for (const SchemeSe& s : se) {
      row.lpsnet += s.lpsnet;
      row.ao += s.ao;
      row.random += s.random;
      row.no_ris += s.no_ris;
    }
    const double count = static_cast<double>(sw.instances);
    row.lpsnet /= count;
    row.ao /= count;
    row.random /= count;
    row.no_ris /= count;
    rows.push_back(row);
  }
  return rows;
}

std::uint64_t lpsnet_inference_flops(const Dims& dims, InputMode mode) {
  check_dims(dims);
  NormalizedTriple zero;
  zero.h_d = CMatrix::Zero(static_cast<Eigen::Index>(dims.nr), static_cast<Eigen::Index>(dims.nt));
  zero.h_t = CMatrix::Zero(static_cast<Eigen::Index>(dims.n), static_cast<Eigen::Index>(dims.nt));
  zero.h_r = CMatrix::Zero(static_cast<Eigen::Index>(dims.nr), static_cast<Eigen::Index>(dims.n));
  const MLPParams net = MLPParams::zeros(MLPConfig::for_system(dims, mode));
  OpCounter counter;
  lpsnet_phases(net, mode, zero, &counter);
  return counter.flops;
}

TimingReport measure_timing(const ExperimentConfig& cfg, const MLPParams* params, InputMode mode) {
  TimingReport report;
  report.dims = cfg.timing.dims.value_or(cfg.dims);
  report.instances = cfg.timing.instances;
  const Dims& dims = report.dims;

  MLPParams net;
  if (params != nullptr && params->input_dim() == feature_length(dims, mode) && params->output_dim() == dims.n) {
    net = *params;
  } else {
    net = MLPParams::glorot(MLPConfig::for_system(dims, mode), cfg.train.seed);
  }
  const Snr rho(rho_from_power(cfg.sweep.pbs_dbm, cfg.snr.bandwidth_hz, cfg.snr.noise_dbm_per_hz));
  const std::uint64_t geo_root = mix_seed(cfg.dataset.geometry_seed, kTimingStream);
  const std::uint64_t fade_root = mix_seed(cfg.dataset.fading_seed, kTimingStream);

  // Sequential on purpose: concurrent runs would distort the wall times.
  std::vector<double> lps_times, ao_times, ao_flops;
  for (std::size_t i = 0; i < report.instances; ++i) {
    const ChannelTriple raw =
        gen_channel_triple(dims, mix_seed(geo_root, i), mix_seed(fade_root, i), cfg.channel);
    const NormalizedTriple normalized = normalize_triple(raw);

    auto start = Clock::now();
    const PhaseVector lps = lpsnet_phases(net, mode, normalized);
    lps_times.push_back(seconds_since(start));

    AoConfig ao_cfg = cfg.ao;
    ao_cfg.seed = mix_seed(cfg.ao.seed, i);
    OpCounter counter;
    start = Clock::now();
    const AoResult ao = ao_optimize(rank_one_terms(raw, &counter), rho, ao_cfg, {}, &counter);
    ao_times.push_back(seconds_since(start));
    ao_flops.push_back(static_cast<double>(counter.flops));
    // keep both results observable so neither computation is elided
    if (!std::isfinite(lps.sum()) || !std::isfinite(ao.se)) throw std::runtime_error("measure_timing: non-finite result");
  }
  report.lpsnet_median_s = median(lps_times);
  report.ao_median_s = median(ao_times);
  report.ao_median_flops = static_cast<std::uint64_t>(median(ao_flops));
  report.lpsnet_flops = lpsnet_inference_flops(dims, mode);
  report.lpsnet_flops_doubled_n = lpsnet_inference_flops({dims.nt, dims.nr, 2 * dims.n}, mode);
  return report;
}

void write_eval_csv(const std::filesystem::path& path, const EvaluationReport& report) {
  CsvWriter csv(path, {"scheme", "instance", "pbs_dbm", "se", "wall_time_s"});
  for (const EvalRecord& r : report.records) {
    csv.row({r.scheme, std::to_string(r.instance), format_double(r.pbs_dbm), format_double(r.se),
             format_double(r.wall_time_s)});
  }
}

void write_eval_summary_csv(const std::filesystem::path& path, const EvaluationReport& report) {
  CsvWriter csv(path, {"pbs_dbm", "lpsnet", "ao", "random", "no_ris", "lpsnet_over_ao"});
  auto emit = [&](const std::string& label, const EvalSummaryRow& r) {
    csv.row({label, format_double(r.lpsnet), format_double(r.ao), format_double(r.random), format_double(r.no_ris),
             format_double(r.ratio)});
  };
  for (const auto& r : report.per_power) emit(format_double(r.pbs_dbm), r);
  emit("all", report.overall);
}

void write_loss_csv(const std::filesystem::path& path, const TrainResult& result) {
  CsvWriter csv(path, {"epoch", "train_loss", "val_loss"});
  for (std::size_t e = 0; e < result.train_loss.size(); ++e) {
    csv.row({std::to_string(e), format_double(result.train_loss[e]),
             e < result.val_loss.size() ? format_double(result.val_loss[e]) : std::string{}});
  }
}

void write_position_csv(const std::filesystem::path& path, const std::vector<PositionRow>& rows) {
  CsvWriter csv(path, {"x_ms", "lpsnet", "ao", "random", "no_ris"});
  for (const PositionRow& r : rows) {
    csv.row({format_double(r.x_ms), format_double(r.lpsnet), format_double(r.ao), format_double(r.random),
             format_double(r.no_ris)});
  }
}

void write_timing_csv(const std::filesystem::path& path, const TimingReport& r) {
  CsvWriter csv(path, {"nt", "nr", "n", "instances", "lpsnet_median_s", "ao_median_s", "time_ratio", "lpsnet_flops",
                       "ao_median_flops", "flop_ratio", "lpsnet_flops_2n", "flop_doubling_ratio"});
  csv.row({std::to_string(r.dims.nt), std::to_string(r.dims.nr), std::to_string(r.dims.n),
           std::to_string(r.instances), format_double(r.lpsnet_median_s), format_double(r.ao_median_s),
           format_double(r.time_ratio()), std::to_string(r.lpsnet_flops), std::to_string(r.ao_median_flops),
           format_double(r.flop_ratio()), std::to_string(r.lpsnet_flops_doubled_n),
           format_double(r.doubling_ratio())});
}

}  // namespace ris
