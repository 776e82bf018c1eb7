// SPDX-License-Identifier: Apache-2.0
//
// ris_pbf: dataset generation, LPSNet training, scheme comparison and
// timing for RIS phase-shift optimization.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ris/checkpoint.hpp"
#include "ris/config.hpp"
#include "ris/dataset.hpp"
#include "ris/experiment.hpp"

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string profile = "desk";
  std::string out_dir;
};

ris::ExperimentConfig resolve_config(const GlobalOptions& g) {
  const ris::Profile profile = ris::parse_profile(g.profile);
  ris::ExperimentConfig cfg =
      g.config_path.empty() ? ris::ExperimentConfig::defaults(profile) : ris::load_config(g.config_path, profile);
  if (g.seed) cfg.apply_seed(*g.seed);
  if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
  cfg.validate();
  return cfg;
}

ris::InputMode resolve_mode(const ris::ExperimentConfig& cfg, const std::string& flag) {
  return flag.empty() ? cfg.net.input_mode : ris::parse_input_mode(flag);
}

fs::path default_checkpoint(const ris::ExperimentConfig& cfg, ris::InputMode mode) {
  return cfg.out_dir / ("lpsnet_" + std::string(ris::to_string(mode)) + ".ckpt");
}

fs::path dataset_path(const ris::ExperimentConfig& cfg, const std::string& split) {
  return cfg.out_dir / ("dataset_" + split + ".bin");
}

ris::Dataset load_matching_dataset(const fs::path& path, const ris::ExperimentConfig& cfg) {
  ris::Dataset ds = ris::read_dataset(path);
  if (!(ds.header.dims == cfg.dims)) {
    throw std::invalid_argument("dataset '" + path.string() + "' has dims (" + std::to_string(ds.header.dims.nt) +
                                ", " + std::to_string(ds.header.dims.nr) + ", " + std::to_string(ds.header.dims.n) +
                                ") but the configuration expects (" + std::to_string(cfg.dims.nt) + ", " +
                                std::to_string(cfg.dims.nr) + ", " + std::to_string(cfg.dims.n) + ")");
  }
  if (ds.samples.empty()) throw std::invalid_argument("dataset '" + path.string() + "' is empty");
  return ds;
}

int cmd_generate(const GlobalOptions& g, const std::string& split) {
  const ris::ExperimentConfig cfg = resolve_config(g);
  if (split != "train" && split != "test") throw std::invalid_argument("--split must be train or test");
  const bool test = split == "test";
  const std::uint64_t offset = test ? cfg.dataset.test_seed_offset : 0;
  const std::size_t count = test ? cfg.dataset.test_size : cfg.dataset.train_size;
  const ris::Dataset ds = ris::generate_dataset(cfg.dims, count, cfg.dataset.geometry_seed + offset,
                                                cfg.dataset.fading_seed + offset, cfg.channel, split);
  const fs::path path = dataset_path(cfg, split);
  ris::write_dataset(path, ds);
  std::cout << "wrote " << ds.samples.size() << " " << split << " samples to " << path.string() << "\n";
  return 0;
}

int cmd_train(const GlobalOptions& g, const std::string& dataset_flag, const std::string& mode_flag) {
  const ris::ExperimentConfig cfg = resolve_config(g);
  const ris::InputMode mode = resolve_mode(cfg, mode_flag);
  const fs::path path = dataset_flag.empty() ? dataset_path(cfg, "train") : fs::path(dataset_flag);
  const ris::Dataset ds = load_matching_dataset(path, cfg);

  const auto samples = ris::build_training_samples(ds.samples, mode, cfg.train.rho0_db, cfg.train.seed);
  ris::ExperimentConfig net_cfg = cfg;
  net_cfg.net.input_mode = mode;
  const ris::TrainResult result = ris::train(samples, net_cfg.mlp_config(), cfg.train);

  const fs::path ckpt = default_checkpoint(cfg, mode);
  const fs::path loss_csv = cfg.out_dir / ("loss_" + std::string(ris::to_string(mode)) + ".csv");
  ris::save_checkpoint(ckpt, result.params);
  ris::write_loss_csv(loss_csv, result);

  const double first = result.train_loss.front();
  const double last = result.train_loss.back();
  std::printf("%s input: %zu epochs, train loss %.4f -> %.4f (%.2f%% improvement)\n",
              std::string(ris::to_string(mode)).c_str(), result.epochs_run, first, last,
              100.0 * (first - last) / std::abs(first));
  std::cout << "wrote " << ckpt.string() << " and " << loss_csv.string() << "\n";
  return 0;
}

int cmd_evaluate(const GlobalOptions& g, const std::string& ckpt_flag, const std::string& dataset_flag,
                 const std::string& mode_flag) {
  const ris::ExperimentConfig cfg = resolve_config(g);
  const ris::InputMode mode = resolve_mode(cfg, mode_flag);
  const ris::MLPParams params = ris::load_checkpoint(ckpt_flag.empty() ? default_checkpoint(cfg, mode) : fs::path(ckpt_flag));
  const fs::path path = dataset_flag.empty() ? dataset_path(cfg, "test") : fs::path(dataset_flag);
  const ris::Dataset ds = load_matching_dataset(path, cfg);

  const ris::EvaluationReport report = ris::evaluate_schemes(cfg, params, mode, ds.samples);
  ris::write_eval_csv(cfg.out_dir / "eval.csv", report);
  ris::write_eval_summary_csv(cfg.out_dir / "eval_summary.csv", report);

  std::printf("%10s %10s %10s %10s %10s %10s\n", "P_BS[dBm]", "lpsnet", "ao", "random", "no_ris", "lps/ao");
  for (const auto& r : report.per_power) {
    std::printf("%10.1f %10.4f %10.4f %10.4f %10.4f %10.4f\n", r.pbs_dbm, r.lpsnet, r.ao, r.random, r.no_ris, r.ratio);
  }
  const auto& o = report.overall;
  std::printf("%10s %10.4f %10.4f %10.4f %10.4f %10.4f\n", "all", o.lpsnet, o.ao, o.random, o.no_ris, o.ratio);
  std::cout << "wrote " << (cfg.out_dir / "eval.csv").string() << "\n";
  return 0;
}

int cmd_sweep(const GlobalOptions& g, const std::string& ckpt_flag, const std::string& mode_flag) {
  const ris::ExperimentConfig cfg = resolve_config(g);
  const ris::InputMode mode = resolve_mode(cfg, mode_flag);
  const ris::MLPParams params = ris::load_checkpoint(ckpt_flag.empty() ? default_checkpoint(cfg, mode) : fs::path(ckpt_flag));
  const auto rows = ris::sweep_position(cfg, params, mode);
  const fs::path out = cfg.out_dir / "sweep_position.csv";
  ris::write_position_csv(out, rows);
  std::cout << "wrote " << rows.size() << " positions to " << out.string() << "\n";
  return 0;
}

int cmd_timing(const GlobalOptions& g, const std::string& ckpt_flag, const std::string& mode_flag) {
  const ris::ExperimentConfig cfg = resolve_config(g);
  const ris::InputMode mode = resolve_mode(cfg, mode_flag);
  std::optional<ris::MLPParams> params;
  if (!ckpt_flag.empty()) params = ris::load_checkpoint(ckpt_flag);
  const ris::TimingReport r = ris::measure_timing(cfg, params ? &*params : nullptr, mode);
  const fs::path out = cfg.out_dir / "timing.csv";
  ris::write_timing_csv(out, r);
  std::printf("%zux%zu, N=%zu, %zu instances\n", r.dims.nt, r.dims.nr, r.dims.n, r.instances);
  std::printf("  lpsnet median %.3e s, %llu flops\n", r.lpsnet_median_s, static_cast<unsigned long long>(r.lpsnet_flops));
  std::printf("  ao     median %.3e s, %llu flops\n", r.ao_median_s, static_cast<unsigned long long>(r.ao_median_flops));
  std::printf("  time ratio %.4f, flop ratio %.4f, flops(2N)/flops(N) %.3f\n", r.time_ratio(), r.flop_ratio(),
              r.doubling_ratio());
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS passive beamforming: LPSNet vs. alternating optimization"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--config", g.config_path, "TOML experiment configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Root seed; re-derives every seed in the configuration");
  app.add_option("--profile", g.profile, "Default profile (desk|full)")
      ->check(CLI::IsMember({"desk", "full"}));
  app.add_option("--out", g.out_dir, "Output directory");

  std::string split = "train", dataset, mode, checkpoint;

  auto* generate = app.add_subcommand("generate", "Generate a channel dataset");
  generate->add_option("--split", split, "train or test")->check(CLI::IsMember({"train", "test"}));

  auto* train = app.add_subcommand("train", "Train LPSNet on a dataset");
  train->add_option("--dataset", dataset, "Training dataset (default <out>/dataset_train.bin)");
  train->add_option("--input-mode", mode, "structured or raw")->check(CLI::IsMember({"structured", "raw"}));

  auto* evaluate = app.add_subcommand("evaluate", "Compare LPSNet, AO, random phases and no RIS");
  evaluate->add_option("--checkpoint", checkpoint, "Model checkpoint (default <out>/lpsnet_<mode>.ckpt)");
  evaluate->add_option("--dataset", dataset, "Test dataset (default <out>/dataset_test.bin)");
  evaluate->add_option("--input-mode", mode, "structured or raw")->check(CLI::IsMember({"structured", "raw"}));

  auto* sweep = app.add_subcommand("sweep-position", "SE versus MS x-position with the RIS fixed");
  sweep->add_option("--checkpoint", checkpoint, "Model checkpoint (default <out>/lpsnet_<mode>.ckpt)");
  sweep->add_option("--input-mode", mode, "structured or raw")->check(CLI::IsMember({"structured", "raw"}));

  auto* timing = app.add_subcommand("timing", "Median wall time of LPSNet inference and AO");
  timing->add_option("--checkpoint", checkpoint, "Model checkpoint (optional; untrained network otherwise)");
  timing->add_option("--input-mode", mode, "structured or raw")->check(CLI::IsMember({"structured", "raw"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return cmd_generate(g, split);
    if (*train) return cmd_train(g, dataset, mode);
    if (*evaluate) return cmd_evaluate(g, checkpoint, dataset, mode);
    if (*sweep) return cmd_sweep(g, checkpoint, mode);
    if (*timing) return cmd_timing(g, checkpoint, mode);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
