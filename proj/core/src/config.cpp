// SPDX-License-Identifier: Apache-2.0
#include "ris/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

namespace ris {

namespace {

[[noreturn]] void config_error(std::string_view section, std::string_view key, std::string_view what) {
  throw std::invalid_argument("config [" + std::string(section) + "] " + std::string(key) + ": " + std::string(what));
}

class Section {
 public:
  Section(const toml::table& root, std::string_view name) : name_(name) {
    if (const toml::node* node = root.get(name)) {
      table_ = node->as_table();
      if (table_ == nullptr) config_error(name, "", "must be a table");
    }
  }

  void read(std::string_view key, double& out) {
    if (const toml::node* n = take(key)) {
      if (auto v = n->value<double>()) {
        out = *v;
      } else {
        config_error(name_, key, "expected a number");
      }
    }
  }

  template <class Int>
    requires std::is_integral_v<Int>
  void read(std::string_view key, Int& out) {
    if (const toml::node* n = take(key)) {
      auto v = n->value<std::int64_t>();
      if (!v || !n->is_integer()) config_error(name_, key, "expected an integer");
      if (*v < 0) config_error(name_, key, "must be non-negative");
      out = static_cast<Int>(*v);
    }
  }

  void read(std::string_view key, std::string& out) {
    if (const toml::node* n = take(key)) {
      auto v = n->value<std::string>();
      if (!v) config_error(name_, key, "expected a string");
      out = *v;
    }
  }

  void read(std::string_view key, std::vector<double>& out) {
    if (const toml::node* n = take(key)) {
      const toml::array* arr = n->as_array();
      if (arr == nullptr) config_error(name_, key, "expected an array of numbers");
      out.clear();
      for (const toml::node& e : *arr) {
        auto v = e.value<double>();
        if (!v) config_error(name_, key, "expected an array of numbers");
        out.push_back(*v);
      }
    }
  }

  void read(std::string_view key, std::vector<std::size_t>& out) {
    if (const toml::node* n = take(key)) {
      const toml::array* arr = n->as_array();
      if (arr == nullptr) config_error(name_, key, "expected an array of integers");
      out.clear();
      for (const toml::node& e : *arr) {
        auto v = e.value<std::int64_t>();
        if (!v || !e.is_integer() || *v < 0) config_error(name_, key, "expected an array of non-negative integers");
        out.push_back(static_cast<std::size_t>(*v));
      }
    }
  }

  bool has(std::string_view key) const { return table_ != nullptr && table_->contains(key); }

  /// Rejects keys nobody asked for, so typos do not pass silently.
  void finish() const {
    if (table_ == nullptr) return;
    for (const auto& [key, value] : *table_) {
      if (!seen_.contains(std::string(key.str()))) config_error(name_, key.str(), "unknown key");
    }
  }

 private:
  const toml::node* take(std::string_view key) {
    seen_.insert(std::string(key));
    return table_ == nullptr ? nullptr : table_->get(key);
  }

  std::string name_;
  const toml::table* table_ = nullptr;
  std::set<std::string> seen_;
};

}  // namespace

Profile parse_profile(std::string_view text) {
  if (text == "desk") return Profile::desk;
  if (text == "full") return Profile::full;
  throw std::invalid_argument("unknown profile '" + std::string(text) + "' (desk|full)");
}

ExperimentConfig ExperimentConfig::defaults(Profile profile) {
  ExperimentConfig cfg;
  if (profile == Profile::desk) {
    cfg.dims = {4, 2, 8};
    cfg.dataset.train_size = 2000;
    cfg.dataset.test_size = 500;
    cfg.train.batch_size = 10;
    cfg.train.epochs = 30;
    cfg.train.plateau_patience = 0;
    cfg.timing.dims = Dims{8, 2, 40};
  } else {
    cfg.dims = {16, 2, 40};
    cfg.dataset.train_size = 40000;
    cfg.dataset.test_size = 4000;
    cfg.train.batch_size = 20;
    cfg.train.epochs = 100;
    cfg.train.plateau_patience = 10;
    cfg.timing.dims = Dims{16, 2, 40};
  }
  return cfg;
}

MLPConfig ExperimentConfig::mlp_config() const {
  if (net.hidden_layers.empty()) return MLPConfig::for_system(dims, net.input_mode);
  return MLPConfig::for_system(dims, net.input_mode, net.hidden_layers);
}

void ExperimentConfig::apply_seed(std::uint64_t seed) {
  dataset.geometry_seed = mix_seed(seed, 1);
  dataset.fading_seed = mix_seed(seed, 2);
  train.seed = mix_seed(seed, 3);
  ao.seed = mix_seed(seed, 4);
}

void ExperimentConfig::validate() const {
  check_dims(dims);
  if (timing.dims) check_dims(*timing.dims);
  if (dataset.train_size == 0) throw std::invalid_argument("config: dataset.train_size must be >= 1");
  train.validate();
  ao.validate();
  mlp_config().validate();
  if (!(snr.bandwidth_hz > 0.0)) throw std::invalid_argument("config: snr.bandwidth_hz must be positive");
  if (snr.pbs_dbm.empty()) throw std::invalid_argument("config: snr.pbs_dbm must not be empty");
  if (sweep.points == 0) throw std::invalid_argument("config: sweep.points must be >= 1");
  if (sweep.x_ms_max < sweep.x_ms_min) throw std::invalid_argument("config: sweep.x_ms_max < sweep.x_ms_min");
  if (sweep.instances == 0) throw std::invalid_argument("config: sweep.instances must be >= 1");
  if (timing.instances == 0) throw std::invalid_argument("config: timing.instances must be >= 1");
}

ExperimentConfig parse_config(std::string_view toml_text, Profile profile) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config: " << e.description() << " at line " << e.source().begin.line;
    throw std::invalid_argument(msg.str());
  }

  ExperimentConfig cfg = ExperimentConfig::defaults(profile);
  static const std::set<std::string> known = {"system", "dataset", "channel", "net", "train",
                                              "ao",     "snr",     "sweep",   "timing", "output"};
  for (const auto& [key, value] : root) {
    if (!known.contains(std::string(key.str()))) {
      throw std::invalid_argument("config: unknown section [" + std::string(key.str()) + "]");
    }
  }

  Section system(root, "system");
  system.read("nt", cfg.dims.nt);
  system.read("nr", cfg.dims.nr);
  system.read("n", cfg.dims.n);
  system.finish();

  Section dataset(root, "dataset");
  dataset.read("train_size", cfg.dataset.train_size);
  dataset.read("test_size", cfg.dataset.test_size);
  dataset.read("geometry_seed", cfg.dataset.geometry_seed);
  dataset.read("fading_seed", cfg.dataset.fading_seed);
  dataset.read("test_seed_offset", cfg.dataset.test_seed_offset);
  dataset.finish();

  Section channel(root, "channel");
  channel.read("beta0", cfg.channel.base.beta0);
  channel.read("eps_d", cfg.channel.base.eps_d);
  channel.read("eps_t", cfg.channel.base.eps_t);
  channel.read("eps_r", cfg.channel.base.eps_r);
  channel.read("kappa_d", cfg.channel.base.kappa_d);
  channel.read("kappa_min", cfg.channel.kappa_min);
  channel.read("kappa_max", cfg.channel.kappa_max);
  channel.read("x_ris_min", cfg.channel.x_ris_min);
  channel.read("x_ris_max", cfg.channel.x_ris_max);
  channel.read("ms_distance", cfg.channel.ms_distance);
  channel.finish();

  Section net(root, "net");
  net.read("hidden_layers", cfg.net.hidden_layers);
  std::string mode(to_string(cfg.net.input_mode));
  net.read("input_mode", mode);
  cfg.net.input_mode = parse_input_mode(mode);
  net.finish();

  Section train(root, "train");
  train.read("lr0", cfg.train.lr0);
  train.read("lr_decay", cfg.train.lr_decay);
  train.read("batch_size", cfg.train.batch_size);
  train.read("epochs", cfg.train.epochs);
  train.read("rho0_db", cfg.train.rho0_db);
  train.read("adam_beta1", cfg.train.adam.beta1);
  train.read("adam_beta2", cfg.train.adam.beta2);
  train.read("adam_eps", cfg.train.adam.eps);
  train.read("seed", cfg.train.seed);
  train.read("val_fraction", cfg.train.val_fraction);
  train.read("plateau_patience", cfg.train.plateau_patience);
  train.read("plateau_tol", cfg.train.plateau_tol);
  train.finish();

  Section ao(root, "ao");
  ao.read("num_starts", cfg.ao.num_starts);
  ao.read("max_sweeps", cfg.ao.max_sweeps);
  ao.read("se_tol", cfg.ao.se_tol);
  ao.read("seed", cfg.ao.seed);
  ao.finish();

  Section snr(root, "snr");
  snr.read("pbs_dbm", cfg.snr.pbs_dbm);
  snr.read("bandwidth_hz", cfg.snr.bandwidth_hz);
  snr.read("noise_dbm_per_hz", cfg.snr.noise_dbm_per_hz);
  snr.finish();

  Section sweep(root, "sweep");
  sweep.read("x_ris", cfg.sweep.x_ris);
  sweep.read("x_ms_min", cfg.sweep.x_ms_min);
  sweep.read("x_ms_max", cfg.sweep.x_ms_max);
  sweep.read("points", cfg.sweep.points);
  sweep.read("y_ms", cfg.sweep.y_ms);
  sweep.read("pbs_dbm", cfg.sweep.pbs_dbm);
  sweep.read("instances", cfg.sweep.instances);
  sweep.finish();

  Section timing(root, "timing");
  timing.read("instances", cfg.timing.instances);
  if (timing.has("nt") || timing.has("nr") || timing.has("n")) {
    Dims d = cfg.timing.dims.value_or(cfg.dims);
    timing.read("nt", d.nt);
    timing.read("nr", d.nr);
    timing.read("n", d.n);
    cfg.timing.dims = d;
  } else {
    std::size_t unused = 0;
    timing.read("nt", unused);
    timing.read("nr", unused);
    timing.read("n", unused);
  }
  timing.finish();

  Section output(root, "output");
  std::string dir = cfg.out_dir.string();
  output.read("dir", dir);
  cfg.out_dir = dir;
  output.finish();

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, Profile profile) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), profile);
}

}  // namespace ris
