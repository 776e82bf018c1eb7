// SPDX-License-Identifier: Apache-2.0
#include "ris/lpsnet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace ris {

namespace {

constexpr std::uint64_t kShuffleStream = 0x5348554646ULL;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Writes Re parts of each matrix into out[offset...] and Im parts into
// out[offset + half...], column-major, advancing offset.
void pack_matrix(const CMatrix& m, RVector& out, Eigen::Index& offset, Eigen::Index half) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out[offset] = m(i, j).real();
      out[offset + half] = m(i, j).imag();
      ++offset;
    }
  }
}

}  // namespace

InputMode parse_input_mode(std::string_view text) {
  if (text == "structured") return InputMode::structured;
  if (text == "raw") return InputMode::raw;
  throw std::invalid_argument("unknown input mode '" + std::string(text) + "' (structured|raw)");
}

std::string_view to_string(InputMode mode) { return mode == InputMode::structured ? "structured" : "raw"; }

std::size_t structured_feature_length(const Dims& dims) { return 2 * dims.nt * dims.nr * (dims.n + 1); }

std::size_t raw_feature_length(const Dims& dims) {
  return 2 * (dims.nr * dims.nt + dims.n * dims.nt + dims.nr * dims.n);
}

std::size_t feature_length(const Dims& dims, InputMode mode) {
  return mode == InputMode::structured ? structured_feature_length(dims) : raw_feature_length(dims);
}

RVector build_features(const RankOneTerms& terms, OpCounter* counter) {
  const auto half = static_cast<Eigen::Index>(terms.rows() * terms.cols() * (terms.num_elements() + 1));
  RVector out(2 * half);
  Eigen::Index offset = 0;
  for (const CMatrix& term : terms.terms()) pack_matrix(term, out, offset, half);
  (void)counter;  // packing is pure data movement
  return out;
}

RVector build_raw_features(const CMatrix& h_d, const CMatrix& h_t, const CMatrix& h_r) {
  const Eigen::Index half = h_d.size() + h_t.size() + h_r.size();
  RVector out(2 * half);
  Eigen::Index offset = 0;
  pack_matrix(h_d, out, offset, half);
  pack_matrix(h_t, out, offset, half);
  pack_matrix(h_r, out, offset, half);
  return out;
}

RVector build_raw_features(const NormalizedTriple& triple) {
  return build_raw_features(triple.h_d, triple.h_t, triple.h_r);
}

RVector build_raw_features(const ChannelTriple& triple) {
  return build_raw_features(triple.h_d, triple.h_t, triple.h_r);
}

RVector build_input(InputMode mode, const NormalizedTriple& channels, const RankOneTerms& terms,
                    OpCounter* counter) {
  return mode == InputMode::structured ? build_features(terms, counter) : build_raw_features(channels);
}

MLPConfig MLPConfig::for_system(const Dims& dims, InputMode mode) {
  std::vector<std::size_t> hidden = dims.nt <= 8 ? std::vector<std::size_t>{dims.n}
                                                 : std::vector<std::size_t>{dims.n, dims.n};
  return for_system(dims, mode, std::move(hidden));
}

MLPConfig MLPConfig::for_system(const Dims& dims, InputMode mode, std::vector<std::size_t> hidden) {
  check_dims(dims);
  MLPConfig cfg;
  cfg.input_dim = feature_length(dims, mode);
  cfg.hidden_layers = std::move(hidden);
  cfg.output_dim = dims.n;
  return cfg;
}

void MLPConfig::validate() const {
  if (input_dim == 0 || output_dim == 0) throw std::invalid_argument("MLPConfig: empty input or output");
  for (std::size_t h : hidden_layers) {
    if (h == 0) throw std::invalid_argument("MLPConfig: hidden layer with zero nodes");
  }
  if (!(output_scale > 0.0)) throw std::invalid_argument("MLPConfig: output_scale must be positive");
}

std::size_t MLPParams::input_dim() const {
  return layers.empty() ? 0 : static_cast<std::size_t>(layers.front().weights.cols());
}

std::size_t MLPParams::output_dim() const {
  return layers.empty() ? 0 : static_cast<std::size_t>(layers.back().weights.rows());
}

std::size_t MLPParams::num_parameters() const {
  std::size_t total = 0;
  for (const auto& l : layers) total += static_cast<std::size_t>(l.weights.size() + l.bias.size());
  return total;
}

MLPParams MLPParams::zeros(const MLPConfig& cfg) {
  cfg.validate();
  MLPParams p;
  std::size_t in = cfg.input_dim;
  auto add = [&](std::size_t out) {
    p.layers.push_back({RMatrix::Zero(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)),
                        RVector::Zero(static_cast<Eigen::Index>(out))});
    in = out;
  };
  for (std::size_t h : cfg.hidden_layers) add(h);
  add(cfg.output_dim);
  return p;
}

MLPParams MLPParams::zeros_like(const MLPParams& other) {
  MLPParams p;
  p.layers.reserve(other.layers.size());
  for (const auto& l : other.layers) {
    p.layers.push_back({RMatrix::Zero(l.weights.rows(), l.weights.cols()), RVector::Zero(l.bias.size())});
  }
  return p;
}

MLPParams MLPParams::glorot(const MLPConfig& cfg, std::uint64_t seed) {
  MLPParams p = zeros(cfg);
  std::mt19937_64 rng(seed);
  for (auto& layer : p.layers) {
    const double limit = std::sqrt(6.0 / static_cast<double>(layer.weights.rows() + layer.weights.cols()));
    std::uniform_real_distribution<double> uniform(-limit, limit);
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) layer.weights(r, c) = uniform(rng);
    }
  }
  return p;
}

MLPParams& MLPParams::operator+=(const MLPParams& other) {
  for (std::size_t l = 0; l < layers.size(); ++l) {
    layers[l].weights += other.layers[l].weights;
    layers[l].bias += other.layers[l].bias;
  }
  return *this;
}

MLPParams& MLPParams::operator*=(double scale) {
  for (auto& l : layers) {
    l.weights *= scale;
    l.bias *= scale;
  }
  return *this;
}

bool operator==(const MLPParams& a, const MLPParams& b) {
  if (a.layers.size() != b.layers.size()) return false;
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    const auto& x = a.layers[l];
    const auto& y = b.layers[l];
    if (x.weights.rows() != y.weights.rows() || x.weights.cols() != y.weights.cols()) return false;
    if (x.bias.size() != y.bias.size()) return false;
    if (x.weights != y.weights || x.bias != y.bias) return false;
  }
  return true;
}

ForwardResult forward(const MLPParams& params, const RVector& x, double output_scale, OpCounter* counter) {
  if (params.layers.empty()) throw std::invalid_argument("forward: network has no layers");
  if (static_cast<std::size_t>(x.size()) != params.input_dim()) {
    throw std::invalid_argument("forward: input has " + std::to_string(x.size()) + " entries, network expects " +
                                std::to_string(params.input_dim()));
  }
  ForwardResult result;
  auto& acts = result.cache.activations;
  acts.reserve(params.layers.size() + 1);
  acts.push_back(x);
  for (const auto& layer : params.layers) {
    RVector z = layer.bias;
    z.noalias() += layer.weights * acts.back();
    acts.push_back(z.unaryExpr(&sigmoid));
    if (counter) {
      counter->add(static_cast<std::uint64_t>(2 * layer.weights.size() + layer.bias.size() + 4 * z.size()));
    }
  }
  result.phases = output_scale * acts.back();
  if (counter) counter->add(static_cast<std::uint64_t>(result.phases.size()));
  return result;
}

Sample make_sample(const NormalizedTriple& channels, InputMode mode, Snr rho_train) {
  Sample s;
  s.channels = channels;
  s.terms = rank_one_terms(channels);
  s.features = build_input(mode, channels, s.terms);
  s.rho_train = rho_train;
  return s;
}

Snr draw_training_snr(double rho0_db, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-rho0_db, rho0_db);
  return Snr::from_db(rho0_db > 0.0 ? uniform(rng) : 0.0);
}

double loss(const PhaseVector& phases, const Sample& sample) {
  return -spectral_efficiency(sample.terms, phases, sample.rho_train);
}

MLPParams backward(const MLPParams& params, const ForwardCache& cache, const Sample& sample,
                   double output_scale) {
  const auto& acts = cache.activations;
  if (acts.size() != params.layers.size() + 1) throw std::invalid_argument("backward: cache/network mismatch");

  const PhaseVector phases = output_scale * acts.back();
  const RVector dloss_dtheta = -se_gradient(sample.terms, phases, sample.rho_train);

  MLPParams grads = MLPParams::zeros_like(params);
  const RVector& out = acts.back();
  RVector delta = (dloss_dtheta.array() * output_scale * out.array() * (1.0 - out.array())).matrix();
  for (std::size_t l = params.layers.size(); l-- > 0;) {
    grads.layers[l].weights.noalias() = delta * acts[l].transpose();
    grads.layers[l].bias = delta;
    if (l > 0) {
      const RVector& a = acts[l];
      RVector back = params.layers[l].weights.transpose() * delta;
      delta = (back.array() * a.array() * (1.0 - a.array())).matrix();
    }
  }
  return grads;
}

AdamState AdamState::for_params(const MLPParams& params) {
  return {MLPParams::zeros_like(params), MLPParams::zeros_like(params), 0};
}

void adam_step(MLPParams& params, const MLPParams& grads, AdamState& state, double lr, const AdamConfig& cfg) {
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(cfg.beta1, t);
  const double c2 = 1.0 - std::pow(cfg.beta2, t);
  auto update = [&](auto& p, const auto& g, auto& m, auto& v) {
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
    v = (cfg.beta2 * v.array() + (1.0 - cfg.beta2) * g.array().square()).matrix();
    p.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + cfg.eps);
  };
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    update(params.layers[l].weights, grads.layers[l].weights, state.m.layers[l].weights, state.v.layers[l].weights);
    update(params.layers[l].bias, grads.layers[l].bias, state.m.layers[l].bias, state.v.layers[l].bias);
  }
}

void TrainConfig::validate() const {
  if (!(lr0 > 0.0)) throw std::invalid_argument("TrainConfig: lr0 must be positive");
  if (!(lr_decay > 0.0 && lr_decay <= 1.0)) throw std::invalid_argument("TrainConfig: lr_decay must be in (0, 1]");
  if (batch_size == 0) throw std::invalid_argument("TrainConfig: batch_size must be >= 1");
  if (!(rho0_db >= 0.0)) throw std::invalid_argument("TrainConfig: rho0_db must be non-negative");
  if (!(val_fraction >= 0.0 && val_fraction < 1.0)) {
    throw std::invalid_argument("TrainConfig: val_fraction must be in [0, 1)");
  }
}

double mean_loss(const MLPParams& params, std::span<const Sample> samples, double output_scale) {
  if (samples.empty()) return 0.0;
  double total = 0.0;
  for (const Sample& s : samples) total += loss(forward(params, s.features, output_scale).phases, s);
  return total / static_cast<double>(samples.size());
}

TrainResult train(std::span<const Sample> dataset, const MLPConfig& net_cfg, const TrainConfig& train_cfg) {
  net_cfg.validate();
  train_cfg.validate();
  if (dataset.empty()) throw std::invalid_argument("train: empty dataset");
  for (const Sample& s : dataset) {
    if (static_cast<std::size_t>(s.features.size()) != net_cfg.input_dim) {
      throw std::invalid_argument("train: sample features have " + std::to_string(s.features.size()) +
                                  " entries, network expects " + std::to_string(net_cfg.input_dim));
    }
    if (s.terms.num_elements() != net_cfg.output_dim) {
      throw std::invalid_argument("train: sample has " + std::to_string(s.terms.num_elements()) +
                                  " RIS elements, network outputs " + std::to_string(net_cfg.output_dim));
    }
  }

  const auto n_val = static_cast<std::size_t>(std::floor(train_cfg.val_fraction * static_cast<double>(dataset.size())));
  const std::size_t n_train = dataset.size() - n_val;
  if (n_train == 0) throw std::invalid_argument("train: validation split leaves no training samples");
  const auto train_part = dataset.subspan(0, n_train);
  const auto val_part = dataset.subspan(n_train);

  TrainResult result;
  result.params = MLPParams::glorot(net_cfg, train_cfg.seed);
  const double scale = net_cfg.output_scale;
  result.train_loss.push_back(mean_loss(result.params, train_part, scale));
  if (!val_part.empty()) result.val_loss.push_back(mean_loss(result.params, val_part, scale));

  AdamState adam = AdamState::for_params(result.params);
  std::mt19937_64 rng(mix_seed(train_cfg.seed, kShuffleStream));
  std::vector<std::size_t> order(n_train);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t epoch = 0; epoch < train_cfg.epochs; ++epoch) {
    const double lr = train_cfg.lr0 * std::pow(train_cfg.lr_decay, static_cast<double>(epoch));
    std::shuffle(order.begin(), order.end(), rng);

    double epoch_loss = 0.0;
    for (std::size_t begin = 0; begin < n_train; begin += train_cfg.batch_size) {
      const std::size_t end = std::min(n_train, begin + train_cfg.batch_size);
      MLPParams grads = MLPParams::zeros_like(result.params);
      for (std::size_t k = begin; k < end; ++k) {
        const Sample& s = train_part[order[k]];
        ForwardResult fwd = forward(result.params, s.features, scale);
        epoch_loss += loss(fwd.phases, s);
        grads += backward(result.params, fwd.cache, s, scale);
      }
      grads *= 1.0 / static_cast<double>(end - begin);
      adam_step(result.params, grads, adam, lr, train_cfg.adam);
    }
    result.train_loss.push_back(epoch_loss / static_cast<double>(n_train));
    if (!val_part.empty()) result.val_loss.push_back(mean_loss(result.params, val_part, scale));
    result.epochs_run = epoch + 1;

    const std::size_t patience = train_cfg.plateau_patience;
    const std::size_t done = result.epochs_run;
    if (patience > 0 && done > patience) {
      const auto first = result.train_loss.begin() + 1;
      const double reference = *std::min_element(first, first + static_cast<std::ptrdiff_t>(done - patience));
      const double current = *std::min_element(first, result.train_loss.end());
      if ((reference - current) / std::abs(reference) < train_cfg.plateau_tol) break;
    }
  }
  return result;
}

PhaseVector infer_phases(const MLPParams& params, const RankOneTerms& terms, double output_scale,
                         OpCounter* counter) {
  return forward(params, build_features(terms, counter), output_scale, counter).phases;
}

CVector phases_to_coefficients(const PhaseVector& theta) {
  CVector alpha(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) alpha[i] = std::polar(1.0, theta[i]);
  return alpha;
}

}  // namespace ris
