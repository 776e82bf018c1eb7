// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ris/channel.hpp"
#include "ris/spectral.hpp"

namespace ris {

/// Which feature vector feeds the network.
enum class InputMode {
  structured,  // real/imag parts of the N+1 rank-one terms
  raw,         // real/imag parts of H_d, H_t, H_r
};

InputMode parse_input_mode(std::string_view text);
std::string_view to_string(InputMode mode);

std::size_t structured_feature_length(const Dims& dims);
std::size_t raw_feature_length(const Dims& dims);
std::size_t feature_length(const Dims& dims, InputMode mode);

/// Re parts of H_(0..N) followed by Im parts, each matrix column-major.
RVector build_features(const RankOneTerms& terms, OpCounter* counter = nullptr);

/// Re parts of H_d, H_t, H_r followed by Im parts, each column-major.
RVector build_raw_features(const CMatrix& h_d, const CMatrix& h_t, const CMatrix& h_r);
RVector build_raw_features(const NormalizedTriple& triple);
RVector build_raw_features(const ChannelTriple& triple);

/// Features for `mode`; `terms` must come from `channels`.
RVector build_input(InputMode mode, const NormalizedTriple& channels, const RankOneTerms& terms,
                    OpCounter* counter = nullptr);

struct MLPConfig {
  std::size_t input_dim = 0;
  std::vector<std::size_t> hidden_layers;
  std::size_t output_dim = 0;
  double output_scale = kTwoPi;

  /// Hidden layers default to one layer of N nodes for Nt <= 8 and two
  /// layers of N nodes above that.
  static MLPConfig for_system(const Dims& dims, InputMode mode);
  static MLPConfig for_system(const Dims& dims, InputMode mode, std::vector<std::size_t> hidden);

  void validate() const;
};

struct DenseLayer {
  RMatrix weights;  // out x in
  RVector bias;     // out
};

/// Weights and biases of a sigmoid MLP. Also used to hold gradients and
/// Adam moments, which share the shapes.
struct MLPParams {
  std::vector<DenseLayer> layers;

  std::size_t input_dim() const;
  std::size_t output_dim() const;
  std::size_t num_parameters() const;

  static MLPParams zeros(const MLPConfig& cfg);
  static MLPParams zeros_like(const MLPParams& other);
  /// Glorot-uniform weights, zero biases.
  static MLPParams glorot(const MLPConfig& cfg, std::uint64_t seed);

  MLPParams& operator+=(const MLPParams& other);
  MLPParams& operator*=(double scale);

  friend bool operator==(const MLPParams& a, const MLPParams& b);
};

/// activations[0] is the input, activations[l + 1] the sigmoid output of layer l.
struct ForwardCache {
  std::vector<RVector> activations;
};

struct ForwardResult {
  PhaseVector phases;
  ForwardCache cache;
};

ForwardResult forward(const MLPParams& params, const RVector& x, double output_scale = kTwoPi,
                      OpCounter* counter = nullptr);

/// One training example. `terms` come from the normalized channels, and
/// `features` from `terms` (structured) or from `channels` (raw).
struct Sample {
  NormalizedTriple channels;
  RankOneTerms terms;
  RVector features;
  Snr rho_train{1.0};
};

Sample make_sample(const NormalizedTriple& channels, InputMode mode, Snr rho_train);

/// Draws rho_train uniformly in dB on [-rho0_db, rho0_db].
Snr draw_training_snr(double rho0_db, std::uint64_t seed);

/// Negative spectral efficiency of `sample` under `phases`.
double loss(const PhaseVector& phases, const Sample& sample);

/// Gradient of loss(forward(params, x).phases, sample) w.r.t. every parameter.
MLPParams backward(const MLPParams& params, const ForwardCache& cache, const Sample& sample,
                   double output_scale = kTwoPi);

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  MLPParams m;
  MLPParams v;
  std::size_t step = 0;

  static AdamState for_params(const MLPParams& params);
};

/// One bias-corrected Adam update with learning rate `lr`.
void adam_step(MLPParams& params, const MLPParams& grads, AdamState& state, double lr,
               const AdamConfig& cfg = {});

struct TrainConfig {
  double lr0 = 1e-3;
  double lr_decay = 0.99;  // per epoch
  std::size_t batch_size = 10;
  std::size_t epochs = 100;
  double rho0_db = 30.0;
  AdamConfig adam{};
  std::uint64_t seed = 7;
  double val_fraction = 0.1;
  std::size_t plateau_patience = 10;  // 0 disables early stopping
  double plateau_tol = 1e-3;

  void validate() const;
};

struct TrainResult {
  MLPParams params;
  /// train_loss[0] is the untrained network on the training split;
  /// train_loss[e] for e >= 1 is the mean batch loss during epoch e.
  std::vector<double> train_loss;
  /// val_loss[e] is the validation loss after e epochs (empty without a split).
  std::vector<double> val_loss;
  std::size_t epochs_run = 0;
};

/// Mean loss of the network over `samples`.
double mean_loss(const MLPParams& params, std::span<const Sample> samples,
                 double output_scale = kTwoPi);

/// Mini-batch Adam on the mean per-sample loss. The last val_fraction of
/// `dataset` is held out for validation.
TrainResult train(std::span<const Sample> dataset, const MLPConfig& net_cfg, const TrainConfig& train_cfg);

/// Feature build plus forward pass.
PhaseVector infer_phases(const MLPParams& params, const RankOneTerms& terms,
                         double output_scale = kTwoPi, OpCounter* counter = nullptr);

/// exp(j theta_n) for every element.
CVector phases_to_coefficients(const PhaseVector& theta);

}  // namespace ris
