#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "lobmimic/rng.hpp"
#include "lobmimic/tape.hpp"

namespace lobmimic {

enum class Activation : std::uint8_t { Tanh, Relu };

const char* to_string(Activation a) noexcept;
Activation parse_activation(const std::string& name);

struct DenseLayer {
  Eigen::MatrixXd weights;  // fan_out x fan_in
  Eigen::VectorXd bias;

  friend bool operator==(const DenseLayer& a, const DenseLayer& b) {
    return a.weights == b.weights && a.bias == b.bias;
  }
};

/// Feedforward regression network: hidden layers use `hidden`, the output
/// layer is linear.
struct MlpModel {
  std::vector<int> layer_sizes;
  std::vector<DenseLayer> layers;
  Activation hidden = Activation::Tanh;
  FeatureConstants constants;

  [[nodiscard]] int input_size() const { return layer_sizes.front(); }
  [[nodiscard]] std::size_t parameter_count() const;

  friend bool operator==(const MlpModel&, const MlpModel&) = default;
};

/// Column-per-sample design matrix and targets.
struct Samples {
  Eigen::MatrixXd inputs;  // input_size x n
  Eigen::VectorXd targets;

  [[nodiscard]] Eigen::Index size() const { return inputs.cols(); }
};

Samples make_samples(std::span<const TapeRecord> records, const FeatureConstants& constants);

/// Glorot-uniform weights, zero biases. Needs an input, at least one hidden
/// and an output layer.
MlpModel mlp_init(const std::vector<int>& layer_sizes, Activation hidden, UniformSource& rng);

double mlp_forward(const MlpModel& model, std::span<const double> input);
Eigen::VectorXd mlp_forward_batch(const MlpModel& model, const Eigen::MatrixXd& inputs);

/// Mean squared error over the columns and its gradient with respect to every
/// weight and bias, by backpropagation.
struct LossGradient {
  double loss = 0.0;
  std::vector<DenseLayer> grads;
};
LossGradient loss_gradient(const MlpModel& model, const Eigen::MatrixXd& inputs,
                           const Eigen::VectorXd& targets);

double rms_error(const MlpModel& model, const Samples& samples);

struct TrainConfig {
  int epochs = 200;
  int batch_size = 32;
  double learning_rate = 1e-3;
  double momentum = 0.9;
  std::uint64_t seed = 0;
};

void validate(const TrainConfig& config);

struct TrainResult {
  MlpModel model;
  std::vector<double> train_rms;  // one entry per epoch, after the epoch
  std::vector<double> test_rms;
};

/// Mini-batch momentum SGD on squared error; batches are reshuffled each
/// epoch from the config seed. Throws DivergenceError on a non-finite loss or
/// weight.
TrainResult mlp_train(MlpModel model, const Samples& train, const Samples& test,
                      const TrainConfig& config);

/// Plain-text model file; reals at round-trip precision.
void write_model(std::ostream& out, const MlpModel& model);
void write_model(const std::filesystem::path& path, const MlpModel& model);
MlpModel read_model(std::istream& in);
MlpModel read_model(const std::filesystem::path& path);

}  // namespace lobmimic
