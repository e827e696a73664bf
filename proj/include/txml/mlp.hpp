#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "txml/dataset.hpp"

namespace txml {

enum class Activation { Tanh, Sigmoid };

std::string_view activation_name(Activation a);
Activation parse_activation(std::string_view name);

// Feed-forward layout: 1 input, one or more hidden layers with a nonlinear
// activation, 1 linear output.
struct MlpLayout {
    std::vector<int> hidden_sizes{8};
    Activation activation = Activation::Tanh;

    // Full size list {1, hidden..., 1}.
    std::vector<int> sizes() const;
    void validate() const;  // ConfigError on empty/non-positive hidden sizes
};

// Dense row-major matrix, rows = fan_out, cols = fan_in.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    static Mat zeros(int r, int c) { return {r, c, std::vector<double>(std::size_t(r) * c, 0.0)}; }
    double& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
    double at(int r, int c) const { return a[std::size_t(r) * cols + c]; }
    double* row(int r) { return a.data() + std::size_t(r) * cols; }
    const double* row(int r) const { return a.data() + std::size_t(r) * cols; }
};

struct MlpModel {
    MlpLayout layout;
    std::vector<Mat> weights;               // weights[l]: sizes[l] -> sizes[l+1]
    std::vector<std::vector<double>> biases;
    std::optional<Scaler> scaler;           // fitted by train(); required by forward()
    std::uint64_t seed = 0;
    std::vector<double> training_log;       // normalized MSE per epoch

    void validate() const;  // DimensionError / DomainError on inconsistency
};

struct TrainConfig {
    int epochs = 20000;
    double learning_rate = 0.2;
    // Classical momentum on the full-batch gradient; 0 gives plain gradient
    // descent. The default is what makes the stock [1,8,1] net reach the
    // percent-error targets within seconds.
    double momentum = 0.9;
    std::uint64_t seed = 42;
    std::optional<double> target_mse = 1e-8;  // early stop on normalized MSE

    void validate() const;
};

// Per-parameter gradient of the normalized-space MSE, same shapes as the model.
struct MlpGradients {
    std::vector<Mat> weights;
    std::vector<std::vector<double>> biases;
};

// Xavier-uniform init: weights ~ U[-r, r], r = sqrt(6/(fan_in+fan_out)),
// drawn row-major layer by layer from SplitMix64(seed); biases zero.
// Bit-reproducible for a given (layout, seed).
MlpModel init_mlp(const MlpLayout& layout, std::uint64_t seed);

// Raw x -> raw y through the scaler and the network. ConfigError when the
// scaler has not been fitted.
double forward(const MlpModel& model, double x_raw);

// Mean over samples of (prediction - target)^2, both axes normalized.
double mse_loss(const MlpModel& model, const Dataset& dataset,
                const kernels::Kernels& k = kernels::active_kernels());

// Analytic backpropagation gradients of mse_loss at the current parameters.
MlpGradients gradient_of_loss(const MlpModel& model, const Dataset& dataset,
                              const kernels::Kernels& k = kernels::active_kernels());

// Full-batch gradient descent (with optional momentum) on normalized MSE.
// Fits the model's scaler from the dataset, appends one MSE entry per epoch
// to training_log, stops early at config.target_mse, and throws
// DivergenceError (with the epoch) if the loss goes non-finite.
// Deterministic given (model, dataset, config) on one platform.
MlpModel train(MlpModel model, const Dataset& dataset, const TrainConfig& config,
               const kernels::Kernels& k = kernels::active_kernels());

// init_mlp(layout, config.seed) followed by train().
MlpModel train_new(const MlpLayout& layout, const Dataset& dataset, const TrainConfig& config,
                   const kernels::Kernels& k = kernels::active_kernels());

}  // namespace txml
