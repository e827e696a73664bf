#include "txml/mlp.hpp"

#include <cmath>
#include <string>

#include "txml/errors.hpp"
#include "txml/kernels/math_core.hpp"
#include "txml/numio.hpp"
#include "txml/rng.hpp"

namespace txml {

std::string_view activation_name(Activation a) {
    return a == Activation::Tanh ? "tanh" : "sigmoid";
}

Activation parse_activation(std::string_view name) {
    if (name == "tanh") return Activation::Tanh;
    if (name == "sigmoid") return Activation::Sigmoid;
    throw UnknownKindError("unknown activation: '" + std::string(name) + "'");
}

std::vector<int> MlpLayout::sizes() const {
    std::vector<int> s;
    s.reserve(hidden_sizes.size() + 2);
    s.push_back(1);
    s.insert(s.end(), hidden_sizes.begin(), hidden_sizes.end());
    s.push_back(1);
    return s;
}

void MlpLayout::validate() const {
    if (hidden_sizes.empty()) throw ConfigError("layout needs at least one hidden layer");
    for (int h : hidden_sizes) {
        if (h < 1) throw ConfigError("hidden layer sizes must be >= 1, got " + std::to_string(h));
    }
}

void MlpModel::validate() const {
    layout.validate();
    const std::vector<int> s = layout.sizes();
    const std::size_t n_layers = s.size() - 1;
    if (weights.size() != n_layers || biases.size() != n_layers) {
        throw DimensionError("model has " + std::to_string(weights.size()) + " weight and " +
                             std::to_string(biases.size()) + " bias blocks, layout needs " +
                             std::to_string(n_layers));
    }
    for (std::size_t l = 0; l < n_layers; ++l) {
        if (weights[l].rows != s[l + 1] || weights[l].cols != s[l] ||
            weights[l].a.size() != std::size_t(s[l + 1]) * std::size_t(s[l])) {
            throw DimensionError("weight block " + std::to_string(l) +
                                 " does not match layout");
        }
        if (biases[l].size() != std::size_t(s[l + 1])) {
            throw DimensionError("bias block " + std::to_string(l) + " does not match layout");
        }
        for (double v : weights[l].a) {
            if (!std::isfinite(v)) throw DomainError("non-finite weight in model");
        }
        for (double v : biases[l]) {
            if (!std::isfinite(v)) throw DomainError("non-finite bias in model");
        }
    }
}

void TrainConfig::validate() const {
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
    if (!(momentum >= 0.0) || momentum >= 1.0) throw ConfigError("momentum must be in [0, 1)");
    if (target_mse && !(*target_mse >= 0.0)) throw ConfigError("target_mse must be >= 0");
}

MlpModel init_mlp(const MlpLayout& layout, std::uint64_t seed) {
    layout.validate();
    const std::vector<int> s = layout.sizes();
    MlpModel m;
    m.layout = layout;
    m.seed = seed;
    SplitMix64 rng(seed);
    for (std::size_t l = 0; l + 1 < s.size(); ++l) {
        const int fan_in = s[l];
        const int fan_out = s[l + 1];
        const double r = std::sqrt(6.0 / (fan_in + fan_out));
        Mat w = Mat::zeros(fan_out, fan_in);
        for (int j = 0; j < fan_out; ++j) {
            for (int i = 0; i < fan_in; ++i) w.at(j, i) = rng.symmetric(r);
        }
        m.weights.push_back(std::move(w));
        m.biases.emplace_back(fan_out, 0.0);
    }
    return m;
}

namespace {

double activate_scalar(Activation a, double z) {
    return a == Activation::Tanh ? kernels::tanh_core(z) : kernels::logistic_core(z);
}

// Batch planes: acts[l] holds layer l's activations as sizes[l] rows of B
// contiguous samples (acts[0] is the normalized input row).
struct BatchState {
    std::size_t batch = 0;
    std::vector<int> sizes;
    std::vector<std::vector<double>> acts;
    std::vector<std::vector<double>> delta;  // dLoss/dZ planes, same shapes as acts[1..]

    BatchState(const std::vector<int>& layer_sizes, std::size_t b) : batch(b), sizes(layer_sizes) {
        acts.resize(sizes.size());
        delta.resize(sizes.size());
        for (std::size_t l = 0; l < sizes.size(); ++l) {
            acts[l].assign(std::size_t(sizes[l]) * b, 0.0);
            if (l > 0) delta[l].assign(std::size_t(sizes[l]) * b, 0.0);
        }
    }
};

void forward_batch(const MlpModel& m, BatchState& st, const kernels::Kernels& k) {
    const std::size_t b = st.batch;
    const std::size_t n_layers = m.weights.size();
    for (std::size_t l = 0; l < n_layers; ++l) {
        const Mat& w = m.weights[l];
        std::vector<double>& out = st.acts[l + 1];
        const std::vector<double>& in = st.acts[l];
        for (int j = 0; j < w.rows; ++j) {
            double* row = out.data() + std::size_t(j) * b;
            k.fill(row, m.biases[l][j], b);
            for (int i = 0; i < w.cols; ++i) {
                k.axpy(w.at(j, i), in.data() + std::size_t(i) * b, row, b);
            }
        }
        if (l != n_layers - 1) {
            // hidden layer: nonlinearity over the whole plane in place
            if (m.layout.activation == Activation::Tanh) {
                k.tanh_eval(out.data(), out.data(), out.size());
            } else {
                k.logistic_eval(out.data(), out.data(), out.size());
            }
        }
    }
}

// Gradients of mean-over-batch squared error; st must hold a fresh forward
// pass. Fills st.delta as a side effect.
void backward_batch(const MlpModel& m, BatchState& st, const std::vector<double>& targets,
                    MlpGradients& g, const kernels::Kernels& k) {
    const std::size_t b = st.batch;
    const std::size_t n_layers = m.weights.size();

    // Output delta: (2/B) * (prediction - target)
    std::vector<double>& out_delta = st.delta[n_layers];
    const std::vector<double>& prediction = st.acts[n_layers];
    for (std::size_t i = 0; i < b; ++i) out_delta[i] = prediction[i] - targets[i];
    k.scale_shift(out_delta.data(), 2.0 / static_cast<double>(b), 0.0, out_delta.data(), b);

    for (std::size_t l = n_layers; l-- > 0;) {
        const Mat& w = m.weights[l];
        const std::vector<double>& in = st.acts[l];
        std::vector<double>& dz = st.delta[l + 1];
        for (int j = 0; j < w.rows; ++j) {
            const double* dz_row = dz.data() + std::size_t(j) * b;
            for (int i = 0; i < w.cols; ++i) {
                g.weights[l].at(j, i) = k.dot(dz_row, in.data() + std::size_t(i) * b, b);
            }
            g.biases[l][j] = k.sum(dz_row, b);
        }
        if (l > 0) {
            // dA_{l} = W^T dZ_{l+1}, then through the activation derivative
            std::vector<double>& da = st.delta[l];
            k.fill(da.data(), 0.0, da.size());
            for (int j = 0; j < w.rows; ++j) {
                const double* dz_row = dz.data() + std::size_t(j) * b;
                for (int i = 0; i < w.cols; ++i) {
                    k.axpy(w.at(j, i), dz_row, da.data() + std::size_t(i) * b, b);
                }
            }
            if (m.layout.activation == Activation::Tanh) {
                k.tanh_backprop(in.data(), da.data(), da.data(), da.size());
            } else {
                k.logistic_backprop(in.data(), da.data(), da.data(), da.size());
            }
        }
    }
}

MlpGradients make_gradients(const MlpModel& m) {
    MlpGradients g;
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        g.weights.push_back(Mat::zeros(m.weights[l].rows, m.weights[l].cols));
        g.biases.emplace_back(m.biases[l].size(), 0.0);
    }
    return g;
}

struct NormalizedData {
    std::vector<double> xn;
    std::vector<double> yn;
};

NormalizedData normalize_dataset(const MlpModel& m, const Dataset& ds,
                                 const kernels::Kernels& k) {
    if (!m.scaler) throw ConfigError("model scaler has not been fitted");
    ds.validate();
    const std::vector<double> xs = ds.xs();
    const std::vector<double> ys = ds.ys();
    NormalizedData nd;
    nd.xn.resize(xs.size());
    nd.yn.resize(ys.size());
    m.scaler->apply_x(xs.data(), nd.xn.data(), xs.size(), k);
    m.scaler->apply_y(ys.data(), nd.yn.data(), ys.size(), k);
    return nd;
}

}  // namespace

double forward(const MlpModel& model, double x_raw) {
    model.validate();
    if (!model.scaler) throw ConfigError("model scaler has not been fitted");
    std::vector<double> cur{model.scaler->apply_x(x_raw)};
    std::vector<double> next;
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        const Mat& w = model.weights[l];
        next.assign(std::size_t(w.rows), 0.0);
        const bool hidden = l + 1 != model.weights.size();
        for (int j = 0; j < w.rows; ++j) {
            double acc = model.biases[l][j];
            for (int i = 0; i < w.cols; ++i) acc = acc + w.at(j, i) * cur[i];
            next[j] = hidden ? activate_scalar(model.layout.activation, acc) : acc;
        }
        cur.swap(next);
    }
    return model.scaler->invert_y(cur[0]);
}

double mse_loss(const MlpModel& model, const Dataset& dataset, const kernels::Kernels& k) {
    model.validate();
    const NormalizedData nd = normalize_dataset(model, dataset, k);
    BatchState st(model.layout.sizes(), nd.xn.size());
    st.acts[0] = nd.xn;
    forward_batch(model, st, k);
    return k.sse(st.acts.back().data(), nd.yn.data(), nd.yn.size()) /
           static_cast<double>(nd.yn.size());
}

MlpGradients gradient_of_loss(const MlpModel& model, const Dataset& dataset,
                              const kernels::Kernels& k) {
    model.validate();
    const NormalizedData nd = normalize_dataset(model, dataset, k);
    BatchState st(model.layout.sizes(), nd.xn.size());
    st.acts[0] = nd.xn;
    forward_batch(model, st, k);
    MlpGradients g = make_gradients(model);
    backward_batch(model, st, nd.yn, g, k);
    return g;
}

namespace {

// fit_scaler rejects degenerate ranges, but a constant-target dataset is
// still trainable (the bias-only solution); widen a flat y range so the
// normalization stays defined. A flat x range stays an error.
Scaler fit_training_scaler(const Dataset& dataset, const kernels::Kernels& k) {
    dataset.validate();
    const std::vector<double> xs = dataset.xs();
    const std::vector<double> ys = dataset.ys();
    Scaler s;
    k.minmax(xs.data(), xs.size(), &s.x_min, &s.x_max);
    k.minmax(ys.data(), ys.size(), &s.y_min, &s.y_max);
    if (!(s.x_min < s.x_max)) throw DegenerateRangeError("dataset x range is degenerate");
    if (!(s.y_min < s.y_max)) {
        s.y_min -= 0.5;
        s.y_max += 0.5;
    }
    return s;
}

}  // namespace

MlpModel train(MlpModel model, const Dataset& dataset, const TrainConfig& config,
               const kernels::Kernels& k) {
    model.validate();
    config.validate();
    model.scaler = fit_training_scaler(dataset, k);
    const NormalizedData nd = normalize_dataset(model, dataset, k);
    const std::size_t b = nd.xn.size();

    BatchState st(model.layout.sizes(), b);
    st.acts[0] = nd.xn;
    MlpGradients g = make_gradients(model);
    MlpGradients vel = make_gradients(model);  // momentum state, zero-initialized

    model.training_log.clear();
    model.training_log.reserve(std::size_t(config.epochs));
    const double lr = config.learning_rate;
    const double beta = config.momentum;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        forward_batch(model, st, k);
        const double mse =
            k.sse(st.acts.back().data(), nd.yn.data(), b) / static_cast<double>(b);
        model.training_log.push_back(mse);
        if (!std::isfinite(mse)) {
            throw DivergenceError("training loss became non-finite", epoch);
        }
        if (config.target_mse && mse <= *config.target_mse) break;

        backward_batch(model, st, nd.yn, g, k);
        for (std::size_t l = 0; l < model.weights.size(); ++l) {
            // v = beta*v + g ; w -= lr*v
            k.scale_shift(vel.weights[l].a.data(), beta, 0.0, vel.weights[l].a.data(),
                          vel.weights[l].a.size());
            k.axpy(1.0, g.weights[l].a.data(), vel.weights[l].a.data(), vel.weights[l].a.size());
            k.axpy(-lr, vel.weights[l].a.data(), model.weights[l].a.data(),
                   model.weights[l].a.size());

            k.scale_shift(vel.biases[l].data(), beta, 0.0, vel.biases[l].data(),
                          vel.biases[l].size());
            k.axpy(1.0, g.biases[l].data(), vel.biases[l].data(), vel.biases[l].size());
            k.axpy(-lr, vel.biases[l].data(), model.biases[l].data(), model.biases[l].size());
        }
    }
    return model;
}

MlpModel train_new(const MlpLayout& layout, const Dataset& dataset, const TrainConfig& config,
                   const kernels::Kernels& k) {
    return train(init_mlp(layout, config.seed), dataset, config, k);
}

}  // namespace txml
