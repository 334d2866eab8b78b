#ifndef ND_TRAIN_HPP
#define ND_TRAIN_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "nd/errors.hpp"
#include "nd/model.hpp"
#include "nd/preprocess.hpp"
#include "nd/random.hpp"
#include "nd/time_series.hpp"

namespace nd {

struct TrainConfig {
    double learning_rate = 1e-3;
    double l1_strength = 1e-2;
    std::size_t epochs = 5000;
    std::uint64_t seed = 0;
    AugmentationSpec aug;
    bool log_filter = false;
    bool freeze_frequencies = false;  // pins sinusoid frequencies and phases at init
    std::vector<std::size_t> snapshot_units;  // sinusoid indices traced per epoch

    void validate() const {
        if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
            throw ConfigError("learning rate must be >= 0");
        if (!(l1_strength >= 0.0) || !std::isfinite(l1_strength))
            throw ConfigError("l1 strength must be >= 0");
        if (epochs < 1) throw ConfigError("epoch count must be >= 1");
    }
};

struct TrainTrace {
    std::vector<double> rmse;  // per-epoch training RMSE, normalized units
    std::vector<std::size_t> snapshot_units;
    std::vector<std::vector<double>> frequencies;  // [epoch][tracked unit]
    std::vector<std::vector<double>> amplitudes;
};

/// epoch,rmse[,u<k>_frequency,u<k>_amplitude...] rows for trend plots.
inline void write_trace_csv(const TrainTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "epoch,rmse";
    for (std::size_t u : trace.snapshot_units)
        out << ",u" << u << "_frequency,u" << u << "_amplitude";
    out << '\n';
    for (std::size_t e = 0; e < trace.rmse.size(); ++e) {
        out << e << ',' << format_double(trace.rmse[e]);
        for (std::size_t j = 0; j < trace.snapshot_units.size(); ++j)
            out << ',' << format_double(trace.frequencies[e][j]) << ','
                << format_double(trace.amplitudes[e][j]);
        out << '\n';
    }
    if (!out) throw IoError("write failure on " + path.string());
}

/**
 * Soft-threshold every output-layer weight: w -> sign(w) * max(|w| - amount, 0).
 * Hidden parameters and the output bias are untouched.
 */
inline void l1_shrink(NDModel& model, double amount) {
    for (double& w : model.output_weights) {
        if (w > amount)
            w -= amount;
        else if (w < -amount)
            w += amount;
        else
            w = 0.0;
    }
}

namespace detail {

/**
 * Gradient of 0.5*(forward(t) - target)^2 with respect to every parameter,
 * written into `out` using the model's flat layout: (input_weight, bias) per
 * hidden unit, then output weights, then output bias.
 */
inline void gradient_into(const NDModel& model, double t, double target,
                          std::vector<double>& out) {
    const std::size_t m = model.unit_count();
    out.resize(model.parameter_count());

    double pred = model.output_bias;
    // first pass caches activations and slopes, second scales by the residual
    for (std::size_t i = 0; i < m; ++i) {
        const HiddenUnit& u = model.hidden[i];
        const double z = u.input_weight * t + u.bias;
        const double act = activate(u.kind, z);
        const double slope = activate_deriv(u.kind, z);
        pred += model.output_weights[i] * act;
        out[2 * i] = slope * t;     // d z / d input_weight, scaled later
        out[2 * i + 1] = slope;     // d z / d bias
        out[2 * m + i] = act;       // d pred / d output weight
    }
    const double residual = pred - target;
    for (std::size_t i = 0; i < m; ++i) {
        const double chain = residual * model.output_weights[i];
        out[2 * i] *= chain;
        out[2 * i + 1] *= chain;
        out[2 * m + i] *= residual;
    }
    out[3 * m] = residual;
}

}  // namespace detail

/// Exact analytic gradient of 0.5*(forward(t)-target)^2, flat layout.
inline std::vector<double> gradient(const NDModel& model, double t, double target) {
    std::vector<double> g;
    detail::gradient_into(model, t, target, g);
    return g;
}

/**
 * Stochastic gradient descent with backpropagation.
 *
 * Fits preprocessing on the training set, initializes one sinusoid unit per
 * sample plus the configured augmentation, then for each epoch visits samples
 * in a reshuffled order; before every presentation the output weights get an
 * L1 proximal shrink of l1_strength * learning_rate, then one SGD step on the
 * squared error updates all parameters (hidden parameters unregularized).
 * Deterministic given the seed. Throws TrainingDivergedError if the epoch
 * RMSE turns non-finite.
 */
inline std::pair<NDModel, TrainTrace> fit_nd(const TimeSeries& train, const TrainConfig& config) {
    config.validate();

    const PreprocessParams params = fit(train, config.log_filter);
    const TimeSeries norm = apply(params, train);
    const std::size_t n = norm.size();

    NDModel model = NDModel::init(n, config.aug, config.seed);
    model.preprocess = params;
    for (std::size_t u : config.snapshot_units)
        if (u >= model.n_sinusoids) throw ConfigError("snapshot unit index out of range");

    // separate stream from init so the visit order is not correlated with weights
    Rng order_rng(config.seed + 0x9E3779B97F4A7C15ULL);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    const double lr = config.learning_rate;
    const double shrink = config.l1_strength * lr;
    const std::size_t m = model.unit_count();
    std::vector<double> grad(model.parameter_count());

    TrainTrace trace;
    trace.snapshot_units = config.snapshot_units;

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        order_rng.shuffle(order);
        for (std::size_t idx : order) {
            l1_shrink(model, shrink);
            detail::gradient_into(model, norm.time(idx), norm.value(idx), grad);

            const std::size_t first_hidden = config.freeze_frequencies ? model.n_sinusoids : 0;
            for (std::size_t i = first_hidden; i < m; ++i) {
                model.hidden[i].input_weight -= lr * grad[2 * i];
                model.hidden[i].bias -= lr * grad[2 * i + 1];
            }
            for (std::size_t i = 0; i < m; ++i) model.output_weights[i] -= lr * grad[2 * m + i];
            model.output_bias -= lr * grad[3 * m];
        }

        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = model.forward(norm.time(i)) - norm.value(i);
            sq += r * r;
        }
        const double rmse = std::sqrt(sq / static_cast<double>(n));
        if (!std::isfinite(rmse)) throw TrainingDivergedError(epoch);
        trace.rmse.push_back(rmse);

        if (!trace.snapshot_units.empty()) {
            std::vector<double> f, a;
            f.reserve(trace.snapshot_units.size());
            a.reserve(trace.snapshot_units.size());
            for (std::size_t u : trace.snapshot_units) {
                f.push_back(model.hidden[u].input_weight);
                a.push_back(model.output_weights[u]);
            }
            trace.frequencies.push_back(std::move(f));
            trace.amplitudes.push_back(std::move(a));
        }
    }
    return {std::move(model), std::move(trace)};
}

}  // namespace nd

#endif
