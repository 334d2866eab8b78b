#ifndef ND_PREPROCESS_HPP
#define ND_PREPROCESS_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "nd/errors.hpp"
#include "nd/time_series.hpp"

namespace nd {

/**
 * Invertible axis transforms fitted on a training set.
 *
 * Time axis: t' = (t - t_offset) / t_scale, chosen so training times land in
 * [0, (N-1)/N] and later (predicted) times land at >= 1. Value axis:
 * v' = (log?(v) - v_offset) / v_scale, chosen so training values span [0, 10].
 * Immutable after fit; apply/invert are pure.
 */
struct PreprocessParams {
    double t_offset = 0.0;
    double t_scale = 1.0;
    double v_offset = 0.0;
    double v_scale = 1.0;
    bool log_filter = false;

    double normalize_time(double t) const { return (t - t_offset) / t_scale; }
    double denormalize_time(double t) const { return t * t_scale + t_offset; }

    double normalize_value(double v) const {
        if (log_filter) {
            if (v <= 0.0)
                throw DataError("log filter requires strictly positive values");
            v = std::log(v);
        }
        return (v - v_offset) / v_scale;
    }

    /// Exact inverse of normalize_value: unscale, then exponentiate if log-filtered.
    double denormalize_value(double v) const {
        v = v * v_scale + v_offset;
        return log_filter ? std::exp(v) : v;
    }

    bool operator==(const PreprocessParams&) const = default;
};

/**
 * Fit transforms on a training set.
 *
 * The time span [t_min, t_max] maps onto [0, (N-1)/N]; for implicit integer
 * times 0..N-1 this gives normalized time exactly k/N. Values (after the
 * optional log) are min-max mapped to [0, 10]; a constant-value series maps
 * to 5.0 with unit scale so the transform stays invertible.
 */
inline PreprocessParams fit(const TimeSeries& train, bool log_filter = false) {
    const std::size_t n = train.size();
    PreprocessParams p;
    p.log_filter = log_filter;

    const double t_min = train.times().front();
    const double t_max = train.times().back();
    if (t_max == t_min) throw DataError("constant time axis cannot be normalized");
    p.t_offset = t_min;
    p.t_scale = (t_max - t_min) * static_cast<double>(n) / static_cast<double>(n - 1);

    double v_min = 0.0, v_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = train.value(i);
        if (log_filter) {
            if (v <= 0.0)
                throw DataError("log filter requires strictly positive values, got " +
                                format_double(v));
            v = std::log(v);
        }
        if (i == 0 || v < v_min) v_min = v;
        if (i == 0 || v > v_max) v_max = v;
    }
    if (v_max == v_min) {
        // degenerate constant series: center at 5.0, keep unit scale
        p.v_scale = 1.0;
        p.v_offset = v_min - 5.0;
    } else {
        p.v_scale = (v_max - v_min) / 10.0;
        p.v_offset = v_min;
    }
    return p;
}

/// Transform a whole series into normalized coordinates.
inline TimeSeries apply(const PreprocessParams& params, const TimeSeries& series) {
    std::vector<double> t(series.size()), v(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        t[i] = params.normalize_time(series.time(i));
        v[i] = params.normalize_value(series.value(i));
    }
    return TimeSeries(std::move(t), std::move(v), series.name());
}

/// Map model-space predictions back to original data units.
inline std::vector<double> invert_values(const PreprocessParams& params,
                                         const std::vector<double>& predictions) {
    std::vector<double> out(predictions.size());
    for (std::size_t i = 0; i < predictions.size(); ++i)
        out[i] = params.denormalize_value(predictions[i]);
    return out;
}

}  // namespace nd

#endif
