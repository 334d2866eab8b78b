#ifndef ND_DATASETS_HPP
#define ND_DATASETS_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "nd/errors.hpp"
#include "nd/time_series.hpp"

namespace nd {

/// Closed form of the toy signal: two sinusoids plus a linear trend.
inline double toy_signal(double t) {
    return std::sin(4.25 * std::numbers::pi * t) + std::sin(8.5 * std::numbers::pi * t) + 5.0 * t;
}

/**
 * Toy problem: train sampled at t = i/n_train over [0,1), test at
 * t = 1 + 2j/n_test over [1,3).
 */
inline std::pair<TimeSeries, TimeSeries> gen_toy(std::size_t n_train, std::size_t n_test) {
    std::vector<double> tt(n_train), tv(n_train);
    for (std::size_t i = 0; i < n_train; ++i) {
        tt[i] = static_cast<double>(i) / static_cast<double>(n_train);
        tv[i] = toy_signal(tt[i]);
    }
    std::vector<double> st(n_test), sv(n_test);
    for (std::size_t j = 0; j < n_test; ++j) {
        st[j] = 1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(n_test);
        sv[j] = toy_signal(st[j]);
    }
    return {TimeSeries(std::move(tt), std::move(tv), "toy_train"),
            TimeSeries(std::move(st), std::move(sv), "toy_test")};
}

/**
 * Delay differential equation dx/dt = beta*x(t-tau)/(1+x(t-tau)^exponent) - gamma*x(t).
 * Defaults are the standard chaotic-regime benchmark parameters.
 */
struct MackeyGlassParams {
    double beta = 0.2;
    double gamma = 0.1;
    double exponent = 10.0;
    double tau = 17.0;
    double dt = 1.0;
    double history_value = 1.2;
    std::size_t burn_in = 1000;
    std::size_t sample_stride = 1;

    void validate() const {
        if (!(dt > 0.0)) throw ConfigError("dt must be positive");
        if (!(tau > 0.0)) throw ConfigError("tau must be positive");
        if (sample_stride < 1) throw ConfigError("sample stride must be >= 1");
    }
};

namespace detail {

/// x at time s, from constant history (s <= 0) or linear interpolation of the trajectory.
inline double delayed_value(const std::vector<double>& traj, double dt, double history,
                            double s) {
    if (s <= 0.0) return history;
    const double pos = s / dt;
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= traj.size()) return traj.back();
    const double frac = pos - static_cast<double>(lo);
    return traj[lo] + frac * (traj[lo + 1] - traj[lo]);
}

}  // namespace detail

/**
 * Integrate the delay equation with fourth-order Runge-Kutta, discard burn_in
 * steps, then emit every sample_stride-th point with implicit integer times.
 */
inline TimeSeries gen_mackey_glass(std::size_t n_total, const MackeyGlassParams& params = {}) {
    if (n_total < 2) throw ConfigError("need at least 2 samples");
    params.validate();

    const double dt = params.dt;
    auto f = [&](double x, double x_delayed) {
        return params.beta * x_delayed / (1.0 + std::pow(x_delayed, params.exponent)) -
               params.gamma * x;
    };

    const std::size_t steps = params.burn_in + (n_total - 1) * params.sample_stride + 1;
    std::vector<double> traj;
    traj.reserve(steps);
    traj.push_back(params.history_value);

    for (std::size_t i = 0; i + 1 < steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double x = traj.back();
        auto lag = [&](double at) {
            return detail::delayed_value(traj, dt, params.history_value, at - params.tau);
        };
        const double k1 = f(x, lag(t));
        const double k2 = f(x + 0.5 * dt * k1, lag(t + 0.5 * dt));
        const double k3 = f(x + 0.5 * dt * k2, lag(t + 0.5 * dt));
        const double k4 = f(x + dt * k3, lag(t + dt));
        const double next = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(next))
            throw DataError("integration produced a non-finite state at step " +
                            std::to_string(i));
        traj.push_back(next);
    }

    std::vector<double> times(n_total), values(n_total);
    for (std::size_t k = 0; k < n_total; ++k) {
        times[k] = static_cast<double>(k);
        values[k] = traj[params.burn_in + k * params.sample_stride];
    }
    return TimeSeries(std::move(times), std::move(values), "mackey_glass");
}

}  // namespace nd

#endif
