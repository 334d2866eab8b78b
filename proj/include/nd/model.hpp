#ifndef ND_MODEL_HPP
#define ND_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nd/errors.hpp"
#include "nd/preprocess.hpp"
#include "nd/random.hpp"

namespace nd {

enum class ActivationKind { sinusoid, linear, softplus, sigmoid };

inline const char* to_string(ActivationKind k) {
    switch (k) {
        case ActivationKind::sinusoid: return "sinusoid";
        case ActivationKind::linear: return "linear";
        case ActivationKind::softplus: return "softplus";
        case ActivationKind::sigmoid: return "sigmoid";
    }
    return "?";
}

inline double sigmoid(double z) {
    return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

/// ln(1+e^z) without overflow for large |z|.
inline double softplus(double z) {
    return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

inline double activate(ActivationKind k, double z) {
    switch (k) {
        case ActivationKind::sinusoid: return std::sin(z);
        case ActivationKind::linear: return z;
        case ActivationKind::softplus: return softplus(z);
        case ActivationKind::sigmoid: return sigmoid(z);
    }
    return 0.0;
}

/// Derivative of the activation with respect to its argument.
inline double activate_deriv(ActivationKind k, double z) {
    switch (k) {
        case ActivationKind::sinusoid: return std::cos(z);
        case ActivationKind::linear: return 1.0;
        case ActivationKind::softplus: return sigmoid(z);
        case ActivationKind::sigmoid: {
            double s = sigmoid(z);
            return s * (1.0 - s);
        }
    }
    return 0.0;
}

/**
 * One hidden unit computing act(input_weight * t + bias).
 * For sinusoid units input_weight is the frequency and bias the phase shift.
 */
struct HiddenUnit {
    ActivationKind kind = ActivationKind::sinusoid;
    double input_weight = 0.0;
    double bias = 0.0;

    bool operator==(const HiddenUnit&) const = default;
};

/// Composition of the nonperiodic part of the model. All zero means g(t) = 0.
struct AugmentationSpec {
    std::size_t linear_count = 10;
    std::size_t softplus_count = 10;
    std::size_t sigmoid_count = 10;

    std::size_t total() const { return linear_count + softplus_count + sigmoid_count; }
    static AugmentationSpec none() { return {0, 0, 0}; }

    bool operator==(const AugmentationSpec&) const = default;
};

/**
 * Sum-of-sinusoids model with a nonperiodic augmentation:
 *
 *   f(t) = sum_k a_k sin(w_k t + phi_k) + sum_j c_j act_j(u_j t + b_j) + bias
 *
 * operating on normalized time/value coordinates. The first n_sinusoids
 * hidden units are sinusoids, the rest compute the augmentation. Mutable
 * during training only; evaluation is pure.
 */
class NDModel {
public:
    std::vector<HiddenUnit> hidden;
    std::vector<double> output_weights;  // one amplitude per hidden unit
    double output_bias = 0.0;
    std::size_t n_sinusoids = 0;
    PreprocessParams preprocess;

    /**
     * iDFT-mimicking initialization. Sinusoid unit k gets frequency
     * 2*pi*(floor(k/2)+1) and phase pi/2 (even k, a cosine) or pi (odd k, a
     * negated sine), so consecutive pairs cover frequency bins 1..N/2; the
     * constant bin lives in the output bias. Output weights and bias are
     * small random values; augmentation hidden weights perturb the identity.
     * Deterministic given the seed.
     */
    static NDModel init(std::size_t n_sinusoids, const AugmentationSpec& aug,
                        std::uint64_t seed) {
        if (n_sinusoids < 1) throw ConfigError("need at least 1 sinusoid unit");
        NDModel m;
        m.n_sinusoids = n_sinusoids;
        const std::size_t total = n_sinusoids + aug.total();
        m.hidden.reserve(total);

        for (std::size_t k = 0; k < n_sinusoids; ++k) {
            HiddenUnit u;
            u.kind = ActivationKind::sinusoid;
            u.input_weight = 2.0 * std::numbers::pi * static_cast<double>(k / 2 + 1);
            u.bias = (k % 2 == 0) ? std::numbers::pi / 2.0 : std::numbers::pi;
            m.hidden.push_back(u);
        }

        Rng rng(seed);
        auto small = [&] { return rng.uniform(-0.01, 0.01); };

        auto add_aug = [&](ActivationKind kind, std::size_t count) {
            for (std::size_t j = 0; j < count; ++j) {
                HiddenUnit u;
                u.kind = kind;
                u.input_weight = 1.0 + small();  // perturbed identity
                u.bias = small();
                m.hidden.push_back(u);
            }
        };
        add_aug(ActivationKind::linear, aug.linear_count);
        add_aug(ActivationKind::softplus, aug.softplus_count);
        add_aug(ActivationKind::sigmoid, aug.sigmoid_count);

        m.output_weights.resize(total);
        for (double& w : m.output_weights) w = small();
        m.output_bias = small();
        return m;
    }

    std::size_t unit_count() const { return hidden.size(); }

    /// Model output at normalized time t, in normalized value units.
    double forward(double t) const {
        double acc = output_bias;
        for (std::size_t i = 0; i < hidden.size(); ++i) {
            const HiddenUnit& u = hidden[i];
            acc += output_weights[i] * activate(u.kind, u.input_weight * t + u.bias);
        }
        return acc;
    }

    /// Predictions in original data units at raw timestamps.
    std::vector<double> predict(const std::vector<double>& raw_times) const {
        std::vector<double> out(raw_times.size());
        for (std::size_t i = 0; i < raw_times.size(); ++i)
            out[i] = preprocess.denormalize_value(forward(preprocess.normalize_time(raw_times[i])));
        return out;
    }

    /**
     * Per-component contributions at normalized time t, in storage order,
     * ending with the output bias. Contributions sum to forward(t).
     */
    std::vector<std::pair<std::string, double>> decompose(double t) const {
        std::vector<std::pair<std::string, double>> parts;
        parts.reserve(hidden.size() + 1);
        std::size_t per_kind[4] = {0, 0, 0, 0};
        for (std::size_t i = 0; i < hidden.size(); ++i) {
            const HiddenUnit& u = hidden[i];
            char label[32];
            std::snprintf(label, sizeof(label), "%s_%03zu", to_string(u.kind),
                          per_kind[static_cast<int>(u.kind)]++);
            parts.emplace_back(label,
                               output_weights[i] * activate(u.kind, u.input_weight * t + u.bias));
        }
        parts.emplace_back("bias", output_bias);
        return parts;
    }

    // Flat parameter vector: (input_weight, bias) per hidden unit in storage
    // order, then output weights, then the output bias. Shared layout with
    // the gradient in train.hpp.
    std::size_t parameter_count() const { return 3 * hidden.size() + 1; }

    std::vector<double> parameters() const {
        std::vector<double> p;
        p.reserve(parameter_count());
        for (const HiddenUnit& u : hidden) {
            p.push_back(u.input_weight);
            p.push_back(u.bias);
        }
        p.insert(p.end(), output_weights.begin(), output_weights.end());
        p.push_back(output_bias);
        return p;
    }

    void set_parameters(const std::vector<double>& p) {
        if (p.size() != parameter_count())
            throw ConfigError("parameter vector length mismatch");
        std::size_t i = 0;
        for (HiddenUnit& u : hidden) {
            u.input_weight = p[i++];
            u.bias = p[i++];
        }
        for (double& w : output_weights) w = p[i++];
        output_bias = p[i];
    }

    bool operator==(const NDModel& other) const = default;

    void save(const std::filesystem::path& path) const;
    static NDModel load(const std::filesystem::path& path);
};

// ---------------------------------------------------------------------------
// Persistence: versioned plain text, hex floats for exact round trips.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string hex(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

inline double parse_hex(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty())
        throw FormatError("bad float field '" + s + "'");
    return v;
}

inline ActivationKind parse_kind(const std::string& s) {
    if (s == "sinusoid") return ActivationKind::sinusoid;
    if (s == "linear") return ActivationKind::linear;
    if (s == "softplus") return ActivationKind::softplus;
    if (s == "sigmoid") return ActivationKind::sigmoid;
    throw FormatError("unknown activation kind '" + s + "'");
}

}  // namespace detail

inline void NDModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "ndmodel v1\n";
    out << "preprocess " << detail::hex(preprocess.t_offset) << ' '
        << detail::hex(preprocess.t_scale) << ' ' << detail::hex(preprocess.v_offset) << ' '
        << detail::hex(preprocess.v_scale) << ' ' << (preprocess.log_filter ? 1 : 0) << '\n';
    out << "sinusoids " << n_sinusoids << '\n';
    out << "units " << hidden.size() << '\n';
    for (std::size_t i = 0; i < hidden.size(); ++i) {
        const HiddenUnit& u = hidden[i];
        out << to_string(u.kind) << ' ' << detail::hex(u.input_weight) << ' '
            << detail::hex(u.bias) << ' ' << detail::hex(output_weights[i]) << '\n';
    }
    out << "output_bias " << detail::hex(output_bias) << '\n';
    out << "end\n";
    if (!out) throw IoError("write failure on " + path.string());
}

inline NDModel NDModel::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    auto next_line = [&](const char* what) {
        std::string line;
        if (!std::getline(in, line))
            throw FormatError(std::string("truncated model file: missing ") + what);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    };
    auto fields_of = [](const std::string& line) {
        std::istringstream iss(line);
        std::vector<std::string> f;
        std::string tok;
        while (iss >> tok) f.push_back(tok);
        return f;
    };

    if (next_line("header") != "ndmodel v1")
        throw FormatError("not an ndmodel v1 file: " + path.string());

    NDModel m;
    auto pre = fields_of(next_line("preprocess"));
    if (pre.size() != 6 || pre[0] != "preprocess")
        throw FormatError("bad preprocess line");
    m.preprocess.t_offset = detail::parse_hex(pre[1]);
    m.preprocess.t_scale = detail::parse_hex(pre[2]);
    m.preprocess.v_offset = detail::parse_hex(pre[3]);
    m.preprocess.v_scale = detail::parse_hex(pre[4]);
    m.preprocess.log_filter = pre[5] == "1";

    auto sin_line = fields_of(next_line("sinusoids"));
    if (sin_line.size() != 2 || sin_line[0] != "sinusoids")
        throw FormatError("bad sinusoids line");
    m.n_sinusoids = std::stoul(sin_line[1]);

    auto units_line = fields_of(next_line("units"));
    if (units_line.size() != 2 || units_line[0] != "units")
        throw FormatError("bad units line");
    const std::size_t count = std::stoul(units_line[1]);
    if (m.n_sinusoids > count) throw FormatError("sinusoid count exceeds unit count");

    m.hidden.reserve(count);
    m.output_weights.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        auto f = fields_of(next_line("hidden unit"));
        if (f.size() != 4) throw FormatError("bad unit line " + std::to_string(i));
        HiddenUnit u;
        u.kind = detail::parse_kind(f[0]);
        u.input_weight = detail::parse_hex(f[1]);
        u.bias = detail::parse_hex(f[2]);
        m.hidden.push_back(u);
        m.output_weights.push_back(detail::parse_hex(f[3]));
        if ((i < m.n_sinusoids) != (u.kind == ActivationKind::sinusoid))
            throw FormatError("sinusoid units must precede augmentation units");
    }

    auto bias_line = fields_of(next_line("output_bias"));
    if (bias_line.size() != 2 || bias_line[0] != "output_bias")
        throw FormatError("bad output_bias line");
    m.output_bias = detail::parse_hex(bias_line[1]);

    if (next_line("end marker") != "end") throw FormatError("missing end marker");
    return m;
}

}  // namespace nd

#endif
