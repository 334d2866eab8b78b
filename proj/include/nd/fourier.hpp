#ifndef ND_FOURIER_HPP
#define ND_FOURIER_HPP

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include "nd/errors.hpp"
#include "nd/model.hpp"
#include "nd/time_series.hpp"

namespace nd {

/**
 * Real-input spectrum: coefficients for bins k = 0..floor(N/2), normalized so
 * that idft_eval reconstructs the input samples exactly. Interior bins carry
 * a factor 2/N, the k=0 and (even N) Nyquist bins 1/N.
 */
struct Spectrum {
    std::vector<double> real;  // R_k, cosine weights
    std::vector<double> imag;  // I_k, negated sine weights
    std::size_t n_samples = 0;

    std::size_t bins() const { return real.size(); }
};

/**
 * Direct O(N^2) transform of N real samples (any N, not only powers of two).
 * R_k and I_k follow the convention above: the reconstruction
 * sum_k R_k cos(2 pi k t) - I_k sin(2 pi k t) at t = n/N equals sample n.
 */
inline Spectrum dft_real(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) throw DataError("dft_real needs at least 2 samples");
    const std::size_t bins = n / 2 + 1;

    Spectrum s;
    s.n_samples = n;
    s.real.resize(bins);
    s.imag.resize(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        double a = 0.0, b = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) *
                                 static_cast<double>(j) / static_cast<double>(n);
            a += values[j] * std::cos(theta);
            b += values[j] * std::sin(theta);
        }
        const bool edge = k == 0 || (n % 2 == 0 && k == n / 2);
        const double norm = (edge ? 1.0 : 2.0) / static_cast<double>(n);
        s.real[k] = norm * a;
        s.imag[k] = -norm * b;
    }
    return s;
}

/**
 * Continuous periodic reconstruction, Fourier basis in normalized time:
 * sample n sits at t = n/N and the whole pattern repeats with period 1.
 */
inline double idft_eval(const Spectrum& spectrum, double t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < spectrum.bins(); ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) * t;
        acc += spectrum.real[k] * std::cos(theta) - spectrum.imag[k] * std::sin(theta);
    }
    return acc;
}

/**
 * Point a freshly initialized model at the spectrum: cosine units take R_k,
 * negated-sine units take I_k, the output bias takes the k=0 term, and every
 * other output weight is zeroed. Afterwards forward == idft_eval everywhere.
 */
inline void idft_configure(NDModel& model, const Spectrum& spectrum) {
    if (model.n_sinusoids != spectrum.n_samples)
        throw ConfigError("model has " + std::to_string(model.n_sinusoids) +
                          " sinusoid units but spectrum describes " +
                          std::to_string(spectrum.n_samples) + " samples");
    const std::size_t top_bin = spectrum.bins() - 1;
    for (std::size_t k = 0; k < model.unit_count(); ++k) {
        if (k < model.n_sinusoids) {
            const std::size_t bin = k / 2 + 1;
            if (bin <= top_bin)
                model.output_weights[k] = (k % 2 == 0) ? spectrum.real[bin] : spectrum.imag[bin];
            else
                model.output_weights[k] = 0.0;  // spare unit past the top bin (odd N)
        } else {
            model.output_weights[k] = 0.0;  // augmentation silenced
        }
    }
    model.output_bias = spectrum.real[0];
}

/// CSV export `k,frequency,amplitude` with frequency 2*pi*k in normalized time.
inline void write_spectrum_csv(const Spectrum& spectrum, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "k,frequency,amplitude\n";
    for (std::size_t k = 0; k < spectrum.bins(); ++k) {
        const double freq = 2.0 * std::numbers::pi * static_cast<double>(k);
        const double amp = std::hypot(spectrum.real[k], spectrum.imag[k]);
        out << k << ',' << format_double(freq) << ',' << format_double(amp) << '\n';
    }
    if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace nd

#endif
