#ifndef ND_EVALUATE_HPP
#define ND_EVALUATE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nd/errors.hpp"
#include "nd/fourier.hpp"
#include "nd/time_series.hpp"
#include "nd/train.hpp"

namespace nd {

/// Mean absolute percent error as a fraction (multiply by 100 to report).
inline double mape(const std::vector<double>& actual, const std::vector<double>& predicted) {
    if (actual.size() != predicted.size())
        throw DataError("mape: length mismatch " + std::to_string(actual.size()) + " vs " +
                        std::to_string(predicted.size()));
    if (actual.empty()) throw DataError("mape: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == 0.0)
            throw MetricError("mape undefined: actual value is zero at index " +
                              std::to_string(i));
        acc += std::abs((actual[i] - predicted[i]) / actual[i]);
    }
    return acc / static_cast<double>(actual.size());
}

inline double rmse(const std::vector<double>& actual, const std::vector<double>& predicted) {
    if (actual.size() != predicted.size())
        throw DataError("rmse: length mismatch " + std::to_string(actual.size()) + " vs " +
                        std::to_string(predicted.size()));
    if (actual.empty()) throw DataError("rmse: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double r = actual[i] - predicted[i];
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(actual.size()));
}

/// One scored model. mape is NaN when any test actual is zero.
struct EvalReport {
    std::string model_label;
    double mape = 0.0;  // fraction
    double rmse = 0.0;  // original data units
    std::size_t n_test = 0;
};

enum class Baseline { idft, persistence, nd_no_aug };

/// A row of the published comparison tables shipped for side-by-side display.
struct PublishedRow {
    const char* model;
    const char* dataset;
    double mape_percent;  // < 0 when not applicable
    double rmse;          // < 0 when not applicable
};

/// Published MAPE/RMSE of the comparison methods; not recomputed here.
inline const std::vector<PublishedRow>& published_results() {
    static const std::vector<PublishedRow> rows = {
        {"ARIMA", "labor", 39.42, 2.97},          {"SARIMA", "labor", 29.69, 2.41},
        {"SVR", "labor", 25.14, 2.18},            {"Gashler/Ashmore", "labor", 34.38, 2.81},
        {"ESN", "labor", 15.73, 1.09},            {"LSTM", "labor", 14.63, 1.14},
        {"ND", "labor", 10.89, 1.09},

        {"ARIMA", "airline", 12.34, 75.32},       {"SARIMA", "airline", 13.33, 67.54},
        {"SVR", "airline", 47.04, 209.57},        {"Gashler/Ashmore", "airline", 19.89, 94.47},
        {"ESN", "airline", 12.05, 63.50},         {"LSTM", "airline", 18.95, 93.61},
        {"ND", "airline", 9.52, 45.03},

        {"ARIMA", "ozone", 39.50, 1.33},          {"SARIMA", "ozone", 22.71, 1.06},
        {"SVR", "ozone", 49.53, 1.83},            {"Gashler/Ashmore", "ozone", 77.19, 3.71},
        {"ESN", "ozone", 16.15, 0.705},           {"LSTM", "ozone", 16.52, 0.667},
        {"ND", "ozone", 21.59, 0.99},

        {"SVR", "speleothem", 8.50, 1.078},       {"ND", "speleothem", 1.89, 0.214},
    };
    return rows;
}

struct BenchmarkResult {
    std::vector<EvalReport> reports;
    NDModel model;  // the trained full ND model, for parameter-level assertions
};

namespace detail {

inline double safe_mape(const std::vector<double>& actual, const std::vector<double>& predicted) {
    for (double a : actual)
        if (a == 0.0) return std::nan("");
    return mape(actual, predicted);
}

}  // namespace detail

/**
 * The benchmark protocol: train ND on the leading train_count samples,
 * predict at the withheld test timestamps, score with MAPE and RMSE, and do
 * the same for the requested baselines on the identical split. The test half
 * never reaches training. MAPE is NaN when an actual is exactly zero (the
 * metric is undefined there; RMSE is primary for such data).
 */
inline BenchmarkResult run_benchmark(const TimeSeries& series, const SplitSpec& spec,
                                     const TrainConfig& config,
                                     const std::set<Baseline>& baselines = {
                                         Baseline::idft, Baseline::persistence,
                                         Baseline::nd_no_aug}) {
    auto [train_half, test_half] = split(series, spec);
    const std::vector<double>& actual = test_half.values();

    BenchmarkResult result;
    auto score = [&](const std::string& label, const std::vector<double>& predicted) {
        result.reports.push_back(EvalReport{label, detail::safe_mape(actual, predicted),
                                            rmse(actual, predicted), actual.size()});
    };

    auto [model, trace] = fit_nd(train_half, config);
    score("nd", model.predict(test_half.times()));
    result.model = std::move(model);

    if (baselines.contains(Baseline::idft)) {
        // DFT of the raw training values on the index grid; test timestamps map
        // through the fitted time normalization. Linear, so value scaling cancels.
        const Spectrum spectrum = dft_real(train_half.values());
        const PreprocessParams time_map = fit(train_half, false);
        std::vector<double> predicted(test_half.size());
        for (std::size_t i = 0; i < test_half.size(); ++i)
            predicted[i] = idft_eval(spectrum, time_map.normalize_time(test_half.time(i)));
        score("idft", predicted);
    }
    if (baselines.contains(Baseline::persistence)) {
        score("persistence",
              std::vector<double>(test_half.size(), train_half.values().back()));
    }
    if (baselines.contains(Baseline::nd_no_aug)) {
        TrainConfig ablated = config;
        ablated.aug = AugmentationSpec::none();
        auto [no_aug_model, no_aug_trace] = fit_nd(train_half, ablated);
        score("nd_no_aug", no_aug_model.predict(test_half.times()));
    }
    return result;
}

inline std::string mape_percent_field(double mape_fraction) {
    if (std::isnan(mape_fraction)) return "n/a";
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << 100.0 * mape_fraction;
    return os.str();
}

/// CSV body: model,mape_percent,rmse.
inline void write_report_csv(const std::vector<EvalReport>& reports,
                             const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "model,mape_percent,rmse\n";
    for (const EvalReport& r : reports)
        out << r.model_label << ',' << mape_percent_field(r.mape) << ',' << format_double(r.rmse)
            << '\n';
    if (!out) throw IoError("write failure on " + path.string());
}

/// Aligned plain-text table, one computed row per report.
inline void print_report_table(std::ostream& out, const std::vector<EvalReport>& reports,
                               const std::string& dataset_label = "") {
    out << std::left << std::setw(16) << "model" << std::right << std::setw(14) << "MAPE %"
        << std::setw(14) << "RMSE" << std::setw(10) << "n_test" << '\n';
    for (const EvalReport& r : reports) {
        std::ostringstream rm;
        rm << std::fixed << std::setprecision(4) << r.rmse;
        out << std::left << std::setw(16) << r.model_label << std::right << std::setw(14)
            << mape_percent_field(r.mape) << std::setw(14) << rm.str() << std::setw(10)
            << r.n_test << '\n';
    }
    if (!dataset_label.empty()) {
        bool header = false;
        for (const PublishedRow& row : published_results()) {
            if (dataset_label != row.dataset) continue;
            if (!header) {
                out << "\npublished values for " << dataset_label
                    << " (reference only, not recomputed here):\n";
                header = true;
            }
            std::ostringstream rm;
            rm << std::fixed << std::setprecision(3) << row.rmse;
            out << std::left << std::setw(16) << row.model << std::right << std::setw(14)
                << row.mape_percent << std::setw(14) << rm.str() << '\n';
        }
    }
}

}  // namespace nd

#endif
