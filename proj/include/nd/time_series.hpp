#ifndef ND_TIME_SERIES_HPP
#define ND_TIME_SERIES_HPP

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nd/errors.hpp"

namespace nd {

/// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer a shorter round-trippable form when one exists
    for (int prec = 1; prec < 17; ++prec) {
        char cand[32];
        std::snprintf(cand, sizeof(cand), "%.*g", prec, v);
        if (std::strtod(cand, nullptr) == v) return cand;
    }
    return buf;
}

/**
 * Ordered (time, value) samples, possibly irregularly spaced.
 *
 * Invariants, checked at construction: times strictly increasing,
 * times and values the same length (>= 2), all entries finite.
 * Immutable after construction; safe to share across threads.
 */
class TimeSeries {
public:
    TimeSeries(std::vector<double> times, std::vector<double> values, std::string name = "")
        : times_(std::move(times)), values_(std::move(values)), name_(std::move(name)) {
        validate();
    }

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }
    const std::string& name() const { return name_; }
    std::size_t size() const { return times_.size(); }

    double time(std::size_t i) const { return times_[i]; }
    double value(std::size_t i) const { return values_[i]; }

    bool operator==(const TimeSeries& other) const {
        return times_ == other.times_ && values_ == other.values_;
    }

private:
    void validate() const {
        if (times_.size() != values_.size())
            throw DataError("time and value counts differ (" + std::to_string(times_.size()) +
                            " vs " + std::to_string(values_.size()) + ")");
        if (times_.size() < 2)
            throw DataError("a series needs at least 2 samples, got " +
                            std::to_string(times_.size()));
        for (std::size_t i = 0; i < times_.size(); ++i) {
            if (!std::isfinite(times_[i]) || !std::isfinite(values_[i]))
                throw DataError("non-finite sample at index " + std::to_string(i));
            if (i > 0 && times_[i] <= times_[i - 1])
                throw DataError("times not strictly increasing at index " + std::to_string(i));
        }
    }

    std::vector<double> times_;
    std::vector<double> values_;
    std::string name_;
};

/// Leading train_count samples form the train set, the next test_count the test set.
struct SplitSpec {
    std::size_t train_count = 0;
    std::size_t test_count = 0;
};

namespace detail {

inline bool parse_cell(std::string_view cell, double& out) {
    // strtod accepts leading whitespace; reject empty and trailing junk
    std::string s(cell);
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    while (end && *end == ' ') ++end;
    return end == s.c_str() + s.size();
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

}  // namespace detail

/**
 * Load a series from CSV: `time,value` rows when has_time_column, else one
 * `value` per row with implicit times 0,1,2,... A single non-numeric first
 * row is treated as a header. The series name is the file stem.
 */
inline TimeSeries load_csv(const std::filesystem::path& path, bool has_time_column = true) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::vector<double> times, values;
    std::string line;
    std::size_t row = 0;
    bool saw_data = false;
    const std::size_t want = has_time_column ? 2 : 1;

    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        auto fields = detail::split_fields(line);
        double cols[2] = {0, 0};
        bool numeric = fields.size() == want;
        for (std::size_t i = 0; numeric && i < fields.size(); ++i)
            numeric = detail::parse_cell(fields[i], cols[i]) && std::isfinite(cols[i]);

        if (!numeric) {
            if (!saw_data && row == 1) continue;  // header row
            throw ParseError("non-numeric cell at row " + std::to_string(row) + " of " +
                             path.string());
        }
        saw_data = true;
        double t = has_time_column ? cols[0] : static_cast<double>(values.size());
        double v = has_time_column ? cols[1] : cols[0];
        if (!times.empty() && t <= times.back())
            throw DataError("times not strictly increasing at row " + std::to_string(row) +
                            " of " + path.string());
        times.push_back(t);
        values.push_back(v);
    }
    if (in.bad()) throw IoError("read failure on " + path.string());

    return TimeSeries(std::move(times), std::move(values), path.stem().string());
}

/// Two-column `time,value` CSV, full precision (round-trips through load_csv).
inline void write_csv(const TimeSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "time,value\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << format_double(series.time(i)) << ',' << format_double(series.value(i)) << '\n';
    if (!out) throw IoError("write failure on " + path.string());
}

/// First train_count samples, then the next test_count samples. Times preserved.
inline std::pair<TimeSeries, TimeSeries> split(const TimeSeries& series, const SplitSpec& spec) {
    if (spec.train_count + spec.test_count > series.size())
        throw DataError("split " + std::to_string(spec.train_count) + "+" +
                        std::to_string(spec.test_count) + " exceeds series length " +
                        std::to_string(series.size()));
    auto slice = [&](std::size_t begin, std::size_t count) {
        std::vector<double> t(series.times().begin() + begin,
                              series.times().begin() + begin + count);
        std::vector<double> v(series.values().begin() + begin,
                              series.values().begin() + begin + count);
        return TimeSeries(std::move(t), std::move(v), series.name());
    };
    return {slice(0, spec.train_count), slice(spec.train_count, spec.test_count)};
}

}  // namespace nd

#endif
