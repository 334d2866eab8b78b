#ifndef ND_ERRORS_HPP
#define ND_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nd {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text (CSV cells, model files).
struct ParseError : Error {
    using Error::Error;
};

/// Structurally valid input that violates a data contract
/// (non-increasing times, bad split bounds, non-positive values under a log filter, ...).
struct DataError : Error {
    using Error::Error;
};

/// Invalid configuration (unit counts, epoch counts, flag combinations).
struct ConfigError : Error {
    using Error::Error;
};

/// Model file does not match the expected versioned format.
struct FormatError : Error {
    using Error::Error;
};

/// Filesystem failure while reading or writing.
struct IoError : Error {
    using Error::Error;
};

/// Metric is undefined for the given inputs (e.g. MAPE with a zero actual).
struct MetricError : Error {
    using Error::Error;
};

/// Training produced a non-finite loss.
struct TrainingDivergedError : Error {
    std::size_t epoch;
    explicit TrainingDivergedError(std::size_t at_epoch)
        : Error("training diverged (non-finite RMSE) at epoch " + std::to_string(at_epoch)),
          epoch(at_epoch) {}
};

}  // namespace nd

#endif
