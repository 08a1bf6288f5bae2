#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qci {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside its mathematical domain (probabilities, counts, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class EmptySampleError : public Error {
public:
    EmptySampleError() : Error("sample must contain at least one value") {}
};

class NonFiniteValueError : public Error {
public:
    explicit NonFiniteValueError(std::size_t index)
        : Error("sample value at index " + std::to_string(index) +
                " is not finite"),
          index_(index) {}

    // Zero-based position of the first offending entry.
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class IndexOutOfRangeError : public Error {
public:
    IndexOutOfRangeError(std::size_t index, std::size_t lo, std::size_t hi)
        : Error("index " + std::to_string(index) + " outside valid range [" +
                std::to_string(lo) + ", " + std::to_string(hi) + "]") {}
};

// The linearly interpolating estimator is only defined on an open interval
// of quantile levels that depends on the sample size.
class LevelOutsideInterpolableRangeError : public Error {
public:
    LevelOutsideInterpolableRangeError(double level, double lo, double hi)
        : Error("quantile level " + std::to_string(level) +
                " outside interpolable range (" + std::to_string(lo) + ", " +
                std::to_string(hi) + ")"),
          lo_(lo),
          hi_(hi) {}

    // Endpoints of the valid open interval.
    double range_lower() const noexcept { return lo_; }
    double range_upper() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

class SampleTooSmallError : public Error {
public:
    SampleTooSmallError(std::size_t required, std::size_t actual)
        : Error("sample size " + std::to_string(actual) +
                " below required minimum " + std::to_string(required)),
          required_(required) {}

    std::size_t required() const noexcept { return required_; }

private:
    std::size_t required_;
};

// A confidence-interval construction that cannot exist at the requested
// (n, quantile level, confidence level); carries the minimum feasible n.
class InfeasibleSampleSizeError : public Error {
public:
    InfeasibleSampleSizeError(std::string method, std::size_t min_n,
                              std::size_t actual)
        : Error(method + " interval requires n >= " + std::to_string(min_n) +
                " at this quantile/confidence level (got n = " +
                std::to_string(actual) + ")"),
          min_n_(min_n) {}

    std::size_t min_n() const noexcept { return min_n_; }

private:
    std::size_t min_n_;
};

class InvalidBoundsError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(std::string field_path, const std::string& message)
        : Error(field_path.empty() ? message : field_path + ": " + message),
          field_path_(std::move(field_path)) {}

    const std::string& field_path() const noexcept { return field_path_; }

private:
    std::string field_path_;
};

// Relative bias/RMSE are normalized by |true quantile|, which must not
// vanish.
class DegenerateTrueQuantileError : public Error {
public:
    using Error::Error;
};

}  // namespace qci
