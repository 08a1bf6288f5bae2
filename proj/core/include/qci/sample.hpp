#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qci/errors.hpp"

namespace qci {

// Quantile level strictly inside (0,1).
class QuantileLevel {
public:
    explicit QuantileLevel(double u) : u_(u) {
        if (!(u > 0.0 && u < 1.0))
            throw DomainError(
                "quantile level must lie strictly inside (0,1)");
    }

    double value() const noexcept { return u_; }

private:
    double u_;
};

// Immutable batch of finite measurements with cached order statistics.
// Freely shareable across threads after construction.
class Sample {
public:
    explicit Sample(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }

    // Raw insertion order.
    const std::vector<double>& values() const noexcept { return values_; }

    // Nondecreasing copy: X_(1) <= ... <= X_(n).
    const std::vector<double>& sorted() const noexcept { return sorted_; }

    // i-th smallest value, 1-based.
    double order_statistic(std::size_t i) const;

    double min() const noexcept { return sorted_.front(); }
    double max() const noexcept { return sorted_.back(); }
    double mean() const;
    // Sample standard deviation with divisor n-1; requires n >= 2.
    double stddev() const;

private:
    std::vector<double> values_;
    std::vector<double> sorted_;
};

inline Sample make_sample(std::vector<double> values) {
    return Sample(std::move(values));
}

}  // namespace qci
