#include "qci/sample.hpp"

#include <algorithm>
#include <cmath>

namespace qci {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw EmptySampleError();
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) throw NonFiniteValueError(i);
    }
    sorted_ = values_;
    std::sort(sorted_.begin(), sorted_.end());
}

double Sample::order_statistic(std::size_t i) const {
    if (i < 1 || i > sorted_.size())
        throw IndexOutOfRangeError(i, 1, sorted_.size());
    return sorted_[i - 1];
}

double Sample::mean() const {
    double sum = 0.0;
    for (double v : values_) sum += v;
    return sum / static_cast<double>(values_.size());
}

double Sample::stddev() const {
    const std::size_t n = values_.size();
    if (n < 2) throw SampleTooSmallError(2, n);
    const double m = mean();
    double ss = 0.0;
    for (double v : values_) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

}  // namespace qci
