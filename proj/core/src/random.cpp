#include "qci/random.hpp"

namespace qci {

std::vector<double> uniform_stream(const RandomSource& src, std::size_t count) {
    std::vector<double> out(count);
    RandomEngine engine(src);
    for (auto& u : out) u = engine.next_open_unit();
    return out;
}

}  // namespace qci
