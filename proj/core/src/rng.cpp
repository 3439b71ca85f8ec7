#include "wiretap/rng.hpp"

#include <cmath>

#include "wiretap/errors.hpp"

namespace wiretap {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

RngStream RngStream::split(std::uint64_t stream_id) const {
    return RngStream(splitmix64(seed_ ^ splitmix64(stream_id + 1)));
}

std::uint64_t RngStream::next_u64() { return gen_(); }

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_cached_gaussian_) {
        has_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    // u1 shifted into (0, 1] so the log stays finite.
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_gaussian_ = r * std::sin(theta);
    has_cached_gaussian_ = true;
    return r * std::cos(theta);
}

int RngStream::uniform_int(int bound) {
    if (bound <= 0) throw ParamError("uniform_int: bound must be positive");
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(bound));
}

}  // namespace wiretap
