#pragma once

#include <cstdint>
#include <random>

namespace wiretap {

// Seeded random stream. Substreams are derived from the base seed with a
// fixed mixing rule, so split(i) yields the same stream no matter how much
// of the parent has been consumed. One stream per worker keeps parallel
// Monte Carlo deterministic.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    RngStream split(std::uint64_t stream_id) const;

    std::uint64_t next_u64();
    double uniform();             // [0, 1)
    double gaussian();            // standard normal, Box-Muller
    int uniform_int(int bound);   // [0, bound)

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace wiretap
