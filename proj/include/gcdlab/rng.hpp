// Counter-based generator (Philox4x32-10) keyed by (seed, stream_id), so
// replica streams are disjoint by construction and every draw is a pure
// function of (seed, stream, counter).
#pragma once

#include <array>
#include <cstdint>

namespace gcdlab {

class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_id)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream_id) {}

    std::uint64_t next_u64() {
        if (buffered_ == 0) refill();
        return buffer_[--buffered_];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Unbiased uniform integer in [0, n), n >= 1. Rejection on the short tail.
    std::uint64_t next_below(std::uint64_t n);

    /// Bernoulli(1/p) for integer p >= 1, exact.
    bool bernoulli_one_over(std::uint64_t p) { return next_below(p) == 0; }

  private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_ = 0;
    std::uint64_t counter_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
};

}  // namespace gcdlab
