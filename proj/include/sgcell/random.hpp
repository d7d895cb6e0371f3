// Counter-based deterministic random streams.
//
// Each stream is a Philox4x32-10 generator keyed by (seed, stream id).  A
// given (seed, id) pair always yields the same sequence regardless of how
// many other streams exist or which worker consumes it, so Monte-Carlo runs
// are bit-identical for any worker count as long as realization k always
// draws from stream k.
#pragma once
#include <array>
#include <cmath>
#include <cstdint>

namespace sgcell {

class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          ctr_{0, 0, static_cast<std::uint32_t>(stream_id),
               static_cast<std::uint32_t>(stream_id >> 32)} {}

    std::uint32_t next_u32() {
        if (have_ == 0) {
            block_ = philox_block();
            advance_counter();
            have_ = 4;
        }
        return block_[4 - have_--];
    }

    std::uint64_t next_u64() {
        std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // Uniform on (0,1): 53 random bits, never exactly 0 or 1.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t uniform_index(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Box-Muller; caches the second variate.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double r = std::sqrt(-2.0 * std::log(uniform()));
        double th = 6.283185307179586476925286766559 * uniform();
        cached_ = r * std::sin(th);
        has_cached_ = true;
        return r * std::cos(th);
    }

    double exponential() { return -std::log(uniform()); }

    // Sum-of-exponentials inversion; O(mean) but exact and fully portable.
    std::uint64_t poisson(double mean) {
        std::uint64_t k = 0;
        double acc = exponential();
        while (acc < mean) {
            ++k;
            acc += exponential();
        }
        return k;
    }

    // Gamma(shape, scale) for integer shape.
    double gamma_int(int shape, double scale) {
        double s = 0;
        for (int i = 0; i < shape; ++i) s += exponential();
        return s * scale;
    }

  private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;

    std::array<std::uint32_t, 4> philox_block() const {
        std::array<std::uint32_t, 4> x = ctr_;
        std::uint32_t k0 = key_[0], k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * x[0];
            std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * x[2];
            std::array<std::uint32_t, 4> y;
            y[0] = static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k0;
            y[1] = static_cast<std::uint32_t>(p1);
            y[2] = static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k1;
            y[3] = static_cast<std::uint32_t>(p0);
            x = y;
            k0 += kW0;
            k1 += kW1;
        }
        return x;
    }

    void advance_counter() {
        if (++ctr_[0] == 0) ++ctr_[1];  // stream id words stay fixed
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 4> block_{};
    int have_ = 0;
    bool has_cached_ = false;
    double cached_ = 0;
};

}  // namespace sgcell
