#pragma once

#include <cstdint>
#include <limits>

namespace frog {

// Counter-based random stream (Philox4x32-10). A stream is identified by a
// 64-bit key; block generation is a pure function of (key, counter), so
// streams derived from distinct keys can be consumed in any order, in
// parallel, and always reproduce. Distinct key tuples map to distinct
// streams via a SplitMix64-style mix (collision odds ~2^-64).
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    if (idx_ > 2) refill();
    const std::uint64_t lo = block_[idx_];
    const std::uint64_t hi = block_[idx_ + 1];
    idx_ += 2;
    return lo | (hi << 32);
  }

  // Uniform on the open interval (0,1): never 0, never 1, so log(u) and
  // log1p(-u) are always finite.
  double uniform_open01() {
    const std::uint64_t bits = (*this)();
    return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  // One fair bit, served from a 64-bit reservoir.
  bool coin() {
    if (bit_count_ == 0) {
      bit_cache_ = (*this)();
      bit_count_ = 64;
    }
    const bool b = bit_cache_ & 1u;
    bit_cache_ >>= 1;
    --bit_count_;
    return b;
  }

 private:
  void refill() {
    std::uint32_t c[4] = {
        static_cast<std::uint32_t>(ctr_lo_),
        static_cast<std::uint32_t>(ctr_lo_ >> 32),
        static_cast<std::uint32_t>(ctr_hi_),
        static_cast<std::uint32_t>(ctr_hi_ >> 32),
    };
    std::uint32_t k0 = static_cast<std::uint32_t>(key_);
    std::uint32_t k1 = static_cast<std::uint32_t>(key_ >> 32);
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = 0xD2511F53ull * c[0];
      const std::uint64_t p1 = 0xCD9E8D57ull * c[2];
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t n0 = hi1 ^ c[1] ^ k0;
      const std::uint32_t n2 = hi0 ^ c[3] ^ k1;
      c[0] = n0;
      c[1] = lo1;
      c[2] = n2;
      c[3] = lo0;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    block_[0] = c[0];
    block_[1] = c[1];
    block_[2] = c[2];
    block_[3] = c[3];
    idx_ = 0;
    if (++ctr_lo_ == 0) ++ctr_hi_;
  }

  std::uint64_t key_;
  std::uint64_t ctr_lo_ = 0, ctr_hi_ = 0;
  std::uint32_t block_[4] = {0, 0, 0, 0};
  int idx_ = 4;  // forces refill on first draw
  std::uint64_t bit_cache_ = 0;
  int bit_count_ = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ splitmix64(~b));
}

}  // namespace detail

// Stream-id namespaces: keeps run streams, site streams, and ad-hoc streams
// in disjoint key families for one master seed.
enum : std::uint64_t {
  kStreamRun = 0x01,
  kStreamSite = 0x02,
  kStreamScratch = 0x03,
};

inline RngStream substream(std::uint64_t master_seed, std::uint64_t purpose,
                           std::uint64_t a, std::uint64_t b = 0) {
  using detail::mix_key;
  return RngStream(mix_key(mix_key(mix_key(master_seed, purpose), a), b));
}

// Per-run stream: walk coins and any other randomness consumed in loop order.
inline RngStream run_stream(std::uint64_t master_seed, std::uint64_t run_index) {
  return substream(master_seed, kStreamRun, run_index);
}

// Per-site stream: eta, then the (p, lifetime) pairs of the particles woken
// there. Keyed by coordinate, so site contents do not depend on when or from
// which side the site is first reached.
inline RngStream site_stream(std::uint64_t master_seed, std::uint64_t run_index,
                             std::int64_t coord) {
  return substream(master_seed, kStreamSite, run_index,
                   static_cast<std::uint64_t>(coord));
}

}  // namespace frog
