#pragma once

#include <array>
#include <cstdint>

namespace bellkit {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011), bit
// compatible with the Random123 reference implementation. Every (seed,
// stream, block) triple maps to an independent 128-bit block, so disjoint
// streams never share state and replay needs no skip-ahead bookkeeping.
//
// Layout used throughout this library:
//   key     = (seed lo32, seed hi32)
//   counter = (block lo32, block hi32, stream lo32, stream hi32)
// Each block yields two doubles: lanes (0,1) then lanes (2,3), with
// u64 = x[odd] << 32 | x[even] and the top 53 bits scaled into [0, 1).
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  // One keyed bijection of the 128-bit counter. Exposed for known-answer
  // tests and for cross-checking alternate implementations.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> x,
                                            std::array<std::uint32_t, 2> k) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      if (round != 0) {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
      x = {static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k[1],
           static_cast<std::uint32_t>(p0)};
    }
    return x;
  }

  std::uint64_t next_u64() {
    if (used_ == 2) refill();
    const int base = 2 * used_;
    ++used_;
    return (static_cast<std::uint64_t>(buf_[base + 1]) << 32) | buf_[base];
  }

  // Uniform in [0, 1), 53 random mantissa bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  void refill() {
    const std::array<std::uint32_t, 4> counter = {
        static_cast<std::uint32_t>(block_index_),
        static_cast<std::uint32_t>(block_index_ >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32)};
    buf_ = block(counter, key_);
    ++block_index_;
    used_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_ = 0;
  std::uint64_t block_index_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int used_ = 2;
};

}  // namespace bellkit
