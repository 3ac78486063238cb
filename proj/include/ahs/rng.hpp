#pragma once

#include <array>
#include <cstdint>

namespace ahs {

// Philox4x32-10 counter generator. A (seed, stream) pair selects an
// independent stream, and outputs depend only on key and counter, so draws
// are reproducible under any parallel schedule. Stream s of seed q is used
// for trial s of an experiment keyed by q.
class Philox4x32 {
 public:
  explicit Philox4x32(std::uint64_t seed, std::uint64_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        counter_{0, 0, static_cast<std::uint32_t>(stream),
                 static_cast<std::uint32_t>(stream >> 32)},
        pos_(4) {}

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return out_[pos_++];
  }

  std::uint64_t next_u64() {
    std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform on [0,1) with 53-bit resolution.
  double next_u01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // One keyed block; exposed for the known-answer tests.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      std::array<std::uint32_t, 4> next;
      next[0] = static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0];
      next[1] = static_cast<std::uint32_t>(p1);
      next[2] = static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1];
      next[3] = static_cast<std::uint32_t>(p0);
      ctr = next;
      key[0] += 0x9E3779B9u;
      key[1] += 0xBB67AE85u;
    }
    return ctr;
  }

 private:
  void refill() {
    out_ = block(counter_, key_);
    pos_ = 0;
    if (++counter_[0] == 0) ++counter_[1];
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> out_{};
  int pos_;
};

}  // namespace ahs
