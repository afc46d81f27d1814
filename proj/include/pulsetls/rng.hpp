// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace pulsetls {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Independent SplitMix64 stream keyed by (master_seed, stream_id). The
// sequence depends only on the key, never on which thread draws it.
class RandomStream {
 public:
  constexpr RandomStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : state_(mix64(mix64(master_seed) ^
                     ((stream_id + 1) * 0xD1B54A32D192ED03ULL))) {}

  constexpr std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform on the open interval (0, 1), 53-bit resolution.
  constexpr double uniform_open() {
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace pulsetls
