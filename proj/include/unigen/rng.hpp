/*
 unigen -- almost-uniform SAT witness sampler

 Copyright (c) 2026, the unigen authors. All rights reserved.

 Permission is hereby granted, free of charge, to any person obtaining a copy
 of this software and associated documentation files (the "Software"), to deal
 in the Software without restriction, including without limitation the rights
 to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
 copies of the Software, and to permit persons to whom the Software is
 furnished to do so, subject to the following conditions:

 The above copyright notice and this permission notice shall be included in
 all copies or substantial portions of the Software.

 THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
 IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
 FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
 AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
 LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
 OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
 THE SOFTWARE.
 */

#pragma once

#include <cstdint>
#include <random>

namespace unigen {

/// Seeded random source injected into every randomized operation.
///
/// The generator is std::mt19937_64 (fully specified by the standard, so
/// sequences are reproducible across platforms). Child streams are derived
/// with splitmix64 so that independent consumers (per-draw, per-trial) never
/// share state.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

  uint64_t seed() const { return seed_; }

  uint64_t next_u64() { return gen_(); }

  /// One uniform coin flip. Buffered: a 64-bit draw serves 64 flips.
  bool bit() {
    if (bits_left_ == 0) {
      bit_buf_ = next_u64();
      bits_left_ = 64;
    }
    bool b = bit_buf_ & 1;
    bit_buf_ >>= 1;
    bits_left_--;
    return b;
  }

  /// Uniform integer in [0, n). Exact (rejection on masked bits), n >= 1.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t mask = ~uint64_t{0} >> __builtin_clzll(n - 1);
    uint64_t v;
    do {
      v = next_u64() & mask;
    } while (v >= n);
    return v;
  }

  /// Independent child stream for consumer #idx of this source.
  Rng stream(uint64_t idx) const {
    return Rng(splitmix64(seed_ + 0x9e3779b97f4a7c15ULL * (idx + 1)));
  }

  static uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  uint64_t seed_;
  std::mt19937_64 gen_;
  uint64_t bit_buf_ = 0;
  int bits_left_ = 0;
};

}  // namespace unigen
