#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace rf {

// All randomness flows from one seed through named streams, one per
// consumer, so runs are reproducible regardless of evaluation order.
// Bounded draws use rejection sampling on the raw engine output to stay
// independent of library distribution implementations.
class SplitRng {
 public:
  SplitRng() : engine_(0) {}
  SplitRng(uint64_t seed, const std::string& stream) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : stream) {
      h ^= c;
      h *= 1099511628211ull;
    }
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(h), static_cast<uint32_t>(h >> 32)};
    engine_.seed(seq);
  }

  uint64_t next() { return engine_(); }

  // Uniform in [0, n).
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  // Fisher-Yates over indices 0..n-1.
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) {
      int j = static_cast<int>(below(static_cast<uint64_t>(i) + 1));
      std::swap(p[i], p[j]);
    }
    return p;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rf
