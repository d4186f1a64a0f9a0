#pragma once

#include <cstdint>
#include <random>

namespace msym {

// mt19937_64 with a fixed double conversion, so a seed yields the same
// stream on every platform (std::uniform_real_distribution does not promise
// that).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace msym
