#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace glqk {

/// splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Stream tags used when deriving per-entry seeds from a master seed.
enum class Stream : std::uint64_t {
  kPoolEntry = 1,
  kHamiltonian = 2,
  kInitialState = 3,
  kShadow = 4,
  kDisturbance = 5,
  kGroundStart = 6,
  kSplit = 7,
  kFolds = 8,
  kCoupling = 9,
};

/// seed = splitmix64(splitmix64(master + G*(tag+1)) + G*(index+1)), G = 0x9E3779B97F4A7C15.
std::uint64_t derive_seed(std::uint64_t master, Stream tag, std::uint64_t index);

/// Platform-independent random draws on top of mt19937_64.
///
/// The standard distributions are implementation-defined, so uniform reals
/// and normals are built directly from the engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n) by rejection.
  std::uint64_t index(std::uint64_t n);
  /// Standard normal via Box-Muller (no caching, two uniforms per call).
  double normal();
  std::complex<double> complex_normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace glqk
