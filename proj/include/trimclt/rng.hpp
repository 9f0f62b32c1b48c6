#ifndef TRIMCLT_RNG_HPP
#define TRIMCLT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace trimclt {

/// Counter-based pseudorandom stream with splittable substreams.
///
/// Output i is a pure function of (key, i), so a stream can be replayed or
/// handed to any worker without shared state. Substreams are derived by
/// hashing (key, child) and are safe to use concurrently. The generator is
/// the splitmix64 output function evaluated on a Weyl sequence.
class RngStream {
 public:
  RngStream() : key_(0) {}
  explicit RngStream(std::uint64_t key) : key_(key) {}

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key() const { return key_; }

  /// Child stream `child` of this stream; independent of draw position.
  RngStream split(std::uint64_t child) const {
    std::uint64_t h = mix(key_ ^ 0x9E3779B97F4A7C15ULL);
    h = mix(h + 0xD1B54A32D192ED03ULL * (child + 1));
    return RngStream(h);
  }

  std::uint64_t next_u64() {
    counter_ += 0x9E3779B97F4A7C15ULL;
    return mix(key_ + counter_);
  }

  /// Uniform on [0,1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0,1]; never returns 0 (safe for logs and inverse powers).
  double next_double_pos() { return 1.0 - next_double(); }

  bool next_bool() { return (next_u64() >> 63) != 0; }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    // 128-bit multiply rejection (Lemire); unbiased.
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    std::uint64_t l = static_cast<std::uint64_t>(m);
    if (l < n) {
      std::uint64_t t = -n % n;
      while (l < t) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * n;
        l = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Standard normal via Box-Muller; second value cached.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_double_pos();
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Gamma(shape, 1) for shape >= 1 (Marsaglia-Tsang).
  double next_gamma(double shape) {
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = next_gaussian();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = next_double_pos();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
        return d * v;
      }
    }
  }

  /// Chi-square with dof > 2 (all we need; shape = dof/2 >= 1 not required
  /// but holds for every supported family).
  double next_chi_square(double dof) { return 2.0 * next_gamma(0.5 * dof); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace trimclt

#endif
