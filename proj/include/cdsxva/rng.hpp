#pragma once

// Counter-based random streams for reproducible parallel simulation.
//
// Every logical stream is addressed by (run seed, substream id); the i-th
// variate of a stream is a pure function of those three integers, so results
// do not depend on scheduling, worker count, or how many streams are consumed
// concurrently. Substream ids are hash-combined from small coordinates
// (purpose tag, path index, observation index, inner index).

#include <array>
#include <cmath>
#include <cstdint>

namespace cdsxva {

namespace detail {

// SplitMix64 finalizer, used as the stream-id hash combiner.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Stream purposes. Factor paths and the default clock live on separate
// substreams so that re-simulating factors alone reproduces the engine's
// factor draws bit-exactly.
inline constexpr std::uint64_t kStreamFactors = 1;
inline constexpr std::uint64_t kStreamDefaultClock = 2;
inline constexpr std::uint64_t kStreamInner = 3;

inline std::uint64_t substream_id(std::uint64_t purpose, std::uint64_t a = 0,
                                  std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = detail::mix64(purpose);
  h = detail::mix64(h ^ a);
  h = detail::mix64(h ^ b);
  h = detail::mix64(h ^ c);
  return h;
}

// Philox4x32-10 block function (Salmon et al.). Counter layout: low 64 bits
// index the block within a stream, high 64 bits carry the stream id.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  static Block block(std::uint64_t key, std::uint64_t stream,
                     std::uint64_t counter) {
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    Block c{static_cast<std::uint32_t>(counter),
            static_cast<std::uint32_t>(counter >> 32),
            static_cast<std::uint32_t>(stream),
            static_cast<std::uint32_t>(stream >> 32)};
    for (int r = 0; r < 10; ++r) {
      c = round(c, k0, k1);
      k0 += 0x9e3779b9u;
      k1 += 0xbb67ae85u;
    }
    return c;
  }

 private:
  static Block round(const Block& c, std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = 0xd2511f53ULL * c[0];
    const std::uint64_t p1 = 0xcd9e8d57ULL * c[2];
    return Block{static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k0,
                 static_cast<std::uint32_t>(p1),
                 static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k1,
                 static_cast<std::uint32_t>(p0)};
  }
};

double inverse_normal_cdf(double p);

// One random stream: uniforms in the open interval (0,1) and standard
// normals via the inverse CDF. Cheap to construct; no shared state.
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t stream)
      : key_(seed), stream_(stream) {}

  double uniform() {
    if (phase_ == 0) {
      block_ = Philox4x32::block(key_, stream_, counter_++);
    }
    const std::uint64_t hi = block_[2 * phase_];
    const std::uint64_t lo = block_[2 * phase_ + 1];
    phase_ ^= 1;
    const std::uint64_t bits = (hi << 32) | lo;
    // 53 significant bits, then centered: never exactly 0 or 1.
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() { return inverse_normal_cdf(uniform()); }

 private:
  std::uint64_t key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  int phase_ = 0;
  Philox4x32::Block block_{};
};

// Inverse standard normal CDF: Acklam's rational approximation polished with
// one Halley step, giving close to full double precision on (0,1).
inline double inverse_normal_cdf(double p) {
  constexpr double a0 = -3.969683028665376e+01, a1 = 2.209460984245205e+02,
                   a2 = -2.759285104469687e+02, a3 = 1.383577518672690e+02,
                   a4 = -3.066479806614716e+01, a5 = 2.506628277459239e+00;
  constexpr double b0 = -5.447609879822406e+01, b1 = 1.615858368580409e+02,
                   b2 = -1.556989798598866e+02, b3 = 6.680131188771972e+01,
                   b4 = -1.328068155288572e+01;
  constexpr double c0 = -7.784894002430293e-03, c1 = -3.223964580411365e-01,
                   c2 = -2.400758277161838e+00, c3 = -2.549732539343734e+00,
                   c4 = 4.374664141464968e+00, c5 = 2.938163982698783e+00;
  constexpr double d0 = 7.784695709041462e-03, d1 = 3.224671290700398e-01,
                   d2 = 2.445134137142996e+00, d3 = 3.754408661907416e+00;
  constexpr double plow = 0.02425;

  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c0 * q + c1) * q + c2) * q + c3) * q + c4) * q + c5) /
        ((((d0 * q + d1) * q + d2) * q + d3) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a0 * r + a1) * r + a2) * r + a3) * r + a4) * r + a5) * q /
        (((((b0 * r + b1) * r + b2) * r + b3) * r + b4) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c0 * q + c1) * q + c2) * q + c3) * q + c4) * q + c5) /
        ((((d0 * q + d1) * q + d2) * q + d3) * q + 1.0);
  }

  constexpr double sqrt_two_pi = 2.506628274631000502;
  const double e = 0.5 * std::erfc(-x * 0.7071067811865475244) - p;
  const double u = e * sqrt_two_pi * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace cdsxva
