#pragma once

#include "qcorr/correlations.hpp"
#include "qcorr/qubit_algebra.hpp"

#include <array>
#include <cstdint>

namespace qcorr {

/// SplitMix64: fixed portable 64-bit generator (Steele, Lea & Flood mixing
/// constants). Streams are derived by hashing (seed, stream id), so samples
/// drawn from different streams of the same seed are independent and the
/// results do not depend on the order the streams are consumed in.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return double(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t stream);

/// Outcome counts of repeated measurement of one setting pair. Counts are
/// indexed [i][j] with index 0 for outcome +1 and 1 for outcome -1.
struct SampleResult {
  std::array<std::array<long long, 2>, 2> counts{};
  long long n = 0;
  double empirical_correlation = 0.0;
  double standard_error = 0.0;  // plug-in estimate sqrt((1 - E^2)/n)
};

/// Draws n outcome pairs from the quantum joint distribution by inverse CDF
/// over the fixed outcome order (+1,+1), (+1,-1), (-1,+1), (-1,-1).
/// Bit-for-bit reproducible for fixed (inputs, seed, stream).
SampleResult sample_outcomes(const DensityMatrix& rho, const Vector3& a, const Vector3& b,
                             long long n, std::uint64_t seed, std::uint64_t stream = 0);

/// Empirical X/Y from four independent runs, one per setting combination,
/// drawn from streams 0..3 in the order (a,b), (a,b_perp), (a_perp,b),
/// (a_perp,b_perp). Standard errors combine in quadrature.
struct EmpiricalXY {
  XYPoint xy;
  double se_x = 0.0;
  double se_y = 0.0;
  std::array<SampleResult, 4> per_setting{};
};

EmpiricalXY empirical_xy(const DensityMatrix& rho, const SettingPair& pa, const SettingPair& pb,
                         long long n_per_setting, std::uint64_t seed);

}  // namespace qcorr
