#include "qcorr/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace qcorr {

SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 h(seed);
  const std::uint64_t base = h.next();
  SplitMix64 s(stream);
  return SplitMix64(base ^ s.next());
}

SampleResult sample_outcomes(const DensityMatrix& rho, const Vector3& a, const Vector3& b,
                             long long n, std::uint64_t seed, std::uint64_t stream) {
  if (n < 1) throw std::invalid_argument("sample_outcomes: shot count must be >= 1");
  const auto p = joint_probabilities(rho, a, b);
  std::array<double, 4> cum{};
  double acc = 0.0;
  for (int k = 0; k < 4; ++k) {
    acc += p[k];
    cum[k] = acc;
  }
  cum[3] = 1.0;  // guard against rounding in the running sum

  SampleResult result;
  result.n = n;
  SplitMix64 rng = stream_rng(seed, stream);
  for (long long shot = 0; shot < n; ++shot) {
    const double u = rng.next_double();
    int cell = 3;
    for (int k = 0; k < 4; ++k) {
      if (u < cum[k]) {
        cell = k;
        break;
      }
    }
    ++result.counts[cell >> 1][cell & 1];
  }

  const double npp = double(result.counts[0][0]), npm = double(result.counts[0][1]);
  const double nmp = double(result.counts[1][0]), nmm = double(result.counts[1][1]);
  result.empirical_correlation = (npp - npm - nmp + nmm) / double(n);
  result.standard_error =
      std::sqrt(std::max(0.0, 1.0 - result.empirical_correlation * result.empirical_correlation) /
                double(n));
  return result;
}

EmpiricalXY empirical_xy(const DensityMatrix& rho, const SettingPair& pa, const SettingPair& pb,
                         long long n_per_setting, std::uint64_t seed) {
  if (n_per_setting < 1) throw std::invalid_argument("empirical_xy: shot count must be >= 1");
  const std::array<std::pair<Vector3, Vector3>, 4> combos = {{
      {pa.main(), pb.main()},
      {pa.main(), pb.perp()},
      {pa.perp(), pb.main()},
      {pa.perp(), pb.perp()},
  }};
  EmpiricalXY out;
  for (std::uint64_t k = 0; k < 4; ++k)
    out.per_setting[k] = sample_outcomes(rho, combos[k].first, combos[k].second, n_per_setting,
                                         seed, k);

  const auto& e = out.per_setting;
  out.xy.x = e[1].empirical_correlation + e[2].empirical_correlation;
  out.xy.y = e[0].empirical_correlation - e[3].empirical_correlation;
  out.se_x = std::hypot(e[1].standard_error, e[2].standard_error);
  out.se_y = std::hypot(e[0].standard_error, e[3].standard_error);
  return out;
}

}  // namespace qcorr
