#pragma once

#include "qcorr/correlations.hpp"
#include "qcorr/qubit_algebra.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace qcorr {

/// Quantities maximized over measurement settings, each targeting one bound
/// family: X^2 + Y^2 (circle bounds), max of |X + Y| and |X - Y| (CHSH
/// diamond), |X| (realism box).
enum class Objective { SumOfSquares, MaxAbsPm, AbsX };

const char* objective_name(Objective o);
double objective_value(Objective o, const XYPoint& xy);

/// Search point: ZYZ Euler angles per site decoding to an orthonormal pair
/// (first two rotation columns), plus one handedness bit per site that
/// reflects the perp direction.
struct FrameParams {
  std::array<double, 3> angles_a{};
  std::array<double, 3> angles_b{};
  bool flip_a_perp = false;
  bool flip_b_perp = false;
};

SettingPair decode_frame(const std::array<double, 3>& angles, bool flip_perp);

struct OptimizerConfig {
  int restarts = 64;
  int max_iters = 400;          // Nelder-Mead iterations per restart
  double simplex_tol = 1e-8;    // termination on simplex size
  double initial_step = 0.6;    // initial simplex edge, radians
  std::uint64_t seed = 1;
};

struct OptimizeResult {
  double best_value = 0.0;
  SettingPair best_a;
  SettingPair best_b;
  long evaluations = 0;
  bool converged = false;
};

/// Multi-start Nelder-Mead over the six angles, restarts distributed
/// round-robin over the four handedness combinations. Deterministic for a
/// fixed seed: restart r draws its start point from stream r, so the result
/// is the argmax over the restart prefix (ties to the lowest restart index)
/// and is monotone nondecreasing in the number of restarts.
OptimizeResult maximize(const DensityMatrix& rho, Objective obj, const OptimizerConfig& cfg = {});

/// Per-x maximized objective over the Werner family.
std::vector<std::pair<double, double>> werner_max_curve(const std::vector<double>& x_grid,
                                                        Objective obj,
                                                        const OptimizerConfig& cfg = {});

/// Bisection for the flip point of a predicate that is false below the
/// threshold and true above it. Monotonicity is validated on 9 equally
/// spaced probe points before bisecting; a non-monotone probe pattern raises.
double find_threshold(const std::function<DensityMatrix(double)>& family,
                      const std::function<bool(const DensityMatrix&)>& predicate, double lo,
                      double hi, double tol);

}  // namespace qcorr
