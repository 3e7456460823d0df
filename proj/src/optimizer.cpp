#include "qcorr/optimizer.hpp"

#include "qcorr/sampler.hpp"  // SplitMix64 stream derivation

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qcorr {

namespace {

using Vector6 = Eigen::Matrix<double, 6, 1>;

struct Frames {
  Vector3 a, ap, b, bp;
};

Eigen::Matrix3d zyz_rotation(double alpha, double beta, double gamma) {
  return (Eigen::AngleAxisd(alpha, Vector3::UnitZ()) * Eigen::AngleAxisd(beta, Vector3::UnitY()) *
          Eigen::AngleAxisd(gamma, Vector3::UnitZ()))
      .toRotationMatrix();
}

Frames decode(const Vector6& angles, bool flip_a, bool flip_b) {
  const Eigen::Matrix3d ra = zyz_rotation(angles(0), angles(1), angles(2));
  const Eigen::Matrix3d rb = zyz_rotation(angles(3), angles(4), angles(5));
  Frames f;
  f.a = ra.col(0);
  f.ap = flip_a ? Vector3(-ra.col(1)) : Vector3(ra.col(1));
  f.b = rb.col(0);
  f.bp = flip_b ? Vector3(-rb.col(1)) : Vector3(rb.col(1));
  return f;
}

double objective_from_tensor(const Eigen::Matrix3d& t, Objective obj, const Frames& f) {
  const double x = f.a.dot(t * f.bp) + f.ap.dot(t * f.b);
  const double y = f.a.dot(t * f.b) - f.ap.dot(t * f.bp);
  switch (obj) {
    case Objective::SumOfSquares: return x * x + y * y;
    case Objective::MaxAbsPm: return std::max(std::abs(x + y), std::abs(x - y));
    case Objective::AbsX: return std::abs(x);
  }
  return 0.0;
}

struct NmOutcome {
  Vector6 best;
  double value = 0.0;  // maximized objective
  long evaluations = 0;
  bool converged = false;
};

/// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2) maximizing f over R^6.
NmOutcome nelder_mead_max(const std::function<double(const Vector6&)>& f, const Vector6& start,
                          double step, int max_iters, double tol) {
  constexpr int n = 6;
  std::array<Vector6, n + 1> pts;
  std::array<double, n + 1> val;
  NmOutcome out;

  auto eval = [&](const Vector6& x) {
    ++out.evaluations;
    return f(x);
  };

  pts[0] = start;
  val[0] = eval(start);
  for (int i = 0; i < n; ++i) {
    pts[i + 1] = start;
    pts[i + 1](i) += step;
    val[i + 1] = eval(pts[i + 1]);
  }

  std::array<int, n + 1> order;
  for (int iter = 0; iter < max_iters; ++iter) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int u, int v) { return val[u] > val[v]; });

    double spread = 0.0;
    for (int i = 0; i <= n; ++i)
      spread = std::max(spread, (pts[order[i]] - pts[order[0]]).cwiseAbs().maxCoeff());
    if (spread < tol) {
      out.converged = true;
      break;
    }

    const int worst = order[n];
    Vector6 centroid = Vector6::Zero();
    for (int i = 0; i < n; ++i) centroid += pts[order[i]];
    centroid /= double(n);

    const Vector6 reflected = centroid + (centroid - pts[worst]);
    const double fr = eval(reflected);
    if (fr > val[order[0]]) {
      const Vector6 expanded = centroid + 2.0 * (reflected - centroid);
      const double fe = eval(expanded);
      if (fe > fr) {
        pts[worst] = expanded;
        val[worst] = fe;
      } else {
        pts[worst] = reflected;
        val[worst] = fr;
      }
    } else if (fr > val[order[n - 1]]) {
      pts[worst] = reflected;
      val[worst] = fr;
    } else {
      const Vector6 contracted =
          fr > val[worst] ? Vector6(centroid + 0.5 * (reflected - centroid))
                          : Vector6(centroid + 0.5 * (pts[worst] - centroid));
      const double fc = eval(contracted);
      if (fc > std::max(fr, val[worst])) {
        pts[worst] = contracted;
        val[worst] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          pts[order[i]] = pts[order[0]] + 0.5 * (pts[order[i]] - pts[order[0]]);
          val[order[i]] = eval(pts[order[i]]);
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (val[i] > val[best]) best = i;
  out.best = pts[best];
  out.value = val[best];
  return out;
}

}  // namespace

const char* objective_name(Objective o) {
  switch (o) {
    case Objective::SumOfSquares: return "sum_of_squares";
    case Objective::MaxAbsPm: return "max_abs_pm";
    case Objective::AbsX: return "abs_x";
  }
  return "?";
}

double objective_value(Objective o, const XYPoint& xy) {
  switch (o) {
    case Objective::SumOfSquares: return xy.x * xy.x + xy.y * xy.y;
    case Objective::MaxAbsPm: return std::max(std::abs(xy.x + xy.y), std::abs(xy.x - xy.y));
    case Objective::AbsX: return std::abs(xy.x);
  }
  return 0.0;
}

SettingPair decode_frame(const std::array<double, 3>& angles, bool flip_perp) {
  const Eigen::Matrix3d r = zyz_rotation(angles[0], angles[1], angles[2]);
  return SettingPair(r.col(0), flip_perp ? Vector3(-r.col(1)) : Vector3(r.col(1)));
}

OptimizeResult maximize(const DensityMatrix& rho, Objective obj, const OptimizerConfig& cfg) {
  if (cfg.restarts < 1 || cfg.max_iters < 1)
    throw std::invalid_argument("maximize: restarts and max_iters must be positive");
  if (!(cfg.simplex_tol > 0) || !(cfg.initial_step > 0))
    throw std::invalid_argument("maximize: tolerances must be positive");

  const Eigen::Matrix3d t = correlation_tensor(rho);
  constexpr double two_pi = 2.0 * std::numbers::pi;

  bool have_best = false;
  double best_value = 0.0;
  Vector6 best_angles = Vector6::Zero();
  bool best_flip_a = false, best_flip_b = false, best_converged = false;
  long evaluations = 0;

  for (int r = 0; r < cfg.restarts; ++r) {
    const bool flip_a = (r & 1) != 0;
    const bool flip_b = (r & 2) != 0;
    SplitMix64 rng = stream_rng(cfg.seed, std::uint64_t(r));
    Vector6 start;
    for (int k = 0; k < 6; ++k) start(k) = two_pi * rng.next_double();

    auto objective = [&](const Vector6& angles) {
      return objective_from_tensor(t, obj, decode(angles, flip_a, flip_b));
    };
    const NmOutcome run =
        nelder_mead_max(objective, start, cfg.initial_step, cfg.max_iters, cfg.simplex_tol);
    evaluations += run.evaluations;
    if (!have_best || run.value > best_value) {
      have_best = true;
      best_value = run.value;
      best_angles = run.best;
      best_flip_a = flip_a;
      best_flip_b = flip_b;
      best_converged = run.converged;
    }
  }

  const SettingPair pa = decode_frame({best_angles(0), best_angles(1), best_angles(2)}, best_flip_a);
  const SettingPair pb = decode_frame({best_angles(3), best_angles(4), best_angles(5)}, best_flip_b);
  // Re-evaluate through the trace path so the reported value closes exactly
  // over the reported settings.
  const double closed = objective_value(obj, xy_quantities(rho, pa, pb));
  return OptimizeResult{closed, pa, pb, evaluations, best_converged};
}

std::vector<std::pair<double, double>> werner_max_curve(const std::vector<double>& x_grid,
                                                        Objective obj, const OptimizerConfig& cfg) {
  std::vector<std::pair<double, double>> curve;
  curve.reserve(x_grid.size());
  for (double x : x_grid) curve.emplace_back(x, maximize(make_werner(x), obj, cfg).best_value);
  return curve;
}

double find_threshold(const std::function<DensityMatrix(double)>& family,
                      const std::function<bool(const DensityMatrix&)>& predicate, double lo,
                      double hi, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("find_threshold: tolerance must be positive");
  if (!(lo < hi)) throw std::invalid_argument("find_threshold: empty interval");

  constexpr int kProbes = 9;
  std::array<bool, kProbes> probe{};
  for (int k = 0; k < kProbes; ++k)
    probe[k] = predicate(family(lo + (hi - lo) * double(k) / double(kProbes - 1)));
  if (probe[0] || !probe[kProbes - 1])
    throw std::runtime_error("find_threshold: predicate is not false at lo and true at hi");
  for (int k = 1; k < kProbes; ++k)
    if (probe[k - 1] && !probe[k])
      throw std::runtime_error("find_threshold: predicate is not monotone on the probe grid");

  int flip = 1;
  while (!probe[flip]) ++flip;
  double lo_x = lo + (hi - lo) * double(flip - 1) / double(kProbes - 1);
  double hi_x = lo + (hi - lo) * double(flip) / double(kProbes - 1);
  while (hi_x - lo_x > tol) {
    const double mid = 0.5 * (lo_x + hi_x);
    if (predicate(family(mid)))
      hi_x = mid;
    else
      lo_x = mid;
  }
  return 0.5 * (lo_x + hi_x);
}

}  // namespace qcorr
