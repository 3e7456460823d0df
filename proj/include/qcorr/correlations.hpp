#pragma once

#include "qcorr/qubit_algebra.hpp"

#include <array>

namespace qcorr {

/// Coordinate in the X-Y plane of correlation combinations:
///   X = E(a, b_perp) + E(a_perp, b),  Y = E(a, b) - E(a_perp, b_perp).
struct XYPoint {
  double x = 0.0;
  double y = 0.0;
};

inline constexpr double kDefaultBoundTol = 1e-9;

enum class Region { Lqt, LtNotLqt, QmNotLt, RtNotQm, OutsideRt };

const char* region_name(Region r);

/// One inequality of the hierarchy: satisfied iff achieved <= bound + tol.
/// margin = bound - achieved; negative means violated.
struct BoundRecord {
  double bound = 0.0;
  double achieved = 0.0;
  double margin = 0.0;
  bool satisfied = true;
};

/// Evaluation of the four bound families at one X-Y point. The local-theory
/// and local-realistic bounds coincide (the CHSH diamond), so they share one
/// record. Region labels partition the plane by nesting: LQT circle of radius
/// 1 inside the CHSH diamond inside the QM circle of radius 2 inside the
/// realism square of half-width 2.
struct HierarchyReport {
  XYPoint xy;
  BoundRecord qm;   // X^2 + Y^2 <= 4
  BoundRecord rt;   // |X| <= 2 and |Y| <= 2
  BoundRecord lt;   // |X + Y| <= 2 and |X - Y| <= 2  (CHSH)
  BoundRecord lqt;  // X^2 + Y^2 <= 1
  Region region = Region::Lqt;
  bool hidden_qunonlocality = false;  // inside the diamond yet outside the LQT circle
};

/// E(a,b) = Tr[rho (a.sigma (x) b.sigma)]. Always within [-1, 1] up to
/// rounding; values exceeding by more than 1e-10 raise.
double correlation(const DensityMatrix& rho, const Vector3& a, const Vector3& b);

/// The four joint outcome probabilities in fixed order
/// (+1,+1), (+1,-1), (-1,+1), (-1,-1), from projectors (I +- v.sigma)/2.
std::array<double, 4> joint_probabilities(const DensityMatrix& rho, const Vector3& a,
                                          const Vector3& b);

/// Single joint probability P(a_i, b_j) for outcomes i, j in {+1, -1}.
double joint_probability(const DensityMatrix& rho, const Vector3& a, const Vector3& b, int i,
                         int j);

/// -a.b, the singlet correlation in closed form.
double singlet_correlation_closed_form(const Vector3& a, const Vector3& b);

/// T_ij = Tr[rho (sigma_i (x) sigma_j)]; E(a,b) = a^T T b.
Eigen::Matrix3d correlation_tensor(const DensityMatrix& rho);

XYPoint xy_quantities(const DensityMatrix& rho, const SettingPair& pa, const SettingPair& pb);

/// Evaluate all bounds at a point and assign the region label, innermost
/// region first with ties broken toward the inner region within tol.
HierarchyReport classify(const XYPoint& xy, double tol = kDefaultBoundTol);

}  // namespace qcorr
