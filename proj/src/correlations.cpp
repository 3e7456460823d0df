#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

const char* region_name(Region r) {
  switch (r) {
    case Region::Lqt: return "LQT";
    case Region::LtNotLqt: return "LT_not_LQT";
    case Region::QmNotLt: return "QM_not_LT";
    case Region::RtNotQm: return "RT_not_QM";
    case Region::OutsideRt: return "OUTSIDE_RT";
  }
  return "?";
}

double correlation(const DensityMatrix& rho, const Vector3& a, const Vector3& b) {
  const Complex t = (rho.matrix() * kron(pauli_op(a), pauli_op(b))).trace();
  if (std::abs(t.imag()) > 1e-10)
    throw std::invalid_argument("correlation: non-real trace, imaginary part " +
                                std::to_string(t.imag()));
  const double e = t.real();
  if (std::abs(e) > 1.0 + 1e-10)
    throw std::invalid_argument("correlation: value outside [-1, 1] by " +
                                std::to_string(std::abs(e) - 1.0));
  return std::clamp(e, -1.0, 1.0);
}

std::array<double, 4> joint_probabilities(const DensityMatrix& rho, const Vector3& a,
                                          const Vector3& b) {
  const Matrix2c ahat = pauli_op(a);
  const Matrix2c bhat = pauli_op(b);
  std::array<double, 4> out{};
  int idx = 0;
  for (int i : {+1, -1}) {
    const Matrix2c pa = 0.5 * (Matrix2c::Identity() + double(i) * ahat);
    for (int j : {+1, -1}) {
      const Matrix2c pb = 0.5 * (Matrix2c::Identity() + double(j) * bhat);
      const Complex t = (rho.matrix() * kron(pa, pb)).trace();
      if (std::abs(t.imag()) > 1e-10)
        throw std::invalid_argument("joint_probability: non-real trace");
      if (t.real() < -kPsdTol || t.real() > 1.0 + kPsdTol)
        throw std::invalid_argument("joint_probability: value outside [0, 1] (" +
                                    std::to_string(t.real()) + ")");
      out[idx++] = std::clamp(t.real(), 0.0, 1.0);
    }
  }
  return out;
}

double joint_probability(const DensityMatrix& rho, const Vector3& a, const Vector3& b, int i,
                         int j) {
  if ((i != 1 && i != -1) || (j != 1 && j != -1))
    throw std::invalid_argument("joint_probability: outcomes must be +1 or -1");
  const auto p = joint_probabilities(rho, a, b);
  return p[(i == 1 ? 0 : 2) + (j == 1 ? 0 : 1)];
}

double singlet_correlation_closed_form(const Vector3& a, const Vector3& b) {
  require_unit(a, "a");
  require_unit(b, "b");
  return -a.dot(b);
}

Eigen::Matrix3d correlation_tensor(const DensityMatrix& rho) {
  const std::array<const Matrix2c*, 3> sig = {&pauli_x(), &pauli_y(), &pauli_z()};
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (rho.matrix() * kron(*sig[i], *sig[j])).trace().real();
  return t;
}

XYPoint xy_quantities(const DensityMatrix& rho, const SettingPair& pa, const SettingPair& pb) {
  XYPoint xy;
  xy.x = correlation(rho, pa.main(), pb.perp()) + correlation(rho, pa.perp(), pb.main());
  xy.y = correlation(rho, pa.main(), pb.main()) - correlation(rho, pa.perp(), pb.perp());
  return xy;
}

HierarchyReport classify(const XYPoint& xy, double tol) {
  if (tol < 0) throw std::invalid_argument("classify: tolerance must be non-negative");
  HierarchyReport rep;
  rep.xy = xy;

  const double ss = xy.x * xy.x + xy.y * xy.y;
  const double radius = std::sqrt(ss);
  const double box = std::max(std::abs(xy.x), std::abs(xy.y));
  const double diamond = std::max(std::abs(xy.x + xy.y), std::abs(xy.x - xy.y));

  // The circle bounds compare radii within tol (margins stay on the squared
  // scale). A uniform tolerance on the squared quantity would let a point in
  // the tolerance shell of the diamond escape the radius-2 circle and break
  // the containment chain.
  rep.qm = BoundRecord{4.0, ss, 4.0 - ss, radius <= 2.0 + tol};
  rep.rt = BoundRecord{2.0, box, 2.0 - box, box <= 2.0 + tol};
  rep.lt = BoundRecord{2.0, diamond, 2.0 - diamond, diamond <= 2.0 + tol};
  rep.lqt = BoundRecord{1.0, ss, 1.0 - ss, radius <= 1.0 + tol};

  if (rep.lqt.satisfied)
    rep.region = Region::Lqt;
  else if (rep.lt.satisfied)
    rep.region = Region::LtNotLqt;
  else if (rep.qm.satisfied)
    rep.region = Region::QmNotLt;
  else if (rep.rt.satisfied)
    rep.region = Region::RtNotQm;
  else
    rep.region = Region::OutsideRt;

  rep.hidden_qunonlocality = rep.lt.satisfied && !rep.lqt.satisfied;
  return rep;
}

}  // namespace qcorr
