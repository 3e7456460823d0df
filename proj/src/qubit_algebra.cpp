#include "qcorr/qubit_algebra.hpp"

#include <cmath>

namespace qcorr {

namespace {
const Complex kI(0.0, 1.0);
}

const Matrix2c& pauli_x() {
  static const Matrix2c m = (Matrix2c() << 0, 1, 1, 0).finished();
  return m;
}

const Matrix2c& pauli_y() {
  static const Matrix2c m = (Matrix2c() << 0, -kI, kI, 0).finished();
  return m;
}

const Matrix2c& pauli_z() {
  static const Matrix2c m = (Matrix2c() << 1, 0, 0, -1).finished();
  return m;
}

void require_unit(const Vector3& v, const char* name) {
  if (!v.allFinite()) throw std::invalid_argument(std::string(name) + ": non-finite entries");
  if (std::abs(v.norm() - 1.0) > kUnitTol)
    throw std::invalid_argument(std::string(name) + ": not a unit vector (norm = " +
                                std::to_string(v.norm()) + ")");
}

void require_bloch_ball(const Vector3& r, const char* name) {
  if (!r.allFinite()) throw std::domain_error(std::string(name) + ": non-finite entries");
  if (r.norm() > 1.0 + kUnitTol)
    throw std::domain_error(std::string(name) + ": Bloch vector outside the unit ball (norm = " +
                            std::to_string(r.norm()) + ")");
}

Matrix2c pauli_op(const Vector3& v) {
  require_unit(v, "pauli_op direction");
  return v.x() * pauli_x() + v.y() * pauli_y() + v.z() * pauli_z();
}

QubitState qubit_from_bloch(const Vector3& r) {
  require_bloch_ball(r, "qubit_from_bloch");
  Matrix2c m = 0.5 * (Matrix2c::Identity() + r.x() * pauli_x() + r.y() * pauli_y() + r.z() * pauli_z());
  return QubitState((0.5 * (m + m.adjoint())).eval());
}

Vector3 bloch_vector(const QubitState& rho) {
  const Matrix2c& m = rho.matrix();
  return Vector3((m * pauli_x()).trace().real(), (m * pauli_y()).trace().real(),
                 (m * pauli_z()).trace().real());
}

double expectation(const QubitState& rho, const Vector3& v) {
  return (rho.matrix() * pauli_op(v)).trace().real();
}

DensityMatrix make_singlet() {
  Eigen::Vector4cd psi;
  psi << 0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0;
  return DensityMatrix((psi * psi.adjoint()).eval());
}

DensityMatrix make_werner(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("make_werner: mixing parameter must lie in [0, 1], got " +
                            std::to_string(x));
  Matrix4c m = (1.0 - x) * 0.25 * Matrix4c::Identity() + x * make_singlet().matrix();
  return DensityMatrix(m);
}

DensityMatrix make_product(const Vector3& bloch_a, const Vector3& bloch_b) {
  QubitState rho_a = qubit_from_bloch(bloch_a);
  QubitState rho_b = qubit_from_bloch(bloch_b);
  return DensityMatrix(kron(rho_a.matrix(), rho_b.matrix()));
}

QubitState reduced_state_a(const DensityMatrix& rho) {
  const Matrix4c& m = rho.matrix();
  Matrix2c out;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) out(i, k) = m(2 * i, 2 * k) + m(2 * i + 1, 2 * k + 1);
  return QubitState((0.5 * (out + out.adjoint())).eval());
}

QubitState reduced_state_b(const DensityMatrix& rho) {
  const Matrix4c& m = rho.matrix();
  Matrix2c out;
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) out(j, l) = m(j, l) + m(2 + j, 2 + l);
  return QubitState((0.5 * (out + out.adjoint())).eval());
}

Matrix4c partial_transpose_b(const DensityMatrix& rho) {
  const Matrix4c& m = rho.matrix();
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      out.block<2, 2>(2 * i, 2 * k) = m.block<2, 2>(2 * i, 2 * k).transpose();
  return out;
}

bool is_separable_ppt(const DensityMatrix& rho, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("is_separable_ppt: tolerance must be positive");
  return hermitian_eigenvalues<4>(partial_transpose_b(rho))(0) >= -tol;
}

}  // namespace qcorr
