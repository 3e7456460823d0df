#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace qcorr {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector3 = Eigen::Vector3d;

// Validation tolerances shared across the library. PSD is looser than the
// algebraic checks: eigensolves on boundary states (pure states, Werner x->1)
// accumulate error of that order.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kUnitTol = 1e-12;
inline constexpr double kOrthoTol = 1e-9;

const Matrix2c& pauli_x();
const Matrix2c& pauli_y();
const Matrix2c& pauli_z();

void require_unit(const Vector3& v, const char* name);
void require_bloch_ball(const Vector3& r, const char* name);

/// v . sigma for a unit vector v: Hermitian, traceless, squares to identity.
Matrix2c pauli_op(const Vector3& v);

/// Tensor product, block structure a(i,j) * b. Works on any fixed-size
/// complex or real expressions.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = decltype(typename DerivedA::Scalar{} * typename DerivedB::Scalar{});
  constexpr int br = DerivedB::RowsAtCompileTime;
  constexpr int bc = DerivedB::ColsAtCompileTime;
  constexpr int rows = DerivedA::RowsAtCompileTime * br;
  constexpr int cols = DerivedA::ColsAtCompileTime * bc;
  static_assert(br > 0 && bc > 0, "kron requires fixed-size operands");
  Eigen::Matrix<Scalar, rows, cols> out;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.template block<br, bc>(i * br, j * bc) = a(i, j) * b.derived();
  return out;
}

/// Eigenvalues of a Hermitian NxN complex matrix, ascending. The input must
/// be Hermitian within 1e-10; the skew part is discarded before solving.
template <int N>
Eigen::Matrix<double, N, 1> hermitian_eigenvalues(const Eigen::Matrix<Complex, N, N>& m) {
  if (!m.allFinite()) throw std::invalid_argument("hermitian_eigenvalues: non-finite entries");
  const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (skew > 1e-10)
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian (max |M - M^dag| = " +
                                std::to_string(skew) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, N, N>> solver(
      ((m + m.adjoint()) / 2.0).eval(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Unit-trace positive semidefinite Hermitian operator of fixed dimension.
/// Construction validates all three invariants and throws std::invalid_argument
/// naming the one that failed.
template <int N>
class DensityOperator {
 public:
  using MatrixType = Eigen::Matrix<Complex, N, N>;

  explicit DensityOperator(const MatrixType& m) : mat_(m) {
    if (!mat_.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");
    const double skew = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (skew > kHermitianTol)
      throw std::invalid_argument("density matrix is not Hermitian (max |M - M^dag| = " +
                                  std::to_string(skew) + ")");
    const double tr_err = std::abs(mat_.trace() - Complex(1.0, 0.0));
    if (tr_err > kTraceTol)
      throw std::invalid_argument("density matrix trace differs from 1 by " + std::to_string(tr_err));
    Eigen::SelfAdjointEigenSolver<MatrixType> solver(mat_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues()(0) < -kPsdTol)
      throw std::invalid_argument("density matrix is not positive semidefinite (min eigenvalue = " +
                                  std::to_string(solver.eigenvalues()(0)) + ")");
  }

  const MatrixType& matrix() const { return mat_; }

 private:
  MatrixType mat_;
};

using QubitState = DensityOperator<2>;
using DensityMatrix = DensityOperator<4>;

/// (I + r.sigma)/2 for a Bloch vector inside the unit ball.
QubitState qubit_from_bloch(const Vector3& r);

/// (Tr[rho sx], Tr[rho sy], Tr[rho sz]).
Vector3 bloch_vector(const QubitState& rho);

/// Tr[rho (v.sigma)] for a unit vector v.
double expectation(const QubitState& rho, const Vector3& v);

/// |psi-><psi-| with |psi-> = (|ud> - |du>)/sqrt(2), product basis ordered
/// |uu>,|ud>,|du>,|dd> with sz|u> = +|u>.
DensityMatrix make_singlet();

/// (1-x) I/4 + x |psi-><psi-|, valid for 0 <= x <= 1.
DensityMatrix make_werner(double x);

/// rho_A (x) rho_B from two Bloch vectors in the unit ball.
DensityMatrix make_product(const Vector3& bloch_a, const Vector3& bloch_b);

QubitState reduced_state_a(const DensityMatrix& rho);  // Tr_B
QubitState reduced_state_b(const DensityMatrix& rho);  // Tr_A

/// Transpose applied to the second tensor factor. Hermitian and unit-trace,
/// but possibly non-PSD, hence a raw matrix.
Matrix4c partial_transpose_b(const DensityMatrix& rho);

/// Peres-Horodecki test; for two qubits PPT is necessary and sufficient.
bool is_separable_ppt(const DensityMatrix& rho, double tol = kPsdTol);

/// Ordered orthonormal pair of measurement directions for one site.
class SettingPair {
 public:
  SettingPair(const Vector3& main, const Vector3& perp) : main_(main), perp_(perp) {
    require_unit(main_, "main setting");
    require_unit(perp_, "perp setting");
    if (std::abs(main_.dot(perp_)) > kOrthoTol)
      throw std::invalid_argument("setting pair is not orthogonal (|main . perp| = " +
                                  std::to_string(std::abs(main_.dot(perp_))) + ")");
  }

  const Vector3& main() const { return main_; }
  const Vector3& perp() const { return perp_; }

 private:
  Vector3 main_, perp_;
};

}  // namespace qcorr
