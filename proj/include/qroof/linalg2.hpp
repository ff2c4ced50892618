#pragma once

// Complex 2x2 linear algebra, qubit states and the scalar entropy functions.

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace qroof {

using Complex = std::complex<double>;
using ComplexMat2 = Eigen::Matrix2cd;
using Ket = Eigen::Vector2cd;
using Bloch = Eigen::Vector3d;

/// Tolerances shared by the state types.
inline constexpr double kStateTol = 1e-12;
inline constexpr double kBlochRadiusTol = 1e-9;

bool all_finite(const ComplexMat2& m);

/// Pauli matrices sigma_1, sigma_2, sigma_3.
const ComplexMat2& pauli(int k);

/// Eigen-decomposition of a 2x2 Hermitian matrix in closed form.
/// values are in decreasing order; columns of vectors are the matching
/// orthonormal eigenvectors. Only the Hermitian part of the input is used.
struct HermitianEigen {
  Eigen::Vector2d values;
  ComplexMat2 vectors;
};
HermitianEigen hermitian_eigen(const ComplexMat2& m);

/// Qubit density operator: Hermitian, unit trace, positive semidefinite.
class DensityOp {
public:
  /// Validates every invariant and throws InvariantError naming the one that
  /// failed. The stored matrix is the exactly Hermitian part of m.
  explicit DensityOp(const ComplexMat2& m);

  static DensityOp from_bloch(const Bloch& r);
  static DensityOp maximally_mixed();

  const ComplexMat2& matrix() const { return m_; }
  Complex operator()(int j, int k) const { return m_(j, k); }

  Bloch bloch() const;
  /// Determinant clamped to [0, 1/4].
  double det() const;
  /// Decreasing eigenvalues, clamped to [0, 1].
  Eigen::Vector2d eigenvalues() const;
  bool is_pure(double tol = kBlochRadiusTol) const;

private:
  ComplexMat2 m_;
};

/// Unit-norm qubit ket.
class PureState {
public:
  /// Throws InvariantError unless |x0|^2 + |x1|^2 = 1 within kStateTol.
  PureState(Complex x0, Complex x1);
  explicit PureState(const Ket& k) : PureState(k(0), k(1)) {}

  /// Normalizes an arbitrary nonzero ket.
  static PureState normalized(const Ket& k);
  /// Pure state with the given (unit) Bloch vector; the input is rescaled.
  static PureState from_bloch(const Bloch& n);

  const Ket& ket() const { return x_; }
  Complex x0() const { return x_(0); }
  Complex x1() const { return x_(1); }

  ComplexMat2 projector_matrix() const { return x_ * x_.adjoint(); }
  DensityOp projector() const { return DensityOp(projector_matrix()); }
  Bloch bloch() const;

private:
  Ket x_;
};

/// |<a|b>|
double overlap(const PureState& a, const PureState& b);

/// h(x) = -x log2 x - (1-x) log2 (1-x), with 0 log 0 = 0.
/// Arguments within 1e-12 of [0,1] are clamped; others throw DomainError.
double binary_entropy(double x);

/// f(y) = h((1 + sqrt(1 - y^2)) / 2) on [-1, 1].
double f_curve(double y);

/// Von Neumann entropy in bits, from the larger eigenvalue.
double von_neumann_entropy(const DensityOp& omega);

/// S(w1 || w2) = tr w1 (log2 w1 - log2 w2); +infinity when the support of
/// w1 is not contained in the support of w2.
double relative_entropy(const DensityOp& w1, const DensityOp& w2);

/// Intersection of the line {point + s * direction} with the unit sphere.
/// `plus`/`minus` are the endpoints on the sphere and the weights express
/// point as a convex combination of them. For a point on the sphere the
/// chord collapses and weight_plus = 1.
struct Chord {
  Bloch plus;
  Bloch minus;
  double weight_plus = 1.0;
  double weight_minus = 0.0;
};
Chord chord_through(const Bloch& point, const Bloch& direction);

std::string to_string(const ComplexMat2& m);

} // namespace qroof
