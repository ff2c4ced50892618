#include "qroof/linalg2.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "qroof/errors.hpp"

namespace qroof {

namespace {

const Complex I{0.0, 1.0};

double clamp_unit(double x, const char* what) {
  if (!(x >= -kStateTol && x <= 1.0 + kStateTol)) {
    std::ostringstream os;
    os << what << ": argument " << std::setprecision(17) << x << " outside [0,1]";
    throw DomainError(os.str());
  }
  return std::clamp(x, 0.0, 1.0);
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

} // namespace

bool all_finite(const ComplexMat2& m) {
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      if (!std::isfinite(m(j, k).real()) || !std::isfinite(m(j, k).imag()))
        return false;
  return true;
}

const ComplexMat2& pauli(int k) {
  static const ComplexMat2 sx = (ComplexMat2() << 0, 1, 1, 0).finished();
  static const ComplexMat2 sy = (ComplexMat2() << 0, -I, I, 0).finished();
  static const ComplexMat2 sz = (ComplexMat2() << 1, 0, 0, -1).finished();
  switch (k) {
  case 1: return sx;
  case 2: return sy;
  case 3: return sz;
  default: throw DomainError("pauli index must be 1, 2 or 3");
  }
}

HermitianEigen hermitian_eigen(const ComplexMat2& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  const double r = std::hypot(half, std::abs(b));

  HermitianEigen out;
  out.values << mean + r, mean - r;

  Ket v;
  if (r == 0.0) {
    v << 1.0, 0.0;
  } else if (half >= 0.0) {
    v << half + r, std::conj(b);
  } else {
    v << b, r - half;
  }
  v.normalize();
  out.vectors.col(0) = v;
  out.vectors.col(1) << -std::conj(v(1)), std::conj(v(0));
  return out;
}

// --- DensityOp --------------------------------------------------------------

DensityOp::DensityOp(const ComplexMat2& m) {
  if (!all_finite(m))
    throw InvariantError("density operator has non-finite entries");
  const double herm_dev = std::max({std::abs(m(0, 1) - std::conj(m(1, 0))),
                                    std::abs(m(0, 0).imag()), std::abs(m(1, 1).imag())});
  if (herm_dev > kStateTol)
    throw InvariantError("density operator is not Hermitian (deviation " +
                         std::to_string(herm_dev) + ")");
  const double tr = m(0, 0).real() + m(1, 1).real();
  if (std::abs(tr - 1.0) > kStateTol)
    throw InvariantError("density operator trace is " + std::to_string(tr) + ", expected 1");

  m_(0, 0) = m(0, 0).real();
  m_(1, 1) = m(1, 1).real();
  m_(0, 1) = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  m_(1, 0) = std::conj(m_(0, 1));

  const double det = m_(0, 0).real() * m_(1, 1).real() - std::norm(m_(0, 1));
  if (det < -kStateTol || m_(0, 0).real() < -kStateTol || m_(1, 1).real() < -kStateTol)
    throw InvariantError("density operator is not positive (det " + std::to_string(det) + ")");
}

DensityOp DensityOp::from_bloch(const Bloch& r) {
  if (!r.allFinite())
    throw InvariantError("Bloch vector has non-finite entries");
  if (r.squaredNorm() > 1.0 + kBlochRadiusTol)
    throw InvariantError("Bloch vector lies outside the unit ball");
  // Points within the radius tolerance but slightly outside are pulled onto
  // the sphere so that the determinant check cannot fail on them.
  const Bloch u = r.squaredNorm() > 1.0 ? Bloch(r.normalized()) : r;
  ComplexMat2 m = ComplexMat2::Identity();
  for (int k = 0; k < 3; ++k)
    m += u(k) * pauli(k + 1);
  m *= 0.5;
  return DensityOp(m);
}

DensityOp DensityOp::maximally_mixed() { return DensityOp(0.5 * ComplexMat2::Identity()); }

Bloch DensityOp::bloch() const {
  return {2.0 * m_(0, 1).real(), -2.0 * m_(0, 1).imag(), m_(0, 0).real() - m_(1, 1).real()};
}

double DensityOp::det() const {
  const double d = m_(0, 0).real() * m_(1, 1).real() - std::norm(m_(0, 1));
  return std::clamp(d, 0.0, 0.25);
}

Eigen::Vector2d DensityOp::eigenvalues() const {
  Eigen::Vector2d v = hermitian_eigen(m_).values;
  return v.cwiseMax(0.0).cwiseMin(1.0);
}

bool DensityOp::is_pure(double tol) const { return bloch().norm() >= 1.0 - tol; }

// --- PureState --------------------------------------------------------------

PureState::PureState(Complex x0, Complex x1) : x_(x0, x1) {
  if (!std::isfinite(x_.squaredNorm()))
    throw InvariantError("pure state has non-finite amplitudes");
  if (std::abs(x_.squaredNorm() - 1.0) > kStateTol)
    throw InvariantError("pure state amplitudes are not unit norm");
}

PureState PureState::normalized(const Ket& k) {
  const double n = k.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw InvariantError("cannot normalize a zero or non-finite ket");
  return PureState(k / n);
}

PureState PureState::from_bloch(const Bloch& n) {
  const double len = n.norm();
  if (!(len > 0.0))
    throw InvariantError("Bloch direction must be nonzero");
  const Bloch u = n / len;
  // |psi> = (cos(th/2), e^{i ph} sin(th/2))
  const double c = std::sqrt(std::max(0.0, 0.5 * (1.0 + u(2))));
  const double s = std::sqrt(std::max(0.0, 0.5 * (1.0 - u(2))));
  const double rho = std::hypot(u(0), u(1));
  const Complex phase = rho > 0.0 ? Complex(u(0), u(1)) / rho : Complex(1.0, 0.0);
  Ket k;
  k << c, phase * s;
  return normalized(k);
}

Bloch PureState::bloch() const {
  const Complex c = x_(0) * std::conj(x_(1));
  return {2.0 * c.real(), -2.0 * c.imag(), std::norm(x_(0)) - std::norm(x_(1))};
}

double overlap(const PureState& a, const PureState& b) {
  return std::abs(a.ket().dot(b.ket()));
}

// --- entropies --------------------------------------------------------------

double binary_entropy(double x) {
  x = clamp_unit(x, "binary_entropy");
  return -xlog2x(x) - xlog2x(1.0 - x);
}

double f_curve(double y) {
  if (!(std::abs(y) <= 1.0 + kStateTol))
    throw DomainError("f_curve: |y| exceeds 1");
  const double y2 = std::min(1.0, y * y);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - y2)));
}

double von_neumann_entropy(const DensityOp& omega) {
  return binary_entropy(omega.eigenvalues()(0));
}

double relative_entropy(const DensityOp& w1, const DensityOp& w2) {
  const Eigen::Vector2d l1 = w1.eigenvalues();
  const HermitianEigen e2 = hermitian_eigen(w2.matrix());

  double value = xlog2x(l1(0)) + xlog2x(l1(1));
  for (int k = 0; k < 2; ++k) {
    const Ket v = e2.vectors.col(k);
    const double weight = std::max(0.0, v.dot(w1.matrix() * v).real());
    const double mu = std::max(0.0, e2.values(k));
    if (mu < kStateTol) {
      if (weight > kStateTol)
        return std::numeric_limits<double>::infinity();
      continue;
    }
    value -= weight * std::log2(mu);
  }
  return value;
}

// --- Bloch geometry ---------------------------------------------------------

Chord chord_through(const Bloch& point, const Bloch& direction) {
  const Bloch n = direction.normalized();
  const double c = std::min(0.0, point.squaredNorm() - 1.0);
  Chord chord;
  if (-c <= kStateTol) {
    chord.plus = chord.minus = point.normalized();
    return chord;
  }
  const double b = point.dot(n);
  const double q = std::sqrt(b * b - c);
  // Roots of s^2 + 2 b s + c = 0, taken in the cancellation-free order.
  double s_plus, s_minus;
  if (b >= 0.0) {
    s_minus = -b - q;
    s_plus = c / s_minus;
  } else {
    s_plus = -b + q;
    s_minus = c / s_plus;
  }
  chord.plus = (point + s_plus * n).normalized();
  chord.minus = (point + s_minus * n).normalized();
  const double len = s_plus - s_minus;
  chord.weight_plus = -s_minus / len;
  chord.weight_minus = s_plus / len;
  return chord;
}

std::string to_string(const ComplexMat2& m) {
  std::ostringstream os;
  os << std::setprecision(6) << "[[" << m(0, 0) << ", " << m(0, 1) << "], [" << m(1, 0) << ", "
     << m(1, 1) << "]]";
  return os.str();
}

} // namespace qroof
