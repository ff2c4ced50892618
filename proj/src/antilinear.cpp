#include "qroof/antilinear.hpp"

#include <cmath>

#include "qroof/errors.hpp"

namespace qroof {

ComplexMat2 AntiHermOp::matrix() const {
  ComplexMat2 m;
  m << alpha_, beta_, beta_, delta_;
  return m;
}

AntiHermOp theta_from_pair(const ComplexMat2& a, const ComplexMat2& b) {
  // z0 w1 - z1 w0 = c00 x0^2 + (c01 + c10) x0 x1 + c11 x1^2 for z = A x, w = B x.
  const Complex c00 = a(0, 0) * b(1, 0) - a(1, 0) * b(0, 0);
  const Complex c11 = a(0, 1) * b(1, 1) - a(1, 1) * b(0, 1);
  const Complex cmix = a(0, 0) * b(1, 1) + a(0, 1) * b(1, 0) - a(1, 0) * b(0, 1) - a(1, 1) * b(0, 0);
  return {std::conj(c00), 0.5 * std::conj(cmix), std::conj(c11)};
}

Complex pairing(const AntiHermOp& theta, const Ket& x) {
  const Complex y0 = std::conj(x(0));
  const Complex y1 = std::conj(x(1));
  return theta.alpha() * y0 * y0 + 2.0 * theta.beta() * y0 * y1 + theta.delta() * y1 * y1;
}

Complex pairing(const AntiHermOp& theta, const PureState& phi) { return pairing(theta, phi.ket()); }

ComplexMat2 conjugate_action(const AntiHermOp& theta, const ComplexMat2& rho) {
  const ComplexMat2 t = theta.matrix();
  return t * rho.conjugate() * t.conjugate();
}

double theta_det_abs(const AntiHermOp& theta) {
  return std::abs(theta.alpha() * theta.delta() - theta.beta() * theta.beta());
}

ChannelTheta theta_from_span(const SpanBasis& span) {
  if (span.span_dim > 2)
    throw SpanTooLarge(span.span_dim);
  ChannelTheta out;
  out.span = span;
  out.base = theta_from_pair(span.basis_a, span.basis_b);
  double sum = 0.0;
  const std::size_t m = span.mu1.size();
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j + 1; k < m; ++k)
      sum += std::norm(span.mu1[j] * span.mu2[k] - span.mu2[j] * span.mu1[k]);
  out.scale = std::sqrt(sum);
  out.theta = out.base.scaled(out.scale);
  return out;
}

ChannelTheta theta_for_channel(const KrausChannel& channel) {
  return theta_from_span(kraus_span(channel));
}

std::pair<ComplexMat2, ComplexMat2> transform_pair(const ComplexMat2& a, const ComplexMat2& b,
                                                   const ComplexMat2& mu) {
  return {mu(0, 0) * a + mu(0, 1) * b, mu(1, 0) * a + mu(1, 1) * b};
}

ComplexMat2 Takagi::reconstruct() const {
  return u * Eigen::Vector2cd(d0, d1).asDiagonal() * u.transpose();
}

namespace {

// Given x in the eigenspace of Theta Theta^+ for d^2, returns a unit u with
// Theta conj(u) = d u. Both candidates below satisfy the relation; the
// longer one is used.
Ket takagi_vector(const ComplexMat2& t, const Ket& x, double d) {
  const Ket tx = t * x.conjugate();
  const Ket plus = tx + d * x;
  const Ket minus = Complex(0.0, 1.0) * (d * x - tx);
  return plus.norm() >= minus.norm() ? plus.normalized() : minus.normalized();
}

// Rotates u so that u^+ Theta conj(u) is real and nonnegative.
Ket fix_phase(const ComplexMat2& t, Ket u, double& d) {
  const Complex c = u.dot(t * u.conjugate());
  d = std::abs(c);
  if (d > 0.0) {
    u *= std::polar(1.0, 0.5 * std::arg(c));
  } else {
    const int big = std::abs(u(0)) >= std::abs(u(1)) ? 0 : 1;
    u *= std::polar(1.0, -std::arg(u(big)));
  }
  return u;
}

} // namespace

Takagi takagi(const AntiHermOp& theta) {
  const ComplexMat2 t = theta.matrix();
  const HermitianEigen eig = hermitian_eigen(t * t.adjoint());
  Takagi out;
  const double d0sq = std::max(0.0, eig.values(0));
  const double d1sq = std::max(0.0, eig.values(1));
  if (d0sq == 0.0) {
    out.u = ComplexMat2::Identity();
    return out;
  }
  out.d0 = std::sqrt(d0sq);
  const bool degenerate = d0sq - d1sq <= 1e-12 * d0sq;
  const Ket seed = degenerate ? Ket(1.0, 0.0) : Ket(eig.vectors.col(0));
  const Ket u0 = fix_phase(t, takagi_vector(t, seed, out.d0), out.d0);

  Ket u1(-std::conj(u0(1)), std::conj(u0(0)));
  u1 = fix_phase(t, u1, out.d1);

  out.u.col(0) = u0;
  out.u.col(1) = u1;
  return out;
}

} // namespace qroof
