#include "qroof/roofs.hpp"

#include <algorithm>
#include <cmath>

#include "qroof/errors.hpp"

namespace qroof {

double concurrence_pair(const ComplexMat2& w1, const ComplexMat2& w2) {
  const double tr = (w1 * w2).trace().real();
  const double d1 = std::max(0.0, w1.determinant().real());
  const double d2 = std::max(0.0, w2.determinant().real());
  return std::sqrt(std::max(0.0, tr - 2.0 * std::sqrt(d1 * d2)));
}

double channel_concurrence(const AntiHermOp& theta, const DensityOp& rho) {
  const double tr = (rho.matrix() * conjugate_action(theta, rho)).trace().real();
  return std::sqrt(std::max(0.0, tr - 2.0 * rho.det() * theta_det_abs(theta)));
}

double channel_concurrence_extremal(const AntiHermOp& theta, const DensityOp& rho) {
  if (std::abs(theta.beta()) > 1e-12)
    throw DomainError("channel_concurrence_extremal requires a diagonal theta");
  const Complex a = theta.alpha();
  const Complex d = theta.delta();
  const double diag = std::abs(a) * rho(0, 0).real() - std::abs(d) * rho(1, 1).real();
  // sqrt(a d*) and its conjugate as the root of a* d.
  const Complex root = std::sqrt(a * std::conj(d));
  const double cross = 2.0 * (root * rho(1, 0)).real();
  return std::sqrt(diag * diag + cross * cross);
}

double entropy_roof(const AntiHermOp& theta, const DensityOp& rho) {
  return f_curve(std::min(1.0, 2.0 * channel_concurrence(theta, rho)));
}

ChannelEntropy channel_entropy(const KrausChannel& channel, const AntiHermOp& theta,
                               const DensityOp& rho) {
  ChannelEntropy out;
  out.output_entropy = von_neumann_entropy(apply(channel, rho));
  out.roof = entropy_roof(theta, rho);
  out.raw = out.output_entropy - out.roof;
  out.value = std::max(0.0, out.raw);
  return out;
}

ComplexMat2 LeafDecomposition::mixture() const {
  return weight_first * first.projector_matrix() + weight_second * second.projector_matrix();
}

namespace {

// Bloch image of the axis `axis` under the ket rotation x -> u x.
Bloch rotate_axis(const ComplexMat2& u, int axis) {
  const ComplexMat2 rotated = u * pauli(axis) * u.adjoint();
  Bloch n;
  for (int k = 0; k < 3; ++k)
    n(k) = 0.5 * (pauli(k + 1) * rotated).trace().real();
  return n;
}

Bloch leaf_direction(const AntiHermOp& theta) {
  const Takagi tk = takagi(theta);
  if (tk.d1 > 1e-12 * tk.d0) {
    // In the Takagi basis C_T^2 = (d0 r00 - d1 r11)^2 + d0 d1 (2 Re r01)^2,
    // which does not depend on the Bloch y coordinate.
    return rotate_axis(tk.u, 2).normalized();
  }
  // One vanishing singular value: C_T = d0 <u0|rho|u0>, so the leaves are the
  // planes orthogonal to the Bloch vector of u0. Use the x axis projected
  // into that plane.
  const Bloch n0 = tk.d0 > 0.0 ? PureState::normalized(tk.u.col(0)).bloch() : Bloch::Zero();
  const Bloch axes[2] = {Bloch::UnitX(), Bloch::UnitY()};
  for (const Bloch& axis : axes) {
    const Bloch v = axis - axis.dot(n0) * n0;
    if (v.norm() > 1e-6)
      return v.normalized();
  }
  return Bloch::UnitX();
}

} // namespace

LeafDecomposition leaf(const AntiHermOp& theta, const DensityOp& rho) {
  const Bloch direction = leaf_direction(theta);
  const Chord chord = chord_through(rho.bloch(), direction);
  return LeafDecomposition{PureState::from_bloch(chord.plus), PureState::from_bloch(chord.minus),
                           chord.weight_plus, chord.weight_minus, direction};
}

} // namespace qroof
