#pragma once

// Hermitian anti-linear operators on a qubit.
//
// An anti-linear operator theta is stored as the matrix Theta of its action
// x -> Theta * conj(x). With this convention
//
//   theta rho theta = Theta conj(rho) conj(Theta),   theta^2 = Theta conj(Theta),
//
// and theta is Hermitian exactly when Theta is symmetric, so only the three
// independent entries alpha, beta, delta are kept.

#include <utility>

#include "qroof/channels.hpp"
#include "qroof/linalg2.hpp"

namespace qroof {

class AntiHermOp {
public:
  AntiHermOp() = default;
  AntiHermOp(Complex alpha, Complex beta, Complex delta) : alpha_(alpha), beta_(beta), delta_(delta) {}

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  Complex delta() const { return delta_; }

  /// Symmetric matrix [[alpha, beta], [beta, delta]].
  ComplexMat2 matrix() const;

  /// theta applied to a ket: Theta * conj(x).
  Ket act(const Ket& x) const { return matrix() * x.conjugate(); }

  AntiHermOp scaled(double s) const { return {s * alpha_, s * beta_, s * delta_}; }

private:
  Complex alpha_{};
  Complex beta_{};
  Complex delta_{};
};

/// The unique Hermitian theta with det(A pi A^+ + B pi B^+) = |<phi|theta|phi>|^2
/// for every pure pi = |phi><phi|. No normalization of A, B is required.
AntiHermOp theta_from_pair(const ComplexMat2& a, const ComplexMat2& b);

/// <phi|theta phi> = alpha conj(x0)^2 + 2 beta conj(x0) conj(x1) + delta conj(x1)^2.
Complex pairing(const AntiHermOp& theta, const PureState& phi);
Complex pairing(const AntiHermOp& theta, const Ket& x);

/// The linear operator theta rho theta.
ComplexMat2 conjugate_action(const AntiHermOp& theta, const ComplexMat2& rho);
inline ComplexMat2 conjugate_action(const AntiHermOp& theta, const DensityOp& rho) {
  return conjugate_action(theta, rho.matrix());
}

/// |det Theta| = sqrt(det theta^2).
double theta_det_abs(const AntiHermOp& theta);

/// theta' for a channel whose Kraus span is at most two-dimensional.
/// Throws SpanTooLarge otherwise.
struct ChannelTheta {
  AntiHermOp theta;     ///< scaled operator theta'
  AntiHermOp base;      ///< theta of the basis pair
  double scale = 0.0;   ///< |mu| >= 0 with theta = scale * base
  SpanBasis span;
};
ChannelTheta theta_for_channel(const KrausChannel& channel);
ChannelTheta theta_from_span(const SpanBasis& span);

inline AntiHermOp theta_from_channel(const KrausChannel& channel) {
  return theta_for_channel(channel).theta;
}

/// (A', B') = (mu00 A + mu01 B, mu10 A + mu11 B).
std::pair<ComplexMat2, ComplexMat2> transform_pair(const ComplexMat2& a, const ComplexMat2& b,
                                                   const ComplexMat2& mu);

/// Takagi factorization Theta = U diag(d0, d1) U^T with U unitary and
/// d0 >= d1 >= 0.
struct Takagi {
  ComplexMat2 u;
  double d0 = 0.0;
  double d1 = 0.0;

  ComplexMat2 reconstruct() const;
};
Takagi takagi(const AntiHermOp& theta);

} // namespace qroof
