#pragma once

// Closed forms for the channel concurrence C_T, the entropy roof E_T and the
// channel entropy H_T of channels described by a Hermitian anti-linear theta.

#include "qroof/antilinear.hpp"
#include "qroof/channels.hpp"
#include "qroof/linalg2.hpp"

namespace qroof {

/// C(w1, w2) for 2x2 positive matrices via tr w1 w2 - 2 sqrt(det w1 det w2).
/// w2 need not be normalized.
double concurrence_pair(const ComplexMat2& w1, const ComplexMat2& w2);
inline double concurrence_pair(const DensityOp& w1, const DensityOp& w2) {
  return concurrence_pair(w1.matrix(), w2.matrix());
}

/// C_T(rho) = C(rho, theta rho theta).
double channel_concurrence(const AntiHermOp& theta, const DensityOp& rho);

/// Explicit two-term form for diagonal theta (beta = 0). Throws DomainError
/// if |beta| > 1e-12.
double channel_concurrence_extremal(const AntiHermOp& theta, const DensityOp& rho);

/// E_T(rho) = f(2 C_T(rho)).
double entropy_roof(const AntiHermOp& theta, const DensityOp& rho);

struct ChannelEntropy {
  double value = 0.0;          ///< max(raw, 0)
  double raw = 0.0;            ///< S_T - E_T before clamping
  double output_entropy = 0.0; ///< S_T(rho)
  double roof = 0.0;           ///< E_T(rho)
};

/// H_T(rho) = S_T(rho) - E_T(rho).
ChannelEntropy channel_entropy(const KrausChannel& channel, const AntiHermOp& theta,
                               const DensityOp& rho);
inline double entropy_wrt_channel(const KrausChannel& channel, const AntiHermOp& theta,
                                  const DensityOp& rho) {
  return channel_entropy(channel, theta, rho).value;
}

/// Optimal two-state decomposition of rho along a leaf of constant C_T.
struct LeafDecomposition {
  PureState first;
  PureState second;
  double weight_first = 1.0;
  double weight_second = 0.0;
  Bloch direction; ///< unit chord direction in the Bloch ball

  ComplexMat2 mixture() const;
};

LeafDecomposition leaf(const AntiHermOp& theta, const DensityOp& rho);

} // namespace qroof
