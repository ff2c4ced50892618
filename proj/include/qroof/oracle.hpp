#pragma once

// Brute-force solvers for the variational definitions of E_T, C_T and H_T.
// Nothing here uses the anti-linear construction: the oracle only sees the
// Kraus operators.

#include <cstdint>
#include <functional>
#include <vector>

#include "qroof/channels.hpp"
#include "qroof/linalg2.hpp"

namespace qroof {

struct OracleConfig {
  int restarts = 16;
  int grid = 64;
  std::uint64_t seed = 42;
  int refine_iters = 200;
  double tol = 1e-12;

  /// Throws DomainError unless restarts >= 1, grid >= 8 and refine_iters >= 1.
  void validate() const;
};

/// Pure-state decomposition sum_j p_j pi_j of a density operator.
class Ensemble {
public:
  /// Throws InvariantError unless weights are a probability vector (1e-12)
  /// and the weighted projectors sum to `average` within 1e-9.
  Ensemble(std::vector<PureState> states, std::vector<double> weights, DensityOp average);

  const std::vector<PureState>& states() const { return states_; }
  const std::vector<double>& weights() const { return weights_; }
  const DensityOp& average() const { return average_; }
  std::size_t size() const { return states_.size(); }

  ComplexMat2 mixture() const;

private:
  std::vector<PureState> states_;
  std::vector<double> weights_;
  DensityOp average_;
};

/// Two-state ensemble from the chord through rho along `direction`. A pure
/// rho gives a singleton ensemble.
Ensemble chord_ensemble(const DensityOp& rho, const Bloch& direction);

struct OracleResult {
  double value;
  Ensemble best;
};

/// Minimizes sum_j p_j g(pi_j) over pure-state decompositions of rho.
OracleResult minimize_over_decompositions(const std::function<double(const PureState&)>& g,
                                          const DensityOp& rho, const OracleConfig& cfg);

/// min sum_j p_j S(T(pi_j)).
OracleResult oracle_entropy_roof(const KrausChannel& channel, const DensityOp& rho,
                                 const OracleConfig& cfg);

/// min sum_j p_j sqrt(det T(pi_j)).
OracleResult oracle_concurrence(const KrausChannel& channel, const DensityOp& rho,
                                const OracleConfig& cfg);

/// sum_j p_j S(T(pi_j) || T(average)); +infinity propagates.
double mutual_information(const KrausChannel& channel, const Ensemble& ensemble);

/// 64-bit seed for the stream with the given index.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

} // namespace qroof
