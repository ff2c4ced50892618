#pragma once

// Holevo one-shot capacity max_rho H_T(rho).

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qroof/antilinear.hpp"
#include "qroof/channels.hpp"
#include "qroof/oracle.hpp"
#include "qroof/roofs.hpp"

namespace qroof {

/// Downhill simplex (Nelder-Mead) minimizer.
struct SimplexResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
};
SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn,
                          const Eigen::VectorXd& start, double initial_step, int max_iters,
                          double tol);

/// Starting configuration for capacity(): 32 starts, up to 2000 simplex
/// iterations per start.
OracleConfig capacity_config(std::uint64_t seed = 42);

struct CapacityResult {
  double value = 0.0;
  DensityOp argmax = DensityOp::maximally_mixed();
  LeafDecomposition leaf;
  Ensemble ensemble;
  std::size_t best_start = 0;
};

/// Multistart simplex search of H_T over the Bloch ball. cfg.restarts is the
/// number of starts, cfg.refine_iters the iteration cap per start and
/// cfg.tol the simplex value tolerance.
CapacityResult capacity(const KrausChannel& channel, const AntiHermOp& theta, const OracleConfig& cfg);

struct DegenerateCapacity {
  double value = 0.0;
  double r_star = 0.0;
  double grid_resolution = 0.0;
};

/// max over r in [0,1] of h(r t) - f(2 sqrt(t(1-t)) r) for the channel
/// degenerate_channel(t), 0 < t <= 1. Dense grid of 2^12 points, golden-section
/// refinement, then bisection on the derivative to locate r*.
DegenerateCapacity capacity_degenerate(double t);

struct SignalReport {
  CapacityResult capacity;
  double overlap = 0.0;        ///< |<phi1|phi2>| of the leaf endpoints
  bool orthogonal = false;     ///< overlap < 1e-6
  double mutual_information = 0.0;
  bool mi_matches = false;     ///< |MI - capacity| <= 1e-5
  bool degenerate_optimum = false; ///< capacity value is 0
};

SignalReport optimal_signal_report(const KrausChannel& channel, const AntiHermOp& theta,
                                   const OracleConfig& cfg);

} // namespace qroof
