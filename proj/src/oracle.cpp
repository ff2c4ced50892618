#include "qroof/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "qroof/errors.hpp"

namespace qroof {

void OracleConfig::validate() const {
  if (restarts < 1)
    throw DomainError("oracle restarts must be >= 1");
  if (grid < 8)
    throw DomainError("oracle grid must be >= 8");
  if (refine_iters < 1)
    throw DomainError("oracle refine_iters must be >= 1");
}

Ensemble::Ensemble(std::vector<PureState> states, std::vector<double> weights, DensityOp average)
    : states_(std::move(states)), weights_(std::move(weights)), average_(std::move(average)) {
  if (states_.empty() || states_.size() != weights_.size())
    throw InvariantError("ensemble needs one weight per state");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= -kStateTol))
      throw InvariantError("ensemble weight is negative");
    total += w;
  }
  if (std::abs(total - 1.0) > kStateTol)
    throw InvariantError("ensemble weights do not sum to 1");
  if ((mixture() - average_.matrix()).cwiseAbs().maxCoeff() > 1e-9)
    throw InvariantError("ensemble does not average to the given state");
}

ComplexMat2 Ensemble::mixture() const {
  ComplexMat2 m = ComplexMat2::Zero();
  for (std::size_t j = 0; j < states_.size(); ++j)
    m += weights_[j] * states_[j].projector_matrix();
  return m;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  // splitmix64 finalizer over root + (index + 1) * golden gamma
  std::uint64_t z = root + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

using Objective = std::function<double(const PureState&)>;

struct Decomp {
  std::vector<Bloch> points;
  std::vector<double> weights;
  double value = std::numeric_limits<double>::infinity();
};

Bloch direction_from_angles(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

Decomp chord_decomp(const Objective& g, const Bloch& point, const Bloch& n) {
  const Chord c = chord_through(point, n);
  Decomp d;
  if (c.weight_minus == 0.0) {
    d.points = {c.plus};
    d.weights = {1.0};
    d.value = g(PureState::from_bloch(c.plus));
    return d;
  }
  d.points = {c.plus, c.minus};
  d.weights = {c.weight_plus, c.weight_minus};
  d.value = c.weight_plus * g(PureState::from_bloch(c.plus)) +
            c.weight_minus * g(PureState::from_bloch(c.minus));
  return d;
}

// Distances from `point` to the sphere along +m and -m.
std::pair<double, double> reach(const Bloch& point, const Bloch& m) {
  const double b = point.dot(m);
  const double c = std::min(0.0, point.squaredNorm() - 1.0);
  const double q = std::sqrt(b * b - c);
  return {-b + q, b + q};
}

// Four-state layer: rho = lam rho_a + (1 - lam) rho_b with rho_a, rho_b on a
// segment through rho along m, each split by a chord along n.
Decomp split_decomp(const Objective& g, const Bloch& point, const Bloch& n, const Bloch& m,
                    double lam) {
  const auto [up, down] = reach(point, m);
  const double h = 0.5 * std::min(up / (1.0 - lam), down / lam);
  const Bloch pa = point + (1.0 - lam) * h * m;
  const Bloch pb = point - lam * h * m;
  const Decomp da = chord_decomp(g, pa, n);
  const Decomp db = chord_decomp(g, pb, n);
  Decomp d;
  for (std::size_t j = 0; j < da.points.size(); ++j) {
    d.points.push_back(da.points[j]);
    d.weights.push_back(lam * da.weights[j]);
  }
  for (std::size_t j = 0; j < db.points.size(); ++j) {
    d.points.push_back(db.points[j]);
    d.weights.push_back((1.0 - lam) * db.weights[j]);
  }
  d.value = lam * da.value + (1.0 - lam) * db.value;
  return d;
}

Decomp refine_four_state(const Objective& g, const Bloch& point, const Bloch& n, Decomp best) {
  constexpr int kMixGrid = 65;
  Bloch e1 = n.unitOrthogonal();
  const Bloch e2 = n.cross(e1).normalized();
  for (const Bloch& m : {e1, e2}) {
    int best_i = -1;
    double best_v = best.value;
    for (int i = 1; i <= kMixGrid; ++i) {
      const double lam = static_cast<double>(i) / (kMixGrid + 1);
      const Decomp d = split_decomp(g, point, n, m, lam);
      if (d.value < best_v) {
        best_v = d.value;
        best_i = i;
      }
    }
    if (best_i < 0)
      continue;
    // golden-section refinement of the mixing parameter
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = static_cast<double>(best_i - 1) / (kMixGrid + 1);
    double hi = static_cast<double>(best_i + 1) / (kMixGrid + 1);
    lo = std::max(lo, 1e-6);
    hi = std::min(hi, 1.0 - 1e-6);
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = split_decomp(g, point, n, m, x1).value;
    double f2 = split_decomp(g, point, n, m, x2).value;
    for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
      if (f1 < f2) {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = split_decomp(g, point, n, m, x1).value;
      } else {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = split_decomp(g, point, n, m, x2).value;
      }
    }
    Decomp cand = split_decomp(g, point, n, m, f1 < f2 ? x1 : x2);
    const Decomp at_grid = split_decomp(g, point, n, m, static_cast<double>(best_i) / (kMixGrid + 1));
    if (at_grid.value < cand.value)
      cand = at_grid;
    if (cand.value < best.value)
      best = std::move(cand);
  }
  return best;
}

struct Angles {
  double polar;
  double azimuth;
};

// Coordinate descent on the chord angles with step halving.
std::pair<Angles, Decomp> descend(const Objective& g, const Bloch& point, Angles start,
                                  double step_polar, double step_azimuth, const OracleConfig& cfg) {
  Angles cur = start;
  Decomp cur_d = chord_decomp(g, point, direction_from_angles(cur.polar, cur.azimuth));
  for (int it = 0; it < cfg.refine_iters; ++it) {
    if (step_polar < 1e-11 && step_azimuth < 1e-11)
      break;
    const Angles trials[4] = {{cur.polar + step_polar, cur.azimuth},
                              {cur.polar - step_polar, cur.azimuth},
                              {cur.polar, cur.azimuth + step_azimuth},
                              {cur.polar, cur.azimuth - step_azimuth}};
    int best = -1;
    Decomp best_d = cur_d;
    for (int k = 0; k < 4; ++k) {
      Decomp d = chord_decomp(g, point, direction_from_angles(trials[k].polar, trials[k].azimuth));
      if (d.value < best_d.value - cfg.tol * std::abs(best_d.value)) {
        best = k;
        best_d = std::move(d);
      }
    }
    if (best < 0) {
      step_polar *= 0.5;
      step_azimuth *= 0.5;
    } else {
      cur = trials[best];
      cur_d = std::move(best_d);
    }
  }
  return {cur, cur_d};
}

Ensemble to_ensemble(const Decomp& d, const DensityOp& rho) {
  std::vector<PureState> states;
  states.reserve(d.points.size());
  for (const Bloch& p : d.points)
    states.push_back(PureState::from_bloch(p));
  return Ensemble(std::move(states), d.weights, rho);
}

} // namespace

Ensemble chord_ensemble(const DensityOp& rho, const Bloch& direction) {
  const Chord c = chord_through(rho.bloch(), direction);
  if (c.weight_minus == 0.0)
    return Ensemble({PureState::from_bloch(c.plus)}, {1.0}, rho);
  return Ensemble({PureState::from_bloch(c.plus), PureState::from_bloch(c.minus)},
                  {c.weight_plus, c.weight_minus}, rho);
}

OracleResult minimize_over_decompositions(const Objective& g, const DensityOp& rho,
                                          const OracleConfig& cfg) {
  cfg.validate();
  const Bloch point = rho.bloch();
  if (1.0 - point.squaredNorm() <= kStateTol) {
    const PureState pi = PureState::from_bloch(point);
    return {g(pi), Ensemble({pi}, {1.0}, rho)};
  }

  // Equal-area grid of chord directions: uniform in cos(polar) and azimuth.
  const int n = cfg.grid;
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<Angles> cells;
  std::vector<double> values;
  cells.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    const double polar = std::acos(-1.0 + (2.0 * i + 1.0) / n);
    for (int j = 0; j < n; ++j) {
      const Angles a{polar, two_pi * (j + 0.5) / n};
      cells.push_back(a);
      values.push_back(chord_decomp(g, point, direction_from_angles(a.polar, a.azimuth)).value);
    }
  }
  std::vector<std::size_t> order(cells.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  const double step_polar = std::numbers::pi / n;
  const double step_azimuth = two_pi / n;
  Decomp best;
  const auto restarts = std::min<std::size_t>(static_cast<std::size_t>(cfg.restarts), cells.size());
  // Each restart owns its random stream, so the reduction below (lowest
  // value, lowest index on ties) gives the same answer in any execution order.
  for (std::size_t r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(derive_seed(cfg.seed, r));
    std::uniform_real_distribution<double> jitter(-0.5, 0.5);
    Angles start = cells[order[r]];
    if (r > 0) {
      start.polar += jitter(rng) * step_polar;
      start.azimuth += jitter(rng) * step_azimuth;
    }
    auto [at, d] = descend(g, point, start, step_polar, step_azimuth, cfg);
    d = refine_four_state(g, point, direction_from_angles(at.polar, at.azimuth), std::move(d));
    if (d.value < best.value)
      best = std::move(d);
  }
  return {best.value, to_ensemble(best, rho)};
}

OracleResult oracle_entropy_roof(const KrausChannel& channel, const DensityOp& rho,
                                 const OracleConfig& cfg) {
  const Objective g = [&](const PureState& pi) {
    return von_neumann_entropy(DensityOp(channel.apply_raw(pi.projector_matrix())));
  };
  return minimize_over_decompositions(g, rho, cfg);
}

OracleResult oracle_concurrence(const KrausChannel& channel, const DensityOp& rho,
                                const OracleConfig& cfg) {
  const Objective g = [&](const PureState& pi) {
    return std::sqrt(DensityOp(channel.apply_raw(pi.projector_matrix())).det());
  };
  return minimize_over_decompositions(g, rho, cfg);
}

double mutual_information(const KrausChannel& channel, const Ensemble& ensemble) {
  const DensityOp out_avg = apply(channel, ensemble.average());
  double total = 0.0;
  for (std::size_t j = 0; j < ensemble.size(); ++j) {
    const double w = ensemble.weights()[j];
    if (w <= 0.0)
      continue;
    total += w * relative_entropy(apply(channel, ensemble.states()[j].projector()), out_avg);
  }
  return total;
}

} // namespace qroof
