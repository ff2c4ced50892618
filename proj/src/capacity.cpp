#include "qroof/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "qroof/errors.hpp"

namespace qroof {

SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn,
                          const Eigen::VectorXd& start, double initial_step, int max_iters,
                          double tol) {
  const auto n = start.size();
  std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n + 1), start);
  std::vector<double> vals(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i < n; ++i)
    pts[static_cast<std::size_t>(i + 1)](i) += initial_step;
  for (std::size_t i = 0; i < pts.size(); ++i)
    vals[i] = fn(pts[i]);

  std::vector<std::size_t> idx(pts.size());
  SimplexResult res;
  for (res.iterations = 0; res.iterations < max_iters; ++res.iterations) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    const std::size_t best = idx.front(), worst = idx.back(), second = idx[idx.size() - 2];

    double diameter = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      diameter = std::max(diameter, (pts[i] - pts[best]).norm());
    if (vals[worst] - vals[best] <= tol * (1.0 + std::abs(vals[best])) && diameter < 1e-9)
      break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != worst)
        centroid += pts[i];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + (centroid - pts[worst]);
    const double fr = fn(reflected);
    if (fr < vals[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = fn(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = fn(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best)
        continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = fn(pts[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  res.x = pts[best];
  res.value = vals[best];
  return res;
}

OracleConfig capacity_config(std::uint64_t seed) {
  OracleConfig cfg;
  cfg.restarts = 32;
  cfg.refine_iters = 2000;
  cfg.seed = seed;
  cfg.tol = 1e-13;
  return cfg;
}

namespace {

Bloch project_to_ball(const Eigen::VectorXd& x) {
  Bloch b(x(0), x(1), x(2));
  const double n = b.norm();
  return n > 1.0 ? Bloch(b / n) : b;
}

double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base), f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

// Start k: the origin for k = 0, otherwise a shifted Halton point mapped
// uniformly into the ball.
Bloch start_point(std::size_t k, std::uint64_t seed) {
  if (k == 0)
    return Bloch::Zero();
  const std::uint64_t s = derive_seed(seed, 0);
  const double shift[3] = {static_cast<double>(s & 0xFFFFF) / 0x100000,
                           static_cast<double>((s >> 20) & 0xFFFFF) / 0x100000,
                           static_cast<double>((s >> 40) & 0xFFFFF) / 0x100000};
  const std::uint64_t bases[3] = {2, 3, 5};
  double u[3];
  for (int d = 0; d < 3; ++d)
    u[d] = std::fmod(radical_inverse(k, bases[d]) + shift[d], 1.0);
  const double r = std::cbrt(u[0]) * 0.95;
  const double cz = 2.0 * u[1] - 1.0;
  const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
  const double ph = 2.0 * std::numbers::pi * u[2];
  return r * Bloch(sz * std::cos(ph), sz * std::sin(ph), cz);
}

Ensemble leaf_ensemble(const LeafDecomposition& lf, const DensityOp& rho) {
  if (lf.weight_second == 0.0)
    return Ensemble({lf.first}, {1.0}, rho);
  return Ensemble({lf.first, lf.second}, {lf.weight_first, lf.weight_second}, rho);
}

} // namespace

CapacityResult capacity(const KrausChannel& channel, const AntiHermOp& theta, const OracleConfig& cfg) {
  cfg.validate();
  const auto objective = [&](const Eigen::VectorXd& x) {
    return -channel_entropy(channel, theta, DensityOp::from_bloch(project_to_ball(x))).value;
  };

  Bloch best_x = Bloch::Zero();
  double best_v = std::numeric_limits<double>::infinity();
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(cfg.restarts); ++k) {
    const Eigen::VectorXd x0 = start_point(k, cfg.seed);
    SimplexResult r = nelder_mead(objective, x0, 0.25, cfg.refine_iters, cfg.tol);
    r = nelder_mead(objective, r.x, 1e-3, cfg.refine_iters, cfg.tol);
    if (r.value < best_v) {
      best_v = r.value;
      best_x = project_to_ball(r.x);
      best_k = k;
    }
  }
  DensityOp argmax = DensityOp::from_bloch(best_x);
  LeafDecomposition lf = leaf(theta, argmax);
  Ensemble ens = leaf_ensemble(lf, argmax);
  return CapacityResult{entropy_wrt_channel(channel, theta, argmax), argmax, lf, std::move(ens), best_k};
}

DegenerateCapacity capacity_degenerate(double t) {
  if (!(t > 0.0 && t <= 1.0))
    throw DomainError("capacity_degenerate requires 0 < t <= 1");
  const double c = 2.0 * std::sqrt(t * (1.0 - t));
  const auto g = [&](double r) { return binary_entropy(r * t) - f_curve(c * r); };

  constexpr int kGrid = 1 << 12;
  const double step = 1.0 / (kGrid - 1);
  int best = 0;
  double best_v = g(0.0);
  for (int i = 1; i < kGrid; ++i) {
    const double v = g(i * step);
    if (v > best_v + 1e-12) {
      best_v = v;
      best = i;
    }
  }
  double lo = std::max(0.0, (best - 1) * step);
  double hi = std::min(1.0, (best + 1) * step);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = g(x1), f2 = g(x2);
  while (hi - lo > 1e-12) {
    if (f1 >= f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = g(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = g(x2);
    }
  }
  DegenerateCapacity out;
  out.grid_resolution = step;
  out.r_star = 0.5 * (lo + hi);
  out.value = g(out.r_star);
  if (best_v > out.value) {
    out.value = best_v;
    out.r_star = best * step;
  }

  // Golden section stalls near sqrt(eps) in r because g is flat at its
  // maximum; bisect the analytic derivative to pin r* down further.
  const auto dg = [&](double r) {
    const double x = r * t, y = c * r;
    const double s = std::sqrt(std::max(0.0, 1.0 - y * y));
    const double p = 0.5 * (1.0 + s);
    const double df = y > 0.0 ? c * y / (2.0 * s) * std::log2(p / (1.0 - p)) : 0.0;
    return t * std::log2((1.0 - x) / x) - df;
  };
  double a = std::max(out.r_star - 2.0 * step, 0.5 * out.r_star);
  double b = std::min(out.r_star + 2.0 * step, 0.5 * (out.r_star + 1.0));
  if (out.r_star > 0.0 && out.r_star < 1.0 && dg(a) > 0.0 && dg(b) < 0.0) {
    for (int i = 0; i < 200 && b - a > 0.0; ++i) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b)
        break;
      (dg(m) > 0.0 ? a : b) = m;
    }
    const double r = 0.5 * (a + b);
    const double v = g(r);
    if (v >= out.value - 1e-15) {
      out.r_star = r;
      out.value = v;
    }
  }
  return out;
}

SignalReport optimal_signal_report(const KrausChannel& channel, const AntiHermOp& theta,
                                   const OracleConfig& cfg) {
  CapacityResult cap = capacity(channel, theta, cfg);
  const double ov = cap.leaf.weight_second == 0.0 ? 1.0 : overlap(cap.leaf.first, cap.leaf.second);
  const double mi = mutual_information(channel, cap.ensemble);
  const double value = cap.value;
  return SignalReport{std::move(cap), ov, ov < 1e-6, mi, std::abs(mi - value) <= 1e-5, value < 1e-12};
}

} // namespace qroof
