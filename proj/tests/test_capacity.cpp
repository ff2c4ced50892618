#include <doctest.h>

#include <cmath>

#include "qroof/capacity.hpp"
#include "qroof/errors.hpp"
#include "support/generators.hpp"

using namespace qroof;
using qroof::testing::Rng;

namespace {

struct Frozen {
  double t, r_star, value;
};

// Maximizers of h(r t) - f(2 sqrt(t(1-t)) r) from a 30-digit search.
constexpr Frozen kDegenerate[] = {
    {0.25, 0.399050132288618662, 0.269820742425279014},
    {0.50, 0.403894772659901413, 0.471729390598583899},
    {0.75, 0.425496714279104529, 0.683665630304890604},
};

} // namespace

TEST_CASE("nelder mead on a quadratic") {
  auto fn = [](const Eigen::VectorXd& x) { return (x - Eigen::Vector3d(0.1, -0.2, 0.3)).squaredNorm(); };
  const SimplexResult r = nelder_mead(fn, Eigen::Vector3d::Zero(), 0.5, 2000, 1e-14);
  CHECK((r.x - Eigen::Vector3d(0.1, -0.2, 0.3)).norm() < 1e-6);
  CHECK(r.value < 1e-12);
}

TEST_CASE("capacity_degenerate frozen values") {
  for (const auto& f : kDegenerate) {
    const DegenerateCapacity d = capacity_degenerate(f.t);
    CHECK(std::abs(d.value - f.value) < 1e-12);
    CHECK(std::abs(d.r_star - f.r_star) < 1e-12);
  }
}

TEST_CASE("capacity_degenerate limits") {
  const DegenerateCapacity one = capacity_degenerate(1.0);
  CHECK(std::abs(one.value - 1.0) < 1e-12);
  CHECK(std::abs(one.r_star - 0.5) < 1e-6);
  CHECK(capacity_degenerate(1e-6).value < 1e-4);
  CHECK_THROWS_AS(capacity_degenerate(0.0), DomainError);
  CHECK_THROWS_AS(capacity_degenerate(1.5), DomainError);

  double prev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double v = capacity_degenerate(i / 20.0).value;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("capacity of the degenerate channel matches the 1-D reduction") {
  for (const auto& f : kDegenerate) {
    const KrausChannel ch = degenerate_channel(f.t);
    const CapacityResult c = capacity(ch, theta_from_channel(ch), capacity_config());
    CHECK(std::abs(c.value - f.value) < 1e-6);
    const Bloch b = c.argmax.bloch();
    CHECK(std::abs(b.x()) < 1e-4);
    CHECK(std::abs(b.y()) < 1e-4);
    CHECK(std::abs(b.z() - (1 - 2 * f.r_star)) < 1e-3);
  }
}

TEST_CASE("capacity of identity and constant channels") {
  const KrausChannel id = identity_channel();
  const CapacityResult c = capacity(id, theta_from_channel(id), capacity_config());
  CHECK(std::abs(c.value - 1.0) < 1e-9);
  CHECK(c.argmax.bloch().norm() < 1e-4);

  const KrausChannel k = degenerate_channel(0.0);
  const CapacityResult z = capacity(k, theta_from_channel(k), capacity_config());
  CHECK(std::abs(z.value) < 1e-9);
}

TEST_CASE("capacity maximality over a Bloch grid") {
  Rng rng(1);
  for (int c = 0; c < 3; ++c) {
    const KrausChannel ch = rng.cptp_channel();
    const AntiHermOp th = theta_from_channel(ch);
    const CapacityResult cap = capacity(ch, th, capacity_config());
    const int n = 10;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const Bloch b(-1 + 2.0 * (i + 0.5) / n, -1 + 2.0 * (j + 0.5) / n, -1 + 2.0 * (k + 0.5) / n);
          if (b.norm() > 1.0)
            continue;
          CHECK(entropy_wrt_channel(ch, th, DensityOp::from_bloch(b)) <= cap.value + 1e-9);
        }
  }
}

TEST_CASE("capacity is invariant under a global phase") {
  Rng rng(2);
  const KrausChannel ch = rng.cptp_channel();
  const KrausChannel shifted = ch.with_global_phase(1.234);
  const double a = capacity(ch, theta_from_channel(ch), capacity_config()).value;
  const double b = capacity(shifted, theta_from_channel(shifted), capacity_config()).value;
  CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("capacity is deterministic") {
  Rng rng(3);
  const KrausChannel ch = rng.cptp_channel();
  const AntiHermOp th = theta_from_channel(ch);
  const CapacityResult a = capacity(ch, th, capacity_config(5));
  const CapacityResult b = capacity(ch, th, capacity_config(5));
  CHECK(a.value == b.value);
  CHECK(a.argmax.bloch() == b.argmax.bloch());
}

TEST_CASE("optimal signal report") {
  const KrausChannel id = identity_channel();
  const SignalReport ri = optimal_signal_report(id, theta_from_channel(id), capacity_config());
  CHECK(ri.overlap < 1e-4);
  CHECK(ri.mi_matches);

  const KrausChannel deg = degenerate_channel(0.5);
  const SignalReport rd = optimal_signal_report(deg, theta_from_channel(deg), capacity_config());
  const double r_star = kDegenerate[1].r_star;
  CHECK(std::abs(rd.overlap - std::abs(1 - 2 * r_star)) < 1e-3);
  CHECK_FALSE(rd.orthogonal);
  CHECK(rd.mi_matches);
  CHECK(std::abs(rd.mutual_information - rd.capacity.value) < 1e-5);

  const KrausChannel k = degenerate_channel(0.0);
  const SignalReport rk = optimal_signal_report(k, theta_from_channel(k), capacity_config());
  CHECK(rk.degenerate_optimum);

  Rng rng(4);
  for (int i = 0; i < 5; ++i) {
    const KrausChannel ch = rng.cptp_channel();
    const SignalReport r = optimal_signal_report(ch, theta_from_channel(ch), capacity_config());
    CHECK(std::abs(r.mutual_information - r.capacity.value) < 1e-5);
  }
}
