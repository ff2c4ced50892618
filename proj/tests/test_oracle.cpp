#include <doctest.h>

#include <cmath>

#include "qroof/errors.hpp"
#include "qroof/oracle.hpp"
#include "qroof/roofs.hpp"
#include "support/generators.hpp"

using namespace qroof;
using qroof::testing::Rng;

namespace {

constexpr double kF05 = 0.354578902665269884;

ComplexMat2 diag(double a, double b) {
  ComplexMat2 m = ComplexMat2::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

OracleConfig quick() {
  OracleConfig cfg;
  cfg.grid = 24;
  cfg.restarts = 4;
  return cfg;
}

} // namespace

TEST_CASE("config validation") {
  OracleConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.grid = 4;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = OracleConfig{};
  cfg.restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("ensemble invariants") {
  const PureState up(1.0, 0.0), down(0.0, 1.0);
  const DensityOp half = DensityOp::maximally_mixed();
  CHECK_NOTHROW(Ensemble({up, down}, {0.5, 0.5}, half));
  CHECK_THROWS_AS(Ensemble({up, down}, {0.6, 0.5}, half), InvariantError);
  CHECK_THROWS_AS(Ensemble({up, down}, {0.7, 0.3}, half), InvariantError);
  CHECK_THROWS_AS(Ensemble({up}, {0.5, 0.5}, half), InvariantError);
}

TEST_CASE("chord ensemble") {
  const Ensemble e = chord_ensemble(DensityOp::maximally_mixed(), Bloch(0, 0, 1));
  REQUIRE(e.size() == 2);
  CHECK(e.weights()[0] == doctest::Approx(0.5));
  CHECK(std::abs(std::abs(e.states()[0].x0()) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(e.states()[1].x1()) - 1.0) < 1e-15);

  Rng rng(1);
  const PureState phi = rng.pure();
  CHECK(chord_ensemble(phi.projector(), rng.unit_vector()).size() == 1);

  for (int i = 0; i < 500; ++i) {
    const DensityOp rho = rng.density();
    const Ensemble ch = chord_ensemble(rho, rng.unit_vector());
    CHECK((ch.mixture() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("identity channel has zero roofs") {
  Rng rng(2);
  const KrausChannel id = identity_channel();
  for (int i = 0; i < 5; ++i) {
    const DensityOp rho = rng.density();
    CHECK(oracle_entropy_roof(id, rho, quick()).value < 1e-12);
    CHECK(oracle_concurrence(id, rho, quick()).value < 1e-12);
  }
}

TEST_CASE("degenerate channel at the centre") {
  const KrausChannel ch = degenerate_channel(0.5);
  const DensityOp half = DensityOp::maximally_mixed();
  const OracleResult e = oracle_entropy_roof(ch, half, OracleConfig{});
  CHECK(e.value >= kF05 - 1e-9);
  CHECK(e.value <= kF05 + 1e-4);
  CHECK((e.best.mixture() - half.matrix()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("degenerate channel on diagonal states") {
  for (double t : {0.3, 0.7}) {
    const KrausChannel ch = degenerate_channel(t);
    for (double r : {0.2, 0.6}) {
      const OracleResult c = oracle_concurrence(ch, DensityOp(diag(1 - r, r)), quick());
      CHECK(std::abs(c.value - std::sqrt(t * (1 - t)) * r) < 1e-4);
    }
  }
}

TEST_CASE("oracle never beats the closed form and gets close to it") {
  Rng rng(3);
  for (int c = 0; c < 6; ++c) {
    const KrausChannel ch = rng.cptp_channel();
    const AntiHermOp th = theta_from_channel(ch);
    for (int i = 0; i < 3; ++i) {
      const DensityOp rho = rng.interior_density();
      const OracleResult e = oracle_entropy_roof(ch, rho, OracleConfig{});
      const OracleResult k = oracle_concurrence(ch, rho, OracleConfig{});
      const double er = entropy_roof(th, rho), cr = channel_concurrence(th, rho);
      CHECK(e.value >= er - 1e-9);
      CHECK(k.value >= cr - 1e-9);
      CHECK(e.value <= er + 1e-4);
      CHECK(k.value <= cr + 1e-4);

      // The optimal ensemble is flat.
      std::vector<double> cs;
      for (const auto& s : e.best.states())
        cs.push_back(channel_concurrence(th, s.projector()));
      for (double v : cs)
        CHECK(std::abs(v - cs.front()) < 1e-3);

      const double ht = entropy_wrt_channel(ch, th, rho);
      CHECK(std::abs(mutual_information(ch, e.best) - ht) < 1e-4);
    }
  }
}

TEST_CASE("oracle is deterministic per seed") {
  Rng rng(4);
  const KrausChannel ch = rng.cptp_channel();
  const DensityOp rho = rng.interior_density();
  OracleConfig cfg = quick();
  const double a = oracle_entropy_roof(ch, rho, cfg).value;
  const double b = oracle_entropy_roof(ch, rho, cfg).value;
  CHECK(a == b);
  cfg.seed = 7;
  const double c = oracle_concurrence(ch, rho, cfg).value;
  const double d = oracle_concurrence(ch, rho, cfg).value;
  CHECK(c == d);
}

TEST_CASE("generic minimizer on a custom objective") {
  // g(pi) = z-coordinate of pi: the minimum over decompositions is the
  // z-coordinate of rho, attained by every decomposition.
  Rng rng(5);
  const DensityOp rho = rng.interior_density();
  auto g = [](const PureState& p) { return p.bloch().z(); };
  const OracleResult r = minimize_over_decompositions(g, rho, quick());
  CHECK(std::abs(r.value - rho.bloch().z()) < 1e-10);
}

TEST_CASE("mutual information") {
  const KrausChannel id = identity_channel();
  const DensityOp half = DensityOp::maximally_mixed();
  const Ensemble bit({PureState(1.0, 0.0), PureState(0.0, 1.0)}, {0.5, 0.5}, half);
  CHECK(mutual_information(id, bit) == doctest::Approx(1.0).epsilon(1e-14));

  Rng rng(6);
  const PureState phi = rng.pure();
  CHECK(mutual_information(rng.cptp_channel(), Ensemble({phi}, {1.0}, phi.projector())) ==
        doctest::Approx(0.0));

  for (int i = 0; i < 1000; ++i) {
    const KrausChannel ch = rng.cptp_channel();
    const int n = rng.integer(2, 4);
    std::vector<PureState> states;
    std::vector<double> w;
    double total = 0;
    for (int k = 0; k < n; ++k) {
      states.push_back(rng.pure());
      w.push_back(rng.uniform(0.05, 1.0));
      total += w.back();
    }
    ComplexMat2 avg = ComplexMat2::Zero();
    for (int k = 0; k < n; ++k) {
      w[k] /= total;
      avg += w[k] * states[k].projector_matrix();
    }
    const DensityOp bar(avg);
    const Ensemble e(states, w, bar);
    double rhs = von_neumann_entropy(apply(ch, bar));
    for (int k = 0; k < n; ++k)
      rhs -= w[k] * qroof::testing::entropy_by_eigen(apply(ch, states[k].projector()).matrix());
    CHECK(std::abs(mutual_information(ch, e) - rhs) < 1e-10);
  }
}

TEST_CASE("derive_seed separates streams") {
  CHECK(derive_seed(42, 0) != derive_seed(42, 1));
  CHECK(derive_seed(42, 3) == derive_seed(42, 3));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}
