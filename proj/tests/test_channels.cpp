#include <doctest.h>

#include <cmath>

#include "qroof/channels.hpp"
#include "qroof/errors.hpp"
#include "support/generators.hpp"

using namespace qroof;
using qroof::testing::Rng;

TEST_CASE("validate_cptp") {
  const ValidationReport id = validate_cptp(identity_channel());
  CHECK(id.pass);
  CHECK(id.deviation == 0.0);

  const ValidationReport twice =
      validate_cptp(KrausChannel({ComplexMat2::Identity(), ComplexMat2::Identity()}));
  CHECK_FALSE(twice.pass);
  CHECK(twice.deviation == doctest::Approx(1.0));

  const double c = std::cos(0.4), s = std::sin(0.4);
  CHECK(validate_cptp(extremal_channel(c, std::cos(1.2), std::sin(1.2), s)).pass);

  // Exactly at the tolerance boundary.
  ComplexMat2 a = ComplexMat2::Identity();
  a(0, 0) = std::sqrt(1.0 + 5e-11);
  CHECK(validate_cptp(KrausChannel({a})).pass);
  a(0, 0) = std::sqrt(1.0 + 5e-10);
  CHECK_FALSE(validate_cptp(KrausChannel({a})).pass);
}

TEST_CASE("channel construction rejects bad input") {
  CHECK_THROWS_AS(KrausChannel({}), InvariantError);
  ComplexMat2 nan = ComplexMat2::Identity();
  nan(0, 1) = std::nan("");
  CHECK_THROWS_AS(KrausChannel({nan}), InvariantError);
}

TEST_CASE("extremal channel normalization") {
  CHECK_THROWS_AS(extremal_channel(1.0, 1.0, 0.5, 0.0), NormalizationError);
  const KrausChannel id = extremal_channel(1.0, 1.0, 0.0, 0.0);
  Rng rng(2);
  const DensityOp rho = rng.density();
  CHECK((apply(id, rho).matrix() - rho.matrix()).norm() < 1e-15);

  for (int i = 0; i < 50; ++i) {
    const double u = rng.uniform(-4, 4), v = rng.uniform(-4, 4);
    CHECK(validate_cptp(extremal_channel(std::cos(u), std::cos(v), std::sin(v), std::sin(u))).pass);
  }
}

TEST_CASE("degenerate channel matches the extremal form and its output formula") {
  const double t = 0.3;
  const KrausChannel deg = degenerate_channel(t);
  const KrausChannel ext = extremal_channel(1.0, std::sqrt(t), std::sqrt(1 - t), 0.0);
  REQUIRE(deg.size() == 2);
  for (std::size_t j = 0; j < 2; ++j)
    CHECK((deg.kraus()[j] - ext.kraus()[j]).norm() == 0.0);

  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const DensityOp rho = rng.density();
    ComplexMat2 expect;
    expect(0, 0) = 1.0 - t * rho(1, 1).real();
    expect(0, 1) = std::sqrt(t) * rho(0, 1);
    expect(1, 0) = std::sqrt(t) * rho(1, 0);
    expect(1, 1) = t * rho(1, 1).real();
    CHECK((apply(deg, rho).matrix() - expect).norm() < 1e-15);
  }

  CHECK_THROWS_AS(degenerate_channel(-0.1), DomainError);
  CHECK_THROWS_AS(degenerate_channel(1.1), DomainError);
  const DensityOp out = apply(degenerate_channel(0.0), rng.density());
  CHECK(std::abs(out(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("apply on random channels") {
  Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    const KrausChannel ch = rng.cptp_channel();
    REQUIRE(validate_cptp(ch).pass);
    const DensityOp rho = rng.density();
    const DensityOp out = apply(ch, rho);
    CHECK(std::abs(out.matrix().trace() - Complex(1, 0)) < 1e-12);
    CHECK(out.matrix().determinant().real() >= -1e-12);

    ComplexMat2 ref = ComplexMat2::Zero();
    for (const auto& a : ch.kraus())
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          for (int r = 0; r < 2; ++r)
            for (int s = 0; s < 2; ++s)
              ref(p, s) += a(p, q) * rho(q, r) * std::conj(a(s, r));
    CHECK((out.matrix() - ref).norm() < 1e-14);
  }
}

TEST_CASE("apply is convex-linear and phase invariant") {
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    const KrausChannel ch = rng.cptp_channel();
    const DensityOp r1 = rng.density(), r2 = rng.density();
    const double lam = rng.uniform();
    const DensityOp mix(lam * r1.matrix() + (1 - lam) * r2.matrix());
    const ComplexMat2 lhs = apply(ch, mix).matrix();
    const ComplexMat2 rhs = lam * apply(ch, r1).matrix() + (1 - lam) * apply(ch, r2).matrix();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);

    const KrausChannel shifted = ch.with_global_phase(rng.uniform(0, 6.3));
    CHECK((apply(shifted, r1).matrix() - apply(ch, r1).matrix()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("depolarizing channel") {
  CHECK_THROWS_AS(depolarizing(-0.6), DomainError);
  CHECK_THROWS_AS(depolarizing(1.2), DomainError);
  Rng rng(10);

  const KrausChannel d0 = depolarizing(0.0);
  CHECK(validate_cptp(d0).pass);
  for (int i = 0; i < 100; ++i) {
    const DensityOp out = apply(d0, rng.pure().projector());
    CHECK((out.matrix() - 0.5 * ComplexMat2::Identity()).norm() < 1e-15);
    CHECK(std::abs(out.det() - 0.25) < 1e-15);
  }

  for (double s : {-0.5, 0.3, 0.5, 1.0}) {
    const KrausChannel ch = depolarizing(s);
    CHECK(validate_cptp(ch).pass);
    for (int i = 0; i < 50; ++i) {
      const DensityOp rho = rng.density();
      const ComplexMat2 expect = (ComplexMat2::Identity() + s * rho.matrix()) / (s + 2.0);
      CHECK((apply(ch, rho).matrix() - expect).norm() < 1e-14);
    }
  }

  // The four-term representation at s = 1 is not the identity map.
  const DensityOp up = PureState(1.0, 0.0).projector();
  CHECK(std::abs(apply(depolarizing(1.0), up)(0, 0).real() - 2.0 / 3.0) < 1e-15);

  const double det_half = [&] {
    const DensityOp out = apply(depolarizing(0.5), rng.pure().projector());
    return out.det();
  }();
  for (int i = 0; i < 1000; ++i)
    CHECK(std::abs(apply(depolarizing(0.5), rng.pure().projector()).det() - det_half) < 1e-12);
}

TEST_CASE("kraus span of two-Kraus channels") {
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const KrausChannel ch = rng.cptp_channel();
    const SpanBasis span = kraus_span(ch);
    CHECK(span.span_dim == 2);
    CHECK((span.basis_a - ch.kraus()[0]).norm() == 0.0);
    CHECK((span.basis_b - ch.kraus()[1]).norm() == 0.0);
    CHECK(std::abs(span.mu1[0] - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(span.mu2[0]) < 1e-12);
    CHECK(std::abs(span.mu1[1]) < 1e-12);
    CHECK(std::abs(span.mu2[1] - Complex(1, 0)) < 1e-12);
    CHECK(span.residual <= 1e-10);
  }
}

TEST_CASE("kraus span with a dependent third operator") {
  Rng rng(14);
  auto [a, b] = rng.cptp_pair();
  const double c = 0.5;
  std::vector<ComplexMat2> ops = {a, b, c * (a + b)};
  const KrausChannel ch(ops);
  const SpanBasis span = kraus_span(ch);
  CHECK(span.span_dim == 2);
  CHECK(span.basis_indices == std::vector<std::size_t>{0, 1});
  CHECK(std::abs(span.mu1[2] - Complex(c, 0)) < 1e-10);
  CHECK(std::abs(span.mu2[2] - Complex(c, 0)) < 1e-10);
  CHECK(span.residual <= 1e-10);
}

TEST_CASE("kraus span rank one and four") {
  const KrausChannel id = identity_channel();
  const SpanBasis one = kraus_span(id);
  CHECK(one.span_dim == 1);
  CHECK(one.basis_b.norm() == 0.0);
  CHECK(std::abs(one.mu2[0]) == 0.0);

  const KrausChannel two_ids({std::sqrt(0.5) * ComplexMat2::Identity(),
                              std::sqrt(0.5) * ComplexMat2::Identity()});
  CHECK(kraus_span(two_ids).span_dim == 1);

  for (double s : {0.3, 0.5, 1.0})
    CHECK(kraus_span(depolarizing(s)).span_dim == 4);
  // At s = -1/2 the identity term has weight 0 and only the Paulis remain.
  CHECK(kraus_span(depolarizing(-0.5)).span_dim == 3);
  // s = 0 has four equal weights and still spans the full space.
  CHECK(kraus_span(depolarizing(0.0)).span_dim == 4);
}

TEST_CASE("kraus span reconstruction on random 2-dimensional spans") {
  Rng rng(16);
  for (int i = 0; i < 200; ++i) {
    const ComplexMat2 a = rng.disc_matrix(), b = rng.disc_matrix();
    const int m = rng.integer(2, 6);
    std::vector<ComplexMat2> ops;
    for (int j = 0; j < m; ++j)
      ops.push_back(rng.in_disc() * a + rng.in_disc() * b);
    const KrausChannel ch(ops);
    const SpanBasis span = kraus_span(ch);
    CHECK(span.span_dim == 2);
    CHECK(span.residual <= 1e-10);
    for (int j = 0; j < m; ++j) {
      const ComplexMat2 back = span.mu1[j] * span.basis_a + span.mu2[j] * span.basis_b;
      CHECK((back - ops[j]).norm() <= 1e-10);
    }
    CHECK(span.smallest_relative_singular_value() > 1e-10);
  }
}

TEST_CASE("span_in_basis") {
  Rng rng(18);
  auto [a, b] = rng.cptp_pair();
  const KrausChannel ch({a, b});
  const SpanBasis swapped = span_in_basis(ch, b, a);
  CHECK(std::abs(swapped.mu2[0] - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(swapped.mu1[1] - Complex(1, 0)) < 1e-12);
  CHECK_THROWS_AS(span_in_basis(ch, a, rng.disc_matrix()), InvariantError);
}
