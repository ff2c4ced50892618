#include "qroof/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "qroof/errors.hpp"

namespace qroof {

namespace {

using Vec4 = Eigen::Matrix<Complex, 4, 1>;

Vec4 vectorize(const ComplexMat2& m) { return Eigen::Map<const Vec4>(m.data()); }

void fill_coefficients(const KrausChannel& channel, SpanBasis& span) {
  const auto& ks = channel.kraus();
  span.mu1.assign(ks.size(), Complex{});
  span.mu2.assign(ks.size(), Complex{});
  span.residual = 0.0;
  if (span.span_dim == 0)
    return;

  Eigen::Matrix<Complex, 4, 2> basis;
  basis.col(0) = vectorize(span.basis_a);
  basis.col(1) = vectorize(span.basis_b);
  const auto qr = basis.leftCols(span.span_dim).colPivHouseholderQr();
  for (std::size_t j = 0; j < ks.size(); ++j) {
    const Vec4 target = vectorize(ks[j]);
    const Eigen::VectorXcd mu = qr.solve(target);
    span.mu1[j] = mu(0);
    if (span.span_dim == 2)
      span.mu2[j] = mu(1);
    const ComplexMat2 recon = span.mu1[j] * span.basis_a + span.mu2[j] * span.basis_b;
    span.residual = std::max(span.residual, (ks[j] - recon).norm());
  }
}

} // namespace

KrausChannel::KrausChannel(std::vector<ComplexMat2> kraus, std::string name)
    : kraus_(std::move(kraus)), name_(std::move(name)) {
  if (kraus_.empty())
    throw InvariantError("a channel needs at least one Kraus operator");
  for (const auto& k : kraus_)
    if (!all_finite(k))
      throw InvariantError("Kraus operator has non-finite entries");
}

ComplexMat2 KrausChannel::apply_raw(const ComplexMat2& m) const {
  ComplexMat2 out = ComplexMat2::Zero();
  for (const auto& a : kraus_)
    out.noalias() += a * m * a.adjoint();
  return out;
}

KrausChannel KrausChannel::with_global_phase(double phi) const {
  const Complex phase = std::polar(1.0, phi);
  std::vector<ComplexMat2> ks = kraus_;
  for (auto& k : ks)
    k *= phase;
  return KrausChannel(std::move(ks), name_);
}

ValidationReport validate_cptp(const KrausChannel& channel, double tol) {
  ComplexMat2 sum = ComplexMat2::Zero();
  for (const auto& a : channel.kraus())
    sum.noalias() += a.adjoint() * a;
  const ComplexMat2 diff = sum - ComplexMat2::Identity();
  ValidationReport report;
  report.deviation = diff.cwiseAbs().maxCoeff();
  report.pass = report.deviation <= tol;
  return report;
}

DensityOp apply(const KrausChannel& channel, const DensityOp& rho) {
  return DensityOp(channel.apply_raw(rho.matrix()));
}

KrausChannel extremal_channel(Complex a00, Complex a11, Complex b01, Complex b10) {
  const double n0 = std::norm(a00) + std::norm(b10);
  const double n1 = std::norm(a11) + std::norm(b01);
  if (std::abs(n0 - 1.0) > kTraceTol || std::abs(n1 - 1.0) > kTraceTol)
    throw NormalizationError("extremal channel requires |a00|^2+|b10|^2 = |a11|^2+|b01|^2 = 1");
  ComplexMat2 a, b;
  a << a00, 0.0, 0.0, a11;
  b << 0.0, b01, b10, 0.0;
  return KrausChannel({a, b}, "extremal");
}

KrausChannel degenerate_channel(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw DomainError("degenerate channel parameter t must lie in [0, 1]");
  ComplexMat2 a, b;
  a << 1.0, 0.0, 0.0, std::sqrt(t);
  b << 0.0, std::sqrt(1.0 - t), 0.0, 0.0;
  return KrausChannel({a, b}, "degenerate-" + std::to_string(t));
}

KrausChannel identity_channel() { return KrausChannel({ComplexMat2::Identity()}, "identity"); }

KrausChannel depolarizing(double s) {
  if (!(s >= -0.5 && s <= 1.0))
    throw DomainError("depolarizing parameter s must lie in [-1/2, 1]");
  // sum_k sigma_k rho sigma_k = 2 (tr rho) 1 - rho, so
  // (1 - 3q) rho + q sum_k sigma_k rho sigma_k = (1 - 4q) rho + 2q (tr rho) 1.
  const double q = 0.5 / (s + 2.0);
  std::vector<ComplexMat2> ks;
  ks.push_back(std::sqrt(1.0 - 3.0 * q) * ComplexMat2::Identity());
  for (int k = 1; k <= 3; ++k)
    ks.push_back(std::sqrt(q) * pauli(k));
  return KrausChannel(std::move(ks), "depolarizing-" + std::to_string(s));
}

double SpanBasis::smallest_relative_singular_value() const {
  if (singular_values.size() == 0 || singular_values(0) == 0.0 || span_dim == 0)
    return 0.0;
  return singular_values(std::min<Eigen::Index>(span_dim, singular_values.size()) - 1) /
         singular_values(0);
}

SpanBasis kraus_span(const KrausChannel& channel) {
  const auto& ks = channel.kraus();
  const auto m = static_cast<Eigen::Index>(ks.size());
  Eigen::MatrixXcd stacked(4, m);
  for (Eigen::Index j = 0; j < m; ++j)
    stacked.col(j) = vectorize(ks[static_cast<std::size_t>(j)]);

  SpanBasis span;
  span.singular_values = Eigen::JacobiSVD<Eigen::MatrixXcd>(stacked).singularValues();
  const double top = span.singular_values.size() > 0 ? span.singular_values(0) : 0.0;
  for (Eigen::Index i = 0; i < span.singular_values.size(); ++i)
    if (top > 0.0 && span.singular_values(i) > kSpanRankTol * top)
      ++span.span_dim;
  if (span.span_dim > 2 || span.span_dim == 0) {
    if (span.span_dim == 0)
      fill_coefficients(channel, span);
    return span;
  }

  // Greedy pivoting: largest operator first, then the one with the largest
  // component orthogonal to it. Lowest index wins ties.
  auto pick = [&](const Eigen::MatrixXcd& cols) {
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
      const double n = cols.col(j).norm();
      if (n > best_norm * (1.0 + 1e-12)) {
        best = j;
        best_norm = n;
      }
    }
    return best;
  };
  const Eigen::Index first = pick(stacked);
  std::vector<std::size_t> chosen{static_cast<std::size_t>(first)};
  if (span.span_dim == 2) {
    const Eigen::VectorXcd u = stacked.col(first).normalized();
    Eigen::MatrixXcd residual = stacked - u * (u.adjoint() * stacked);
    residual.col(first).setZero();
    chosen.push_back(static_cast<std::size_t>(pick(residual)));
    std::sort(chosen.begin(), chosen.end());
  }
  span.basis_indices = chosen;
  span.basis_a = ks[chosen[0]];
  if (chosen.size() == 2)
    span.basis_b = ks[chosen[1]];
  fill_coefficients(channel, span);
  return span;
}

SpanBasis span_in_basis(const KrausChannel& channel, const ComplexMat2& a, const ComplexMat2& b) {
  SpanBasis span = kraus_span(channel);
  if (span.span_dim > 2)
    throw SpanTooLarge(span.span_dim);
  span.basis_a = a;
  span.basis_b = b;
  span.basis_indices.clear();
  span.span_dim = 2;
  fill_coefficients(channel, span);
  if (span.residual > kSpanRankTol)
    throw InvariantError("Kraus operators do not lie in the span of the given basis");
  return span;
}

} // namespace qroof
