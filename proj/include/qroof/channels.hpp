#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qroof/linalg2.hpp"

namespace qroof {

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kSpanRankTol = 1e-10;

/// A 1-qubit map in Kraus form, T(rho) = sum_j A_j rho A_j^dagger.
/// Operators are kept exactly as given; trace preservation is checked by
/// validate_cptp rather than on construction so that the anti-linear
/// construction can be exercised on non-normalized operator lists.
class KrausChannel {
public:
  explicit KrausChannel(std::vector<ComplexMat2> kraus, std::string name = {});

  const std::vector<ComplexMat2>& kraus() const { return kraus_; }
  std::size_t size() const { return kraus_.size(); }
  const std::string& name() const { return name_; }

  /// sum_j A_j m A_j^dagger for an arbitrary matrix m.
  ComplexMat2 apply_raw(const ComplexMat2& m) const;

  /// Same channel with every Kraus operator multiplied by a phase.
  KrausChannel with_global_phase(double phi) const;

private:
  std::vector<ComplexMat2> kraus_;
  std::string name_;
};

struct ValidationReport {
  bool pass = false;
  double deviation = 0.0; ///< max entrywise |sum A^dagger A - 1|
};

ValidationReport validate_cptp(const KrausChannel& channel, double tol = kTraceTol);

/// T(rho). Throws InvariantError if the output is not a density operator.
DensityOp apply(const KrausChannel& channel, const DensityOp& rho);

/// Two-Kraus channel A = diag(a00, a11), B = [[0, b01], [b10, 0]].
/// Throws NormalizationError unless |a00|^2+|b10|^2 = |a11|^2+|b01|^2 = 1.
KrausChannel extremal_channel(Complex a00, Complex a11, Complex b01, Complex b10);

/// A = diag(1, sqrt t), B = [[0, sqrt(1-t)], [0, 0]] for t in [0, 1].
/// t = 0 is the constant channel rho -> |0><0|.
KrausChannel degenerate_channel(double t);

KrausChannel identity_channel();

/// rho -> ((tr rho) 1 + s rho) / (s + 2), as a four-Kraus Pauli mixture.
/// Domain -1/2 <= s <= 1; DomainError otherwise.
KrausChannel depolarizing(double s);

/// Linear span of the Kraus operators and, when it is at most
/// two-dimensional, a basis {A, B} with A_j = mu1[j] A + mu2[j] B.
struct SpanBasis {
  int span_dim = 0;
  ComplexMat2 basis_a = ComplexMat2::Zero();
  ComplexMat2 basis_b = ComplexMat2::Zero();
  std::vector<Complex> mu1;
  std::vector<Complex> mu2;
  /// Singular values of the 4 x m matrix of vectorized Kraus operators.
  Eigen::VectorXd singular_values;
  /// Indices of the Kraus operators used as basis (size span_dim when <= 2).
  std::vector<std::size_t> basis_indices;
  /// max_j ||A_j - mu1 A - mu2 B|| (0 when span_dim > 2).
  double residual = 0.0;

  /// Smallest singular value counted toward the rank, relative to the largest.
  double smallest_relative_singular_value() const;
};

SpanBasis kraus_span(const KrausChannel& channel);

/// Builds a SpanBasis for an explicitly chosen basis pair (used to compare
/// basis choices). Throws InvariantError if the Kraus operators are not in
/// span{a, b} to within 1e-10.
SpanBasis span_in_basis(const KrausChannel& channel, const ComplexMat2& a, const ComplexMat2& b);

} // namespace qroof
