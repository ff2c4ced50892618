#pragma once

#include <stdexcept>
#include <string>

namespace qroof {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a scalar function or family parameter.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A value failed one of its type invariants (density operator, ensemble, ...).
class InvariantError : public Error {
public:
  using Error::Error;
};

/// Kraus normalization condition violated when building a channel family.
class NormalizationError : public Error {
public:
  using Error::Error;
};

/// The Kraus operators span more than two dimensions, so no anti-linear
/// operator reproduces det T(pi).
class SpanTooLarge : public Error {
public:
  explicit SpanTooLarge(int span_dim)
      : Error("Kraus span has dimension " + std::to_string(span_dim) +
              " (> 2); no Hermitian anti-linear operator exists"),
        span_dim_(span_dim) {}

  int span_dim() const noexcept { return span_dim_; }

private:
  int span_dim_;
};

} // namespace qroof
