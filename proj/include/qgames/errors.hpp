#pragma once

#include <stdexcept>
#include <string>

namespace qgames {

// Base of every numeric-precondition failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a stated precondition (non-Hermitian, non-unitary,
// unnormalized, probability vector off the simplex, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Projective collapse requested on a branch whose probability is below
// the collapse threshold.
class UndefinedCollapseError : public Error {
 public:
  using Error::Error;
};

// Best-response search requested on a strategy space that has no
// finite parametrization (full CP-TP channels).
class UnsupportedSearchError : public Error {
 public:
  using Error::Error;
};

}  // namespace qgames
