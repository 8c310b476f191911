#pragma once

#include <stdexcept>
#include <string>

namespace gepi {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A size guard was exceeded (group order, alphabet product, fold length).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A structural hypothesis of a theorem-backed operation does not hold
/// (noise not Gaussian, degradedness unsolvable, mismatched groups).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The operation has no closed form for this group (non 2-groups).
class UnsupportedGroupError : public Error {
 public:
  using Error::Error;
};

}  // namespace gepi
