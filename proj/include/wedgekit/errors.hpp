#pragma once

#include <stdexcept>
#include <string>

namespace wedgekit {

/// Base class of all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mixed coefficient fields, a bad modulus, or a malformed scalar literal.
class FieldError : public Error {
 public:
  using Error::Error;
};

/// Incompatible matrix or ambient dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A map that was required to factor through a subobject or quotient does not.
class FactorizationError : public Error {
 public:
  using Error::Error;
};

/// Subspace fails the coideal conditions.
class NotACoideal : public Error {
 public:
  using Error::Error;
};

/// Subspace is not closed under comultiplication.
class NotASubcoalgebra : public Error {
 public:
  using Error::Error;
};

/// An explicit tensor power would exceed the configured coordinate cap.
class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Operation requires characteristic zero.
class UnsupportedField : public Error {
 public:
  using Error::Error;
};

/// Coassociativity or a counit law fails.
class AxiomError : public Error {
 public:
  using Error::Error;
};

/// Matrix does not intertwine the coalgebra structures.
class MorphismError : public Error {
 public:
  using Error::Error;
};

/// A stated precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed document text.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace wedgekit
