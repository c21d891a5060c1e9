#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace cellsheaf {

using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid geometry: non-embedded realisation, dependent vertices, unknown ids.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A sheaf, morphism or complex violates one of its structural invariants.
class SheafError : public Error {
 public:
  using Error::Error;
};

/// A covector hits a chamber wall.
class GenericityError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Parses "p/q", "p" or "-p/q". Throws FormatError on anything else.
Rational parse_rational(std::string_view text);

/// Canonical form: "p/q" with q > 0, or "p" when q == 1.
std::string format_rational(const Rational& value);

}  // namespace cellsheaf
