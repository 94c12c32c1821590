#pragma once

#include <stdexcept>
#include <string>

namespace quadrank {

/// Operands from two different coefficient fields met in one operation.
class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested field is outside what the toolkit supports (char 2, composite modulus, ...).
class UnsupportedField : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Characteristic is too small for an algorithm's separability assumptions.
class UnsupportedCharacteristic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RankMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ArityMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation contradicted a structural statement it was checking. Never swallowed.
class TheoremViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace quadrank
