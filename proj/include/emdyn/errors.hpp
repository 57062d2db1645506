#pragma once

#include <stdexcept>
#include <string>

namespace emdyn {

/// Operands that cannot be combined: mismatched variable lists, unknown
/// variables, wrong field dimension.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An operation was called outside its stated domain (constraint violated,
/// point is not an equilibrium, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The request is well-formed but outside what the library handles.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A driver configuration that cannot run; the message starts with the
/// offending field.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace emdyn
