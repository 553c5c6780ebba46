#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rpa {

enum class ErrorKind {
  // malformed or inconsistent input
  NegativeWeight,
  EmptyAlphabet,
  ZeroMass,
  NotNormalized,
  DuplicateLabel,
  AlphabetMismatch,
  DimensionMismatch,
  ModuleMismatch,
  GroupLawMismatch,
  NotSubcode,
  NotBalanced,
  NotAdditive,
  ParseError,
  // parameter outside the domain of a functional
  SOutOfRange,
  EpsOutOfRange,
  XOutOfDomain,
  SupportViolation,
  AllMassRemovable,
  EpsNotRealizable,
  SizeCapExceeded,
  CapExceeded,
  NotEnumerable,
  // internal cross-check failed
  Inconsistent,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for kinds that describe bad input files/values rather than
/// out-of-domain parameters. The CLI maps these to different exit codes.
bool is_input_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rpa
