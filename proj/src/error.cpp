#include "rpa/error.hpp"

namespace rpa {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::EmptyAlphabet: return "EmptyAlphabet";
    case ErrorKind::ZeroMass: return "ZeroMass";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ModuleMismatch: return "ModuleMismatch";
    case ErrorKind::GroupLawMismatch: return "GroupLawMismatch";
    case ErrorKind::NotSubcode: return "NotSubcode";
    case ErrorKind::NotBalanced: return "NotBalanced";
    case ErrorKind::NotAdditive: return "NotAdditive";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SOutOfRange: return "SOutOfRange";
    case ErrorKind::EpsOutOfRange: return "EpsOutOfRange";
    case ErrorKind::XOutOfDomain: return "XOutOfDomain";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::AllMassRemovable: return "AllMassRemovable";
    case ErrorKind::EpsNotRealizable: return "EpsNotRealizable";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotEnumerable: return "NotEnumerable";
    case ErrorKind::Inconsistent: return "Inconsistent";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NegativeWeight:
    case ErrorKind::EmptyAlphabet:
    case ErrorKind::ZeroMass:
    case ErrorKind::NotNormalized:
    case ErrorKind::DuplicateLabel:
    case ErrorKind::AlphabetMismatch:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::ModuleMismatch:
    case ErrorKind::GroupLawMismatch:
    case ErrorKind::NotSubcode:
    case ErrorKind::NotBalanced:
    case ErrorKind::NotAdditive:
    case ErrorKind::ParseError:
      return true;
    default:
      return false;
  }
}

}  // namespace rpa
