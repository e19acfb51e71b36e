#pragma once

#include <stdexcept>
#include <string>

namespace capit {

enum class ErrorKind {
  InfiniteQuotient,
  ElementOutOfGroup,
  IncompatibleHom,
  GroupMismatch,
  NotACocycle,
  DerivedNotContained,
  HypothesisFailed,
  DegreeUnsupported,
  NontrivialAction,
  NotCyclic,
  NotASubgroup,
  InvalidAction,
  CapExceeded,
  ParseError,
  Internal,
};

/// All library failures are reported through this one exception type so the
/// CLI can map them onto stable error names.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  const char* name() const {
    switch (kind_) {
      case ErrorKind::InfiniteQuotient: return "InfiniteQuotient";
      case ErrorKind::ElementOutOfGroup: return "ElementOutOfGroup";
      case ErrorKind::IncompatibleHom: return "IncompatibleHom";
      case ErrorKind::GroupMismatch: return "GroupMismatch";
      case ErrorKind::NotACocycle: return "NotACocycle";
      case ErrorKind::DerivedNotContained: return "DerivedNotContained";
      case ErrorKind::HypothesisFailed: return "HypothesisFailed";
      case ErrorKind::DegreeUnsupported: return "DegreeUnsupported";
      case ErrorKind::NontrivialAction: return "NontrivialAction";
      case ErrorKind::NotCyclic: return "NotCyclic";
      case ErrorKind::NotASubgroup: return "NotASubgroup";
      case ErrorKind::InvalidAction: return "InvalidAction";
      case ErrorKind::CapExceeded: return "CapExceeded";
      case ErrorKind::ParseError: return "ParseError";
      case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
  }

private:
  ErrorKind kind_;
};

}  // namespace capit
