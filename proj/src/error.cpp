#include "spreclone/error.hpp"

namespace spreclone {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::BadUnit: return "BadUnit";
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::BadSignum: return "BadSignum";
    case ErrorKind::BadRowIndex: return "BadRowIndex";
    case ErrorKind::BadPartition: return "BadPartition";
    case ErrorKind::InvalidFamily: return "InvalidFamily";
    case ErrorKind::ArityCapExceeded: return "ArityCapExceeded";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::Unsaturated: return "Unsaturated";
    case ErrorKind::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace spreclone
