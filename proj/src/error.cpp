#include "segscan/error.hpp"

namespace segscan {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::EmptySignal: return "EmptySignal";
    case ErrorKind::RaggedInput: return "RaggedInput";
    case ErrorKind::NotSorted: return "NotSorted";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::MissingTerminal: return "MissingTerminal";
    case ErrorKind::Duplicate: return "Duplicate";
    case ErrorKind::SegmentTooShort: return "SegmentTooShort";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::SignalTooShort: return "SignalTooShort";
    case ErrorKind::BadParam: return "BadParam";
    case ErrorKind::MemoryBudget: return "MemoryBudget";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::BudgetUnreachable: return "BudgetUnreachable";
    case ErrorKind::WindowTooLarge: return "WindowTooLarge";
    case ErrorKind::MismatchedLength: return "MismatchedLength";
    case ErrorKind::SpacingInfeasible: return "SpacingInfeasible";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

void fail(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

}  // namespace segscan
