#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace segscan {

enum class ErrorKind {
  NonFiniteValue,
  EmptySignal,
  RaggedInput,
  NotSorted,
  OutOfRange,
  MissingTerminal,
  Duplicate,
  SegmentTooShort,
  IndexOutOfRange,
  SignalTooShort,
  BadParam,
  MemoryBudget,
  Infeasible,
  BudgetUnreachable,
  WindowTooLarge,
  MismatchedLength,
  SpacingInfeasible,
};

std::string_view error_name(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above; the
// message is prefixed with the kind name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& detail);

}  // namespace segscan
