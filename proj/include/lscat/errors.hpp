#pragma once

#include <stdexcept>
#include <string>

namespace lscat {

enum class ErrorKind {
  Parse,
  Cycle,
  UnknownPoint,
  EmptySet,
  NotMonotone,
  NotLyapunov,
  NotDeformation,
  Criticality,
  Budget,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error(ErrorKind::Parse, m) {}
};
struct CycleDetected : Error {
  explicit CycleDetected(const std::string& m) : Error(ErrorKind::Cycle, m) {}
};
struct UnknownPoint : Error {
  explicit UnknownPoint(const std::string& m) : Error(ErrorKind::UnknownPoint, m) {}
};
struct EmptySetError : Error {
  explicit EmptySetError(const std::string& m) : Error(ErrorKind::EmptySet, m) {}
};
struct NotMonotone : Error {
  explicit NotMonotone(const std::string& m) : Error(ErrorKind::NotMonotone, m) {}
};
struct NotLyapunov : Error {
  explicit NotLyapunov(const std::string& m) : Error(ErrorKind::NotLyapunov, m) {}
};
struct NotDeformation : Error {
  explicit NotDeformation(const std::string& m) : Error(ErrorKind::NotDeformation, m) {}
};
struct CriticalityViolation : Error {
  explicit CriticalityViolation(const std::string& m) : Error(ErrorKind::Criticality, m) {}
};
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& m) : Error(ErrorKind::Budget, m) {}
};
struct InternalError : Error {
  explicit InternalError(const std::string& m) : Error(ErrorKind::Internal, m) {}
};

inline const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Cycle: return "CycleDetected";
    case ErrorKind::UnknownPoint: return "UnknownPoint";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::NotLyapunov: return "NotLyapunov";
    case ErrorKind::NotDeformation: return "NotDeformation";
    case ErrorKind::Criticality: return "CriticalityViolation";
    case ErrorKind::Budget: return "BudgetExceeded";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Error";
}

// CLI exit-code policy: 2 for bad or rejected input, 3 when a search budget
// ran out before an exact answer was reached.
inline int exit_code_for(ErrorKind k) { return k == ErrorKind::Budget ? 3 : 2; }

}  // namespace lscat
