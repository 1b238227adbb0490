#pragma once

#include <stdexcept>
#include <string>

namespace aesq {

enum class ErrorKind {
  Domain,       // argument outside the mathematical domain of an operation
  Capacity,     // configured resource bound exceeded
  Tolerance,    // requested accuracy cannot be met
  Infeasible,   // parameter combination is outside the admissible range
  Consistency,  // internal cross-check failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Tolerance: return "tolerance";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Consistency: return "consistency";
  }
  return "unknown";
}

}  // namespace aesq
