#pragma once

#include <stdexcept>
#include <string>

namespace anomaly {

enum class ErrorKind {
  contract_violation,
  degenerate_lattice,
  evenness,
  precondition,
  dimension_mismatch,
  index_out_of_range,
  lift_consistency,
  not_a_cocycle,
  internal_consistency,
  size_budget,
  coefficient_model,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::contract_violation: return "contract_violation";
    case ErrorKind::degenerate_lattice: return "degenerate_lattice";
    case ErrorKind::evenness: return "evenness";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::index_out_of_range: return "index_out_of_range";
    case ErrorKind::lift_consistency: return "lift_consistency";
    case ErrorKind::not_a_cocycle: return "not_a_cocycle";
    case ErrorKind::internal_consistency: return "internal_consistency";
    case ErrorKind::size_budget: return "size_budget";
    case ErrorKind::coefficient_model: return "coefficient_model";
  }
  return "unknown";
}

// All mathematical failures raised by the library. The CLI maps these to exit code 3.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace anomaly
