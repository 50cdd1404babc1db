#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracsob {

enum class Errc {
  invalid_argument,
  invalid_grid,
  not_hermitian,
  tail_check_failed,
  not_a_density,
  not_characteristic_function,
  invalid_density,
  step_underflow,
  parse_error,
  io_error,
};

std::string_view to_string(Errc code) noexcept;

/// Library error: a code the caller can branch on plus a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::invalid_grid: return "invalid_grid";
    case Errc::not_hermitian: return "not_hermitian";
    case Errc::tail_check_failed: return "tail_check_failed";
    case Errc::not_a_density: return "not_a_density";
    case Errc::not_characteristic_function: return "not_characteristic_function";
    case Errc::invalid_density: return "invalid_density";
    case Errc::step_underflow: return "step_underflow";
    case Errc::parse_error: return "parse_error";
    case Errc::io_error: return "io_error";
  }
  return "unknown";
}

inline void require(bool condition, Errc code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace fracsob
