#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qsn {

// Raised when an input lies outside an operation's mathematical domain.
// The code is a stable machine-readable tag; the CLI maps any DomainError
// to exit status 1.
class DomainError : public std::runtime_error {
public:
  DomainError(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

namespace errc {
inline constexpr const char* non_terminating = "NonTerminating";
inline constexpr const char* division_by_zero = "DivisionByZero";
inline constexpr const char* out_of_domain = "OutOfDomain";
inline constexpr const char* base_mismatch = "BaseMismatch";
inline constexpr const char* bad_numeral = "BadNumeral";
inline constexpr const char* bad_state = "BadState";
inline constexpr const char* not_unitary = "NotUnitary";
inline constexpr const char* bad_field = "BadField";
inline constexpr const char* bad_sequence = "BadSequence";
inline constexpr const char* bad_frame = "BadFrame";
}  // namespace errc

}  // namespace qsn
