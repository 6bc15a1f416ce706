#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ruled {

enum class ErrorCode {
  degenerate,           // zero real part where a norm is required
  parallel_degenerate,  // dual angle not recoverable from the cosine alone
  domain,               // analytic function evaluated outside its domain
  division_by_zero,
  zero_direction,
  not_a_line,
  cylindrical,          // director has (locally) zero derivative
  not_closed,
  mobius,               // director closes to its opposite
  degenerate_curve,     // zero speed where a regular curve is required
  degenerate_striction, // striction line is a single point
  striction_orientation,
  frenet_degenerate,
  alignment,
  precondition,
  parse,
  io,
};

std::string_view error_code_name(ErrorCode code);

/// True for codes caused by the geometry of the input rather than its syntax.
bool is_geometric(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

}  // namespace ruled
