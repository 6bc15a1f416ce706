#include "ruled/errors.hpp"

namespace ruled {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::parallel_degenerate: return "parallel-degenerate";
    case ErrorCode::domain: return "domain";
    case ErrorCode::division_by_zero: return "division-by-zero";
    case ErrorCode::zero_direction: return "zero-direction";
    case ErrorCode::not_a_line: return "not-a-line";
    case ErrorCode::cylindrical: return "cylindrical";
    case ErrorCode::not_closed: return "not-closed";
    case ErrorCode::mobius: return "mobius";
    case ErrorCode::degenerate_curve: return "degenerate-curve";
    case ErrorCode::degenerate_striction: return "degenerate-striction";
    case ErrorCode::striction_orientation: return "striction-orientation";
    case ErrorCode::frenet_degenerate: return "frenet-degenerate";
    case ErrorCode::alignment: return "alignment";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

bool is_geometric(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse:
    case ErrorCode::io:
    case ErrorCode::precondition:
      return false;
    default:
      return true;
  }
}

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(ErrorCode::parse, "line " + std::to_string(line) + ", column " +
                                  std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

}  // namespace ruled
