#pragma once

// A small arithmetic language in one variable t:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := number | 't' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')' | '-' factor
// Vectors are three comma-separated expressions, optionally parenthesized.

#include <memory>
#include <string>
#include <string_view>

#include "ruled/curve.hpp"
#include "ruled/jet.hpp"

namespace ruled {

struct ExprNode;

class Expression {
 public:
  /// line/column locate the text inside a larger document for error messages.
  static Expression parse(std::string_view text, int line = 1, int column = 1);

  double operator()(double t) const;
  Jet<double> operator()(const Jet<double>& t) const;

  bool depends_on_t() const;
  const std::string& source() const { return source_; }

 private:
  friend class VectorExpression;

  std::shared_ptr<const ExprNode> root_;
  std::string source_;
};

class VectorExpression {
 public:
  static VectorExpression parse(std::string_view text, int line = 1, int column = 1);

  Vec3 operator()(double t) const;
  Jet<Vec3> operator()(const Jet<double>& t) const;

  /// Sampler with exact jets.
  CurveSampler<Vec3> sampler(double period) const;
  const std::string& source() const { return source_; }

 private:
  Expression x_, y_, z_;
  std::string source_;
};

/// Scalar sampler with exact jets.
CurveSampler<double> expression_sampler(const Expression& e, double period);

}  // namespace ruled
