#include "ruled/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "ruled/errors.hpp"

namespace ruled {

enum class Op { number, variable, negate, add, subtract, multiply, divide, call };

struct ExprNode {
  Op op = Op::number;
  double value = 0.0;
  Analytic function = Analytic::sin;
  std::shared_ptr<const ExprNode> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

struct FunctionName {
  const char* name;
  Analytic f;
};

constexpr FunctionName kFunctions[] = {
    {"sin", Analytic::sin},   {"cos", Analytic::cos},   {"tan", Analytic::tan},
    {"sqrt", Analytic::sqrt}, {"exp", Analytic::exp},   {"log", Analytic::log},
    {"asin", Analytic::asin}, {"acos", Analytic::acos}, {"atan", Analytic::atan},
    {"sinh", Analytic::sinh}, {"cosh", Analytic::cosh}, {"tanh", Analytic::tanh},
};

NodePtr leaf(Op op, double value = 0.0) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->value = value;
  return n;
}

NodePtr node(Op op, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, int line, int column) : text_(text), line_(line), column_(column) {}

  NodePtr parse_single() {
    NodePtr e = expr();
    expect_end();
    return e;
  }

  std::vector<NodePtr> parse_triple() {
    skip_space();
    const std::size_t start = pos_;
    if (peek() == '(') {
      ++pos_;
      NodePtr first = expr();
      skip_space();
      if (peek() == ',') {
        std::vector<NodePtr> parts{first};
        while (peek() == ',') {
          ++pos_;
          parts.push_back(expr());
          skip_space();
        }
        if (at_end()) fail("unclosed parenthesis", start);
        if (peek() != ')') fail("expected ',' or ')'", pos_);
        ++pos_;
        expect_end();
        if (parts.size() != 3) fail("a vector needs exactly 3 components", start);
        return parts;
      }
      pos_ = start;
    }
    std::vector<NodePtr> parts{expr()};
    skip_space();
    while (peek() == ',') {
      ++pos_;
      parts.push_back(expr());
      skip_space();
    }
    expect_end();
    if (parts.size() != 3) fail("a vector needs exactly 3 components", start);
    return parts;
  }

 private:
  [[noreturn]] void fail(const std::string& message, std::size_t at) const {
    throw ParseError(message, line_, column_ + static_cast<int>(at));
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect_end() {
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'", pos_);
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      skip_space();
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      lhs = node(c == '+' ? Op::add : Op::subtract, lhs, term());
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      skip_space();
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      lhs = node(c == '*' ? Op::multiply : Op::divide, lhs, factor());
    }
  }

  NodePtr factor() {
    skip_space();
    if (at_end()) fail("unexpected end of expression", pos_);
    const char c = peek();
    const std::size_t start = pos_;
    if (c == '-') {
      ++pos_;
      return node(Op::negate, factor());
    }
    if (c == '+') {
      ++pos_;
      return factor();
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      skip_space();
      if (at_end()) fail("unclosed parenthesis", start);
      if (peek() != ')') fail("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    const std::string literal(text_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(literal.c_str(), &end);
    if (literal == "." || end != literal.c_str() + literal.size()) fail("malformed number", start);
    return leaf(Op::number, v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    skip_space();
    if (peek() == '(') {
      for (const FunctionName& f : kFunctions) {
        if (name == f.name) {
          const std::size_t open = pos_;
          ++pos_;
          NodePtr arg = expr();
          skip_space();
          if (at_end()) fail("unclosed parenthesis", open);
          if (peek() != ')') fail("expected ')'", pos_);
          ++pos_;
          auto n = std::make_shared<ExprNode>();
          n->op = Op::call;
          n->function = f.f;
          n->lhs = arg;
          return n;
        }
      }
      fail("unknown function '" + name + "'", start);
    }
    if (name == "t") return leaf(Op::variable);
    if (name == "pi") return leaf(Op::number, M_PI);
    if (name == "e") return leaf(Op::number, M_E);
    fail("unknown identifier '" + name + "'", start);
  }

  std::string_view text_;
  int line_;
  int column_;
  std::size_t pos_ = 0;
};

double apply(Analytic f, double x) {
  switch (f) {
    case Analytic::sin: return std::sin(x);
    case Analytic::cos: return std::cos(x);
    case Analytic::tan: return std::tan(x);
    case Analytic::sqrt: return std::sqrt(x);
    case Analytic::exp: return std::exp(x);
    case Analytic::log: return std::log(x);
    case Analytic::asin: return std::asin(x);
    case Analytic::acos: return std::acos(x);
    case Analytic::atan: return std::atan(x);
    case Analytic::sinh: return std::sinh(x);
    case Analytic::cosh: return std::cosh(x);
    case Analytic::tanh: return std::tanh(x);
  }
  return std::nan("");
}

Jet<double> apply(Analytic f, const Jet<double>& x) {
  const Jet<double> one = Jet<double>::constant(1.0);
  switch (f) {
    case Analytic::sin: return sin(x);
    case Analytic::cos: return cos(x);
    case Analytic::tan: {
      const auto [s, c] = sincos(x);
      return s / c;
    }
    case Analytic::sqrt: return sqrt(x);
    case Analytic::exp: return exp(x);
    case Analytic::log: return log(x);
    case Analytic::asin:
      return integrate_chain(std::asin(x[0]), x, reciprocal(sqrt(one - x * x)));
    case Analytic::acos:
      return integrate_chain(std::acos(x[0]), x, -reciprocal(sqrt(one - x * x)));
    case Analytic::atan: return integrate_chain(std::atan(x[0]), x, reciprocal(one + x * x));
    case Analytic::sinh: return 0.5 * (exp(x) - exp(-x));
    case Analytic::cosh: return 0.5 * (exp(x) + exp(-x));
    case Analytic::tanh: {
      const Jet<double> a = exp(x);
      const Jet<double> b = exp(-x);
      return (a - b) / (a + b);
    }
  }
  return x;
}

template <class T>
T constant_of(double v);
template <>
double constant_of<double>(double v) { return v; }
template <>
Jet<double> constant_of<Jet<double>>(double v) { return Jet<double>::constant(v); }

template <class T>
T evaluate(const ExprNode& n, const T& t) {
  switch (n.op) {
    case Op::number: return constant_of<T>(n.value);
    case Op::variable: return t;
    case Op::negate: return -evaluate(*n.lhs, t);
    case Op::add: return evaluate(*n.lhs, t) + evaluate(*n.rhs, t);
    case Op::subtract: return evaluate(*n.lhs, t) - evaluate(*n.rhs, t);
    case Op::multiply: return evaluate(*n.lhs, t) * evaluate(*n.rhs, t);
    case Op::divide: return evaluate(*n.lhs, t) / evaluate(*n.rhs, t);
    case Op::call: return apply(n.function, evaluate(*n.lhs, t));
  }
  return t;
}

bool uses_t(const ExprNode& n) {
  if (n.op == Op::variable) return true;
  return (n.lhs && uses_t(*n.lhs)) || (n.rhs && uses_t(*n.rhs));
}

std::string trimmed(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Expression Expression::parse(std::string_view text, int line, int column) {
  Expression e;
  e.root_ = Parser(text, line, column).parse_single();
  e.source_ = trimmed(text);
  return e;
}

double Expression::operator()(double t) const { return evaluate(*root_, t); }

Jet<double> Expression::operator()(const Jet<double>& t) const { return evaluate(*root_, t); }

bool Expression::depends_on_t() const { return uses_t(*root_); }

VectorExpression VectorExpression::parse(std::string_view text, int line, int column) {
  const std::vector<NodePtr> parts = Parser(text, line, column).parse_triple();
  VectorExpression v;
  v.x_.root_ = parts[0];
  v.y_.root_ = parts[1];
  v.z_.root_ = parts[2];
  v.source_ = trimmed(text);
  return v;
}

Vec3 VectorExpression::operator()(double t) const { return {x_(t), y_(t), z_(t)}; }

Jet<Vec3> VectorExpression::operator()(const Jet<double>& t) const {
  const Jet<double> x = x_(t);
  const Jet<double> y = y_(t);
  const Jet<double> z = z_(t);
  Jet<Vec3> r;
  for (int k = 0; k <= kMaxJetOrder; ++k) r[k] = Vec3(x[k], y[k], z[k]);
  r.set_order(std::min({x.order(), y.order(), z.order()}));
  return r;
}

CurveSampler<Vec3> VectorExpression::sampler(double period) const {
  CurveSampler<Vec3> c;
  c.period = period;
  const VectorExpression self = *this;
  c.evaluate = [self](double t) { return self(t); };
  c.jet = [self](double t) { return self(jet_variable(t)); };
  return c;
}

CurveSampler<double> expression_sampler(const Expression& e, double period) {
  CurveSampler<double> c;
  c.period = period;
  c.evaluate = [e](double t) { return e(t); };
  c.jet = [e](double t) { return e(jet_variable(t)); };
  return c;
}

}  // namespace ruled
