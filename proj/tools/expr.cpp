#include "expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string_view>

#include "infspec/errors.hpp"

namespace tools {

struct Expression::Node {
  enum Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Sqrt, Exp, Log } kind = Number;
  double value = 0.0;
  std::shared_ptr<const Node> a, b;

  double eval(double k) const {
    switch (kind) {
      case Number: return value;
      case Var: return k;
      case Neg: return -a->eval(k);
      case Add: return a->eval(k) + b->eval(k);
      case Sub: return a->eval(k) - b->eval(k);
      case Mul: return a->eval(k) * b->eval(k);
      case Div: return a->eval(k) / b->eval(k);
      case Pow: return std::pow(a->eval(k), b->eval(k));
      case Sqrt: return std::sqrt(a->eval(k));
      case Exp: return std::exp(a->eval(k));
      case Log: return std::log(a->eval(k));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(Expression::Node::Kind kind, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  n->value = v;
  return n;
}

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := '-' unary | power
// power  := atom ('^' unary)?
// atom   := number | 'k' | func '(' expr ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw infspec::ParameterError("bad expression '" + std::string(s_) + "': " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (eat('+')) lhs = make(Expression::Node::Add, lhs, term());
      else if (eat('-')) lhs = make(Expression::Node::Sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (eat('*')) lhs = make(Expression::Node::Mul, lhs, unary());
      else if (eat('/')) lhs = make(Expression::Node::Div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Expression::Node::Neg, unary());
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    auto base = atom();
    if (eat('^')) return make(Expression::Node::Pow, base, unary());
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      auto e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
      if (ec != std::errc()) fail("bad number");
      pos_ = static_cast<std::size_t>(end - s_.data());
      return make(Expression::Node::Number, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      if (name == "k") return make(Expression::Node::Var);
      Expression::Node::Kind kind;
      if (name == "sqrt") kind = Expression::Node::Sqrt;
      else if (name == "exp") kind = Expression::Node::Exp;
      else if (name == "log") kind = Expression::Node::Log;
      else fail("unknown name '" + std::string(name) + "'");
      if (!eat('(')) fail("expected '(' after " + std::string(name));
      auto arg = expr();
      if (!eat(')')) fail("missing ')'");
      return make(kind, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    throw infspec::ParameterError("bad index list '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Expression::Expression(const std::string& text) : text_(text), root_(Parser(text).parse()) {}

double Expression::operator()(double k) const { return root_->eval(k); }

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    std::vector<int> parts;
    std::size_t start = 0;
    for (;;) {
      const auto colon = text.find(':', start);
      parts.push_back(parse_int(std::string_view(text).substr(start, colon - start), text));
      if (colon == std::string::npos) break;
      start = colon + 1;
    }
    if (parts.size() > 3) throw infspec::ParameterError("bad index range '" + text + "'");
    const int step = parts.size() == 3 ? parts[2] : 1;
    if (step <= 0 || parts[1] < parts[0]) throw infspec::ParameterError("bad index range '" + text + "'");
    for (int k = parts[0]; k <= parts[1]; k += step) out.push_back(k);
    return out;
  }
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(parse_int(std::string_view(text).substr(start, comma - start), text));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace tools
