#pragma once

// Arithmetic in one variable k: numbers, k, + - * / ^, parentheses and
// sqrt/exp/log. Used for --ratio, e.g. "1+1/k" or "2^(1/k)".

#include <memory>
#include <string>
#include <vector>

namespace tools {

class Expression {
 public:
  // Throws infspec::ParameterError on a syntax error.
  explicit Expression(const std::string& text);

  double operator()(double k) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

// "3:64" (inclusive), "3:64:2" (with step) or "10,20,40,80".
std::vector<int> parse_index_list(const std::string& text);

}  // namespace tools
