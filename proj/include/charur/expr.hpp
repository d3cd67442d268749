#pragma once

#include <functional>
#include <memory>
#include <string>

namespace charur {

/// Real-valued expression of one variable `t`, e.g. "1 + 0.5*sin(2*t)".
/// Grammar: numbers, t, pi, e, + - * / ^, parentheses, unary minus, and the
/// functions sin cos tan exp log sqrt abs sinh cosh tanh step (step(x) = 1 for
/// x >= 0, else 0). Parse errors throw InvalidInput.
class Expression {
 public:
  static Expression parse(const std::string& text);

  double operator()(double t) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace charur
