#ifndef SFE_EXPR_HPP
#define SFE_EXPR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sfe/error.hpp"

namespace sfe::expr {

// Scalar arithmetic expressions over a declared variable set.
// Grammar: precedence-climbing with ^ (right assoc) > unary - > * / > + -.
// Builtin calls: abs, min, max, exp, log, sqrt, pow, sign, pos.
// ASTs are immutable after parse; evaluation is reentrant.

enum class NodeKind : uint8_t { number, variable, neg, add, sub, mul, div, pow_, call };

enum class Builtin : uint8_t { abs, min, max, exp, log, sqrt, pow_, sign, pos };

struct Node {
  NodeKind kind;
  Builtin fn{};        // call
  double value{};      // number
  uint32_t var{};      // variable: index into variable list
  int32_t lhs{-1};     // child indices into the arena
  int32_t rhs{-1};
  uint32_t offset{};   // 0-based byte offset in the source, for diagnostics
};

class ExprAst {
public:
  ExprAst() = default;

  double eval(const std::map<std::string, double>& bindings) const;
  double eval(const std::vector<double>& values) const; // positional, matches variables()

  const std::vector<std::string>& variables() const { return vars_; }
  const std::string& source() const { return source_; }
  bool empty() const { return nodes_.empty(); }

  std::string print() const;

private:
  friend ExprAst parse(const std::string&, const std::vector<std::string>&);
  std::vector<Node> nodes_;
  int32_t root_{-1};
  std::vector<std::string> vars_;
  std::string source_;

  double eval_node(int32_t idx, const double* vals) const;
  void print_node(int32_t idx, std::string& out, int parent_prec, bool right) const;
};

ExprAst parse(const std::string& source, const std::vector<std::string>& variables);

// Central difference (f(x+h) - f(x-h)) / 2h with h = step * max(1, |x|).
double diff_numeric(const ExprAst& ast, const std::string& var,
                    const std::map<std::string, double>& point, double step);

} // namespace sfe::expr

#endif
