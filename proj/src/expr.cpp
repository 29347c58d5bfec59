#include "sfe/expr.hpp"

#include <cctype>
#include <cmath>

namespace sfe::expr {

namespace {

struct Token {
  enum Kind { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end } kind;
  double value{};
  std::string text;
  uint32_t offset{};
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& cur() const { return cur_; }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    cur_.offset = static_cast<uint32_t>(pos_);
    if (pos_ >= src_.size()) { cur_.kind = Token::end; return; }
    char c = src_[pos_];
    switch (c) {
      case '+': cur_.kind = Token::plus; ++pos_; return;
      case '-': cur_.kind = Token::minus; ++pos_; return;
      case '*': cur_.kind = Token::star; ++pos_; return;
      case '/': cur_.kind = Token::slash; ++pos_; return;
      case '^': cur_.kind = Token::caret; ++pos_; return;
      case '(': cur_.kind = Token::lparen; ++pos_; return;
      case ')': cur_.kind = Token::rparen; ++pos_; return;
      case ',': cur_.kind = Token::comma; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t n = 0;
      cur_.value = std::stod(src_.substr(pos_), &n);
      if (n == 0) fail("malformed number", pos_);
      cur_.kind = Token::number;
      pos_ += n;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      cur_.kind = Token::ident;
      cur_.text = src_.substr(start, pos_ - start);
      return;
    }
    fail(std::string("unexpected character '") + c + "'", pos_);
  }

  [[noreturn]] static void fail(const std::string& msg, size_t offset) {
    throw Error(ErrorCode::syntax, msg + " at offset " + std::to_string(offset));
  }

private:
  const std::string& src_;
  size_t pos_ = 0;
  Token cur_;
};

struct BuiltinInfo { const char* name; Builtin id; int arity; };
constexpr BuiltinInfo kBuiltins[] = {
    {"abs", Builtin::abs, 1},  {"min", Builtin::min, 2},   {"max", Builtin::max, 2},
    {"exp", Builtin::exp, 1},  {"log", Builtin::log, 1},   {"sqrt", Builtin::sqrt, 1},
    {"pow", Builtin::pow_, 2}, {"sign", Builtin::sign, 1}, {"pos", Builtin::pos, 1},
};

const char* builtin_name(Builtin b) {
  for (const auto& info : kBuiltins)
    if (info.id == b) return info.name;
  return "?";
}

class Parser {
public:
  Parser(const std::string& src, const std::vector<std::string>& vars, ExprAst& out)
      : lex_(src), vars_(vars), out_(out) {}

  int32_t parse_expression(int min_bp) {
    int32_t lhs = parse_prefix();
    for (;;) {
      const Token& t = lex_.cur();
      int lbp, rbp;
      NodeKind kind;
      switch (t.kind) {
        case Token::plus:  lbp = 10; rbp = 11; kind = NodeKind::add; break;
        case Token::minus: lbp = 10; rbp = 11; kind = NodeKind::sub; break;
        case Token::star:  lbp = 20; rbp = 21; kind = NodeKind::mul; break;
        case Token::slash: lbp = 20; rbp = 21; kind = NodeKind::div; break;
        case Token::caret: lbp = 40; rbp = 40; kind = NodeKind::pow_; break; // right assoc
        default: return lhs;
      }
      if (lbp < min_bp) return lhs;
      uint32_t off = t.offset;
      lex_.advance();
      int32_t rhs = parse_expression(rbp);
      lhs = make(kind, off, lhs, rhs);
    }
  }

  void expect_end() const {
    if (lex_.cur().kind != Token::end)
      Lexer::fail("trailing input", lex_.cur().offset);
  }

private:
  int32_t parse_prefix() {
    const Token t = lex_.cur();
    switch (t.kind) {
      case Token::number: {
        lex_.advance();
        int32_t n = make(NodeKind::number, t.offset);
        out_.nodes_[n].value = t.value;
        return n;
      }
      case Token::minus: {
        lex_.advance();
        // unary minus binds looser than ^: -s^2 is -(s^2)
        int32_t child = parse_expression(30);
        return make(NodeKind::neg, t.offset, child);
      }
      case Token::lparen: {
        lex_.advance();
        int32_t inner = parse_expression(0);
        if (lex_.cur().kind != Token::rparen) Lexer::fail("expected ')'", lex_.cur().offset);
        lex_.advance();
        return inner;
      }
      case Token::ident: {
        lex_.advance();
        if (lex_.cur().kind == Token::lparen) return parse_call(t);
        for (uint32_t i = 0; i < vars_.size(); ++i) {
          if (vars_[i] == t.text) {
            int32_t n = make(NodeKind::variable, t.offset);
            out_.nodes_[n].var = i;
            return n;
          }
        }
        Lexer::fail("unknown identifier '" + t.text + "'", t.offset);
      }
      default:
        Lexer::fail("expected expression", t.offset);
    }
  }

  int32_t parse_call(const Token& name) {
    const BuiltinInfo* info = nullptr;
    for (const auto& b : kBuiltins)
      if (name.text == b.name) { info = &b; break; }
    if (!info) Lexer::fail("unknown function '" + name.text + "'", name.offset);
    lex_.advance(); // (
    int32_t a = parse_expression(0);
    int32_t b = -1;
    int got = 1;
    if (lex_.cur().kind == Token::comma) {
      lex_.advance();
      b = parse_expression(0);
      got = 2;
    }
    if (got != info->arity)
      Lexer::fail(std::string(info->name) + " expects " + std::to_string(info->arity) +
                      " argument(s), got " + std::to_string(got),
                  name.offset);
    if (lex_.cur().kind != Token::rparen) Lexer::fail("expected ')'", lex_.cur().offset);
    lex_.advance();
    int32_t n = make(NodeKind::call, name.offset, a, b);
    out_.nodes_[n].fn = info->id;
    return n;
  }

  int32_t make(NodeKind kind, uint32_t offset, int32_t lhs = -1, int32_t rhs = -1) {
    Node n;
    n.kind = kind;
    n.offset = offset;
    n.lhs = lhs;
    n.rhs = rhs;
    out_.nodes_.push_back(n);
    return static_cast<int32_t>(out_.nodes_.size() - 1);
  }

  Lexer lex_;
  const std::vector<std::string>& vars_;
  ExprAst& out_;
};

[[noreturn]] void domain_fail(const char* what, uint32_t offset) {
  throw Error(ErrorCode::domain,
              std::string("domain error: ") + what + " at offset " + std::to_string(offset));
}

} // namespace

ExprAst parse(const std::string& source, const std::vector<std::string>& variables) {
  if (source.empty()) throw Error(ErrorCode::syntax, "empty expression");
  ExprAst ast;
  ast.vars_ = variables;
  ast.source_ = source;
  Parser p(source, variables, ast);
  ast.root_ = p.parse_expression(0);
  p.expect_end();
  return ast;
}

double ExprAst::eval_node(int32_t idx, const double* vals) const {
  const Node& n = nodes_[idx];
  switch (n.kind) {
    case NodeKind::number: return n.value;
    case NodeKind::variable: return vals[n.var];
    case NodeKind::neg: return -eval_node(n.lhs, vals);
    case NodeKind::add: return eval_node(n.lhs, vals) + eval_node(n.rhs, vals);
    case NodeKind::sub: return eval_node(n.lhs, vals) - eval_node(n.rhs, vals);
    case NodeKind::mul: return eval_node(n.lhs, vals) * eval_node(n.rhs, vals);
    case NodeKind::div: {
      double den = eval_node(n.rhs, vals);
      if (den == 0.0) domain_fail("division by zero", n.offset);
      return eval_node(n.lhs, vals) / den;
    }
    case NodeKind::pow_: {
      double b = eval_node(n.lhs, vals), e = eval_node(n.rhs, vals);
      double r = std::pow(b, e);
      if (!std::isfinite(r) && std::isfinite(b) && std::isfinite(e))
        domain_fail("pow out of domain", n.offset);
      return r;
    }
    case NodeKind::call: {
      double a = eval_node(n.lhs, vals);
      switch (n.fn) {
        case Builtin::abs: return std::fabs(a);
        case Builtin::exp: return std::exp(a);
        case Builtin::log:
          if (a <= 0.0) domain_fail("log of non-positive value", n.offset);
          return std::log(a);
        case Builtin::sqrt:
          if (a < 0.0) domain_fail("sqrt of negative value", n.offset);
          return std::sqrt(a);
        case Builtin::sign: return a > 0 ? 1.0 : (a < 0 ? -1.0 : 0.0);
        case Builtin::pos: return a > 0 ? a : 0.0;
        case Builtin::min: return std::fmin(a, eval_node(n.rhs, vals));
        case Builtin::max: return std::fmax(a, eval_node(n.rhs, vals));
        case Builtin::pow_: {
          double e = eval_node(n.rhs, vals);
          double r = std::pow(a, e);
          if (!std::isfinite(r) && std::isfinite(a) && std::isfinite(e))
            domain_fail("pow out of domain", n.offset);
          return r;
        }
      }
      domain_fail("bad call", n.offset);
    }
  }
  domain_fail("bad node", 0);
}

double ExprAst::eval(const std::vector<double>& values) const {
  if (values.size() != vars_.size())
    throw Error(ErrorCode::config, "eval: expected " + std::to_string(vars_.size()) + " values");
  return eval_node(root_, values.data());
}

double ExprAst::eval(const std::map<std::string, double>& bindings) const {
  std::vector<double> vals(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = bindings.find(vars_[i]);
    if (it == bindings.end())
      throw Error(ErrorCode::config, "unbound variable '" + vars_[i] + "'");
    vals[i] = it->second;
  }
  return eval_node(root_, vals.data());
}

namespace {
int prec_of(NodeKind k) {
  switch (k) {
    case NodeKind::add: case NodeKind::sub: return 10;
    case NodeKind::mul: case NodeKind::div: return 20;
    case NodeKind::neg: return 30;
    case NodeKind::pow_: return 40;
    default: return 100;
  }
}
} // namespace

void ExprAst::print_node(int32_t idx, std::string& out, int parent_prec, bool right) const {
  const Node& n = nodes_[idx];
  int prec = prec_of(n.kind);
  // left-assoc operators need parens on the right at equal precedence, and vice versa for ^
  bool parens = prec < parent_prec ||
                (prec == parent_prec && right && n.kind != NodeKind::pow_) ||
                (prec == parent_prec && !right && n.kind == NodeKind::pow_);
  if (parens) out += '(';
  switch (n.kind) {
    case NodeKind::number: {
      char buf[32];
      snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      break;
    }
    case NodeKind::variable: out += vars_[n.var]; break;
    case NodeKind::neg:
      out += '-';
      print_node(n.lhs, out, prec + 1, true);
      break;
    case NodeKind::add: case NodeKind::sub: case NodeKind::mul:
    case NodeKind::div: case NodeKind::pow_: {
      const char* op = n.kind == NodeKind::add ? " + "
                     : n.kind == NodeKind::sub ? " - "
                     : n.kind == NodeKind::mul ? "*"
                     : n.kind == NodeKind::div ? "/" : "^";
      print_node(n.lhs, out, prec, false);
      out += op;
      print_node(n.rhs, out, prec, true);
      break;
    }
    case NodeKind::call:
      out += builtin_name(n.fn);
      out += '(';
      print_node(n.lhs, out, 0, false);
      if (n.rhs >= 0) {
        out += ", ";
        print_node(n.rhs, out, 0, false);
      }
      out += ')';
      break;
  }
  if (parens) out += ')';
}

std::string ExprAst::print() const {
  std::string out;
  print_node(root_, out, 0, false);
  return out;
}

double diff_numeric(const ExprAst& ast, const std::string& var,
                    const std::map<std::string, double>& point, double step) {
  if (step <= 0) throw Error(ErrorCode::config, "diff_numeric: step must be positive");
  auto it = point.find(var);
  if (it == point.end())
    throw Error(ErrorCode::config, "diff_numeric: unbound variable '" + var + "'");
  double x = it->second;
  double h = step * std::fmax(1.0, std::fabs(x));
  std::map<std::string, double> p = point;
  p[var] = x + h;
  double fp = ast.eval(p);
  p[var] = x - h;
  double fm = ast.eval(p);
  return (fp - fm) / (2.0 * h);
}

} // namespace sfe::expr
