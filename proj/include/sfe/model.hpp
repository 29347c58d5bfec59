#ifndef SFE_MODEL_HPP
#define SFE_MODEL_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sfe/expr.hpp"

namespace sfe::model {

enum class CaseTag { positive_mass, zero_mass, zero_mass_multi };

std::string case_name(CaseTag c);
CaseTag case_from_name(const std::string& name);

// A nonlinearity g with primitive G(s) = int_0^s g, always extended to R as
// an odd function (g odd, G even). Immutable after construction; the G value
// table for expression-backed specs is built eagerly.
class NonlinearitySpec {
public:
  // g(s) = s^p - m s on s >= 0, closed-form G. Requires 2 < p+1 < 2*, m > 0.
  static NonlinearitySpec power_minus_mass(double p, double m, int N);
  // g(s) = s^a on [0,1], s^b on [1,inf), continuous at 1, closed-form G.
  // Requires a > 2*-1 > b > 1. Zero mass, q = a.
  static NonlinearitySpec double_power(double a, double b, int N);
  // Expression-backed: g over {s}; optional closed-form G over {s}.
  static NonlinearitySpec from_expressions(const std::string& g_src,
                                           const std::string& G_src, // "" = tabulate
                                           CaseTag tag, double m, double q);

  double g(double s) const;        // odd extension
  double g_prime(double s) const;  // derivative of the odd extension (even)
  double G(double s) const;        // even primitive

  CaseTag case_tag() const { return case_; }
  double mass() const { return m_; }
  double q() const { return q_; }
  double xi() const { return xi_; }
  double table_range() const { return table_range_; }
  bool has_closed_G() const { return closed_ != Closed::none || static_cast<bool>(G_expr_); }

  std::string describe() const;

  // Smallest point of the geometric scan s = 2^{j/8} * 1e-3 with G(s) > 0.
  // Stores the result in xi. Throws ErrorCode::hypothesis if the scan
  // exhausts 1e3 (condition (g3)/(g5) sampled-fail).
  double find_xi();

private:
  NonlinearitySpec() = default;
  void build_table();
  double g_raw(double s) const;   // s >= 0, before odd extension
  double G_raw(double s) const;   // s >= 0

  enum class Closed { none, power_minus_mass, double_power };
  Closed closed_ = Closed::none;
  double p_{}, a_{}, b_{};            // builtin exponents
  CaseTag case_ = CaseTag::positive_mass;
  double m_ = 0.0;
  double q_ = 0.0;
  double xi_ = 0.0;
  std::shared_ptr<const expr::ExprAst> g_expr_;
  std::shared_ptr<const expr::ExprAst> G_expr_;
  // Hermite value table for tabulated G on [0, table_range_], slopes are g.
  double table_range_ = 0.0;
  std::shared_ptr<const std::vector<double>> G_table_;
};

// Two-component coupling F(u,v) with partials. F(0,0) = 0.
class SystemSpec {
public:
  static SystemSpec from_expressions(const std::string& F_src,
                                     const std::string& Fu_src, // "" = numeric
                                     const std::string& Fv_src,
                                     double m, double q);

  double F(double u, double v) const;
  double Fu(double u, double v) const;
  double Fv(double u, double v) const;
  // second partials by central differences of Fu/Fv (for Newton polish)
  double Fuu(double u, double v) const;
  double Fuv(double u, double v) const;
  double Fvv(double u, double v) const;

  double mass() const { return m_; }
  double q() const { return q_; }
  bool has_closed_partials() const { return static_cast<bool>(Fu_expr_); }

  // 2-D geometric scan for a point with F > 0 (condition (F3)).
  // Throws ErrorCode::hypothesis when none is found.
  std::pair<double, double> find_positive_point() const;

private:
  SystemSpec() = default;
  std::shared_ptr<const expr::ExprAst> F_expr_, Fu_expr_, Fv_expr_;
  double m_ = 0.0;
  double q_ = 0.0;
};

enum class Verdict { sampled_pass, sampled_fail, not_checkable };

struct HypothesisResult {
  std::string name;     // "g1", "g2", ...
  Verdict verdict;
  double witness = 0.0; // a concrete point for sampled-fail
  std::string note;
};

struct ConditionReport {
  std::vector<HypothesisResult> results;
  bool any_fail() const;
  const HypothesisResult* find(const std::string& name) const;
};

// Sample the case-relevant hypotheses on geometric sequences
// s = 10^-j (j=1..12) and s = 10^j (j=1..6). Verdicts are heuristic.
ConditionReport check_conditions(const NonlinearitySpec& spec, int N);
ConditionReport check_conditions(const SystemSpec& spec, int N);

} // namespace sfe::model

#endif
