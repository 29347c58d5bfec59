#include "sfe/model.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

namespace sfe::model {

namespace {

constexpr double kPi = 3.14159265358979323846;

double two_star(int N) { return 2.0 * N / (N - 2.0); }

// Adaptive composite Simpson of f on [a, b].
double simpson_segment(const std::function<double(double)>& f, double a, double b,
                       double fa, double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0) throw Error(ErrorCode::domain, "quadrature non-convergence");
  if (std::fabs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_segment(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
         simpson_segment(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_segment(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

std::string case_name(CaseTag c) {
  switch (c) {
    case CaseTag::positive_mass: return "positive-mass";
    case CaseTag::zero_mass: return "zero-mass";
    case CaseTag::zero_mass_multi: return "zero-mass-multi";
  }
  return "?";
}

CaseTag case_from_name(const std::string& name) {
  if (name == "positive-mass") return CaseTag::positive_mass;
  if (name == "zero-mass") return CaseTag::zero_mass;
  if (name == "zero-mass-multi") return CaseTag::zero_mass_multi;
  throw Error(ErrorCode::config, "unknown case '" + name + "'");
}

NonlinearitySpec NonlinearitySpec::power_minus_mass(double p, double m, int N) {
  if (N < 3) throw Error(ErrorCode::config, "power_minus_mass: N >= 3 required");
  if (!(2.0 < p + 1.0 && p + 1.0 < two_star(N)))
    throw Error(ErrorCode::config, "power_minus_mass: need 2 < p+1 < 2N/(N-2)");
  if (!(m > 0)) throw Error(ErrorCode::config, "power_minus_mass: need m > 0");
  NonlinearitySpec s;
  s.closed_ = Closed::power_minus_mass;
  s.p_ = p;
  s.m_ = m;
  s.case_ = CaseTag::positive_mass;
  try { s.find_xi(); } catch (const Error&) { s.xi_ = 0.0; }
  s.table_range_ = std::fmax(10.0 * s.xi_, 20.0);
  return s;
}

NonlinearitySpec NonlinearitySpec::double_power(double a, double b, int N) {
  if (N < 3) throw Error(ErrorCode::config, "double_power: N >= 3 required");
  if (!(a > two_star(N) - 1.0 && two_star(N) - 1.0 > b && b > 1.0))
    throw Error(ErrorCode::config, "double_power: need a > 2*-1 > b > 1");
  NonlinearitySpec s;
  s.closed_ = Closed::double_power;
  s.a_ = a;
  s.b_ = b;
  s.m_ = 0.0;
  s.q_ = a;
  s.case_ = CaseTag::zero_mass;
  try { s.find_xi(); } catch (const Error&) { s.xi_ = 0.0; }
  s.table_range_ = std::fmax(10.0 * s.xi_, 20.0);
  return s;
}

NonlinearitySpec NonlinearitySpec::from_expressions(const std::string& g_src,
                                                    const std::string& G_src,
                                                    CaseTag tag, double m, double q) {
  if (tag == CaseTag::positive_mass && !(m > 0))
    throw Error(ErrorCode::config, "positive-mass case requires m > 0");
  if (tag != CaseTag::positive_mass && m != 0)
    throw Error(ErrorCode::config, "zero-mass cases require m = 0");
  NonlinearitySpec s;
  s.g_expr_ = std::make_shared<expr::ExprAst>(expr::parse(g_src, {"s"}));
  if (!G_src.empty())
    s.G_expr_ = std::make_shared<expr::ExprAst>(expr::parse(G_src, {"s"}));
  s.case_ = tag;
  s.m_ = m;
  s.q_ = q;
  try { s.find_xi(); } catch (const Error&) { s.xi_ = 0.0; }
  s.table_range_ = std::fmax(10.0 * s.xi_, 20.0);
  if (!s.G_expr_) s.build_table();
  return s;
}

double NonlinearitySpec::g_raw(double s) const {
  switch (closed_) {
    case Closed::power_minus_mass: return std::pow(s, p_) - m_ * s;
    case Closed::double_power: return s <= 1.0 ? std::pow(s, a_) : std::pow(s, b_);
    case Closed::none: return g_expr_->eval(std::vector<double>{s});
  }
  return 0.0;
}

double NonlinearitySpec::g(double s) const {
  double v = g_raw(std::fabs(s));
  return s < 0 ? -v : v;
}

double NonlinearitySpec::g_prime(double s) const {
  double x = std::fabs(s);
  switch (closed_) {
    case Closed::power_minus_mass: return p_ * std::pow(x, p_ - 1.0) - m_;
    case Closed::double_power:
      return x <= 1.0 ? a_ * std::pow(x, a_ - 1.0) : b_ * std::pow(x, b_ - 1.0);
    case Closed::none: {
      double h = 1e-6 * std::fmax(1.0, x);
      return (g(s + h) - g(s - h)) / (2.0 * h);
    }
  }
  return 0.0;
}

double NonlinearitySpec::G_raw(double s) const {
  switch (closed_) {
    case Closed::power_minus_mass:
      return std::pow(s, p_ + 1.0) / (p_ + 1.0) - m_ * s * s / 2.0;
    case Closed::double_power:
      if (s <= 1.0) return std::pow(s, a_ + 1.0) / (a_ + 1.0);
      return 1.0 / (a_ + 1.0) + (std::pow(s, b_ + 1.0) - 1.0) / (b_ + 1.0);
    case Closed::none:
      break;
  }
  if (G_expr_) return G_expr_->eval(std::vector<double>{s});
  // Hermite table lookup, slopes are g.
  if (!G_table_) {
    // table not built yet (during find_xi at construction): integrate directly
    return adaptive_simpson([this](double t) { return g_raw(t); }, 0.0, s, 1e-12 * (1.0 + s));
  }
  if (s > table_range_ * (1.0 + 1e-12))
    throw Error(ErrorCode::domain, "G-table range exceeded (|s| = " + std::to_string(s) + ")");
  const auto& tab = *G_table_;
  size_t n = tab.size() - 1;
  double h = table_range_ / static_cast<double>(n);
  double x = std::fmin(s / h, static_cast<double>(n) - 1e-12);
  size_t i = static_cast<size_t>(x);
  double t = x - static_cast<double>(i);
  double x0 = static_cast<double>(i) * h;
  double y0 = tab[i], y1 = tab[i + 1];
  double d0 = g_raw(x0), d1 = g_raw(x0 + h);
  double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
}

double NonlinearitySpec::G(double s) const { return G_raw(std::fabs(s)); }

void NonlinearitySpec::build_table() {
  const size_t n = 4096;
  auto tab = std::make_shared<std::vector<double>>(n + 1, 0.0);
  double h = table_range_ / static_cast<double>(n);
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double a = static_cast<double>(i) * h, b = a + h;
    acc += adaptive_simpson([this](double t) { return g_raw(t); }, a, b,
                            1e-13 * (1.0 + b));
    (*tab)[i + 1] = acc;
  }
  G_table_ = std::move(tab);
}

double NonlinearitySpec::find_xi() {
  for (int j = 0;; ++j) {
    double s = std::pow(2.0, j / 8.0) * 1e-3;
    if (s > 1e3) break;
    if (G_raw(s) > 0.0) {
      xi_ = s;
      return s;
    }
  }
  throw Error(ErrorCode::hypothesis,
              "no-positive-G: scan found no s <= 1e3 with G(s) > 0 (condition (g3) sampled-fail)");
}

std::string NonlinearitySpec::describe() const {
  char buf[128];
  switch (closed_) {
    case Closed::power_minus_mass:
      snprintf(buf, sizeof buf, "power_minus_mass(p=%g, m=%g)", p_, m_);
      return buf;
    case Closed::double_power:
      snprintf(buf, sizeof buf, "double_power(a=%g, b=%g)", a_, b_);
      return buf;
    case Closed::none:
      return "g = " + g_expr_->source();
  }
  return "?";
}

// --- SystemSpec -------------------------------------------------------------

SystemSpec SystemSpec::from_expressions(const std::string& F_src, const std::string& Fu_src,
                                        const std::string& Fv_src, double m, double q) {
  if (!(m > 0)) throw Error(ErrorCode::config, "system spec requires m > 0");
  SystemSpec s;
  s.F_expr_ = std::make_shared<expr::ExprAst>(expr::parse(F_src, {"u", "v"}));
  s.m_ = m;
  s.q_ = q;
  if (!Fu_src.empty() != !Fv_src.empty())
    throw Error(ErrorCode::config, "give both F_u and F_v or neither");
  if (!Fu_src.empty()) {
    s.Fu_expr_ = std::make_shared<expr::ExprAst>(expr::parse(Fu_src, {"u", "v"}));
    s.Fv_expr_ = std::make_shared<expr::ExprAst>(expr::parse(Fv_src, {"u", "v"}));
    // cross-check against central differences on a sample box
    for (double u : {-1.5, -0.3, 0.4, 1.2}) {
      for (double v : {-1.1, 0.2, 0.8, 1.7}) {
        std::map<std::string, double> pt{{"u", u}, {"v", v}};
        double du = expr::diff_numeric(*s.F_expr_, "u", pt, 1e-6);
        double dv = expr::diff_numeric(*s.F_expr_, "v", pt, 1e-6);
        double gu = s.Fu_expr_->eval(pt), gv = s.Fv_expr_->eval(pt);
        double scale = std::fmax(1.0, std::fmax(std::fabs(du), std::fabs(dv)));
        if (std::fabs(gu - du) > 1e-5 * scale || std::fabs(gv - dv) > 1e-5 * scale)
          throw Error(ErrorCode::config,
                      "provided F_u/F_v disagree with numeric differentiation of F");
      }
    }
  }
  double f00 = s.F(0.0, 0.0);
  if (std::fabs(f00) > 1e-12)
    throw Error(ErrorCode::config, "F(0,0) must be 0");
  return s;
}

double SystemSpec::F(double u, double v) const {
  return F_expr_->eval(std::vector<double>{u, v});
}

double SystemSpec::Fu(double u, double v) const {
  if (Fu_expr_) return Fu_expr_->eval(std::vector<double>{u, v});
  std::map<std::string, double> pt{{"u", u}, {"v", v}};
  return expr::diff_numeric(*F_expr_, "u", pt, 1e-6);
}

double SystemSpec::Fv(double u, double v) const {
  if (Fv_expr_) return Fv_expr_->eval(std::vector<double>{u, v});
  std::map<std::string, double> pt{{"u", u}, {"v", v}};
  return expr::diff_numeric(*F_expr_, "v", pt, 1e-6);
}

double SystemSpec::Fuu(double u, double v) const {
  double h = 1e-5 * std::fmax(1.0, std::fabs(u));
  return (Fu(u + h, v) - Fu(u - h, v)) / (2.0 * h);
}
double SystemSpec::Fuv(double u, double v) const {
  double h = 1e-5 * std::fmax(1.0, std::fabs(v));
  return (Fu(u, v + h) - Fu(u, v - h)) / (2.0 * h);
}
double SystemSpec::Fvv(double u, double v) const {
  double h = 1e-5 * std::fmax(1.0, std::fabs(v));
  return (Fv(u, v + h) - Fv(u, v - h)) / (2.0 * h);
}

std::pair<double, double> SystemSpec::find_positive_point() const {
  for (int j = 0;; ++j) {
    double r = std::pow(2.0, j / 4.0) * 1e-2;
    if (r > 1e3) break;
    for (int a = 0; a < 16; ++a) {
      double th = 2.0 * kPi * a / 16.0;
      double u = r * std::cos(th), v = r * std::sin(th);
      if (F(u, v) > 0.0) return {u, v};
    }
  }
  throw Error(ErrorCode::hypothesis,
              "condition (F3) sampled-fail: no point with F > 0 found by 2-D scan");
}

// --- condition checks -------------------------------------------------------

bool ConditionReport::any_fail() const {
  for (const auto& r : results)
    if (r.verdict == Verdict::sampled_fail) return true;
  return false;
}

const HypothesisResult* ConditionReport::find(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

std::vector<double> small_samples() {
  std::vector<double> s;
  for (int j = 1; j <= 12; ++j) s.push_back(std::pow(10.0, -j));
  return s;
}

std::vector<double> large_samples() {
  std::vector<double> s;
  for (int j = 1; j <= 6; ++j) s.push_back(std::pow(10.0, j));
  return s;
}

HypothesisResult pass(const std::string& name, const std::string& note = "") {
  return {name, Verdict::sampled_pass, 0.0, note};
}
HypothesisResult fail(const std::string& name, double witness, const std::string& note) {
  return {name, Verdict::sampled_fail, witness, note};
}

} // namespace

ConditionReport check_conditions(const NonlinearitySpec& spec, int N) {
  if (N < 3) throw Error(ErrorCode::config, "check_conditions: N >= 3 required");
  ConditionReport rep;
  double ts1 = two_star(N) - 1.0;
  auto small = small_samples();
  auto large = large_samples();

  if (spec.case_tag() == CaseTag::positive_mass) {
    // (g1): -inf < liminf g(s)/s <= limsup g(s)/s <= -m < 0 as s -> 0+
    bool ok = true;
    double wit = 0;
    for (size_t i = small.size() - 4; i < small.size(); ++i) {
      double r = spec.g(small[i]) / small[i];
      if (!(std::fabs(r) < 1e12) || r > -spec.mass() * (1.0 - 1e-2) + 1e-12) {
        ok = false;
        wit = small[i];
        break;
      }
    }
    rep.results.push_back(ok ? pass("g1", "g(s)/s stays <= -m near 0")
                             : fail("g1", wit, "g(s)/s violates the -m bound"));
    // (g2): limsup_{s->inf} g(s)/s^{2*-1} <= 0
    double r = spec.g(large.back()) / std::pow(large.back(), ts1);
    rep.results.push_back(r <= 1e-3 ? pass("g2", "g/s^{2*-1} small at large s")
                                    : fail("g2", large.back(), "g/s^{2*-1} stays positive"));
  } else {
    // (g4): g(0) = 0 and limsup_{s->0+} g(s)/s^{2*-1} = 0
    bool ok = std::fabs(spec.g(0.0)) < 1e-12;
    double wit = 0;
    if (ok) {
      for (double s : small) {
        double r = std::fabs(spec.g(s) / std::pow(s, ts1));
        if (r > 1.0) { ok = false; wit = s; break; }
      }
    }
    if (ok) {
      double tail = std::fabs(spec.g(small.back()) / std::pow(small.back(), ts1));
      if (tail > 1e-3) { ok = false; wit = small.back(); }
    }
    rep.results.push_back(ok ? pass("g4") : fail("g4", wit, "g/s^{2*-1} not vanishing at 0"));
  }

  // (g3)/(g5): exists xi with G(xi) > 0 (found by the construction-time scan)
  const char* g3name = spec.case_tag() == CaseTag::positive_mass ? "g3" : "g5";
  rep.results.push_back(spec.xi() > 0
                            ? pass(g3name, "xi = " + std::to_string(spec.xi()))
                            : fail(g3name, 0.0, "no-positive-G on the scan range"));

  if (spec.case_tag() != CaseTag::positive_mass) {
    // (g6): if g(s) > 0 for all s > xi0, then limsup g/s^{2*-1} = 0 at infinity.
    bool premise = spec.xi() > 0;
    if (premise) {
      for (int j = 0; j <= 40; ++j) {
        double s = spec.xi() * std::pow(1.5, j);
        if (s > 1e3) break;
        if (spec.g(s) <= 0) { premise = false; break; }
      }
    }
    if (!premise) {
      rep.results.push_back({"g6", Verdict::not_checkable, 0.0, "premise g>0 beyond xi0 fails"});
    } else {
      double r = std::fabs(spec.g(large.back()) / std::pow(large.back(), ts1));
      rep.results.push_back(r <= 1e-3 ? pass("g6")
                                      : fail("g6", large.back(), "g/s^{2*-1} not vanishing"));
    }
  }

  if (spec.case_tag() == CaseTag::zero_mass_multi) {
    // (g7): c1 s^q <= g(s) <= c2 s^q on (0, delta], with q > 2*
    bool ok = spec.q() > two_star(N);
    double wit = 0;
    double rmin = 1e300, rmax = 0;
    if (ok) {
      for (double s : small) {
        double r = spec.g(s) / std::pow(s, spec.q());
        if (!(r > 0) || !std::isfinite(r)) { ok = false; wit = s; break; }
        rmin = std::fmin(rmin, r);
        rmax = std::fmax(rmax, r);
      }
      if (ok && rmax / rmin > 1e3) { ok = false; wit = small.back(); }
    }
    rep.results.push_back(ok ? pass("g7", "q = " + std::to_string(spec.q()))
                             : fail("g7", wit, "g/s^q unbounded or q <= 2*"));
    // (g8): lim_{s->inf} g(s)/s^{2*-1} = 0
    double r = std::fabs(spec.g(large.back()) / std::pow(large.back(), ts1));
    rep.results.push_back(r <= 1e-3 ? pass("g8") : fail("g8", large.back(), "not vanishing"));
  }
  return rep;
}

ConditionReport check_conditions(const SystemSpec& spec, int N) {
  if (N < 3) throw Error(ErrorCode::config, "check_conditions: N >= 3 required");
  ConditionReport rep;
  auto small = small_samples();
  // (F1): limsup_{|(t,s)|->0} F(t,s)/|(t,s)|^2 <= -m
  bool ok = true;
  double wit = 0;
  for (size_t i = small.size() - 4; i < small.size() && ok; ++i) {
    for (int a = 0; a < 8; ++a) {
      double th = 2.0 * kPi * a / 8.0;
      double u = small[i] * std::cos(th), v = small[i] * std::sin(th);
      double r = spec.F(u, v) / (small[i] * small[i]);
      if (r > -spec.mass() * (1.0 - 1e-2) + 1e-12) { ok = false; wit = small[i]; break; }
    }
  }
  rep.results.push_back(ok ? pass("F1") : fail("F1", wit, "F/|(t,s)|^2 above -m near 0"));
  // (F2): limsup |F|/|(t,s)|^q < inf near 0
  ok = true;
  for (double s : small) {
    double r = std::fabs(spec.F(s, s)) / std::pow(std::sqrt(2.0) * s, spec.q());
    if (!std::isfinite(r) || r > 1e9) { ok = false; wit = s; break; }
  }
  rep.results.push_back(ok ? pass("F2") : fail("F2", wit, "|F|/|(t,s)|^q unbounded"));
  // (F3): F positive somewhere
  try {
    auto [u, v] = spec.find_positive_point();
    rep.results.push_back(pass("F3", "F(" + std::to_string(u) + "," + std::to_string(v) + ") > 0"));
  } catch (const Error&) {
    rep.results.push_back(fail("F3", 0.0, "no positive value found by 2-D scan"));
  }
  return rep;
}

} // namespace sfe::model
