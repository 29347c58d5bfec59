#include "sfe/energy.hpp"

#include <cmath>

namespace sfe::energy {

void TrickConfig::validate(int N, model::CaseTag tag, double q) const {
  double bound = static_cast<double>(N) / (N - 2.0);
  if (tag == model::CaseTag::zero_mass_multi) bound = std::fmax(bound, q / 2.0);
  if (k != 0.0 && !(k > bound))
    throw Error(ErrorCode::config,
                "k = " + std::to_string(k) + " violates k > " + std::to_string(bound));
  if (!(tol_g > 0) || !(tol_E > 0)) throw Error(ErrorCode::config, "tolerances must be positive");
  if (max_iters < 1) throw Error(ErrorCode::config, "max_iters >= 1 required");
}

double h_eval(double k, double t) { return std::pow(t, k) / k; }
double h_prime(double k, double t) { return std::pow(t, k - 1.0); }

int choose_k(model::CaseTag tag, int N, double q) {
  double bound = static_cast<double>(N) / (N - 2.0);
  if (tag == model::CaseTag::zero_mass_multi) bound = std::fmax(bound, q / 2.0);
  int k = static_cast<int>(std::floor(bound)) + 1;
  if (!(k > bound)) ++k; // bound was an integer
  return k;
}

double phi(const grid::Profile& u) { return grid::dirichlet_energy(u); }

double psi(const grid::Profile& u, const model::NonlinearitySpec& spec) {
  const auto& w = u.grid->weights();
  double acc = 0.0;
  for (size_t i = 0; i < w.size(); ++i) acc += w[i] * spec.G(u.values[i]);
  return u.grid->omega() * acc;
}

double J(const grid::Profile& u, const model::NonlinearitySpec& spec) {
  return phi(u) - psi(u, spec);
}

double Jh(const grid::Profile& u, const model::NonlinearitySpec& spec, double k) {
  return h_eval(k, phi(u)) - psi(u, spec);
}

double phi(const Pair& p) { return grid::dirichlet_energy(p.u) + grid::dirichlet_energy(p.v); }

double psi(const Pair& p, const model::SystemSpec& spec) {
  const auto& w = p.u.grid->weights();
  double acc = 0.0;
  for (size_t i = 0; i < w.size(); ++i) acc += w[i] * spec.F(p.u.values[i], p.v.values[i]);
  return p.u.grid->omega() * acc;
}

double Jh(const Pair& p, const model::SystemSpec& spec, double k) {
  return h_eval(k, phi(p)) - psi(p, spec);
}

double grad_Jh(const grid::Profile& u, const model::NonlinearitySpec& spec, double k,
               std::vector<double>& grad) {
  double P = phi(u);
  double Pk1 = h_prime(k, P);
  std::vector<double> lap;
  grid::neg_laplacian(u, lap);
  const auto& w = u.grid->weights();
  double om = u.grid->omega();
  size_t M = u.grid->segments();
  grad.resize(M);
  for (size_t i = 0; i < M; ++i)
    grad[i] = om * w[i] * (Pk1 * lap[i] - spec.g(u.values[i]));
  return P;
}

double grad_Jh(const Pair& p, const model::SystemSpec& spec, double k,
               std::vector<double>& grad_u, std::vector<double>& grad_v) {
  double P = phi(p);
  double Pk1 = h_prime(k, P);
  std::vector<double> lap_u, lap_v;
  grid::neg_laplacian(p.u, lap_u);
  grid::neg_laplacian(p.v, lap_v);
  const auto& w = p.u.grid->weights();
  double om = p.u.grid->omega();
  size_t M = p.u.grid->segments();
  grad_u.resize(M);
  grad_v.resize(M);
  for (size_t i = 0; i < M; ++i) {
    double a = p.u.values[i], b = p.v.values[i];
    grad_u[i] = om * w[i] * (Pk1 * lap_u[i] - spec.Fu(a, b));
    grad_v[i] = om * w[i] * (Pk1 * lap_v[i] - spec.Fv(a, b));
  }
  return P;
}

SobolevPreconditioner::SobolevPreconditioner(const grid::RadialGrid& g, double c_mass) {
  const auto& c = g.edge_coeffs();
  const auto& w = g.weights();
  double om = g.omega();
  size_t M = g.segments();
  lower_.assign(M, 0.0);
  diag_.assign(M, 0.0);
  upper_.assign(M, 0.0);
  diag_[0] = om * c[0] + c_mass * om * w[0];
  upper_[0] = -om * c[0];
  for (size_t i = 1; i < M; ++i) {
    diag_[i] = om * (c[i - 1] + c[i]) + c_mass * om * w[i];
    lower_[i] = -om * c[i - 1];
    upper_[i] = -om * c[i];
  }
}

void SobolevPreconditioner::apply(const std::vector<double>& rhs, std::vector<double>& out) const {
  // Thomas algorithm
  size_t n = diag_.size();
  static thread_local std::vector<double> cp, dp;
  cp.resize(n);
  dp.resize(n);
  cp[0] = upper_[0] / diag_[0];
  dp[0] = rhs[0] / diag_[0];
  for (size_t i = 1; i < n; ++i) {
    double m = diag_[i] - lower_[i] * cp[i - 1];
    cp[i] = upper_[i] / m;
    dp[i] = (rhs[i] - lower_[i] * dp[i - 1]) / m;
  }
  out.resize(n);
  out[n - 1] = dp[n - 1];
  for (size_t i = n - 1; i-- > 0;) out[i] = dp[i] - cp[i] * out[i + 1];
}

} // namespace sfe::energy
