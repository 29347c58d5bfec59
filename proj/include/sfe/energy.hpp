#ifndef SFE_ENERGY_HPP
#define SFE_ENERGY_HPP

#include "sfe/grid.hpp"
#include "sfe/model.hpp"

namespace sfe::energy {

enum class GradientMode { euclidean, sobolev_preconditioned };

// Solver knobs. The defaults are tuned for the shipped problem classes; seed
// and tail fields equal to 0 mean "derive from the case and grid".
struct TrickConfig {
  double k = 0.0;                 // 0 = choose_k
  GradientMode mode = GradientMode::sobolev_preconditioned;
  double tol_g = 1e-3;            // descent termination: relative residual
  double tol_E = 1e-12;           // relative energy stall over 10 iterations
  int max_iters = 4000;
  bool rearrange = true;
  // seed parameters
  double seed_xi = 0.0;           // plateau height
  double seed_plateau = 0.0;      // plateau radius
  double seed_skirt = 0.0;        // skirt width
  // truncation radius policy for the absorbed solution
  double tail_target = 0.0;       // max|v| allowed on the outer 5% (relative)
  int max_extensions = 14;
  // polish
  double polish_tol = 1e-9;       // Newton relative residual target
  int polish_iters = 60;

  void validate(int N, model::CaseTag tag, double q) const;
};

// h(t) = t^k / k, h'(t) = t^{k-1}. Satisfies h(0) = 0, h' > 0 on t > 0 and
// makes the reparametrized functional, its derivative and the multiplier
// lambda = 1 / h'(Phi) mutually consistent.
double h_eval(double k, double t);
double h_prime(double k, double t);

// Smallest integer strictly above N/(N-2) (and above q/2 in the
// zero-mass-multi case).
int choose_k(model::CaseTag tag, int N, double q = 0.0);

double phi(const grid::Profile& u);
double psi(const grid::Profile& u, const model::NonlinearitySpec& spec);
double J(const grid::Profile& u, const model::NonlinearitySpec& spec);
double Jh(const grid::Profile& u, const model::NonlinearitySpec& spec, double k);

// Two-component versions (shared grid): phi = 1/2 int(|grad u|^2 + |grad v|^2),
// psi = int F(u, v).
struct Pair {
  grid::Profile u, v;
};
double phi(const Pair& p);
double psi(const Pair& p, const model::SystemSpec& spec);
double Jh(const Pair& p, const model::SystemSpec& spec, double k);

// Exact gradient of the discrete Jh with respect to the interior nodal
// values: grad_i = omega * w_i * (Phi^{k-1} (-Delta_h u)_i - g(u_i)).
// Returns Phi as a by-product.
double grad_Jh(const grid::Profile& u, const model::NonlinearitySpec& spec, double k,
               std::vector<double>& grad);
double grad_Jh(const Pair& p, const model::SystemSpec& spec, double k,
               std::vector<double>& grad_u, std::vector<double>& grad_v);

// Strong-form EL residual rho_i = amp * (-Delta_h u)_i - g(u_i) together with
// the norms used for termination and verification. The interior Linf norm
// excludes the outer 5% of radii and nodes whose finite-difference noise
// floor exceeds 1e-3 of the g scale (relevant on deeply graded grids, where
// the discrete Laplacian of a flat core is pure roundoff).
struct ResidualReport {
  double l2w = 0;            // sqrt(omega sum w rho^2)
  double l2w_rel = 0;        // relative to sqrt(omega sum w g(u)^2)
  double linf_interior = 0;
  double linf_rel = 0;       // relative to max|g(u)|
  double g_max = 0;
};
ResidualReport el_residual(const grid::Profile& u, const model::NonlinearitySpec& spec,
                           double amp);
ResidualReport el_residual(const Pair& p, const model::SystemSpec& spec, double amp);

// Solve (-Delta_h + c I) d = rhs-as-density on the interior nodes
// (rhs given as the euclidean gradient, i.e. omega-w-weighted), Dirichlet at
// r = R. Tridiagonal, SPD for c >= 0.
class SobolevPreconditioner {
public:
  SobolevPreconditioner(const grid::RadialGrid& g, double c_mass);
  void apply(const std::vector<double>& rhs, std::vector<double>& out) const;

private:
  std::vector<double> lower_, diag_, upper_;
};

} // namespace sfe::energy

#endif
