#ifndef SFE_SOLVER_HPP
#define SFE_SOLVER_HPP

#include <string>
#include <vector>

#include "sfe/energy.hpp"

namespace sfe::solver {

struct SolveReport {
  bool converged = false;
  int iterations = 0;         // descent iterations accepted
  int polish_iterations = 0;  // Newton steps on the absorbed system
  int extensions = 0;         // domain continuations
  double k = 0;
  int neg_seed_j = -1;        // dilation exponent that reached a negative level
  double phi_star = 0;        // of the compressed representative u*
  double psi_star = 0;
  double jh_star = 0;         // must be < 0 on success
  double lambda = 0;          // scale multiplier, lambda = 1/h'(Phi(u*))
  double J_absorbed = 0;      // J of the rescaled solution
  double resid_l2w = 0;       // weighted-L2 EL residual of the absorbed solution
  double resid_l2w_rel = 0;
  double resid_linf_interior = 0;
  double pohozaev = 0;
  double pohozaev_normalized = 0;
  double boundary_tail = 0;   // max|v| on the outer 5% of radii, relative
  double wall_seconds = 0;
  std::string note;
};

struct SolveResult {
  SolveReport report;
  grid::Profile profile;
};

struct SystemResult {
  SolveReport report;
  grid::Profile u, v;
};

// Plateau of height xi on [0, t_plateau], linear skirt to 0. Asserts
// psi > 0, doubling t_plateau within the grid if needed.
grid::Profile build_plateau_seed(const model::NonlinearitySpec& spec, const grid::GridPtr& g,
                                 double xi, double t_plateau, double skirt);

// Dilation scan phi_t = rescale_grid(phi, t^2), t = 2^-j, j = 0..20, on the
// Dirichlet-normalized plateau; returns the first profile with Jh < 0.
grid::Profile find_negative_seed(const model::NonlinearitySpec& spec, const grid::GridPtr& g,
                                 double k, const energy::TrickConfig& cfg, int* j_out = nullptr);

struct MinimizeResult {
  grid::Profile u;
  int iterations = 0;
  bool converged = false;
};

// Barzilai-Borwein descent with Armijo backtracking on the preconditioned
// gradient, run in epochs of 25 iterations. At epoch boundaries the iterate
// is re-balanced by an exact dilation (safeguarded, never increases Jh) and,
// when cfg.rearrange is set, replaced by the decreasing rearrangement of |u|
// if that does not increase Jh.
MinimizeResult minimize_Jh(const grid::Profile& seed, const model::NonlinearitySpec& spec,
                           const energy::TrickConfig& cfg, double k);

// lambda = 1 / h'(Phi(u*)) = Phi(u*)^{1-k}. Throws on Phi = 0 (trivial
// minimizer, the trick failed).
double lambda_of(const grid::Profile& u_star, double k);

// v(x) = u(x / sqrt(lambda)) by exact grid rescaling.
grid::Profile absorb(const grid::Profile& u_star, double lambda);

// Damped Newton on the discrete system -Delta_h v = amp * g(v) (Dirichlet at
// R). Returns iteration count; `converged` reports whether the masked
// relative residual went below tol.
int newton_el(grid::Profile& v, const model::NonlinearitySpec& spec, double amp, double tol,
              int max_iters, bool* converged = nullptr);

// Full scalar pipeline: hypothesis gate, seeding, descent, absorption,
// Newton polish and domain continuation.
SolveResult solve_ground(const model::NonlinearitySpec& spec, const energy::TrickConfig& cfg,
                         const grid::GridPtr& g);

struct SphereProbeResult {
  double radius = 0;       // r_j
  double sampled_sup = 0;  // < 0 on success
  int halvings = 0;
  double basis_scale = 0;  // spatial scale of the annular basis
};

// Lemma-scale probe: spans j disjoint-support annular bumps (orthonormal in
// the Dirichlet inner product), samples Jh on >= 100 j sphere points of
// radius r in the gradient norm, halving r from 1 until the sampled sup is
// negative. The basis is concentrated toward the origin automatically when
// the borderline growth case requires it.
SphereProbeResult sphere_probe(const model::NonlinearitySpec& spec, const grid::GridPtr& g,
                               double k, int j);

// Multiplicity surrogate: structurally different sign-alternating radial
// seeds (lobe structure located by a deterministic amplitude-transition scan
// of the radial shooting map), each polished by damped Newton on the
// discrete Euler-Lagrange system, then filtered to pairwise-distinct
// solutions (relative Linf gap > 1e-3 and gradient-norm gap > 1e-6 max).
std::vector<SolveResult> solve_multi(const model::NonlinearitySpec& spec,
                                     const energy::TrickConfig& cfg, const grid::GridPtr& g,
                                     int count);

// Two-component pipeline on profile pairs sharing one grid; a single lambda
// rescales both components.
SystemResult solve_system(const model::SystemSpec& sys, const energy::TrickConfig& cfg,
                          const grid::GridPtr& g);

// Deterministic 64-bit generator used wherever sampling is required.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; } // [0, 1)
  double normal() {
    double u1 = 0, u2 = 0;
    while (u1 == 0) u1 = uniform();
    u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
};

} // namespace sfe::solver

#endif
