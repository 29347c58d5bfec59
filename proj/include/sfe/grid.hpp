#ifndef SFE_GRID_HPP
#define SFE_GRID_HPP

#include <memory>
#include <vector>

#include "sfe/error.hpp"

namespace sfe::grid {

enum class Grading { uniform, geometric };

// Radial grid on [0, R] for dimension N >= 3 with the measure
// omega * r^{N-1} dr, omega = 2 pi^{N/2} / Gamma(N/2).
//
// Nodes r_0 = 0 < r_1 < ... < r_M = R. Dual cell of node i runs between the
// neighbouring edge midpoints; its weight w_i is the exact integral of
// r^{N-1} over the cell, so the weights partition R^N / N exactly.
// Edge coefficient c_i = rbar_i^{N-1} / dr_i with rbar the edge midpoint;
// this pins the discrete Dirichlet energy and the induced finite-volume
// Laplacian used everywhere downstream.
class RadialGrid {
public:
  RadialGrid(int N, std::vector<double> radii, Grading grading, double ratio);

  int dim() const { return N_; }
  double omega() const { return omega_; }
  double truncation_radius() const { return radii_.back(); }
  size_t segments() const { return radii_.size() - 1; } // M
  size_t nodes() const { return radii_.size(); }        // M + 1
  Grading grading() const { return grading_; }
  double ratio() const { return ratio_; }

  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& weights() const { return w_; }       // size M+1
  const std::vector<double>& edge_coeffs() const { return c_; }   // size M

private:
  int N_;
  std::vector<double> radii_;
  Grading grading_;
  double ratio_;
  double omega_;
  std::vector<double> w_;
  std::vector<double> c_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(int N, double R, size_t M, Grading grading, double ratio = 1.0);
GridPtr grid_from_radii(int N, std::vector<double> radii); // grading inferred as custom

// Nodal values on a grid; u_M = 0 (far-field Dirichlet).
struct Profile {
  GridPtr grid;
  std::vector<double> values; // size M+1

  Profile() = default;
  Profile(GridPtr g, std::vector<double> v);
  size_t interior() const { return grid->segments(); } // degrees of freedom 0..M-1
  double max_abs() const;
};

// omega * sum_i w_i f_i  (f given at nodes).
double integrate_radial(const RadialGrid& g, const std::vector<double>& node_values);

// 1/2 * omega * sum_edges c_i (u_{i+1} - u_i)^2. This discrete form defines
// Phi for all modules and is exactly scale covariant under rescale_grid.
double dirichlet_energy(const Profile& p);

// Pushforward of u(x) -> u(x / sqrt(lambda)): radii scale by sqrt(lambda),
// values unchanged. Zero interpolation error.
Profile rescale_grid(const Profile& p, double lambda);

// Shape-preserving (monotone-limited) cubic interpolation onto target radii.
// Values beyond the source radius must be below 1e-8 * max|u| (else
// truncation-loss), and are extended by zero.
Profile resample(const Profile& p, const GridPtr& target);

// Decreasing rearrangement: |values| sorted descending along increasing
// radius (equivalently along increasing cumulative measure). Exactly
// preserves the multiset of |values|; preserves integrals of f(u) when the
// dual cells have equal measure.
Profile rearrange_radial(const Profile& p);

// The conservative finite-volume radial Laplacian induced by
// dirichlet_energy: out_i = (-Delta_h u)_i for i = 0..M-1, where
// dPhi/du_i = omega * w_i * (-Delta_h u)_i.
void neg_laplacian(const Profile& p, std::vector<double>& out);

} // namespace sfe::grid

#endif
