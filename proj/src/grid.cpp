#include "sfe/grid.hpp"

#include <algorithm>
#include <cmath>

namespace sfe::grid {

namespace {

constexpr double kPi = 3.14159265358979323846;

double unit_sphere_area(int N) {
  // 2 pi^{N/2} / Gamma(N/2)
  return 2.0 * std::pow(kPi, 0.5 * N) / std::tgamma(0.5 * N);
}

} // namespace

RadialGrid::RadialGrid(int N, std::vector<double> radii, Grading grading, double ratio)
    : N_(N), radii_(std::move(radii)), grading_(grading), ratio_(ratio) {
  if (N_ < 3) throw Error(ErrorCode::config, "RadialGrid: N >= 3 required");
  if (radii_.size() < 17) throw Error(ErrorCode::config, "RadialGrid: M >= 16 required");
  if (radii_.front() != 0.0) throw Error(ErrorCode::config, "RadialGrid: r_0 must be 0");
  for (size_t i = 0; i + 1 < radii_.size(); ++i)
    if (!(radii_[i] < radii_[i + 1]))
      throw Error(ErrorCode::config, "RadialGrid: radii must be strictly increasing");
  omega_ = unit_sphere_area(N_);

  size_t M = radii_.size() - 1;
  c_.resize(M);
  for (size_t i = 0; i < M; ++i) {
    double dr = radii_[i + 1] - radii_[i];
    double rb = 0.5 * (radii_[i] + radii_[i + 1]);
    c_[i] = std::pow(rb, N_ - 1) / dr;
  }
  // dual-cell weights: exact integrals of r^{N-1}; cell boundaries are the
  // edge midpoints, with the end cells closed by r_0 and r_M
  w_.resize(M + 1);
  double prev_bn = 0.0; // boundary^N at the left side of the current cell
  for (size_t i = 0; i <= M; ++i) {
    double b = (i == M) ? radii_[M] : 0.5 * (radii_[i] + radii_[i + 1]);
    double bn = std::pow(b, N_);
    w_[i] = (bn - prev_bn) / N_;
    prev_bn = bn;
  }
}

GridPtr make_grid(int N, double R, size_t M, Grading grading, double ratio) {
  if (!(R > 0)) throw Error(ErrorCode::config, "make_grid: R > 0 required");
  if (M < 16) throw Error(ErrorCode::config, "make_grid: M >= 16 required");
  std::vector<double> r(M + 1);
  if (grading == Grading::uniform || ratio == 1.0) {
    for (size_t i = 0; i <= M; ++i)
      r[i] = R * static_cast<double>(i) / static_cast<double>(M);
    return std::make_shared<RadialGrid>(N, std::move(r), Grading::uniform, 1.0);
  }
  if (!(ratio >= 1.0 && ratio <= 1.1))
    throw Error(ErrorCode::config, "make_grid: geometric ratio must be in [1.0, 1.1]");
  // r_i = R (ratio^i - 1) / (ratio^M - 1); use expm1 for the deep nodes
  double den = std::expm1(static_cast<double>(M) * std::log(ratio));
  for (size_t i = 0; i <= M; ++i)
    r[i] = R * std::expm1(static_cast<double>(i) * std::log(ratio)) / den;
  r[M] = R;
  return std::make_shared<RadialGrid>(N, std::move(r), Grading::geometric, ratio);
}

GridPtr grid_from_radii(int N, std::vector<double> radii) {
  return std::make_shared<RadialGrid>(N, std::move(radii), Grading::uniform, 1.0);
}

Profile::Profile(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid->nodes())
    throw Error(ErrorCode::config, "Profile: value count must match the grid");
  for (double x : values)
    if (!std::isfinite(x)) throw Error(ErrorCode::config, "Profile: non-finite value");
  values.back() = 0.0;
}

double Profile::max_abs() const {
  double m = 0;
  for (double x : values) m = std::fmax(m, std::fabs(x));
  return m;
}

double integrate_radial(const RadialGrid& g, const std::vector<double>& node_values) {
  if (node_values.size() != g.nodes())
    throw Error(ErrorCode::config, "integrate_radial: size mismatch");
  const auto& w = g.weights();
  double acc = 0.0;
  for (size_t i = 0; i < w.size(); ++i) acc += w[i] * node_values[i];
  return g.omega() * acc;
}

double dirichlet_energy(const Profile& p) {
  const auto& c = p.grid->edge_coeffs();
  const auto& u = p.values;
  double acc = 0.0;
  for (size_t i = 0; i < c.size(); ++i) {
    double du = u[i + 1] - u[i];
    acc += c[i] * du * du;
  }
  return 0.5 * p.grid->omega() * acc;
}

Profile rescale_grid(const Profile& p, double lambda) {
  if (!(lambda > 0)) throw Error(ErrorCode::config, "rescale_grid: lambda > 0 required");
  double s = std::sqrt(lambda);
  std::vector<double> r = p.grid->radii();
  for (double& x : r) x *= s;
  auto g = std::make_shared<RadialGrid>(p.grid->dim(), std::move(r), p.grid->grading(),
                                        p.grid->ratio());
  return Profile(std::move(g), p.values);
}

namespace {

// Fritsch-Carlson limited slopes for monotone cubic interpolation.
std::vector<double> limited_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  size_t n = x.size();
  std::vector<double> d(n, 0.0);
  std::vector<double> sec(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) sec[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  d[0] = sec[0];
  d[n - 1] = sec[n - 2];
  for (size_t i = 1; i + 1 < n; ++i)
    d[i] = (sec[i - 1] * sec[i] <= 0.0) ? 0.0 : 0.5 * (sec[i - 1] + sec[i]);
  for (size_t i = 0; i + 1 < n; ++i) {
    if (sec[i] == 0.0) {
      d[i] = d[i + 1] = 0.0;
      continue;
    }
    double a = d[i] / sec[i], b = d[i + 1] / sec[i];
    double s2 = a * a + b * b;
    if (s2 > 9.0) {
      double t = 3.0 / std::sqrt(s2);
      d[i] = t * a * sec[i];
      d[i + 1] = t * b * sec[i];
    }
  }
  return d;
}

} // namespace

Profile resample(const Profile& p, const GridPtr& target) {
  const auto& xs = p.grid->radii();
  const auto& ys = p.values;
  double srcR = xs.back();
  if (target->truncation_radius() < srcR) {
    // clipping allowed only when the clipped part is negligible
    double lost = 0.0, cap = 1e-8 * p.max_abs();
    for (size_t i = 0; i < xs.size(); ++i)
      if (xs[i] > target->truncation_radius()) lost = std::fmax(lost, std::fabs(ys[i]));
    if (lost > cap)
      throw Error(ErrorCode::config, "resample: truncation-loss (clipped values too large)");
  }
  std::vector<double> slopes = limited_slopes(xs, ys);
  std::vector<double> out(target->nodes(), 0.0);
  size_t seg = 0;
  for (size_t i = 0; i < target->nodes(); ++i) {
    double r = target->radii()[i];
    if (r > srcR) { out[i] = 0.0; continue; }
    while (seg + 2 < xs.size() && xs[seg + 1] < r) ++seg;
    double h = xs[seg + 1] - xs[seg];
    double t = (r - xs[seg]) / h;
    double t2 = t * t, t3 = t2 * t;
    out[i] = (2 * t3 - 3 * t2 + 1) * ys[seg] + (t3 - 2 * t2 + t) * h * slopes[seg] +
             (-2 * t3 + 3 * t2) * ys[seg + 1] + (t3 - t2) * h * slopes[seg + 1];
  }
  out.back() = 0.0;
  return Profile(target, std::move(out));
}

Profile rearrange_radial(const Profile& p) {
  std::vector<double> v(p.values.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = std::fabs(p.values[i]);
  std::sort(v.begin(), v.end(), std::greater<double>());
  v.back() = 0.0;
  return Profile(p.grid, std::move(v));
}

void neg_laplacian(const Profile& p, std::vector<double>& out) {
  const auto& c = p.grid->edge_coeffs();
  const auto& w = p.grid->weights();
  const auto& u = p.values;
  size_t M = p.grid->segments();
  out.resize(M);
  double flux_prev = 0.0; // zero flux through r = 0
  for (size_t i = 0; i < M; ++i) {
    double flux = c[i] * (u[i + 1] - u[i]);
    out[i] = (flux_prev - flux) / w[i];
    flux_prev = flux;
  }
}

} // namespace sfe::grid
