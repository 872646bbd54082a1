#include "latflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "latflow/errors.hpp"

namespace latflow {

namespace {

void check_mn(int m, int n) {
  if (m < 1 || n < 1 || m + n > 4) {
    throw std::invalid_argument("weights must satisfy m, n >= 1 and m + n <= 4");
  }
}

void check_grid(std::span<const double> s_grid) {
  for (size_t i = 1; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > s_grid[i - 1])) {
      throw std::invalid_argument("flow grid must be strictly increasing");
    }
  }
}

std::vector<FlowPoint> trajectory_impl(const AlphaCF& alpha, const NormDescriptor& nu,
                                       double critical_det, std::span<const double> s_grid,
                                       bool parallel) {
  check_grid(s_grid);
  auto count = static_cast<long long>(s_grid.size());
  std::vector<FlowPoint> out(s_grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (long long i = 0; i < count; ++i) {
    auto idx = static_cast<size_t>(i);
    Lattice lat = flow_lattice(alpha, s_grid[idx]);
    out[idx] = FlowPoint{s_grid[idx], lat, delta(lat, nu, critical_det)};
  }
  (void)parallel;
  return out;
}

}  // namespace

MatN flow_matrix(double s, int m, int n) {
  check_mn(m, n);
  int d = m + n;
  MatN out = MatN::identity(d);
  for (int i = 0; i < m; ++i) out.at(i, i) = std::exp(s / m);
  for (int i = m; i < d; ++i) out.at(i, i) = std::exp(-s / n);
  return out;
}

MatN box_matrix(double t, const PsiSpec& psi) {
  check_mn(psi.m, psi.n);
  double pv = psi_eval(psi, t);
  int d = psi.m + psi.n;
  double expand = std::pow(t / pv, static_cast<double>(psi.n) / d);
  double shrink = std::pow(pv / t, static_cast<double>(psi.m) / d);
  MatN out = MatN::identity(d);
  for (int i = 0; i < psi.m; ++i) out.at(i, i) = expand;
  for (int i = psi.m; i < d; ++i) out.at(i, i) = shrink;
  return out;
}

MatN shear_matrix(std::span<const double> A, int m, int n) {
  check_mn(m, n);
  if (A.size() != static_cast<size_t>(m) * static_cast<size_t>(n)) {
    throw std::invalid_argument("shear matrix needs m*n entries");
  }
  MatN out = MatN::identity(m + n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      out.at(i, m + j) = A[static_cast<size_t>(i) * static_cast<size_t>(n) +
                           static_cast<size_t>(j)];
    }
  }
  return out;
}

Lattice flow_lattice(const AlphaCF& alpha, double s) {
  return Lattice::from_basis2(alpha.flow_basis(s));
}

Lattice flow_lattice_mn(std::span<const double> A, int m, int n, double s) {
  return Lattice::from_basis(flow_matrix(s, m, n) * shear_matrix(A, m, n));
}

double flow_delta_at(const AlphaCF& alpha, const NormDescriptor& nu, double critical_det,
                     double s) {
  return delta(flow_lattice(alpha, s), nu, critical_det);
}

std::vector<FlowPoint> trajectory_delta(const AlphaCF& alpha, const NormDescriptor& nu,
                                        double critical_det, std::span<const double> s_grid) {
  return trajectory_impl(alpha, nu, critical_det, s_grid, true);
}

std::vector<FlowPoint> trajectory_delta_serial(const AlphaCF& alpha, const NormDescriptor& nu,
                                               double critical_det,
                                               std::span<const double> s_grid) {
  return trajectory_impl(alpha, nu, critical_det, s_grid, false);
}

std::vector<FlowPoint> trajectory_delta_mn(std::span<const double> A, int m, int n,
                                           const NormDescriptor& nu, double critical_det,
                                           std::span<const double> s_grid) {
  check_mn(m, n);
  check_grid(s_grid);
  MatN shear = shear_matrix(A, m, n);
  auto count = static_cast<long long>(s_grid.size());
  std::vector<FlowPoint> out(s_grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < count; ++i) {
    auto idx = static_cast<size_t>(i);
    Lattice lat = Lattice::from_basis(flow_matrix(s_grid[idx], m, n) * shear);
    out[idx] = FlowPoint{s_grid[idx], lat, delta(lat, nu, critical_det)};
  }
  return out;
}

namespace {

struct HitScan {
  std::vector<HitRecord> records;
};

// Bisection for the boundary of {delta >= r} between a grid point outside the
// target and one inside it.
double refine_crossing(const AlphaCF& alpha, const NormDescriptor& nu, double critical_det,
                       const RateFunction& rate, double s_out, double s_in) {
  for (int iter = 0; iter < 60 && std::abs(s_in - s_out) > 1e-10; ++iter) {
    double mid = 0.5 * (s_out + s_in);
    if (flow_delta_at(alpha, nu, critical_det, mid) >= rate.eval(mid)) {
      s_in = mid;
    } else {
      s_out = mid;
    }
  }
  return s_in;
}

std::vector<HitRecord> scan_hits(const AlphaCF& alpha, const NormDescriptor& nu,
                                 double critical_det, const RateFunction& rate, double s_lo,
                                 double s_max, double step) {
  auto npts = static_cast<size_t>(std::ceil((s_max - s_lo) / step)) + 1;
  npts = std::max<size_t>(npts, 2);
  std::vector<double> grid(npts);
  for (size_t i = 0; i < npts; ++i) {
    grid[i] = std::min(s_lo + static_cast<double>(i) * step, s_max);
  }
  grid.back() = s_max;
  if (grid[npts - 1] <= grid[npts - 2]) grid.pop_back();

  std::vector<double> rs = rate.eval_grid(grid);
  std::vector<FlowPoint> traj = trajectory_delta(alpha, nu, critical_det, grid);

  std::vector<HitRecord> out;
  size_t i = 0;
  while (i < grid.size()) {
    if (traj[i].delta < rs[i]) {
      ++i;
      continue;
    }
    size_t j = i;
    double peak = traj[i].delta;
    while (j + 1 < grid.size() && traj[j + 1].delta >= rs[j + 1]) {
      ++j;
      peak = std::max(peak, traj[j].delta);
    }
    HitRecord rec;
    rec.s_lo = i == 0 ? grid.front()
                      : refine_crossing(alpha, nu, critical_det, rate, grid[i - 1], grid[i]);
    rec.s_hi = j + 1 == grid.size()
                   ? grid.back()
                   : refine_crossing(alpha, nu, critical_det, rate, grid[j + 1], grid[j]);
    rec.delta_max = peak;
    out.push_back(rec);
    i = j + 1;
  }
  return out;
}

bool hit_lists_agree(const std::vector<HitRecord>& a, const std::vector<HitRecord>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].s_lo - b[i].s_lo) > 1e-6) return false;
    if (std::abs(a[i].s_hi - b[i].s_hi) > 1e-6) return false;
  }
  return true;
}

}  // namespace

std::vector<HitRecord> dirichlet_hits(const AlphaCF& alpha, const PsiSpec& psi,
                                      const NormDescriptor& nu, double critical_det,
                                      double s_lo, double s_max, double grid_step) {
  if (!(grid_step > 0.0) || !std::isfinite(grid_step)) {
    throw std::invalid_argument("grid step must be positive");
  }
  RateFunction rate = dani_transform(psi);
  s_lo = std::max(s_lo, rate.s_start);
  if (!(s_max > s_lo)) return {};

  double step = std::min(grid_step, (s_max - s_lo) / 2.0);
  std::vector<HitRecord> prev = scan_hits(alpha, nu, critical_det, rate, s_lo, s_max, step);
  for (int round = 0; round < 5; ++round) {
    step /= 2.0;
    std::vector<HitRecord> cur = scan_hits(alpha, nu, critical_det, rate, s_lo, s_max, step);
    if (hit_lists_agree(prev, cur)) return cur;
    prev = std::move(cur);
  }
  return prev;
}

bool direct_check(double alpha, double t, const PsiSpec& psi, const NormDescriptor& nu,
                  double critical_det) {
  if (nu.dim != 2) {
    throw std::invalid_argument("direct check works with planar norms");
  }
  if (psi.m != 1 || psi.n != 1) {
    throw std::invalid_argument("direct check requires unit weights");
  }
  if (!(critical_det > 0.0)) {
    throw std::invalid_argument("critical determinant must be positive");
  }
  double pv = psi_eval(psi, t);
  double radius = 1.0 / std::sqrt(critical_det);
  double kappa1 = nu.equivalence_constants().lower;
  auto qmax = static_cast<long long>(std::floor(t * radius / kappa1)) + 1;

  for (long long qi = 1; qi <= qmax; ++qi) {
    double y = static_cast<double>(qi) / t;
    double aq = alpha * static_cast<double>(qi);
    auto eval_p = [&](long long p) {
      return nu.evaluate(Vec2{(aq - static_cast<double>(p)) / pv, y});
    };
    long long p0 = std::llround(aq);
    double best = eval_p(p0);
    // nu((aq - p)/pv, y) is convex in p, so walk downhill from the rounding.
    for (int dir : {-1, 1}) {
      long long p = p0 + dir;
      for (int guard = 0; guard < 1000; ++guard, p += dir) {
        double v = eval_p(p);
        if (v >= best) break;
        best = v;
      }
    }
    if (best < radius) return true;
  }
  return false;
}

}  // namespace latflow
