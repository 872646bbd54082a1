#pragma once

#include <span>
#include <vector>

#include "latflow/cf.hpp"
#include "latflow/dani.hpp"
#include "latflow/lattice.hpp"
#include "latflow/norms.hpp"

namespace latflow {

// One sample of a diagonal-flow trajectory on the space of lattices.
struct FlowPoint {
  double s = 0.0;
  Lattice lattice;
  double delta = 0.0;
};

// Maximal parameter interval on which the trajectory stays inside the
// shrinking target, located by grid scan and bisection-refined endpoints.
struct HitRecord {
  double s_lo = 0.0;
  double s_hi = 0.0;
  double delta_max = 0.0;
};

// diag(e^{s/m} I_m, e^{-s/n} I_n).
MatN flow_matrix(double s, int m, int n);

// diag((t/psi)^{n/d} I_m, (psi/t)^{m/d} I_n): the unimodular rescaling of the
// Dirichlet box at time t.  Equals flow_matrix(s(t), m, n) under the time
// change s(t) = (mn/d) ln(t/psi(t)).
MatN box_matrix(double t, const PsiSpec& psi);

// Upper unipotent shear [[I_m, A], [0, I_n]] for a row-major m x n matrix A.
MatN shear_matrix(std::span<const double> A, int m, int n);

// Flowed lattice diag(e^s, e^-s) * {(alpha q - p, q)} via the exact
// continued-fraction basis; accurate for any s.
Lattice flow_lattice(const AlphaCF& alpha, double s);

// Dense counterpart for an m x n shear; accuracy degrades for large s.
Lattice flow_lattice_mn(std::span<const double> A, int m, int n, double s);

double flow_delta_at(const AlphaCF& alpha, const NormDescriptor& nu,
                     double critical_det, double s);

// delta along the flow at every grid point (grid must be strictly increasing).
std::vector<FlowPoint> trajectory_delta(const AlphaCF& alpha, const NormDescriptor& nu,
                                        double critical_det, std::span<const double> s_grid);
std::vector<FlowPoint> trajectory_delta_serial(const AlphaCF& alpha, const NormDescriptor& nu,
                                               double critical_det,
                                               std::span<const double> s_grid);
std::vector<FlowPoint> trajectory_delta_mn(std::span<const double> A, int m, int n,
                                           const NormDescriptor& nu, double critical_det,
                                           std::span<const double> s_grid);

// Intervals of [max(s_lo, rate start), s_max] on which delta(s) >= r(s), where
// r is the rate function of psi.  Grid scan with the step halved until two
// successive refinements agree, then endpoints sharpened by bisection.
std::vector<HitRecord> dirichlet_hits(const AlphaCF& alpha, const PsiSpec& psi,
                                      const NormDescriptor& nu, double critical_det,
                                      double s_lo, double s_max, double grid_step = 0.01);

// True iff some q in [1, t * radius / kappa_1] and an integer p make the
// rescaled vector ((alpha q - p)/psi(t), q/t) lie strictly inside the open
// nu-ball of radius critical_det^{-1/2}; equivalently, the flowed lattice at
// s(t) has delta < r(s(t)).
bool direct_check(double alpha, double t, const PsiSpec& psi, const NormDescriptor& nu,
                  double critical_det);

}  // namespace latflow
