#pragma once

#include <cstdint>
#include <vector>

#include "latflow/cf.hpp"
#include "latflow/dani.hpp"
#include "latflow/hyperbolic.hpp"

namespace latflow {

struct ZeroOneWindow {
    double s_lo = 0.0;
    double s_hi = 0.0;
    int hits = 0;
    double hit_fraction = 0.0;
};

struct ZeroOneReport {
    PsiSpec psi;
    int n_samples = 0;
    std::uint64_t seed = 0;
    std::vector<ZeroOneWindow> windows;
    SeriesClass classification = SeriesClass::Unknown;
};

// For each of n_samples seeded uniform alpha in (0, 1), and each window
// [S, 2S] from window_starts, records whether the flow trajectory of alpha
// enters the shrinking Euclidean target anywhere in the window; the per-alpha
// outcome equals "dirichlet_hits finds at least one hit on the window".
// Deterministic: equal seeds give identical reports, parallel or serial.
ZeroOneReport zero_one_experiment(const PsiSpec& psi, int n_samples,
                                  const std::vector<double>& window_starts, std::uint64_t seed);
ZeroOneReport zero_one_experiment_serial(const PsiSpec& psi, int n_samples,
                                         const std::vector<double>& window_starts,
                                         std::uint64_t seed);

struct CounterexampleStage {
    IntMat2 gamma{1, 0, 0, 1};
    double s_k = 0.0;
    double interval_lo = 0.0;  // alpha interval imposed by this stage
    double interval_hi = 0.0;
    u128 interval_lo_bits = 0;  // the same endpoints in exact 120-bit fixed point;
    u128 interval_hi_bits = 0;  // late-stage widths vanish in double precision
    double achieved_delta = 0.0;  // delta of the final alpha's trajectory at s_k
    double r_required = 0.0;      // target radius r(s_k)
};

struct CounterexampleCertificate {
    double alpha = 0.5;   // midpoint of the final interval
    u128 alpha_bits = 0;  // the same alpha in 120 fractional bits
    int depth = 0;
    PsiSpec psi;
    std::vector<CounterexampleStage> stages;
    double interval_lo = 0.0;
    double interval_hi = 1.0;
    bool complete = true;  // false if enumeration stopped before `depth` stages
};

// Builds alpha whose trajectory provably re-enters the shrinking target at a
// chosen time per stage: stage k picks an integer Mobius matrix gamma_k whose
// corner-point image has height Im_k strictly below the previous stage and a
// rational real part inside the current alpha interval; the interval then
// shrinks to half-width 0.5 * 1.8 * (1 - r(s_k)) * Im_k around it, with
// e^{-2 s_k} = Im_k, so the trajectory point at s_k sits deep inside the ball
// around the critical locus where delta >= r(s_k). Intervals are tracked in
// exact 120-bit fixed point; every stage is re-verified dynamically.
// Requires m = n = 1 and r(s) bounded away from 1 at the stage times.
CounterexampleCertificate construct_counterexample(const PsiSpec& psi, int depth);

struct ConditionRow {
    PsiSpec psi;
    long long K = 0;
    SeriesSums sums;
    SeriesClass classification = SeriesClass::Unknown;
};

// Cross product of psi_list x K_list with both partial series sums per cell.
std::vector<ConditionRow> condition_table(const std::vector<PsiSpec>& psi_list,
                                          const std::vector<long long>& K_list);

}  // namespace latflow
