#pragma once

#include <string>
#include <vector>

namespace latflow {

enum class PsiFamily { Scaled, PowerGap, LogGap, Tabulated };

// Approximation-rate function psi(t) with its domain threshold and the
// weight pair (m, n) of the flow it feeds; the ambient dimension is m + n.
struct PsiSpec {
    PsiFamily family = PsiFamily::Scaled;
    double param = 1.0;              // Scaled: c in c * t^{-n/m}; gap families: k
    std::vector<double> ts, values;  // Tabulated nodes
    double t_start = 1.0;
    int m = 1, n = 1;

    static PsiSpec scaled(double c, int m = 1, int n = 1);
    static PsiSpec power_gap(double k, int m = 1, int n = 1);  // 1/t - 1/t^{k+1}
    static PsiSpec log_gap(double k, int m = 1, int n = 1);    // 1/t - 1/(t ln^k t)
    static PsiSpec tabulated(std::vector<double> ts, std::vector<double> values, int m = 1,
                             int n = 1);

    int dim() const { return m + n; }
    double domain_max() const;  // ts.back() for Tabulated, +inf otherwise
};

// psi(t) for t in [t_start, domain_max]; Tabulated interpolates linearly.
double psi_eval(const PsiSpec& psi, double t);

// The flow-time rate function r(s) defined by inverting
//   s = (mn/d) ln(t / psi(t)),   r = t^{n/d} psi(t)^{m/d},
// so that the approximation problem at parameter t becomes a target-set
// membership question at flow time s.
struct RateFunction {
    PsiSpec psi;
    double s_start = 0.0;

    double eval(double s) const;
    // t solving s = (mn/d) ln(t / psi(t)); exposed for round-trip checks.
    double t_of_s(double s) const;
    // r on an ascending grid of s values, marching the inversion bracket.
    std::vector<double> eval_grid(const std::vector<double>& s) const;
};

// Validates psi by sampling (positive, non-increasing, t/psi strictly
// increasing) and returns the evaluator. The extra flag additionally demands
// t * psi(t) non-decreasing and < 1 on the sampled domain.
RateFunction dani_transform(const PsiSpec& psi, bool require_monotone_product = false);

struct SeriesSums {
    double euclidean_sum = 0.0;  // sum of 1/k - psi(k)
    double supnorm_sum = 0.0;    // sum of -log(1 - k psi(k)) * (1/k - psi(k))
};

// Partial sums from k0 = ceil(t_start) to K; requires m = n = 1.
SeriesSums series_partial_sums(const PsiSpec& psi, long long K);

enum class SeriesClass { Convergent, Divergent, Unknown };

// Closed-form classification of the improvability series; requires m = n = 1.
SeriesClass classify_series(const PsiSpec& psi);
std::string series_class_name(SeriesClass c);

// "scaled:c=0.9", "powergap:k=1", "loggap:k=2", "table:<csv-file>" (rows t,psi).
PsiSpec psi_from_string(const std::string& text, int m = 1, int n = 1);
std::string psi_to_string(const PsiSpec& psi);

}  // namespace latflow
