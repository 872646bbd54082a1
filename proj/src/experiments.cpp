#include "latflow/experiments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "latflow/errors.hpp"
#include "latflow/flow.hpp"
#include "latflow/norms.hpp"
#include "latflow/sampling.hpp"

namespace latflow {

namespace {

using i128 = __int128;

constexpr double kDet2 = 0.8660254037844386;  // sqrt(3)/2
constexpr double kInnerRatio = 1.8;           // validated inner ball constant

struct WindowGrid {
    double lo = 0.0, hi = 0.0;
    std::vector<double> s, r;
};

// The scan grid whose emptiness decides whether dirichlet_hits reports any
// hit: the half-step refinement of the default scan contains the default
// grid pointwise, and an empty pair of scans stops the refinement loop.
std::vector<WindowGrid> build_window_grids(const RateFunction& rate,
                                           const std::vector<double>& starts) {
    std::vector<WindowGrid> out;
    out.reserve(starts.size());
    for (const double S : starts) {
        if (!(S > 0.0) || !std::isfinite(S))
            throw std::invalid_argument("zero_one_experiment: window start must be positive");
        WindowGrid w;
        w.lo = std::max(S, rate.s_start);
        w.hi = 2.0 * S;
        if (!(w.hi > w.lo))
            throw std::invalid_argument("zero_one_experiment: window lies below the rate domain");
        const double step = std::min(0.01, (w.hi - w.lo) / 2.0) / 2.0;
        const auto npts = static_cast<size_t>(std::ceil((w.hi - w.lo) / step)) + 1;
        w.s.resize(npts);
        for (size_t i = 0; i < npts; ++i)
            w.s[i] = std::min(w.lo + static_cast<double>(i) * step, w.hi);
        w.r = rate.eval_grid(w.s);
        out.push_back(std::move(w));
    }
    return out;
}

ZeroOneReport zero_one_impl(const PsiSpec& psi, int n_samples,
                            const std::vector<double>& starts, std::uint64_t seed,
                            bool parallel) {
    if (psi.m != 1 || psi.n != 1)
        throw std::invalid_argument("zero_one_experiment: weights must be m = n = 1");
    if (n_samples < 1) throw std::invalid_argument("zero_one_experiment: need n_samples >= 1");
    const RateFunction rate = dani_transform(psi);
    const auto grids = build_window_grids(rate, starts);
    const NormDescriptor euclid = NormDescriptor::euclidean(2);

    std::vector<unsigned char> hit(static_cast<size_t>(n_samples) * grids.size(), 0);
    const auto count = static_cast<long long>(n_samples);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
    for (long long i = 0; i < count; ++i) {
        RngStream rng = stream_for(seed, static_cast<std::uint64_t>(i));
        const AlphaCF alpha = AlphaCF::from_bits(random_bits120(rng));
        for (size_t wi = 0; wi < grids.size(); ++wi) {
            const WindowGrid& g = grids[wi];
            unsigned char found = 0;
            for (size_t j = 0; j < g.s.size(); ++j) {
                if (flow_delta_at(alpha, euclid, kDet2, g.s[j]) >= g.r[j]) {
                    found = 1;
                    break;
                }
            }
            hit[static_cast<size_t>(i) * grids.size() + wi] = found;
        }
    }
    (void)parallel;

    ZeroOneReport rep;
    rep.psi = psi;
    rep.n_samples = n_samples;
    rep.seed = seed;
    rep.classification = classify_series(psi);
    for (size_t wi = 0; wi < grids.size(); ++wi) {
        ZeroOneWindow w;
        w.s_lo = grids[wi].lo;
        w.s_hi = grids[wi].hi;
        for (long long i = 0; i < count; ++i)
            w.hits += hit[static_cast<size_t>(i) * grids.size() + wi];
        w.hit_fraction = static_cast<double>(w.hits) / static_cast<double>(n_samples);
        rep.windows.push_back(w);
    }
    return rep;
}

// floor(num * 2^120 / den) by binary long division; requires num < den and
// den small enough that den << 1 fits in 128 bits.
u128 div_fixed(u128 num, u128 den) {
    u128 r = num, q = 0;
    for (int i = 0; i < 120; ++i) {
        q <<= 1;
        r <<= 1;
        if (r >= den) {
            r -= den;
            q |= 1;
        }
    }
    return q;
}

}  // namespace

ZeroOneReport zero_one_experiment(const PsiSpec& psi, int n_samples,
                                  const std::vector<double>& window_starts, std::uint64_t seed) {
    return zero_one_impl(psi, n_samples, window_starts, seed, true);
}

ZeroOneReport zero_one_experiment_serial(const PsiSpec& psi, int n_samples,
                                         const std::vector<double>& window_starts,
                                         std::uint64_t seed) {
    return zero_one_impl(psi, n_samples, window_starts, seed, false);
}

CounterexampleCertificate construct_counterexample(const PsiSpec& psi, int depth) {
    if (psi.m != 1 || psi.n != 1)
        throw std::invalid_argument("construct_counterexample: weights must be m = n = 1");
    if (depth < 0) throw std::invalid_argument("construct_counterexample: depth must be >= 0");
    const RateFunction rate = dani_transform(psi);

    {
        const double r_probe = rate.eval(rate.s_start + 3.0);
        if (!(r_probe < 1.0 - 1e-9))
            throw std::invalid_argument(
                "construct_counterexample: target radius never drops below 1 (r = " +
                std::to_string(r_probe) + " at s = " + std::to_string(rate.s_start + 3.0) +
                "), so every trajectory eventually stays inside the target");
    }

    CounterexampleCertificate cert;
    cert.depth = depth;
    cert.psi = psi;

    const u128 one = u128(1) << 120;
    u128 lo = 0, hi = one;
    u128 q_form_prev = 1;  // c^2 - cd + d^2 of the previous stage; heights must shrink

    // Candidate matrices come from continued-fraction convergents of a target
    // fraction inside the current interval: gamma = [[p_L, s p_{L-1}], [q_L,
    // s q_{L-1}]] lands Re(gamma z0) within O(1/q_L^2) of the target, so
    // sweeping L gives arbitrarily fine placements with growing q_form.
    const double target_offsets[] = {0.6180339887498949, 0.5352343, 0.4617121, 0.7262931,
                                     0.3902113};

    for (int k = 1; k <= depth; ++k) {
        const u128 width = hi - lo;
        if (width < 64) {
            cert.complete = false;  // 120-bit interval resolution exhausted
            break;
        }
        bool placed = false;
        for (const double off : target_offsets) {
            const u128 inside = lo + static_cast<u128>(off * static_cast<double>(width));
            if (inside == 0 || inside >= one) continue;
            const AlphaCF target = AlphaCF::from_bits(one - inside);  // fold of -alpha mod 1
            for (int L = 1; L < target.steps() && !placed; ++L) {
                if (target.q[L] < 2) continue;
                if (target.q[L] > u128(4000000000000000ULL)) break;  // keep exact range
                const auto a = static_cast<long long>(target.p[L]);
                const auto c = static_cast<long long>(target.q[L]);
                const auto b0 = static_cast<long long>(target.p[L - 1]);
                const auto d0 = static_cast<long long>(target.q[L - 1]);
                const i128 det0 = static_cast<i128>(a) * d0 - static_cast<i128>(b0) * c;
                const long long sg = det0 == 1 ? 1 : -1;  // det0 is always +-1
                const long long b = sg * b0, d = sg * d0;

                const i128 q_form =
                    static_cast<i128>(c) * c - static_cast<i128>(c) * d + static_cast<i128>(d) * d;
                if (static_cast<u128>(q_form) <= q_form_prev) continue;

                const double q_d = static_cast<double>(static_cast<u128>(q_form));
                const double im = kDet2 / q_d;
                const double s_k = 0.5 * std::log(q_d / kDet2);
                if (s_k < rate.s_start + 1e-6) continue;
                const double r_k = rate.eval(s_k);
                const double eps_k = 1.0 - r_k;
                if (!(eps_k > 1e-9))
                    throw std::invalid_argument(
                        "construct_counterexample: r(s) = " + std::to_string(r_k) +
                        " at stage time s = " + std::to_string(s_k) + " leaves no room below 1");

                const i128 num = 2 * (static_cast<i128>(a) * c + static_cast<i128>(b) * d) -
                                 (static_cast<i128>(a) * d + static_cast<i128>(b) * c);
                const i128 den = 2 * q_form;
                i128 folded = (-num) % den;
                if (folded < 0) folded += den;
                const u128 center = div_fixed(static_cast<u128>(folded), static_cast<u128>(den));

                const double w = 0.5 * kInnerRatio * eps_k * im;
                const auto w_fp = static_cast<u128>(w * 0x1p120);
                if (w_fp < 16) break;  // below interval resolution; larger L only shrinks it
                if (center <= lo + w_fp || center + w_fp >= hi) continue;  // strict nesting

                CounterexampleStage st;
                st.gamma = {a, b, c, d};
                st.s_k = s_k;
                st.r_required = r_k;
                lo = center - w_fp;
                hi = center + w_fp;
                st.interval_lo = static_cast<double>(lo) * 0x1p-120;
                st.interval_hi = static_cast<double>(hi) * 0x1p-120;
                st.interval_lo_bits = lo;
                st.interval_hi_bits = hi;
                cert.stages.push_back(st);
                q_form_prev = static_cast<u128>(q_form);
                placed = true;
            }
            if (placed) break;
        }
        if (!placed) {
            cert.complete = false;
            break;
        }
    }

    const u128 alpha_fp = lo + (hi - lo) / 2;
    cert.alpha_bits = alpha_fp;
    cert.alpha = static_cast<double>(alpha_fp) * 0x1p-120;
    cert.interval_lo = static_cast<double>(lo) * 0x1p-120;
    cert.interval_hi = static_cast<double>(hi) * 0x1p-120;

    if (!cert.stages.empty()) {
        const AlphaCF alpha = AlphaCF::from_bits(alpha_fp);
        const NormDescriptor euclid = NormDescriptor::euclidean(2);
        for (CounterexampleStage& st : cert.stages)
            st.achieved_delta = flow_delta_at(alpha, euclid, kDet2, st.s_k);
    }
    return cert;
}

std::vector<ConditionRow> condition_table(const std::vector<PsiSpec>& psi_list,
                                          const std::vector<long long>& K_list) {
    std::vector<ConditionRow> rows;
    rows.reserve(psi_list.size() * K_list.size());
    for (const PsiSpec& psi : psi_list) {
        for (const long long K : K_list) {
            ConditionRow row;
            row.psi = psi;
            row.K = K;
            row.sums = series_partial_sums(psi, K);
            row.classification = classify_series(psi);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace latflow
