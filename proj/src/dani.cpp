#include "latflow/dani.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "latflow/errors.hpp"

namespace latflow {

namespace {

void check_mn(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("weights m and n must be positive integers");
}

double s_of_t(const PsiSpec& psi, double t) {
    const double d = psi.dim();
    return (psi.m * psi.n / d) * std::log(t / psi_eval(psi, t));
}

}  // namespace

PsiSpec PsiSpec::scaled(double c, int m, int n) {
    check_mn(m, n);
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("scaled family needs c > 0");
    PsiSpec p;
    p.family = PsiFamily::Scaled;
    p.param = c;
    p.t_start = 1.0;
    p.m = m;
    p.n = n;
    return p;
}

PsiSpec PsiSpec::power_gap(double k, int m, int n) {
    check_mn(m, n);
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::invalid_argument("power-gap family needs k > 0");
    PsiSpec p;
    p.family = PsiFamily::PowerGap;
    p.param = k;
    p.t_start = 3.0;
    p.m = m;
    p.n = n;
    return p;
}

PsiSpec PsiSpec::log_gap(double k, int m, int n) {
    check_mn(m, n);
    if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("log-gap family needs k > 0");
    PsiSpec p;
    p.family = PsiFamily::LogGap;
    p.param = k;
    p.t_start = 7.0;
    p.m = m;
    p.n = n;
    return p;
}

PsiSpec PsiSpec::tabulated(std::vector<double> ts, std::vector<double> values, int m, int n) {
    check_mn(m, n);
    if (ts.size() < 2 || ts.size() != values.size())
        throw std::invalid_argument("tabulated psi needs matching t and value lists, length >= 2");
    for (size_t i = 0; i < ts.size(); ++i) {
        if (!std::isfinite(ts[i]) || !(values[i] > 0.0) || !std::isfinite(values[i]))
            throw std::invalid_argument("tabulated psi needs finite nodes and positive values");
        if (i > 0 && !(ts[i] > ts[i - 1]))
            throw std::invalid_argument("tabulated psi nodes must be strictly increasing");
    }
    if (!(ts.front() >= 1.0)) throw std::invalid_argument("psi domain must start at t >= 1");
    PsiSpec p;
    p.family = PsiFamily::Tabulated;
    p.ts = std::move(ts);
    p.values = std::move(values);
    p.t_start = p.ts.front();
    p.m = m;
    p.n = n;
    return p;
}

double PsiSpec::domain_max() const {
    return family == PsiFamily::Tabulated ? ts.back() : std::numeric_limits<double>::infinity();
}

double psi_eval(const PsiSpec& psi, double t) {
    if (!(t >= psi.t_start * (1.0 - 1e-12)))
        throw std::invalid_argument("psi evaluated below its domain start");
    switch (psi.family) {
        case PsiFamily::Scaled:
            return psi.param * std::pow(t, -static_cast<double>(psi.n) / psi.m);
        case PsiFamily::PowerGap:
            return 1.0 / t - std::pow(t, -(psi.param + 1.0));
        case PsiFamily::LogGap:
            return 1.0 / t - 1.0 / (t * std::pow(std::log(t), psi.param));
        case PsiFamily::Tabulated: {
            if (!(t <= psi.ts.back() * (1.0 + 1e-12)))
                throw std::invalid_argument("psi evaluated beyond its tabulated support");
            const auto it = std::upper_bound(psi.ts.begin(), psi.ts.end(), t);
            size_t i = static_cast<size_t>(it - psi.ts.begin());
            if (i == 0) i = 1;
            if (i == psi.ts.size()) i = psi.ts.size() - 1;
            const double w = (t - psi.ts[i - 1]) / (psi.ts[i] - psi.ts[i - 1]);
            return psi.values[i - 1] + w * (psi.values[i] - psi.values[i - 1]);
        }
    }
    throw std::logic_error("unreachable psi family");
}

double RateFunction::t_of_s(double s) const {
    if (s < s_start - 1e-9)
        throw std::invalid_argument("rate function evaluated below its domain start");
    const double d = psi.dim();
    const double mn = static_cast<double>(psi.m) * psi.n;
    double lo = psi.t_start;
    if (s <= s_start) return lo;
    double hi = std::min(psi.domain_max(), lo * std::exp(2.0 * d * (s - 0.0) / mn));
    for (int it = 0; it < 200 && s_of_t(psi, hi) < s; ++it) {
        if (hi >= psi.domain_max() * (1.0 - 1e-12))
            throw std::invalid_argument("flow time beyond the tabulated psi support");
        hi = std::min(psi.domain_max(), hi * hi / lo);
    }
    if (s_of_t(psi, hi) < s) throw NumericError("rate inversion bracket expansion failed");
    while (hi - lo > 1e-12 * lo) {
        const double mid = 0.5 * (lo + hi);
        (s_of_t(psi, mid) < s ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double RateFunction::eval(double s) const {
    if (s < s_start - 1e-9)
        throw std::invalid_argument("rate function evaluated below its domain start");
    const double d = psi.dim();
    if (psi.family == PsiFamily::Scaled) return std::pow(psi.param, psi.m / d);
    const double t = t_of_s(s);
    return std::pow(t, psi.n / d) * std::pow(psi_eval(psi, t), psi.m / d);
}

std::vector<double> RateFunction::eval_grid(const std::vector<double>& s) const {
    std::vector<double> out(s.size());
    const double d = psi.dim();
    if (psi.family == PsiFamily::Scaled) {
        std::fill(out.begin(), out.end(), std::pow(psi.param, psi.m / d));
        return out;
    }
    double lo = psi.t_start;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i > 0 && s[i] < s[i - 1])
            throw std::invalid_argument("rate grid must be ascending");
        if (s[i] < s_start - 1e-9)
            throw std::invalid_argument("rate function evaluated below its domain start");
        if (s[i] <= s_start) {
            out[i] = std::pow(lo, psi.n / d) * std::pow(psi_eval(psi, lo), psi.m / d);
            continue;
        }
        double hi = std::min(psi.domain_max(), lo * 2.0);
        for (int it = 0; it < 400 && s_of_t(psi, hi) < s[i]; ++it) {
            if (hi >= psi.domain_max() * (1.0 - 1e-12))
                throw std::invalid_argument("flow time beyond the tabulated psi support");
            hi = std::min(psi.domain_max(), hi * 2.0);
        }
        if (s_of_t(psi, hi) < s[i]) throw NumericError("rate inversion bracket expansion failed");
        double a = lo, b = hi;
        while (b - a > 1e-12 * a) {
            const double mid = 0.5 * (a + b);
            (s_of_t(psi, mid) < s[i] ? a : b) = mid;
        }
        const double t = 0.5 * (a + b);
        out[i] = std::pow(t, psi.n / d) * std::pow(psi_eval(psi, t), psi.m / d);
        lo = a;  // the next root is to the right
    }
    return out;
}

RateFunction dani_transform(const PsiSpec& psi, bool require_monotone_product) {
    const int samples = 1000;
    const double t0 = psi.t_start;
    const double t1 = std::min(psi.domain_max(), t0 * 1e6);
    double prev_psi = 0.0, prev_ratio = 0.0, prev_prod = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = t0 * std::pow(t1 / t0, static_cast<double>(i) / (samples - 1));
        const double v = psi_eval(psi, t);
        if (!(v > 0.0)) throw std::invalid_argument("psi must be positive on its domain");
        const double ratio = t / v, prod = t * v;
        if (i > 0) {
            if (v > prev_psi * (1.0 + 1e-12))
                throw std::invalid_argument("psi must be non-increasing on its domain");
            if (ratio <= prev_ratio)
                throw std::invalid_argument("t / psi(t) must be strictly increasing");
            if (require_monotone_product && prod < prev_prod * (1.0 - 1e-12))
                throw std::invalid_argument("t * psi(t) must be non-decreasing");
        }
        if (require_monotone_product && !(prod < 1.0))
            throw std::invalid_argument("t * psi(t) must stay below 1");
        prev_psi = v;
        prev_ratio = ratio;
        prev_prod = prod;
    }
    RateFunction r;
    r.psi = psi;
    r.s_start = s_of_t(psi, psi.t_start);
    return r;
}

SeriesSums series_partial_sums(const PsiSpec& psi, long long K) {
    if (psi.m != 1 || psi.n != 1)
        throw std::invalid_argument("improvability series are defined for m = n = 1");
    SeriesSums sums;
    const long long k0 = static_cast<long long>(std::ceil(psi.t_start));
    for (long long k = k0; k <= K; ++k) {
        const double t = static_cast<double>(k);
        const double v = psi_eval(psi, t);
        const double prod = t * v;
        if (prod >= 1.0)
            throw NumericError("series term with t*psi(t) >= 1 at k = " + std::to_string(k));
        const double gap = 1.0 / t - v;
        sums.euclidean_sum += gap;
        sums.supnorm_sum += -std::log(1.0 - prod) * gap;
    }
    return sums;
}

SeriesClass classify_series(const PsiSpec& psi) {
    if (psi.m != 1 || psi.n != 1)
        throw std::invalid_argument("improvability series are defined for m = n = 1");
    switch (psi.family) {
        case PsiFamily::Scaled:
            return psi.param < 1.0 ? SeriesClass::Divergent : SeriesClass::Convergent;
        case PsiFamily::PowerGap:
            return SeriesClass::Convergent;
        case PsiFamily::LogGap:
            return psi.param <= 1.0 ? SeriesClass::Divergent : SeriesClass::Convergent;
        case PsiFamily::Tabulated:
            return SeriesClass::Unknown;
    }
    throw std::logic_error("unreachable psi family");
}

std::string series_class_name(SeriesClass c) {
    switch (c) {
        case SeriesClass::Convergent:
            return "convergent";
        case SeriesClass::Divergent:
            return "divergent";
        case SeriesClass::Unknown:
            return "unknown";
    }
    throw std::logic_error("unreachable series class");
}

PsiSpec psi_from_string(const std::string& text, int m, int n) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("psi spec must look like family:params");
    const std::string family = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    auto param_value = [&](const std::string& key) {
        const std::string prefix = key + "=";
        if (rest.rfind(prefix, 0) != 0)
            throw std::invalid_argument("psi spec expects " + prefix + "<value>");
        size_t used = 0;
        const double v = std::stod(rest.substr(prefix.size()), &used);
        if (used != rest.size() - prefix.size())
            throw std::invalid_argument("malformed psi parameter value");
        return v;
    };
    if (family == "scaled") return PsiSpec::scaled(param_value("c"), m, n);
    if (family == "powergap") return PsiSpec::power_gap(param_value("k"), m, n);
    if (family == "loggap") return PsiSpec::log_gap(param_value("k"), m, n);
    if (family == "table") {
        std::ifstream in(rest);
        if (!in) throw std::invalid_argument("cannot open psi table file: " + rest);
        std::vector<double> ts, vals;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream row(line);
            double t, v;
            if (!(row >> t >> v))
                throw std::invalid_argument("psi table rows must be t,value pairs");
            ts.push_back(t);
            vals.push_back(v);
        }
        return PsiSpec::tabulated(std::move(ts), std::move(vals), m, n);
    }
    throw std::invalid_argument("unknown psi family: " + family);
}

std::string psi_to_string(const PsiSpec& psi) {
    char buf[64];
    switch (psi.family) {
        case PsiFamily::Scaled:
            std::snprintf(buf, sizeof buf, "scaled:c=%.12g", psi.param);
            return buf;
        case PsiFamily::PowerGap:
            std::snprintf(buf, sizeof buf, "powergap:k=%.12g", psi.param);
            return buf;
        case PsiFamily::LogGap:
            std::snprintf(buf, sizeof buf, "loggap:k=%.12g", psi.param);
            return buf;
        case PsiFamily::Tabulated:
            std::snprintf(buf, sizeof buf, "table:%zu-points", psi.ts.size());
            return buf;
    }
    throw std::logic_error("unreachable psi family");
}

}  // namespace latflow
