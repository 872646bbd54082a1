#include "latflow/critical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "latflow/errors.hpp"

namespace latflow {

namespace {

constexpr double kPi = std::numbers::pi;

void check_planar(const NormDescriptor& norm) {
    if (norm.dim != 2)
        throw std::invalid_argument("critical determinant scan requires a 2D norm");
}

bool is_parallelogram(const NormDescriptor& norm) {
    return norm.kind == NormKind::Polygon && norm.vertices.size() == 4;
}

// A parallelogram ball is the image of the square ball under the linear map
// sending (1, 0), (0, 1) to half the vertex diagonals; its critical
// determinant is a quarter of its area and the square's configuration maps
// over, so no scan is needed.
CriticalResult parallelogram_rule(const NormDescriptor& norm) {
    const Vec2 a = norm.vertices[0], b = norm.vertices[1];
    HexagonConfig cfg;
    cfg.p = (a - b) * 0.5;
    cfg.q = (a + b) * 0.5;
    cfg.r = cfg.q - cfg.p;
    cfg.t0 = cfg.p.angle();
    cfg.det = std::abs(cross(cfg.p, cfg.q));
    return {cfg.det, cfg};
}

double hexagon_det_at(const NormDescriptor& norm, double t0) {
    return hexagon_at(norm, t0).det;
}

// Golden-section minimization of the hexagon covolume near a bracketing
// triple; the function is piecewise smooth and locally unimodal.
double golden_refine(const NormDescriptor& norm, double lo, double hi) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = hexagon_det_at(norm, x1), f2 = hexagon_det_at(norm, x2);
    while (b - a > 1e-10) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = hexagon_det_at(norm, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = hexagon_det_at(norm, x2);
        }
    }
    return 0.5 * (a + b);
}

CriticalResult critical_scan(const NormDescriptor& norm, int grid, bool parallel) {
    check_planar(norm);
    if (grid < 8) throw std::invalid_argument("critical determinant grid is too coarse");
    if (is_parallelogram(norm)) return parallelogram_rule(norm);

    std::vector<double> dets(grid);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int i = 0; i < grid; ++i) dets[i] = hexagon_det_at(norm, kPi * i / grid);
    (void)parallel;

    int best = 0;
    for (int i = 1; i < grid; ++i)
        if (dets[i] < dets[best]) best = i;

    const double h = kPi / grid;
    const double t_best = golden_refine(norm, kPi * best / grid - h, kPi * best / grid + h);
    HexagonConfig cfg = hexagon_at(norm, t_best);
    // The grid may still beat the refined point when the minimum sits on a
    // kink of a piecewise-linear covolume profile.
    if (dets[best] < cfg.det) cfg = hexagon_at(norm, kPi * best / grid);
    return {cfg.det, cfg};
}

}  // namespace

HexagonConfig hexagon_at(const NormDescriptor& norm, double t0) {
    check_planar(norm);
    HexagonConfig cfg;
    cfg.t0 = t0;
    cfg.p = norm.boundary_point(t0);
    const Vec2 p = cfg.p;
    auto chord_reaches_one = [&](double s) { return norm.evaluate(norm.boundary_point(s) - p) >= 1.0; };

    // The chord length runs from 0 at s = t0 to 2 at s = t0 + pi; bracket the
    // first crossing of 1 on a scan grid, then bisect. Bisection on the
    // predicate lands on the left edge of any plateau at exactly 1.
    const int scan = 256;
    int first = -1;
    for (int j = 1; j <= scan; ++j) {
        if (chord_reaches_one(t0 + kPi * j / scan)) {
            first = j;
            break;
        }
    }
    if (first < 0) throw NumericError("hexagon chord equation had no crossing");
    double lo = t0 + kPi * (first - 1) / scan, hi = t0 + kPi * first / scan;
    for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        (chord_reaches_one(mid) ? hi : lo) = mid;
    }
    cfg.q = norm.boundary_point(hi);
    cfg.r = cfg.q - cfg.p;
    cfg.det = std::abs(cross(cfg.p, cfg.q));

    // Later crossings back through 1 mean the chord equation is not monotone
    // past the root; flag them.
    bool above = true;
    for (int j = first + 1; j < scan; ++j) {
        const bool now = chord_reaches_one(t0 + kPi * j / scan);
        if (!now && above) {
            cfg.extra_roots = true;
            break;
        }
        above = now;
    }
    return cfg;
}

CriticalResult critical_determinant(const NormDescriptor& norm, int grid) {
    return critical_scan(norm, grid, true);
}

CriticalResult critical_determinant_serial(const NormDescriptor& norm, int grid) {
    return critical_scan(norm, grid, false);
}

std::vector<LocusPoint> trace_critical_locus(const NormDescriptor& norm, int count) {
    check_planar(norm);
    if (count < 1) throw std::invalid_argument("locus trace needs at least one point");
    const double min_det = critical_determinant(norm).value;
    std::vector<LocusPoint> out(count);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < count; ++i) {
        out[i].config = hexagon_at(norm, kPi * i / count);
        out[i].is_critical = out[i].config.det <= min_det * (1.0 + 1e-6);
    }
    return out;
}

double body_area(const NormDescriptor& norm) {
    check_planar(norm);
    if (norm.kind == NormKind::Polygon) {
        double a = 0.0;
        const int m = static_cast<int>(norm.vertices.size());
        for (int i = 0; i < m; ++i) a += cross(norm.vertices[i], norm.vertices[(i + 1) % m]);
        return 0.5 * std::abs(a);
    }
    // Simpson quadrature of r(theta)^2 / 2.
    const int n = 1 << 14;
    const double h = 2.0 * kPi / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double r = norm.radius(i * h);
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * r * r;
    }
    return sum * h / 6.0;
}

std::optional<double> known_critical_determinant(const NormDescriptor& norm) {
    switch (norm.kind) {
        case NormKind::Sup:
            return 1.0;
        case NormKind::Euclidean:
            if (norm.dim == 2) return std::sqrt(3.0) / 2.0;
            if (norm.dim == 3) return 1.0 / std::sqrt(2.0);
            return 0.5;  // dim 4
        case NormKind::Lp:
            if (norm.p == 1.0) return 0.5;
            if (norm.p == 2.0) return std::sqrt(3.0) / 2.0;
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

double resolve_critical_constant(const NormDescriptor& norm) {
    if (const auto known = known_critical_determinant(norm)) return *known;
    if (norm.dim != 2)
        throw std::invalid_argument("no known critical determinant for this ball");
    return critical_determinant(norm).value;
}

}  // namespace latflow
