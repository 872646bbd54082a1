#include "latflow/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latflow {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dim(int dimension) {
    if (dimension < 2 || dimension > 4)
        throw std::invalid_argument("norm dimension must be 2, 3, or 4");
}

// Knot slopes of the C2 periodic cubic spline through (t_k, y_k), k = 0..m-1,
// with wrap interval [t_{m-1}, t_0 + period]. Cyclic tridiagonal system solved
// by Thomas elimination plus a Sherman-Morrison corner correction.
std::vector<double> periodic_spline_slopes(const std::vector<double>& t,
                                           const std::vector<double>& y, double period) {
    const int m = static_cast<int>(t.size());
    std::vector<double> h(m), d(m);
    for (int k = 0; k < m; ++k) {
        const double t1 = k + 1 < m ? t[k + 1] : t[0] + period;
        const double y1 = k + 1 < m ? y[k + 1] : y[0];
        h[k] = t1 - t[k];
        d[k] = (y1 - y[k]) / h[k];
    }
    std::vector<double> sub(m), diag(m), sup(m), rhs(m);
    for (int k = 0; k < m; ++k) {
        const int prev = (k + m - 1) % m;
        sub[k] = 1.0 / h[prev];
        sup[k] = 1.0 / h[k];
        diag[k] = 2.0 * (sub[k] + sup[k]);
        rhs[k] = 3.0 * (d[prev] / h[prev] + d[k] / h[k]);
    }
    const double alpha = sub[0];   // corner (0, m-1)
    const double beta = sup[m - 1];  // corner (m-1, 0)
    const double gamma = -diag[0];
    std::vector<double> b(diag), u(m, 0.0);
    b[0] -= gamma;
    b[m - 1] -= alpha * beta / gamma;
    u[0] = gamma;
    u[m - 1] = beta;

    auto thomas = [&](std::vector<double> r) {
        std::vector<double> c(m), x(m);
        c[0] = sup[0] / b[0];
        r[0] /= b[0];
        for (int k = 1; k < m; ++k) {
            const double den = b[k] - sub[k] * c[k - 1];
            c[k] = sup[k] / den;
            r[k] = (r[k] - sub[k] * r[k - 1]) / den;
        }
        x[m - 1] = r[m - 1];
        for (int k = m - 2; k >= 0; --k) x[k] = r[k] - c[k] * x[k + 1];
        return x;
    };
    const std::vector<double> sy = thomas(rhs);
    const std::vector<double> sz = thomas(u);
    const double vy = sy[0] + alpha / gamma * sy[m - 1];
    const double vz = sz[0] + alpha / gamma * sz[m - 1];
    std::vector<double> s(m);
    const double f = vy / (1.0 + vz);
    for (int k = 0; k < m; ++k) s[k] = sy[k] - f * sz[k];
    return s;
}

double hermite(double t0, double t1, double y0, double y1, double s0, double s1, double x) {
    const double h = t1 - t0;
    const double u = (x - t0) / h;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * s0 +
           (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * s1;
}

}  // namespace

NormDescriptor NormDescriptor::sup(int dimension) {
    check_dim(dimension);
    NormDescriptor n;
    n.kind = NormKind::Sup;
    n.dim = dimension;
    n.equiv = {1.0 / std::sqrt(static_cast<double>(dimension)), 1.0};
    return n;
}

NormDescriptor NormDescriptor::euclidean(int dimension) {
    check_dim(dimension);
    NormDescriptor n;
    n.kind = NormKind::Euclidean;
    n.dim = dimension;
    n.equiv = {1.0, 1.0};
    return n;
}

NormDescriptor NormDescriptor::lp(double exponent) {
    if (!(exponent >= 1.0) || !std::isfinite(exponent))
        throw std::invalid_argument("Lp norm requires finite p >= 1");
    NormDescriptor n;
    n.kind = NormKind::Lp;
    n.dim = 2;
    n.p = exponent;
    const double c = std::pow(2.0, 1.0 / exponent - 0.5);
    n.equiv = exponent >= 2.0 ? EquivalenceConstants{c, 1.0} : EquivalenceConstants{1.0, c};
    return n;
}

NormDescriptor NormDescriptor::polygon(const std::vector<Vec2>& half_vertices) {
    if (half_vertices.size() < 2)
        throw std::invalid_argument("polygon norm requires at least 2 half vertices");
    std::vector<Vec2> full;
    full.reserve(2 * half_vertices.size());
    double scale = 0.0;
    for (const Vec2& v : half_vertices) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw std::invalid_argument("polygon vertex is not finite");
        scale = std::max(scale, v.norm());
        full.push_back(v);
        full.push_back(-v);
    }
    if (scale == 0.0) throw std::invalid_argument("polygon vertex at origin");
    std::sort(full.begin(), full.end(),
              [](const Vec2& a, const Vec2& b) { return a.angle() < b.angle(); });

    const int m = static_cast<int>(full.size());
    const double tol = 1e-12 * scale * scale;
    for (int i = 0; i < m; ++i) {
        const Vec2 e1 = full[(i + 1) % m] - full[i];
        const Vec2 e2 = full[(i + 2) % m] - full[(i + 1) % m];
        if (cross(e1, e2) <= tol)
            throw std::invalid_argument("polygon vertices are not in strictly convex position");
    }

    NormDescriptor n;
    n.kind = NormKind::Polygon;
    n.dim = 2;
    n.vertices = std::move(full);
    double upper = 0.0;
    for (int i = 0; i < m; ++i) {
        const Vec2 d = n.vertices[(i + 1) % m] - n.vertices[i];
        const Vec2 normal{d.y, -d.x};
        const double offset = dot(normal, n.vertices[i]);
        if (offset <= 0.0)
            throw std::invalid_argument("polygon does not contain the origin in its interior");
        n.edge_normals.push_back(normal);
        n.edge_offsets.push_back(offset);
        upper = std::max(upper, normal.norm() / offset);
    }
    n.equiv = {1.0 / scale, upper};
    return n;
}

NormDescriptor NormDescriptor::radial(const RadialSamples& samples) {
    const int m = static_cast<int>(samples.angles.size());
    if (m < 8) throw std::invalid_argument("radial norm requires at least 8 samples");
    if (samples.radii.size() != samples.angles.size())
        throw std::invalid_argument("radial norm: angles and radii differ in length");
    if (!(samples.angles.front() >= 0.0) || !(samples.angles.back() < kPi))
        throw std::invalid_argument("radial norm: angles must lie in [0, pi)");
    for (int i = 0; i < m; ++i) {
        if (i > 0 && !(samples.angles[i] > samples.angles[i - 1]))
            throw std::invalid_argument("radial norm: angles must be strictly increasing");
        if (!(samples.radii[i] > 0.0) || !std::isfinite(samples.radii[i]))
            throw std::invalid_argument("radial norm: radii must be positive and finite");
    }

    NormDescriptor n;
    n.kind = NormKind::Radial;
    n.dim = 2;
    n.radial_input = samples;
    // Knots over one period, closed with the wrapped first sample so pieces
    // i = 0..m-1 cover [angles[0], angles[0] + pi].
    n.knot_t = samples.angles;
    n.knot_r = samples.radii;
    n.knot_s = periodic_spline_slopes(n.knot_t, n.knot_r, kPi);
    n.knot_t.push_back(samples.angles[0] + kPi);
    n.knot_r.push_back(samples.radii[0]);
    n.knot_s.push_back(n.knot_s[0]);

    // The interpolated body must be convex. Segment turning angles carry
    // interpolation noise near flat boundary arcs, so allow a tiny per-step
    // backturn and bound the accumulated backturn separately.
    const int probes = 4096;
    std::vector<Vec2> ring(probes);
    double rmin = samples.radii[0], rmax = samples.radii[0];
    for (int i = 0; i < probes; ++i) {
        const double th = 2.0 * kPi * i / probes;
        const double r = n.radius(th);
        if (!(r > 0.0))
            throw std::invalid_argument("radial norm: interpolated radius is not positive");
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
        ring[i] = Vec2{std::cos(th), std::sin(th)} * r;
    }
    double backturn = 0.0;
    for (int i = 0; i < probes; ++i) {
        const Vec2 e1 = ring[(i + 1) % probes] - ring[i];
        const Vec2 e2 = ring[(i + 2) % probes] - ring[(i + 1) % probes];
        const double turn = std::atan2(cross(e1, e2), dot(e1, e2));
        if (turn < -1e-3)
            throw std::invalid_argument("radial norm: interpolated boundary is not convex");
        if (turn < 0.0) backturn -= turn;
    }
    if (backturn > 0.05)
        throw std::invalid_argument("radial norm: interpolated boundary is not convex");

    // Spline extremes between probe points are covered by the outward margin.
    n.equiv = {0.98 / rmax, 1.02 / rmin};
    return n;
}

double NormDescriptor::evaluate(const Vec2& x) const {
    switch (kind) {
        case NormKind::Sup:
            return std::max(std::abs(x.x), std::abs(x.y));
        case NormKind::Euclidean:
            return x.norm();
        case NormKind::Lp: {
            const double ax = std::abs(x.x), ay = std::abs(x.y);
            const double m = std::max(ax, ay);
            if (m == 0.0) return 0.0;
            return m * std::pow(std::pow(ax / m, p) + std::pow(ay / m, p), 1.0 / p);
        }
        case NormKind::Polygon: {
            double g = 0.0;
            for (size_t e = 0; e < edge_normals.size(); ++e)
                g = std::max(g, dot(x, edge_normals[e]) / edge_offsets[e]);
            return g;
        }
        case NormKind::Radial: {
            const double len = x.norm();
            if (len == 0.0) return 0.0;
            return len / radius(x.angle());
        }
    }
    throw std::logic_error("unreachable norm kind");
}

double NormDescriptor::evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim)
        throw std::invalid_argument("norm evaluated on vector of wrong dimension");
    switch (kind) {
        case NormKind::Sup: {
            double m = 0.0;
            for (double v : x) m = std::max(m, std::abs(v));
            return m;
        }
        case NormKind::Euclidean: {
            double s = 0.0;
            for (double v : x) s += v * v;
            return std::sqrt(s);
        }
        default:
            return evaluate(Vec2{x[0], x[1]});
    }
}

double NormDescriptor::radius(double theta) const {
    if (dim != 2) throw std::invalid_argument("radius is defined for 2D norms only");
    if (kind == NormKind::Radial) {
        const int last = static_cast<int>(knot_t.size()) - 1;
        const double lo = knot_t[0];
        double x = theta - kPi * std::floor((theta - lo) / kPi);
        if (x >= knot_t[last]) x = lo;  // guard the rounding edge at lo + pi
        int i = static_cast<int>(std::upper_bound(knot_t.begin(), knot_t.begin() + last, x) -
                                 knot_t.begin()) -
                1;
        if (i < 0) i = 0;
        return hermite(knot_t[i], knot_t[i + 1], knot_r[i], knot_r[i + 1], knot_s[i],
                       knot_s[i + 1], x);
    }
    const Vec2 u{std::cos(theta), std::sin(theta)};
    return 1.0 / evaluate(u);
}

Vec2 NormDescriptor::boundary_point(double theta) const {
    return Vec2{std::cos(theta), std::sin(theta)} * radius(theta);
}

}  // namespace latflow
