#include "latflow/hyperbolic.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "latflow/errors.hpp"
#include "latflow/sampling.hpp"

namespace latflow {

namespace {

constexpr double kCriticalDet2 = 0.86602540378443864676;  // sqrt(3)/2
constexpr double kPi = 3.14159265358979323846;

void check_point(HalfPlanePoint z, const char* where) {
    if (!std::isfinite(z.x) || !std::isfinite(z.y) || z.y <= 0.0)
        throw std::invalid_argument(std::string(where) + ": point must be finite with y > 0");
}

// g <- T^k * g
void left_translate(IntMat2& g, long long k) {
    g[0] += k * g[2];
    g[1] += k * g[3];
}

// g <- S * g, with S = [[0, -1], [1, 0]]
void left_invert(IntMat2& g) {
    const IntMat2 old = g;
    g[0] = -old[2];
    g[1] = -old[3];
    g[2] = old[0];
    g[3] = old[1];
}

}  // namespace

HalfPlanePoint mobius(const Mat2& g, HalfPlanePoint z) {
    check_point(z, "mobius");
    if (std::abs(g.det() - 1.0) > 1e-9)
        throw std::invalid_argument("mobius: matrix must have determinant 1");
    const double u = g.c * z.x + g.d;  // Re(cz + d)
    const double v = g.c * z.y;        // Im(cz + d)
    const double den = u * u + v * v;
    if (den < 1e-300) throw NumericError("mobius: point maps to infinity");
    const double nx = g.a * z.x + g.b;
    return {(nx * u + g.a * z.y * v) / den, z.y / den};
}

double hyperbolic_distance(HalfPlanePoint z, HalfPlanePoint w) {
    check_point(z, "hyperbolic_distance");
    check_point(w, "hyperbolic_distance");
    const double chord = std::hypot(z.x - w.x, z.y - w.y);
    return 2.0 * std::asinh(chord / (2.0 * std::sqrt(z.y * w.y)));
}

ReductionResult reduce(HalfPlanePoint z) {
    check_point(z, "reduce");
    if (std::abs(z.x) > 1e18) throw std::invalid_argument("reduce: |x| too large");

    ReductionResult res;
    res.z = z;
    std::vector<std::string> ops;  // in application order

    const long long cap = 1000000;
    for (long long iter = 0;; ++iter) {
        if (iter >= cap) throw NumericError("reduce: iteration cap exceeded");
        const double n = std::floor(res.z.x + 0.5);
        if (n != 0.0) {
            const long long k = static_cast<long long>(n);
            res.z.x -= n;
            left_translate(res.gamma, -k);
            ops.push_back("T^" + std::to_string(-k));
        }
        const double r2 = res.z.x * res.z.x + res.z.y * res.z.y;
        if (r2 < 1.0 - 1e-15) {
            res.z = {-res.z.x / r2, res.z.y / r2};
            left_invert(res.gamma);
            ops.push_back("S");
            ++res.steps;
        } else {
            break;
        }
    }

    // Boundary canonicalization: right unit-circle arc reflects to the left,
    // the x = +1/2 edge translates to x = -1/2.
    const double r2 = res.z.x * res.z.x + res.z.y * res.z.y;
    if (std::abs(r2 - 1.0) <= 1e-12 && res.z.x > 0.0) {
        res.z = {-res.z.x / r2, res.z.y / r2};
        left_invert(res.gamma);
        ops.push_back("S");
        ++res.steps;
    }
    if (res.z.x >= 0.5 - 1e-12) {
        res.z.x -= 1.0;
        left_translate(res.gamma, -1);
        ops.push_back("T^-1");
    }

    if (ops.empty()) {
        res.word = "I";
    } else {
        for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
            if (!res.word.empty()) res.word += ' ';
            res.word += *it;
        }
    }
    return res;
}

ReductionResult point_of_lattice(const Lattice& lattice) {
    if (lattice.dim() != 2) throw std::invalid_argument("point_of_lattice: dimension must be 2");
    Mat2 g = lattice.basis2();
    const double det = g.det();
    if (std::abs(std::abs(det) - 1.0) > 1e-9)
        throw std::invalid_argument("point_of_lattice: basis must be unimodular");
    if (det < 0.0) {
        g.b = -g.b;
        g.d = -g.d;
    }
    return reduce(mobius(g.inverse(), {0.0, 1.0}));
}

HalfPlanePoint corner_point() { return {-0.5, kCriticalDet2}; }

Mat2 hexagonal_unit_basis() {
    const double s = std::sqrt(kCriticalDet2);
    return {1.0 / s, 0.5 / s, 0.0, s};
}

double delta_from_height(double y_reduced) {
    if (!(y_reduced > 0.0)) throw std::invalid_argument("delta_from_height: height must be > 0");
    return std::sqrt(kCriticalDet2 / y_reduced);
}

bool height_criterion(const Lattice& lattice, double r) {
    if (!(r > 0.0) || r > 1.0) throw std::invalid_argument("height_criterion: need 0 < r <= 1");
    const ReductionResult red = point_of_lattice(lattice);
    return red.z.y <= (kCriticalDet2 / (r * r)) * (1.0 + 1e-9);
}

double distance_to_corner(HalfPlanePoint z_reduced) {
    const HalfPlanePoint left = corner_point();
    const HalfPlanePoint right{-left.x, left.y};
    return std::min(hyperbolic_distance(z_reduced, left), hyperbolic_distance(z_reduced, right));
}

double distance_to_critical(const Lattice& lattice) {
    return distance_to_corner(point_of_lattice(lattice).z);
}

Rational64 corner_image_real_part(const IntMat2& g) {
    const long long a = g[0], b = g[1], c = g[2], d = g[3];
    if (a * d - b * c != 1)
        throw std::invalid_argument("corner_image_real_part: determinant must be 1");
    long long num = 2 * (a * c + b * d) - (a * d + b * c);
    long long den = 2 * (c * c - c * d + d * d);
    const long long gg = std::gcd(std::llabs(num), std::llabs(den));
    if (gg > 1) {
        num /= gg;
        den /= gg;
    }
    return {num, den};
}

SandwichReport sandwich_probe(double eps, int samples, double c0, double c0_prime,
                              std::uint64_t seed) {
    if (!(eps > 0.0) || eps >= 0.5) throw std::invalid_argument("sandwich_probe: need 0 < eps < 1/2");
    if (samples < 1) throw std::invalid_argument("sandwich_probe: need samples >= 1");
    if (!(c0 > 0.0) || !(c0_prime > 0.0))
        throw std::invalid_argument("sandwich_probe: constants must be positive");

    SandwichReport rep;
    const HalfPlanePoint z0 = corner_point();
    const double sq = std::sqrt(z0.y);
    const Mat2 to_corner{sq, z0.x / sq, 0.0, 1.0 / sq};  // isometry sending i to z0

    RngStream inner_rng = stream_for(seed, 1);
    const double rho = c0 * eps;
    for (int k = 0; k < samples; ++k) {
        // The Mobius action of R(theta) rotates about i by 2*theta, so
        // theta in [0, pi) sweeps the full circle of radius rho.
        const double theta = inner_rng.uniform(0.0, kPi);
        const HalfPlanePoint on_circle = mobius(Mat2::rotation(theta), {0.0, std::exp(rho)});
        const HalfPlanePoint z = mobius(to_corner, on_circle);
        const double dlt = delta_from_height(reduce(z).z.y);
        ++rep.inner_checked;
        if (dlt < 1.0 - eps - 1e-12) ++rep.inner_violations;
    }

    RngStream outer_rng = stream_for(seed, 2);
    const double y_max = kCriticalDet2 / ((1.0 - eps) * (1.0 - eps));
    for (int k = 0; k < samples; ++k) {
        double x = 0.0, y = -1.0;
        while (y < 0.0) {
            x = outer_rng.uniform(-0.5, 0.5);
            const double y_lo = std::sqrt(1.0 - x * x);
            if (y_lo >= y_max) continue;
            y = outer_rng.uniform(y_lo, y_max);
        }
        const double dist = distance_to_corner({x, y});
        ++rep.outer_checked;
        rep.outer_ratio_max = std::max(rep.outer_ratio_max, dist / eps);
        if (dist > c0_prime * eps) ++rep.outer_violations;
    }
    return rep;
}

}  // namespace latflow
