#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "latflow/lattice.hpp"
#include "latflow/vec.hpp"

namespace latflow {

// Point x + iy in the upper half plane (y > 0).
struct HalfPlanePoint {
    double x = 0.0;
    double y = 1.0;
};

// Integer 2x2 matrix {a, b, c, d} acting by z -> (az + b) / (cz + d).
using IntMat2 = std::array<long long, 4>;

inline Mat2 to_mat2(const IntMat2& g) {
    return {static_cast<double>(g[0]), static_cast<double>(g[1]), static_cast<double>(g[2]),
            static_cast<double>(g[3])};
}

// Mobius action of a real matrix with det = 1 (checked to 1e-9).
HalfPlanePoint mobius(const Mat2& g, HalfPlanePoint z);

// 2 * asinh(|z - w| / (2 * sqrt(y_z * y_w))).
double hyperbolic_distance(HalfPlanePoint z, HalfPlanePoint w);

struct ReductionResult {
    HalfPlanePoint z;                 // representative in the fundamental domain
    IntMat2 gamma{1, 0, 0, 1};        // gamma applied to the input gives z
    int steps = 0;                    // number of inversions used
    std::string word;                 // gamma as a product of T^k and S, leftmost applied last
};

// Reduce into {|x| <= 1/2, |z| >= 1}, canonicalizing boundary points onto
// x = -1/2 and the left half of the unit circle.
ReductionResult reduce(HalfPlanePoint z);

// Reduced orbit point of a unimodular planar lattice. Independent of the
// choice of basis and invariant under rotating the lattice.
ReductionResult point_of_lattice(const Lattice& lattice);

// Corner of the fundamental domain, -1/2 + i*sqrt(3)/2: the orbit point of
// the Euclidean-critical (hexagonal) lattices.
HalfPlanePoint corner_point();

// Unit-covolume hexagonal basis whose reduced orbit point is corner_point()
// and whose Euclidean delta is exactly 1.
Mat2 hexagonal_unit_basis();

// Euclidean delta of a lattice whose reduced orbit point has height y:
// sqrt((sqrt(3)/2) / y). At most 1 for reduced heights.
double delta_from_height(double y_reduced);

// Euclidean delta(lattice) >= r through the reduced height: membership is
// Im z_reduced <= (sqrt(3)/2) / r^2 (with a 1e-9 relative slack so exact
// boundary cases count as inside). Requires 0 < r <= 1.
bool height_criterion(const Lattice& lattice, double r);

// Distance to the nearest of the two corner representatives
// -1/2 + i*sqrt(3)/2 and +1/2 + i*sqrt(3)/2. Input should be reduced.
double distance_to_corner(HalfPlanePoint z_reduced);

// distance_to_corner of the lattice's reduced orbit point.
double distance_to_critical(const Lattice& lattice);

struct Rational64 {
    long long num = 0;
    long long den = 1;
};

// Exact real part of gamma applied to corner_point(), in lowest terms with
// positive denominator: (2(ac + bd) - (ad + bc)) / (2(c^2 - cd + d^2)).
// Requires det gamma = 1.
Rational64 corner_image_real_part(const IntMat2& gamma);

// Monte-Carlo probe of the two-sided ball estimate around corner_point():
//   inner: distance <= c0 * eps       implies delta >= 1 - eps,
//   outer: delta >= 1 - eps           implies distance <= c0_prime * eps.
// Inner samples sit on the hyperbolic circle of radius exactly c0 * eps;
// outer samples are drawn from the region {z in domain : delta(z) >= 1 - eps}.
struct SandwichReport {
    int inner_checked = 0;
    int inner_violations = 0;
    int outer_checked = 0;
    int outer_violations = 0;
    double outer_ratio_max = 0.0;  // max of distance/eps over outer samples
};

SandwichReport sandwich_probe(double eps, int samples, double c0, double c0_prime,
                              std::uint64_t seed);

}  // namespace latflow
