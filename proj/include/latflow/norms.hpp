#pragma once

#include <span>
#include <vector>

#include "latflow/vec.hpp"

namespace latflow {

enum class NormKind { Sup, Euclidean, Lp, Polygon, Radial };

// lower * |x|_2 <= nu(x) <= upper * |x|_2 for all x.
struct EquivalenceConstants {
    double lower = 1.0;
    double upper = 1.0;
};

// Boundary radii of a centrally symmetric convex body, sampled at angles in [0, pi).
struct RadialSamples {
    std::vector<double> angles;  // strictly increasing, angles.front() >= 0, angles.back() < pi
    std::vector<double> radii;   // positive, finite
};

// Immutable description of a norm; build via the static factories, which
// validate input and precompute evaluation and equivalence data.
struct NormDescriptor {
    NormKind kind = NormKind::Euclidean;
    int dim = 2;
    double p = 2.0;              // Lp exponent, p >= 1
    std::vector<Vec2> vertices;  // Polygon: full boundary, CCW, centrally symmetric

    // Polygon: nu(x) = max_e <x, edge_normals[e]> / edge_offsets[e].
    std::vector<Vec2> edge_normals;
    std::vector<double> edge_offsets;

    // Radial: monotone cubic Hermite interpolant of r(theta), period pi.
    // knot_t has the sample angles at [1..m], padded with one wrapped knot on
    // each side; pieces [knot_t[1], knot_t[m+1]] cover one full period.
    std::vector<double> knot_t;
    std::vector<double> knot_r;
    std::vector<double> knot_s;

    RadialSamples radial_input;  // Radial: the accepted samples, kept for serialization
    EquivalenceConstants equiv;

    static NormDescriptor sup(int dimension = 2);
    static NormDescriptor euclidean(int dimension = 2);
    static NormDescriptor lp(double exponent);
    static NormDescriptor polygon(const std::vector<Vec2>& half_vertices);
    static NormDescriptor radial(const RadialSamples& samples);

    double evaluate(const Vec2& x) const;
    double evaluate(std::span<const double> x) const;

    // Distance from the origin to the unit-ball boundary in direction theta (2D only).
    double radius(double theta) const;
    // The boundary point radius(theta) * (cos theta, sin theta) (2D only).
    Vec2 boundary_point(double theta) const;

    EquivalenceConstants equivalence_constants() const { return equiv; }
};

}  // namespace latflow
