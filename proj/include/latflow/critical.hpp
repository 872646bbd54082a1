#pragma once

#include <optional>
#include <vector>

#include "latflow/norms.hpp"
#include "latflow/vec.hpp"

namespace latflow {

// An inscribed hexagon +-p, +-q, +-r with r = q - p: three unit-norm points
// whose lattice span(p, q) has all six on the unit sphere. Candidate for a
// critical lattice of the ball.
struct HexagonConfig {
    double t0 = 0.0;  // angle of p
    Vec2 p, q, r;
    double det = 0.0;         // |p x q|, the covolume of span(p, q)
    bool extra_roots = false;  // the chord equation had more than one crossing
};

struct CriticalResult {
    double value = 0.0;    // critical determinant of the unit ball
    HexagonConfig config;  // minimizing hexagon
};

// Hexagon anchored at p = boundary_point(t0): finds the first s in
// (t0, t0 + pi) with norm(boundary_point(s) - p) = 1.
HexagonConfig hexagon_at(const NormDescriptor& norm, double t0);

// Minimum hexagon covolume over a t0 grid on [0, pi), refined around the
// argmin. 2D norms only. The parallel variant needs OpenMP to be enabled and
// produces bit-identical results to the serial one.
CriticalResult critical_determinant(const NormDescriptor& norm, int grid = 720);
CriticalResult critical_determinant_serial(const NormDescriptor& norm, int grid = 720);

struct LocusPoint {
    HexagonConfig config;
    bool is_critical = false;  // covolume within 1e-6 relative of the minimum
};

// Hexagon family swept over `count` anchor angles in [0, pi).
std::vector<LocusPoint> trace_critical_locus(const NormDescriptor& norm, int count);

// Area of the unit ball (exact for polygons, quadrature otherwise).
double body_area(const NormDescriptor& norm);

// Table of classically known critical determinants.
std::optional<double> known_critical_determinant(const NormDescriptor& norm);

// Table value if known, otherwise computed (2D only; throws for unknown
// higher-dimensional balls).
double resolve_critical_constant(const NormDescriptor& norm);

}  // namespace latflow
