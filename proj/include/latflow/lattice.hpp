#pragma once

#include <array>

#include "latflow/norms.hpp"
#include "latflow/vec.hpp"

namespace latflow {

// A full-rank lattice in dimension 2..4, generated by the columns of `basis`.
struct Lattice {
    MatN basis;
    double covol = 1.0;  // |det basis|

    static Lattice from_basis(const MatN& b);
    static Lattice from_basis2(const Mat2& b);

    int dim() const { return basis.dim; }
    Mat2 basis2() const;  // 2D only
};

struct ShortestVectorResult {
    std::array<long long, 4> coeffs{};  // integer coordinates w.r.t. basis columns
    std::array<double, 4> point{};      // basis * coeffs
    double length = 0.0;                // norm of point

    Vec2 point2() const { return {point[0], point[1]}; }
};

// Norm-shortest nonzero lattice vector, found by exact enumeration of an
// integer box that provably contains every candidate.
ShortestVectorResult shortest_vector(const Lattice& lattice, const NormDescriptor& norm);

// Scale-invariant normalized shortest length: critical_det^{1/d} times the
// norm-shortest length of the covolume-one rescaling. Lies in (0, 1].
double delta(const Lattice& lattice, const NormDescriptor& norm, double critical_det);

// Whether delta(lattice) >= r, the membership test for the shrinking family
// of target sets. Radii beyond 1 give an empty target.
bool in_target(const Lattice& lattice, const NormDescriptor& norm, double critical_det, double r);

}  // namespace latflow
