#pragma once

#include <array>
#include <cstdint>

#include "latflow/cf.hpp"
#include "latflow/lattice.hpp"
#include "latflow/vec.hpp"

namespace latflow {

// Deterministic splitmix64 generator.  stream_for(seed, index) derives a
// per-sample stream from an experiment seed, so parallel loops stay
// reproducible regardless of scheduling.
struct RngStream {
  std::uint64_t state = 0;

  std::uint64_t next();
  double uniform01();  // in [0, 1)
  double uniform(double lo, double hi);
};

RngStream stream_for(std::uint64_t seed, std::uint64_t index);

// 120 random fractional bits, never zero.
u128 random_bits120(RngStream& rng);

// rotation(phi) * diag(e^s, e^-s) * [[1, x], [0, 1]] applied to the integer
// lattice: a unit-covolume planar lattice spread over the reduction domain.
Lattice random_unit_lattice2(RngStream& rng, double max_flow = 1.5, double max_shear = 1.0);

// Random {a, b, c, d} with ad - bc = 1 and |c|, |d| <= height: a coprime
// bottom row plus a Bezout top row shifted by a small multiple of the bottom.
std::array<long long, 4> random_unimodular_int2(RngStream& rng, long long height);

}  // namespace latflow
