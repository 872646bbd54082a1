#pragma once

#include <string>
#include <vector>

#include "latflow/vec.hpp"

namespace latflow {

using u128 = unsigned __int128;

// Continued-fraction expansion of alpha = num/den in (0,1), kept in exact
// integer arithmetic so that diagonal-flow bases stay accurate far beyond
// the range where forming alpha*q in doubles loses the fractional part.
//
//   rem[0] = den, rem[1] = num, rem[k+1] = rem[k-1] mod rem[k]
//   a[k-1] = floor(rem[k-1] / rem[k])        (partial quotient a_k)
//   p[k]/q[k] = k-th convergent, p[0]/q[0] = 0/1
//   q[k]*alpha - p[k] = (-1)^k * rem[k+1]/den   exactly
//
// A 120-bit denominator yields at most ~175 terms.
struct AlphaCF {
  u128 num = 0;
  u128 den = 1;
  std::vector<u128> a;
  std::vector<u128> p;
  std::vector<u128> q;
  std::vector<u128> rem;  // ends with a zero entry

  static AlphaCF from_fraction(u128 numerator, u128 denominator);
  static AlphaCF from_bits(u128 bits120);    // alpha = bits120 / 2^120
  static AlphaCF from_double(double alpha);  // exact binary value of alpha

  double value() const;
  int steps() const { return static_cast<int>(a.size()); }

  // Basis of diag(e^s, e^-s) * {(alpha*q - p, q) : p,q integers}, built from
  // the largest convergent with q <= e^s paired with a balanced intermediate
  // convergent.  Both columns stay of moderate size for any s, and the
  // determinant is +-1 exactly, so the result feeds the generic
  // shortest-vector search without loss of precision.
  Mat2 flow_basis(double s) const;
};

// 120-bit value <-> 30-digit hex string (lowercase, zero padded).
std::string bits_to_hex(u128 bits);
u128 hex_to_bits(const std::string& hex);

}  // namespace latflow
