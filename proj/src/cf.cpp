#include "latflow/cf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latflow {

namespace {

const u128 kDen120 = u128(1) << 120;

}  // namespace

AlphaCF AlphaCF::from_fraction(u128 numerator, u128 denominator) {
  if (denominator == 0 || numerator == 0 || numerator >= denominator) {
    throw std::invalid_argument("continued fraction requires 0 < num < den");
  }
  AlphaCF cf;
  cf.num = numerator;
  cf.den = denominator;
  cf.rem = {denominator, numerator};
  cf.p = {0};
  cf.q = {1};
  u128 p_prev = 1;  // virtual convergent index -1: p = 1, q = 0
  u128 q_prev = 0;
  while (cf.rem.back() != 0) {
    u128 r2 = cf.rem[cf.rem.size() - 2];
    u128 r1 = cf.rem.back();
    u128 ak = r2 / r1;
    cf.rem.push_back(r2 % r1);
    cf.a.push_back(ak);
    u128 pk = ak * cf.p.back() + p_prev;
    u128 qk = ak * cf.q.back() + q_prev;
    p_prev = cf.p.back();
    q_prev = cf.q.back();
    cf.p.push_back(pk);
    cf.q.push_back(qk);
  }
  return cf;
}

AlphaCF AlphaCF::from_bits(u128 bits120) {
  if (bits120 == 0 || bits120 >= kDen120) {
    throw std::invalid_argument("alpha bits must lie strictly between 0 and 2^120");
  }
  return from_fraction(bits120, kDen120);
}

AlphaCF AlphaCF::from_double(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 1.0) {
    throw std::invalid_argument("alpha must lie strictly between 0 and 1");
  }
  int e = 0;
  double m = std::frexp(alpha, &e);           // alpha = m * 2^e, m in [0.5, 1)
  auto mant = static_cast<long long>(std::llround(std::ldexp(m, 53)));
  int shift = 120 + e - 53;                   // alpha * 2^120 = mant * 2^shift
  u128 bits = 0;
  if (shift >= 0) {
    bits = u128(mant) << shift;               // exact: e <= 0 gives shift <= 67
  } else {
    int k = -shift;
    bits = k < 64 ? (u128(mant) + (u128(1) << (k - 1))) >> k : 0;
  }
  if (bits == 0) {
    throw std::invalid_argument("alpha is too small to carry 120 fractional bits");
  }
  return from_bits(bits);
}

double AlphaCF::value() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

Mat2 AlphaCF::flow_basis(double s) const {
  double es = std::exp(s);
  int last = static_cast<int>(q.size()) - 1;
  int k = 0;
  while (k < last && static_cast<double>(q[k + 1]) <= es) ++k;

  double inv_den = 1.0 / static_cast<double>(den);
  u128 q_prev = k > 0 ? q[k - 1] : 0;
  u128 r_base = rem[k];       // den * |q_{k-1} alpha - p_{k-1}|
  u128 r_k = rem[k + 1];      // den * |q_k alpha - p_k|

  // Intermediate convergents between k-1 and k+1: Q_j = q_{k-1} + j q_k,
  // R_j = rem[k] - j rem[k+1].  Pick j so that the flowed coordinates
  // e^s R_j/den and e^-s Q_j balance, which keeps the basis well conditioned.
  u128 j_max = k < last ? a[k] : 0;
  double num_j = es * es * (static_cast<double>(r_base) * inv_den) -
                 static_cast<double>(q_prev);
  double den_j = es * es * (static_cast<double>(r_k) * inv_den) +
                 static_cast<double>(q[k]);
  double j_star = num_j / den_j;

  u128 j = 0;
  if (j_star >= 1.0) {
    double fl = std::floor(j_star);
    j = fl >= static_cast<double>(j_max) ? j_max : static_cast<u128>(fl);
    if (j > j_max) j = j_max;
  }
  auto cost = [&](u128 jj) {
    double x = es * (static_cast<double>(r_base - jj * r_k) * inv_den);
    double y = (static_cast<double>(q_prev + jj * q[k])) / es;
    return std::max(x, y);
  };
  if (j < j_max && cost(j + 1) < cost(j)) ++j;

  u128 r_j = r_base - j * r_k;
  u128 q_j = q_prev + j * q[k];

  double sgn = (k % 2 == 0) ? 1.0 : -1.0;
  Vec2 v_k{sgn * es * (static_cast<double>(r_k) * inv_den),
           static_cast<double>(q[k]) / es};
  Vec2 v_j{-sgn * es * (static_cast<double>(r_j) * inv_den),
           static_cast<double>(q_j) / es};
  return Mat2::from_columns(v_k, v_j);
}

std::string bits_to_hex(u128 bits) {
  std::string out(30, '0');
  for (int i = 29; i >= 0; --i) {
    out[static_cast<size_t>(i)] = "0123456789abcdef"[static_cast<unsigned>(bits & 0xf)];
    bits >>= 4;
  }
  return out;
}

u128 hex_to_bits(const std::string& hex) {
  if (hex.empty() || hex.size() > 32) {
    throw std::invalid_argument("hex string must have between 1 and 32 digits");
  }
  u128 out = 0;
  for (char c : hex) {
    int v = 0;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw std::invalid_argument("invalid hex digit in alpha bits");
    }
    out = (out << 4) | static_cast<unsigned>(v);
  }
  return out;
}

}  // namespace latflow
