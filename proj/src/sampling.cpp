#include "latflow/sampling.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace latflow {

std::uint64_t RngStream::next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double RngStream::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

RngStream stream_for(std::uint64_t seed, std::uint64_t index) {
    RngStream r{seed ^ (0x632be59bd9b4e019ULL * (index + 1))};
    r.next();
    return r;
}

u128 random_bits120(RngStream& rng) {
    for (;;) {
        u128 hi = rng.next() & ((std::uint64_t(1) << 56) - 1);
        u128 bits = (hi << 64) | rng.next();
        if (bits != 0) return bits;
    }
}

Lattice random_unit_lattice2(RngStream& rng, double max_flow, double max_shear) {
    const double phi = rng.uniform(0.0, 3.14159265358979323846);
    const double s = rng.uniform(-max_flow, max_flow);
    const double x = rng.uniform(-max_shear, max_shear);
    const Mat2 flow{std::exp(s), 0.0, 0.0, std::exp(-s)};
    const Mat2 shear{1.0, x, 0.0, 1.0};
    return Lattice::from_basis2(Mat2::rotation(phi) * flow * shear);
}

std::array<long long, 4> random_unimodular_int2(RngStream& rng, long long height) {
    if (height < 1) throw std::invalid_argument("random_unimodular_int2: height must be >= 1");
    for (;;) {
        const long long span = 2 * height + 1;
        const long long c = static_cast<long long>(rng.next() % span) - height;
        const long long d = static_cast<long long>(rng.next() % span) - height;
        if (c == 0 && d == 0) continue;
        if (std::gcd(std::llabs(c), std::llabs(d)) != 1) continue;

        long long a = 0, b = 0;
        if (d == 0) {
            b = -c;  // c is +-1, so a*d - b*c = -b*c = c*c = 1
        } else if (c == 0) {
            a = d;  // d is +-1
        } else {
            // Extended Euclid on |c|, |d|: u*|d| + v*|c| = 1.
            long long r0 = std::llabs(d), r1 = std::llabs(c);
            long long u0 = 1, u1 = 0, v0 = 0, v1 = 1;
            while (r1 != 0) {
                const long long q = r0 / r1;
                r0 -= q * r1;
                u0 -= q * u1;
                v0 -= q * v1;
                std::swap(r0, r1);
                std::swap(u0, u1);
                std::swap(v0, v1);
            }
            a = u0 * (d > 0 ? 1 : -1);
            b = -v0 * (c > 0 ? 1 : -1);
        }
        const long long k = static_cast<long long>(rng.next() % 5) - 2;
        a += k * c;
        b += k * d;
        if (a * d - b * c != 1) throw std::logic_error("random_unimodular_int2: Bezout failed");
        return {a, b, c, d};
    }
}

}  // namespace latflow
