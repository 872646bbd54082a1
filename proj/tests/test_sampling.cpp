#include <cmath>
#include <cstdint>
#include <set>

#include "doctest.h"
#include "latflow/sampling.hpp"

using namespace latflow;

TEST_SUITE("sampling") {

TEST_CASE("streams are deterministic and index-separated") {
    RngStream a = stream_for(42, 7);
    RngStream b = stream_for(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

    RngStream c = stream_for(42, 8);
    RngStream d = stream_for(43, 7);
    int same_c = 0, same_d = 0;
    RngStream a2 = stream_for(42, 7);
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t v = a2.next();
        if (v == c.next()) ++same_c;
        if (v == d.next()) ++same_d;
    }
    CHECK(same_c == 0);
    CHECK(same_d == 0);
}

TEST_CASE("uniform01 stays in [0, 1) and spreads") {
    RngStream rng = stream_for(1, 0);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
    CHECK(sum / 20000 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("random_bits120 is nonzero and below 2^120") {
    RngStream rng = stream_for(5, 3);
    const u128 limit = u128(1) << 120;
    std::set<unsigned long long> lows;
    for (int i = 0; i < 200; ++i) {
        const u128 bits = random_bits120(rng);
        CHECK(bits != 0);
        CHECK(bits < limit);
        lows.insert(static_cast<unsigned long long>(bits & 0xffffffffffffffffULL));
    }
    CHECK(lows.size() == 200);  // no collisions in the low words
}

TEST_CASE("random_unit_lattice2 has unit covolume") {
    RngStream rng = stream_for(9, 1);
    for (int i = 0; i < 200; ++i) {
        const Lattice L = random_unit_lattice2(rng);
        CHECK(L.dim() == 2);
        CHECK(L.covol == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("random_unimodular_int2 has determinant one within bounds") {
    RngStream rng = stream_for(11, 2);
    for (int i = 0; i < 500; ++i) {
        const auto g = random_unimodular_int2(rng, 40);
        CHECK(g[0] * g[3] - g[1] * g[2] == 1);
        CHECK(std::llabs(g[2]) <= 40);
        CHECK(std::llabs(g[3]) <= 40);
    }
    CHECK_THROWS_AS(random_unimodular_int2(rng, 0), std::invalid_argument);
}

}  // TEST_SUITE
