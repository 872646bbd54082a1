#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "latflow/lattice.hpp"
#include "latflow/norms.hpp"

using namespace latflow;

namespace {

double brute_force_min(const Mat2& b, const NormDescriptor& n, int range) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = -range; i <= range; ++i)
        for (int j = -range; j <= range; ++j) {
            if (i == 0 && j == 0) continue;
            best = std::min(best, n.evaluate(b * Vec2{double(i), double(j)}));
        }
    return best;
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("MatN determinant and inverse") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int dim = 2; dim <= 4; ++dim) {
        for (int rep = 0; rep < 50; ++rep) {
            MatN a = MatN::identity(dim), b = MatN::identity(dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    a.at(i, j) = u(rng);
                    b.at(i, j) = u(rng);
                }
            if (std::abs(a.det()) < 1e-3) continue;
            CHECK((a * b).det() == doctest::Approx(a.det() * b.det()).epsilon(1e-9));
            const MatN prod = a * a.inverse();
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    CHECK(prod.at(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9));
        }
    }
    CHECK(MatN::identity(3).det() == doctest::Approx(1.0));
}

TEST_CASE("shortest vector on the integer lattice") {
    const auto z2 = Lattice::from_basis2(Mat2::identity());
    const auto sv = shortest_vector(z2, NormDescriptor::euclidean());
    CHECK(sv.length == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(sv.coeffs[0]) + std::abs(sv.coeffs[1]) == 1);
    CHECK(shortest_vector(z2, NormDescriptor::sup()).length == doctest::Approx(1.0));
    CHECK(shortest_vector(z2, NormDescriptor::lp(1)).length == doctest::Approx(1.0));
}

TEST_CASE("shortest vector matches brute force on random bases") {
    std::vector<NormDescriptor> norms;
    norms.push_back(NormDescriptor::euclidean());
    norms.push_back(NormDescriptor::sup());
    norms.push_back(NormDescriptor::lp(1));
    norms.push_back(NormDescriptor::lp(3));
    norms.push_back(NormDescriptor::polygon(
        {{1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}, {-0.5, std::sqrt(3.0) / 2.0}}));

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int tested = 0;
    while (tested < 200) {
        const Mat2 b{u(rng), u(rng), u(rng), u(rng)};
        if (std::abs(b.det()) < 0.1) continue;
        ++tested;
        const auto lat = Lattice::from_basis2(b);
        for (const auto& n : norms) {
            const auto sv = shortest_vector(lat, n);
            const double brute = brute_force_min(b, n, 50);
            CHECK(sv.length <= brute * (1.0 + 1e-12) + 1e-12);
            if (std::abs(sv.coeffs[0]) <= 50 && std::abs(sv.coeffs[1]) <= 50)
                CHECK(sv.length == doctest::Approx(brute).epsilon(1e-12));
            // The reported point must be the reported integer combination.
            const Vec2 rec = b * Vec2{double(sv.coeffs[0]), double(sv.coeffs[1])};
            CHECK(rec.x == doctest::Approx(sv.point[0]).epsilon(1e-9));
            CHECK(rec.y == doctest::Approx(sv.point[1]).epsilon(1e-9));
            CHECK(n.evaluate(sv.point2()) == doctest::Approx(sv.length).epsilon(1e-12));
        }
    }
}

TEST_CASE("shortest vector survives extreme shear") {
    const Mat2 b{1.0, 1000.0, 0.0, 1.0};
    const auto sv = shortest_vector(Lattice::from_basis2(b), NormDescriptor::euclidean());
    CHECK(sv.length == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(sv.point[1]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalized shortest length of classical lattices") {
    const double hex_det = std::sqrt(3.0) / 2.0;
    const auto euclid = NormDescriptor::euclidean();

    const auto z2 = Lattice::from_basis2(Mat2::identity());
    CHECK(delta(z2, euclid, hex_det) == doctest::Approx(0.9306048591020996).epsilon(1e-12));

    const Mat2 hexb{1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0};
    const auto hex = Lattice::from_basis2(hexb);
    CHECK(delta(hex, euclid, hex_det) == doctest::Approx(1.0).epsilon(1e-12));

    // Scale invariance.
    const auto hex3 = Lattice::from_basis2(Mat2{3.0, 1.5, 0.0, 3.0 * std::sqrt(3.0) / 2.0});
    CHECK(delta(hex3, euclid, hex_det) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(delta(z2, NormDescriptor::sup(), 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(delta(z2, NormDescriptor::lp(1), 0.5) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("critical lattices in dimension 3 and 4") {
    // Face-centered cubic: densest for the 3D Euclidean ball.
    MatN fcc = MatN::identity(3);
    const double c3[3][3] = {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) fcc.at(i, j) = c3[j][i];
    CHECK(delta(Lattice::from_basis(fcc), NormDescriptor::euclidean(3), 1.0 / std::sqrt(2.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // Checkerboard lattice: densest for the 4D Euclidean ball.
    MatN d4 = MatN::identity(4);
    const double c4[4][4] = {{1, 1, 0, 0}, {1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) d4.at(i, j) = c4[j][i];
    CHECK(delta(Lattice::from_basis(d4), NormDescriptor::euclidean(4), 0.5) ==
          doctest::Approx(1.0).epsilon(1e-12));

    MatN z3 = MatN::identity(3);
    CHECK(delta(Lattice::from_basis(z3), NormDescriptor::euclidean(3), 1.0 / std::sqrt(2.0)) ==
          doctest::Approx(std::pow(0.5, 1.0 / 6.0)).epsilon(1e-12));
    CHECK(delta(Lattice::from_basis(z3), NormDescriptor::sup(3), 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("target membership") {
    const double hex_det = std::sqrt(3.0) / 2.0;
    const auto euclid = NormDescriptor::euclidean();
    const auto z2 = Lattice::from_basis2(Mat2::identity());
    const auto hex = Lattice::from_basis2(Mat2{1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0});

    CHECK(in_target(z2, euclid, hex_det, 0.9));
    CHECK(!in_target(z2, euclid, hex_det, 0.95));
    CHECK(in_target(hex, euclid, hex_det, 0.999999));
    CHECK(!in_target(hex, euclid, hex_det, 1.1));  // empty target beyond radius 1
}

TEST_CASE("invalid lattices are rejected") {
    CHECK_THROWS_AS(Lattice::from_basis2(Mat2{1.0, 2.0, 2.0, 4.0}), std::invalid_argument);
    const auto z2 = Lattice::from_basis2(Mat2::identity());
    CHECK_THROWS_AS(shortest_vector(z2, NormDescriptor::euclidean(3)), std::invalid_argument);
    CHECK_THROWS_AS(delta(z2, NormDescriptor::euclidean(), 0.0), std::invalid_argument);
}

}  // TEST_SUITE
