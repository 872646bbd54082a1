#include "latflow/flow.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "latflow/cf.hpp"
#include "latflow/critical.hpp"
#include "latflow/dani.hpp"
#include "latflow/lattice.hpp"
#include "latflow/norms.hpp"

namespace lf = latflow;

namespace {

const char* kGoldenHex = "9e3779b97f4a7c15f39cc0605cedc8";   // (sqrt5 - 1)/2
const char* kSqrt2m1Hex = "6a09e667f3bcc908b2fb1366ea957d";  // sqrt2 - 1

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

double delta2() { return std::sqrt(3.0) / 2.0; }

lf::Mat2 random_unit_covolume_basis(std::uint64_t& state) {
  while (true) {
    lf::Vec2 c0{4.0 * uniform01(state) - 2.0, 4.0 * uniform01(state) - 2.0};
    lf::Vec2 c1{4.0 * uniform01(state) - 2.0, 4.0 * uniform01(state) - 2.0};
    lf::Mat2 b = lf::Mat2::from_columns(c0, c1);
    double det = std::abs(b.det());
    if (det > 0.1) {
      double scale = 1.0 / std::sqrt(det);
      return lf::Mat2::from_columns(c0 * scale, c1 * scale);
    }
  }
}

lf::Mat2 apply_flow2(double s, const lf::Mat2& b) {
  double es = std::exp(s);
  return lf::Mat2{b.a * es, b.b * es, b.c / es, b.d / es};
}

lf::Mat2 apply_lower_shear(double y, const lf::Mat2& b) {
  return lf::Mat2{b.a, b.b, y * b.a + b.c, y * b.b + b.d};
}

double dense_delta2(const lf::Mat2& basis) {
  auto lat = lf::Lattice::from_basis2(basis);
  auto norm = lf::NormDescriptor::euclidean();
  return lf::delta(lat, norm, delta2());
}

}  // namespace

TEST_SUITE("flow") {

TEST_CASE("flow matrix diagonal") {
  lf::MatN a = lf::flow_matrix(0.7, 2, 1);
  CHECK(a.at(0, 0) == doctest::Approx(std::exp(0.35)).epsilon(1e-15));
  CHECK(a.at(1, 1) == doctest::Approx(std::exp(0.35)).epsilon(1e-15));
  CHECK(a.at(2, 2) == doctest::Approx(std::exp(-0.7)).epsilon(1e-15));
  CHECK(a.at(0, 1) == 0.0);
  CHECK(std::abs(a.det() - 1.0) <= 1e-12);
  CHECK_THROWS_AS(lf::flow_matrix(1.0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(lf::flow_matrix(1.0, 3, 2), std::invalid_argument);
}

TEST_CASE("box rescaling equals the flow at the reparametrized time") {
  std::uint64_t state = 11ULL;
  std::vector<std::pair<int, int>> weights = {{1, 1}, {2, 1}, {1, 2}, {2, 2}};
  for (auto [m, n] : weights) {
    std::vector<lf::PsiSpec> psis;
    psis.push_back(lf::PsiSpec::scaled(0.7, m, n));
    psis.push_back(lf::PsiSpec::power_gap(1.0, m, n));
    psis.push_back(lf::PsiSpec::log_gap(1.0, m, n));
    for (const auto& psi : psis) {
      int d = m + n;
      for (int trial = 0; trial < 25; ++trial) {
        double t = psi.t_start * std::pow(1e4, uniform01(state));
        double s = (static_cast<double>(m) * n / d) * std::log(t / lf::psi_eval(psi, t));
        lf::MatN bt = lf::box_matrix(t, psi);
        lf::MatN as = lf::flow_matrix(s, m, n);
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            CHECK(std::abs(bt.at(i, j) - as.at(i, j)) <= 1e-12 * std::max(1.0, std::abs(as.at(i, j))));
          }
        }
      }
    }
  }
}

TEST_CASE("shear matrix layout") {
  std::vector<double> a12 = {1.5, -2.5};
  lf::MatN u = lf::shear_matrix(a12, 1, 2);
  CHECK(u.at(0, 1) == 1.5);
  CHECK(u.at(0, 2) == -2.5);
  CHECK(u.at(1, 1) == 1.0);
  lf::MatN v = lf::shear_matrix(a12, 2, 1);
  CHECK(v.at(0, 2) == 1.5);
  CHECK(v.at(1, 2) == -2.5);
  CHECK(std::abs(u.det() - 1.0) <= 1e-15);
  CHECK_THROWS_AS(lf::shear_matrix(a12, 1, 1), std::invalid_argument);
}

TEST_CASE("zero shear trajectory has closed form") {
  std::vector<double> zero = {0.0};
  std::vector<double> grid;
  for (double s = 1.0; s <= 6.0 + 1e-12; s += 0.25) grid.push_back(s);
  auto norm = lf::NormDescriptor::euclidean();
  auto traj = lf::trajectory_delta_mn(zero, 1, 1, norm, delta2(), grid);
  REQUIRE(traj.size() == grid.size());
  for (const auto& fp : traj) {
    double expect = std::sqrt(delta2()) * std::exp(-fp.s);
    CHECK(fp.delta == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("half shear at time zero") {
  auto cf = lf::AlphaCF::from_double(0.5);
  auto norm = lf::NormDescriptor::euclidean();
  CHECK(lf::flow_delta_at(cf, norm, delta2(), 0.0) ==
        doctest::Approx(0.9306048591020996).epsilon(1e-12));
}

TEST_CASE("badly approximable trajectory stays off the cusp") {
  auto golden = lf::AlphaCF::from_bits(lf::hex_to_bits(kGoldenHex));
  auto norm = lf::NormDescriptor::euclidean();
  std::vector<double> grid;
  for (double s = 0.0; s <= 20.0 + 1e-12; s += 0.05) grid.push_back(s);
  auto traj = lf::trajectory_delta(golden, norm, delta2(), grid);
  double low = 1e9;
  for (const auto& fp : traj) low = std::min(low, fp.delta);
  CHECK(low == doctest::Approx(0.813665573785329).epsilon(1e-9));
  for (double s = 20.0; s <= 40.0; s += 0.05) {
    CHECK(lf::flow_delta_at(golden, norm, delta2(), s) > 0.8);
  }
}

TEST_CASE("parallel and serial trajectories are identical") {
  auto golden = lf::AlphaCF::from_bits(lf::hex_to_bits(kGoldenHex));
  auto norm = lf::NormDescriptor::euclidean();
  std::vector<double> grid;
  for (double s = 0.0; s <= 15.0 + 1e-12; s += 0.01) grid.push_back(s);
  auto par = lf::trajectory_delta(golden, norm, delta2(), grid);
  auto ser = lf::trajectory_delta_serial(golden, norm, delta2(), grid);
  REQUIRE(par.size() == ser.size());
  for (size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].delta == ser[i].delta);
    CHECK(par[i].s == ser[i].s);
  }
}

TEST_CASE("log delta is 2-Lipschitz in flow time") {
  std::uint64_t state = 99ULL;
  auto norm = lf::NormDescriptor::euclidean();
  for (int trial = 0; trial < 10000; ++trial) {
    lf::Mat2 basis = random_unit_covolume_basis(state);
    double s = 5.0 * uniform01(state);
    double h = 0.2 * uniform01(state) - 0.1;
    double d0 = dense_delta2(apply_flow2(s, basis));
    double d1 = dense_delta2(apply_flow2(s + h, basis));
    CHECK(std::abs(std::log(d1) - std::log(d0)) <= 2.0 * std::abs(h) + 1e-9);
  }
}

TEST_CASE("shear perturbation inequality in both directions") {
  std::uint64_t state = 123ULL;
  for (int trial = 0; trial < 10000; ++trial) {
    lf::Mat2 basis = random_unit_covolume_basis(state);
    double y = 2.0 * uniform01(state) - 1.0;
    double s = 5.0 * uniform01(state);
    double factor = 1.0 + std::abs(y) * std::exp(-2.0 * s);
    double plain = dense_delta2(apply_flow2(s, basis));
    double sheared = dense_delta2(apply_flow2(s, apply_lower_shear(y, basis)));
    CHECK(sheared <= factor * plain + 1e-9);
    CHECK(plain <= factor * sheared + 1e-9);
  }
}

TEST_CASE("oversized rate empties the hit list") {
  auto golden = lf::AlphaCF::from_bits(lf::hex_to_bits(kGoldenHex));
  auto norm = lf::NormDescriptor::euclidean();
  auto hits = lf::dirichlet_hits(golden, lf::PsiSpec::scaled(1.2), norm, delta2(), 0.0, 20.0);
  CHECK(hits.empty());
  auto at_one = lf::dirichlet_hits(golden, lf::PsiSpec::scaled(1.0), norm, delta2(), 0.0, 20.0);
  CHECK(at_one.empty());
}

TEST_CASE("rational shear hits finitely many times") {
  auto cf = lf::AlphaCF::from_fraction(2, 5);
  auto norm = lf::NormDescriptor::euclidean();
  auto psi = lf::PsiSpec::scaled(0.5);
  double s_exit = std::log(std::sqrt(delta2()) * 5.0 / std::sqrt(0.5));
  for (double horizon : {20.0, 40.0}) {
    auto hits = lf::dirichlet_hits(cf, psi, norm, delta2(), 0.0, horizon);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].s_lo == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-9));
    CHECK(hits[0].s_hi == doctest::Approx(s_exit).epsilon(1e-6));
    CHECK(hits[0].delta_max >= std::sqrt(0.5));
  }
}

TEST_CASE("badly approximable shear keeps hitting") {
  auto norm = lf::NormDescriptor::euclidean();
  auto r2 = lf::AlphaCF::from_bits(lf::hex_to_bits(kSqrt2m1Hex));
  auto hits = lf::dirichlet_hits(r2, lf::PsiSpec::scaled(0.5), norm, delta2(), 0.0, 20.0);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].s_lo == doctest::Approx(0.346573590280).epsilon(1e-6));
  CHECK(hits[0].s_hi == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(hits[0].delta_max == doctest::Approx(0.932913257206).epsilon(1e-6));

  auto golden = lf::AlphaCF::from_bits(lf::hex_to_bits(kGoldenHex));
  auto gh = lf::dirichlet_hits(golden, lf::PsiSpec::scaled(0.8), norm, delta2(), 0.0, 20.0);
  REQUIRE(gh.size() == 41);
  CHECK(gh.front().s_lo == doctest::Approx(0.111571775657).epsilon(1e-6));
  CHECK(gh.front().s_hi == doctest::Approx(0.163167591822).epsilon(1e-6));
  CHECK(gh.back().s_hi == doctest::Approx(20.0).epsilon(1e-12));
  for (const auto& h : gh) {
    CHECK(h.s_lo <= h.s_hi);
    CHECK(h.delta_max >= std::sqrt(0.8) - 1e-9);
  }
}

TEST_CASE("direct solvability spot checks") {
  auto norm = lf::NormDescriptor::euclidean();
  auto psi1 = lf::PsiSpec::scaled(1.0);
  CHECK(lf::direct_check(0.5, 10.0, psi1, norm, delta2()));
  CHECK(lf::direct_check(1.0 / 3.0, 2.0, psi1, norm, delta2()));
  auto big = lf::PsiSpec::scaled(1.2);
  double golden_val = (std::sqrt(5.0) - 1.0) / 2.0;
  for (double t : {5.0, 10.0, 100.0, 1000.0}) {
    CHECK(lf::direct_check(golden_val, t, big, norm, delta2()));
  }
}

TEST_CASE("direct check agrees with the flowed lattice") {
  std::uint64_t state = 31337ULL;
  auto norm = lf::NormDescriptor::euclidean();
  std::vector<lf::PsiSpec> psis = {lf::PsiSpec::scaled(0.6), lf::PsiSpec::scaled(0.9),
                                   lf::PsiSpec::power_gap(1.0)};
  for (const auto& psi : psis) {
    auto rate = lf::dani_transform(psi);
    int disagreements = 0;
    for (int trial = 0; trial < 150; ++trial) {
      double alpha = uniform01(state);
      if (alpha <= 1e-6 || alpha >= 1.0 - 1e-6) continue;
      double t = psi.t_start * std::pow(50.0, uniform01(state));
      double s = 0.5 * std::log(t / lf::psi_eval(psi, t));
      auto cf = lf::AlphaCF::from_double(alpha);
      double dv = lf::flow_delta_at(cf, norm, delta2(), s);
      double rv = rate.eval(s);
      if (std::abs(dv - rv) < 1e-9) continue;
      bool solvable = lf::direct_check(alpha, t, psi, norm, delta2());
      if (solvable != (dv < rv)) ++disagreements;
    }
    CHECK(disagreements == 0);
  }
}

TEST_CASE("direct check works for non-euclidean planar norms") {
  std::uint64_t state = 404ULL;
  auto psi = lf::PsiSpec::scaled(0.7);
  auto rate = lf::dani_transform(psi);
  std::vector<lf::NormDescriptor> norms = {lf::NormDescriptor::sup(),
                                           lf::NormDescriptor::lp(1.0),
                                           lf::NormDescriptor::lp(4.0)};
  std::vector<double> crits = {1.0, 0.5, 0.0};
  crits[2] = lf::critical_determinant(norms[2]).value;
  for (size_t ni = 0; ni < norms.size(); ++ni) {
    int disagreements = 0;
    for (int trial = 0; trial < 60; ++trial) {
      double alpha = uniform01(state);
      if (alpha <= 1e-6 || alpha >= 1.0 - 1e-6) continue;
      double t = std::pow(60.0, uniform01(state)) + 1.0;
      double s = 0.5 * std::log(t / lf::psi_eval(psi, t));
      auto cf = lf::AlphaCF::from_double(alpha);
      double dv = lf::flow_delta_at(cf, norms[ni], crits[ni], s);
      double rv = rate.eval(s);
      if (std::abs(dv - rv) < 1e-9) continue;
      bool solvable = lf::direct_check(alpha, t, psi, norms[ni], crits[ni]);
      if (solvable != (dv < rv)) ++disagreements;
    }
    CHECK(disagreements == 0);
  }
}

TEST_CASE("invalid flow requests") {
  auto cf = lf::AlphaCF::from_double(0.5);
  auto norm = lf::NormDescriptor::euclidean();
  std::vector<double> bad_grid = {1.0, 0.5};
  CHECK_THROWS_AS(lf::trajectory_delta(cf, norm, delta2(), bad_grid), std::invalid_argument);
  auto psi = lf::PsiSpec::scaled(0.5);
  auto sup3 = lf::NormDescriptor::sup(3);
  CHECK_THROWS_AS(lf::direct_check(0.5, 10.0, psi, sup3, 1.0), std::invalid_argument);
  auto psi21 = lf::PsiSpec::scaled(0.5, 2, 1);
  CHECK_THROWS_AS(lf::direct_check(0.5, 10.0, psi21, norm, delta2()), std::invalid_argument);
  CHECK_THROWS_AS(lf::dirichlet_hits(cf, psi, norm, delta2(), 0.0, 10.0, -0.5),
                  std::invalid_argument);
}

}  // TEST_SUITE
