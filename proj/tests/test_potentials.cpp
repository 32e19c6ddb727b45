#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "bose/errors.hpp"
#include "bose/potential.hpp"

using namespace bose;

namespace {

// Lennard-Jones-like repulsive table with a capped core, used as the
// tail-cut exercise. Piecewise linear by construction.
RadialPotential lj_table() {
  std::vector<double> r, v;
  for (int i = 0; i <= 220; ++i) {
    const double x = 0.7 + 2.3 * i / 220.0;
    const double lj = 4.0 * (std::pow(x, -12.0) - std::pow(x, -6.0)) + 1.0;
    r.push_back(x);
    v.push_back(std::min(500.0, std::max(lj, 0.0)));
  }
  return RadialPotential::tabulated(r, v);
}

// independent dense-Riemann route for the r^2 moment of a tabulated table
double brute_tail(const RadialPotential& p, double s, double r_end) {
  const int n = 4'000'000;
  double acc = 0.0;
  const double dr = (r_end - s) / n;
  for (int i = 0; i < n; ++i) {
    const double r = s + (i + 0.5) * dr;
    acc += r * r * p(r) * dr;
  }
  return acc;
}

}  // namespace

TEST_CASE("eval basics") {
  const auto hc = RadialPotential::hard_core(1.0);
  CHECK(hc(0.5) == std::numeric_limits<double>::infinity());
  CHECK(hc(2.0) == 0.0);
  CHECK(hc(1.0) == std::numeric_limits<double>::infinity());  // theta(0) = 1

  // height 6 phi / a^3 with a = 1, phi = 10
  const auto st = RadialPotential::step(60.0, 1.0);
  CHECK(st(0.5) == 60.0);
  CHECK(st(1.0) == 60.0);
  CHECK(st(1.5) == 0.0);

  CHECK_THROWS_AS(hc(-0.1), domain_error);

  const auto well = RadialPotential::attractive_well(1.0, 2.0);
  CHECK(well(1.0) == doctest::Approx(-0.25));
  CHECK(well(3.0) == 0.0);
}

TEST_CASE("tabulated interpolation and validation") {
  const auto t = RadialPotential::tabulated({0.0, 1.0, 2.0}, {4.0, 2.0, 0.0});
  CHECK(t(0.5) == doctest::Approx(3.0));
  CHECK(t(1.5) == doctest::Approx(1.0));
  CHECK(t(3.0) == 0.0);
  CHECK(t.range() == 2.0);
  CHECK_THROWS_AS(RadialPotential::tabulated({0.0, 1.0, 0.5}, {1, 1, 1}),
                  domain_error);
  CHECK_THROWS_AS(RadialPotential::tabulated({0.0, 1.0}, {1.0, -1.0}),
                  domain_error);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(RadialPotential::tabulated({0.0, 1.0}, {1.0, nan}),
                  domain_error);
}

TEST_CASE("cumulative tail") {
  const auto st = RadialPotential::step(60.0, 1.0);
  CHECK(cumulative_tail(st, 0.0) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(cumulative_tail(st, 1.0) == 0.0);
  CHECK(cumulative_tail(st, 0.5) == doctest::Approx(17.5).epsilon(1e-12));
  const auto hc = RadialPotential::hard_core(1.0);
  CHECK(cumulative_tail(hc, 0.5) == std::numeric_limits<double>::infinity());
  CHECK(cumulative_tail(hc, 2.0) == 0.0);
  CHECK_THROWS_AS(cumulative_tail(st, -1.0), domain_error);
}

TEST_CASE("hard core truncates to the explicit step") {
  const auto t = truncate(RadialPotential::hard_core(1.0), 10.0);
  CHECK(t.mode() == TruncatedPotential::Mode::explicit_step);
  CHECK(t(0.5) == doctest::Approx(60.0));
  CHECK(t(1.5) == 0.0);
  CHECK(t.budget() == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(t.epsilon() == doctest::Approx(std::sqrt(0.1)));
}

TEST_CASE("under-budget potentials pass through unchanged") {
  const auto st = RadialPotential::step(6.0, 1.0);  // integral r^2 v = 2 < 2 phi
  const auto t = truncate(st, 5.0);
  CHECK(t.mode() == TruncatedPotential::Mode::unchanged);
  for (double r : {0.2, 0.7, 1.3}) CHECK(t(r) == st(r));
}

TEST_CASE("tail construction saturates the budget on a tabulated core") {
  const auto p = lj_table();
  const double total = cumulative_tail(p, 0.0);
  REQUIRE(total > 10.0);  // phi = 5 must actually fire the cut
  const auto t = truncate(p, 5.0);
  CHECK(t.mode() == TruncatedPotential::Mode::tail_cut);
  const double s = t.cut_radius_s();
  CHECK(s > 0.7);
  CHECK(s < 3.0);
  // independent oracle: dense Riemann sum of the table's r^2 moment
  CHECK(brute_tail(p, s, 3.0) == doctest::Approx(10.0).epsilon(1e-8));
  CHECK(std::fabs(t.budget() - 10.0) <= 1e-8 * 5.0);
}

TEST_CASE("truncation never increases the potential") {
  const auto p = lj_table();
  const auto t = truncate(p, 5.0);
  for (int i = 0; i <= 500; ++i) {
    const double r = 3.0 * i / 500.0;
    CHECK(t(r) <= p(r) + 1e-12);
    CHECK(t(r) >= 0.0);
  }
  // hard core: compared against +infinity
  const auto th = truncate(RadialPotential::hard_core(1.0), 10.0);
  for (int i = 0; i <= 100; ++i) {
    const double r = 2.0 * i / 100.0;
    const double vh = r <= 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
    CHECK(th(r) <= vh);
  }
}

TEST_CASE("cut radius is non-increasing in phi") {
  const auto p = lj_table();
  double prev = std::numeric_limits<double>::infinity();
  for (double phi : {1.0, 2.0, 5.0, 8.0}) {
    const auto t = truncate(p, phi);
    REQUIRE(t.mode() == TruncatedPotential::Mode::tail_cut);
    CHECK(t.cut_radius_s() <= prev + 1e-12);
    prev = t.cut_radius_s();
  }
}

TEST_CASE("truncate domain errors") {
  CHECK_THROWS_AS(truncate(RadialPotential::hard_core(1.0), 0.0), domain_error);
  CHECK_THROWS_AS(truncate(RadialPotential::hard_core(1.0), -3.0), domain_error);
  CHECK_THROWS_AS(truncate(RadialPotential::attractive_well(0.5, 1.0), 5.0),
                  domain_error);
}

TEST_CASE("potential JSON spec round-trips") {
  const auto kinds = std::vector<RadialPotential>{
      RadialPotential::hard_core(0.8),
      RadialPotential::step(60.0, 1.0),
      lj_table(),
      RadialPotential::attractive_well(0.7853981633974483, 1.0),
  };
  for (const auto& p : kinds) {
    const auto q = RadialPotential::from_json(p.to_json());
    CHECK(q.kind() == p.kind());
    CHECK(q.range() == doctest::Approx(p.range()));
    for (double r : {0.1, 0.75, 1.4, 2.9})
      if (!(p.has_hard_core() && r <= p.core_radius()))
        CHECK(q(r) == doctest::Approx(p(r)));
  }
  nlohmann::json bad = {{"kind", "mystery"}, {"R0", 1.0}};
  CHECK_THROWS_AS(RadialPotential::from_json(bad), domain_error);
}
