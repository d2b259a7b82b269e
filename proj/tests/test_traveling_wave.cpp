#include <cmath>

#include "doctest.h"
#include "nonclassical/riemann.hpp"
#include "nonclassical/shock_algebra.hpp"
#include "nonclassical/traveling_wave.hpp"

using namespace nonclassical;

namespace {

// Cubic flux, p = 0: the connection is the straight line z = (w - u)(w - u1)/sqrt(2)
// in the phase plane, giving u1 = -u + sqrt(2) alpha / 3 below the threshold
// alpha = 3u / (2 sqrt(2)), and the tangent state above it.
double cubic_p0_kinetic(double u, double alpha) {
  const double a = std::abs(u);
  const double s = u > 0 ? 1.0 : -1.0;
  if (alpha >= 3.0 * a / (2.0 * std::sqrt(2.0))) return -0.5 * u;
  return s * (-a + std::sqrt(2.0) * alpha / 3.0);
}

}  // namespace

TEST_CASE("model parameters are validated") {
  CHECK_THROWS_AS(TwModel(FluxModel::cubic(), 0.0, 0.5), ConfigError);
  CHECK_THROWS_AS(TwModel(FluxModel::cubic(), 1.0, -0.1), ConfigError);
  CHECK_NOTHROW(TwModel(FluxModel::cubic(), 1.0, 0.0));
}

TEST_CASE("equilibria") {
  const TwModel m(FluxModel::cubic(), 1.0, 0.0);
  auto r = equilibria(m, 1.0, 0.8125);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == doctest::Approx(-0.75).epsilon(1e-13));
  CHECK(r[1] == doctest::Approx(-0.25).epsilon(1e-13));
  CHECK(r[2] == 1.0);

  r = equilibria(m, 1.0, 3.0);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(r[1] == 1.0);

  r = equilibria(m, 1.0, 0.75);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(-0.5).epsilon(1e-12));

  CHECK(equilibria(m, 1.0, 0.5).size() == 1);

  for (double lambda : {0.76, 1.3, 2.9, 4.0}) {
    for (double w : equilibria(m, 1.0, lambda)) {
      CHECK(std::abs(w * w * w - 1.0 - lambda * (w - 1.0)) <= 1e-13 * (1.0 + lambda));
    }
  }
  const TwModel q(FluxModel::quintic(), 1.0, 0.0);
  for (double w : equilibria(q, -1.5, 0.5 * (q.flux.df(-1.5) + q.flux.df(tangent(q.flux, -1.5))))) {
    const double lambda = 0.5 * (q.flux.df(-1.5) + q.flux.df(tangent(q.flux, -1.5)));
    CHECK(std::abs(q.flux.f(w) - q.flux.f(-1.5) - lambda * (w + 1.5)) <= 1e-12);
  }
}

TEST_CASE("shoot classification") {
  const FluxModel f = FluxModel::cubic();
  SUBCASE("strong diffusion is captured just above the tangent speed") {
    const TwModel m(f, 10.0, 0.0);
    const auto traj = shoot(m, 1.0, 0.75 + 1e-6);
    CHECK(traj.terminal == TwTerminal::CapturedByMiddle);
  }
  SUBCASE("weak diffusion brackets a connection") {
    const TwModel m(f, 0.1, 0.0);
    CHECK(shoot(m, 1.0, 0.76).terminal == TwTerminal::Escaped);
    CHECK(shoot(m, 1.0, 2.9).terminal == TwTerminal::CapturedByMiddle);
    const auto c = find_connection(m, 1.0);
    CHECK_FALSE(c.classical);
    CHECK(c.trajectory.terminal == TwTerminal::ConvergedToFarSaddle);
    CHECK(classify_shock(f, 1.0, c.u_plus) == ShockClass::SlowUndercompressive);
  }
  SUBCASE("requires three equilibria") {
    const TwModel m(f, 1.0, 0.0);
    CHECK_THROWS_AS(shoot(m, 1.0, 0.7), ConfigError);
    CHECK_THROWS_AS(shoot(m, 1.0, 3.0), ConfigError);
  }
}

TEST_CASE("orbit energy is non-increasing and the ends decay") {
  const FluxModel f = FluxModel::cubic();
  for (double p : {0.0, 0.5, 1.0}) {
    const TwModel m(f, 0.7, p);
    for (double lambda : {0.8, 1.2, 2.5}) {
      const auto traj = shoot(m, 1.0, lambda);
      double prev = orbit_energy(m, 1.0, lambda, traj.samples.front().w, traj.samples.front().dw);
      for (const auto& s : traj.samples) {
        const double e = orbit_energy(m, 1.0, lambda, s.w, s.dw);
        CHECK(e <= prev + 1e-9);
        prev = std::min(prev, e);
      }
      CHECK(std::abs(traj.samples.front().dw) <= 1e-8);
    }
    const auto c = find_connection(m, 1.0);
    REQUIRE(c.trajectory.terminal == TwTerminal::ConvergedToFarSaddle);
    CHECK(std::abs(c.trajectory.samples.back().dw) <= 1e-8);
  }
}

TEST_CASE("lambda classification is monotone on a 64-point scan") {
  const FluxModel f = FluxModel::cubic();
  for (double p : {0.0, 0.5, 1.0}) {
    for (double alpha : {0.2, 1.0}) {
      const TwModel m(f, alpha, p);
      const double u = 1.3;
      const double lt = f.df(tangent(f, u));
      const double lu = f.df(u);
      int flips = 0;
      TwTerminal prev = TwTerminal::Escaped;
      for (int k = 1; k <= 64; ++k) {
        const double lambda = lt + (lu - lt) * k / 65.0;
        const TwTerminal t = shoot(m, u, lambda).terminal;
        CHECK(t != TwTerminal::Budget);
        if (t != TwTerminal::ConvergedToFarSaddle && t != prev) {
          ++flips;
          prev = t;
        }
      }
      CHECK(flips <= 1);
    }
  }
}

TEST_CASE("p = 0 kinetic values match the straight-line connection") {
  const FluxModel f = FluxModel::cubic();
  for (double alpha : {0.05, 0.3, 0.5, 1.0, 1.05}) {
    const TwModel m(f, alpha, 0.0);
    for (double u : {1.0, 1.7, -1.2}) {
      CHECK(kinetic_value(m, u) == doctest::Approx(cubic_p0_kinetic(u, alpha)).epsilon(1e-8));
    }
  }
  // Classical regime returns the tangent state exactly.
  const TwModel strong(f, 3.0, 0.0);
  CHECK(kinetic_value(strong, 1.0) == tangent(f, 1.0));
  CHECK(find_connection(strong, 1.0).classical);
}

TEST_CASE("scaling covariance of the cubic kinetic function") {
  // phi(u; alpha, p) = u phi(1; alpha u^(2p - 1), p) for the cubic flux.
  const FluxModel f = FluxModel::cubic();
  for (double p : {0.2, 0.5, 1.0}) {
    const TwModel m(f, 0.4, p);
    for (double u : {0.3, 2.0}) {
      const TwModel unit(f, 0.4 * std::pow(u, 2.0 * p - 1.0), p);
      CHECK(kinetic_value(m, u) / u == doctest::Approx(kinetic_value(unit, 1.0)).epsilon(1e-7));
    }
  }
}

TEST_CASE("p = 1/2 gives a linear kinetic function with slope in (1/2, 1)") {
  const FluxModel f = FluxModel::cubic();
  double previous = -1.0;
  for (double alpha : {0.2, 1.0, 5.0}) {
    const TwModel m(f, alpha, 0.5);
    std::vector<double> grid;
    for (int k = 0; k < 10; ++k) grid.push_back(0.2 + 1.8 * k / 9.0);
    const auto table = kinetic_table(m, grid);
    double lo = 1e9, hi = -1e9;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double ratio = -table.u_plus[i] / grid[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    CHECK((hi - lo) / hi <= 0.01);
    CHECK(lo > 0.5);
    CHECK(hi < 1.0);
    // Kinetic values increase towards the tangent state as alpha grows.
    CHECK(table.u_plus.back() > previous * grid.back());
    previous = table.u_plus.back() / grid.back();
  }
}

TEST_CASE("slope at zero") {
  const FluxModel f = FluxModel::cubic();
  const std::vector<double> small{0.001, 0.002, 0.004};
  CHECK(kinetic_table(TwModel(f, 1.0, 0.0), small).slope_at_zero == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(std::abs(kinetic_table(TwModel(f, 1.0, 1.0), small).slope_at_zero + 1.0) <= 0.05);
  const double s_half = kinetic_table(TwModel(f, 1.0, 0.5), small).slope_at_zero;
  CHECK(s_half > -1.0);
  CHECK(s_half < -0.5);
}

TEST_CASE("kinetic table rows, invariants and file export") {
  const FluxModel f = FluxModel::cubic();
  const auto pair = EntropyPair::quadratic(f);
  const TwModel m(f, 0.6, 1.0);
  const std::vector<double> grid{-2.0, -1.0, -0.3, 0.3, 1.0, 2.0};
  const auto table = kinetic_table(m, grid);
  CHECK(check_kinetic_table(pair, table).empty());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(table.u_plus[i] == doctest::Approx(-table.u_plus[grid.size() - 1 - i]).epsilon(1e-9));
  }
  const auto file = to_table_file(m, table);
  CHECK(parse_kinetic_table(format_kinetic_table(file)) == file);
  // The exported table drives the Riemann solver.
  const auto kin = KineticFunction::tabulated(pair, file.u_minus, file.u_plus, "tw");
  const auto pattern = solve_riemann(f, pair, kin, 1.0, -1.5);
  CHECK(check_pattern(f, pair, kin, pattern).empty());
  CHECK(pattern.waves.front().u_plus == table.u_plus[4]);

  CHECK_THROWS_AS(kinetic_table(m, {0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(kinetic_table(m, {1.0, 0.5}), ConfigError);
}

TEST_CASE("classical threshold") {
  const FluxModel f = FluxModel::cubic();
  double prev = 0.0;
  for (double u : {0.25, 0.5, 1.0, 2.0}) {
    const double a = classical_threshold(f, 0.0, u);
    CHECK(a == doctest::Approx(3.0 * u / (2.0 * std::sqrt(2.0))).epsilon(1e-4));
    CHECK(a > prev);
    prev = a;
  }
  double prev_ratio = 0.0;
  for (double u : {0.8, 0.4, 0.2, 0.1}) {
    const double ratio = classical_threshold(f, 0.2, u) / u;
    CHECK(ratio > prev_ratio);
    prev_ratio = ratio;
  }
  CHECK_THROWS_AS(classical_threshold(f, 0.5, 1.0), ConfigError);
}

TEST_CASE("traveling-wave dissipation equals the jump dissipation") {
  const FluxModel f = FluxModel::cubic();
  const auto pair = EntropyPair::quadratic(f);
  for (double p : {0.0, 0.5, 1.0}) {
    const TwModel m(f, 0.4, p);
    for (double u : {0.5, 1.0, -1.5}) {
      const auto c = find_connection(m, u);
      REQUIRE(c.trajectory.terminal == TwTerminal::ConvergedToFarSaddle);
      const double d = tw_dissipation(c.trajectory, m, pair);
      const double e = entropy_dissipation(pair, u, c.u_plus);
      CHECK(d < 0.0);
      CHECK(std::abs(d - e) <= 1e-6 * std::abs(e));
      auto shifted = c.trajectory;
      for (auto& s : shifted.samples) s.y += 12.5;
      CHECK(tw_dissipation(shifted, m, pair) == doctest::Approx(d).epsilon(1e-12));
    }
  }
  const TwModel m(f, 0.4, 0.5);
  CHECK_THROWS_AS(tw_dissipation(shoot(m, 1.0, 2.0), m, pair), NumericalError);
}

TEST_CASE("quintic flux connections satisfy the pinching bounds") {
  const FluxModel q = FluxModel::quintic();
  const auto pair = EntropyPair::quadratic(q);
  const TwModel m(q, 0.3, 0.5);
  const auto table = kinetic_table(m, {-1.5, -0.5, 0.5, 1.5});
  CHECK(check_kinetic_table(pair, table).empty());
}
