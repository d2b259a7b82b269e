#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "nonclassical/oleinik.hpp"
#include "nonclassical/riemann.hpp"

using namespace nonclassical;

namespace {

struct Setup {
  FluxModel flux = FluxModel::cubic();
  EntropyPair pair = EntropyPair::quadratic(flux);
};

void check_wave(const Wave& w, WaveKind kind, double um, double up, double lo, double hi) {
  CHECK(w.kind == kind);
  CHECK(w.u_minus == doctest::Approx(um).epsilon(1e-14));
  CHECK(w.u_plus == doctest::Approx(up).epsilon(1e-14));
  CHECK(w.speed_lo == doctest::Approx(lo).epsilon(1e-13));
  CHECK(w.speed_hi == doctest::Approx(hi).epsilon(1e-13));
}

std::vector<double> breakpoints(const WavePattern& p) {
  std::vector<double> xs;
  for (const Wave& w : p.waves) {
    xs.push_back(w.speed_lo);
    xs.push_back(w.speed_hi);
  }
  return xs;
}

// L1 distance of two self-similar solutions over xi in [a, b].
double l1_distance(const FluxModel& flux, const WavePattern& p, const WavePattern& q, double a,
                   double b) {
  std::vector<double> xs{a, b};
  for (double x : breakpoints(p)) xs.push_back(std::clamp(x, a, b));
  for (double x : breakpoints(q)) xs.push_back(std::clamp(x, a, b));
  std::sort(xs.begin(), xs.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (xs[i + 1] <= xs[i]) continue;
    auto diff = [&](double xi) { return std::abs(evaluate(flux, p, xi) - evaluate(flux, q, xi)); };
    total += boost::math::quadrature::gauss<double, 10>::integrate(diff, xs[i], xs[i + 1]);
  }
  return total;
}

}  // namespace

TEST_CASE("Riemann examples for the linear kinetic function c = 0.75") {
  Setup s;
  const auto kin = KineticFunction::linear(s.pair, 0.75);

  auto p = solve_riemann(s.flux, s.pair, kin, 1.0, -0.5);
  REQUIRE(p.waves.size() == 2);
  check_wave(p.waves[0], WaveKind::NonclassicalShock, 1.0, -0.75, 0.8125, 0.8125);
  check_wave(p.waves[1], WaveKind::ClassicalShock, -0.75, -0.5, 1.1875, 1.1875);
  CHECK(check_pattern(s.flux, s.pair, kin, p).empty());
  CHECK(evaluate(s.flux, p, 1.0) == -0.75);
  CHECK(evaluate(s.flux, p, -5.0) == 1.0);
  CHECK(evaluate(s.flux, p, 5.0) == -0.5);
  CHECK(evaluate(s.flux, p, p.waves[0].speed_lo) == 1.0);

  p = solve_riemann(s.flux, s.pair, kin, 1.0, 2.0);
  REQUIRE(p.waves.size() == 1);
  check_wave(p.waves[0], WaveKind::Rarefaction, 1.0, 2.0, 3.0, 12.0);

  p = solve_riemann(s.flux, s.pair, kin, 1.0, 0.5);
  REQUIRE(p.waves.size() == 1);
  check_wave(p.waves[0], WaveKind::ClassicalShock, 1.0, 0.5, 1.75, 1.75);

  p = solve_riemann(s.flux, s.pair, kin, 1.0, -2.0);
  REQUIRE(p.waves.size() == 2);
  check_wave(p.waves[0], WaveKind::NonclassicalShock, 1.0, -0.75, 0.8125, 0.8125);
  check_wave(p.waves[1], WaveKind::Rarefaction, -0.75, -2.0, 1.6875, 12.0);
  CHECK(check_pattern(s.flux, s.pair, kin, p).empty());

  // Mirror image.
  p = solve_riemann(s.flux, s.pair, kin, -1.0, 0.5);
  REQUIRE(p.waves.size() == 2);
  check_wave(p.waves[0], WaveKind::NonclassicalShock, -1.0, 0.75, 0.8125, 0.8125);
  check_wave(p.waves[1], WaveKind::ClassicalShock, 0.75, 0.5, 1.1875, 1.1875);

  // Exactly on the kinetic state: a single nonclassical shock.
  p = solve_riemann(s.flux, s.pair, kin, 1.0, -0.75);
  REQUIRE(p.waves.size() == 1);
  CHECK(p.waves[0].kind == WaveKind::NonclassicalShock);

  // Tie at the companion state: a single classical shock.
  p = solve_riemann(s.flux, s.pair, kin, 1.0, -0.25);
  REQUIRE(p.waves.size() == 1);
  CHECK(p.waves[0].kind == WaveKind::ClassicalShock);
  CHECK(p.waves[0].speed_lo == doctest::Approx(0.8125).epsilon(1e-14));

  CHECK(solve_riemann(s.flux, s.pair, kin, 0.3, 0.3).waves.empty());
}

TEST_CASE("Riemann solution at the inflection point is a single rarefaction") {
  Setup s;
  const auto kin = KineticFunction::linear(s.pair, 0.75);
  for (double ur : {-2.0, -0.1, 0.4, 3.0}) {
    const auto p = solve_riemann(s.flux, s.pair, kin, 0.0, ur);
    REQUIRE(p.waves.size() == 1);
    CHECK(p.waves[0].kind == WaveKind::Rarefaction);
    CHECK(check_pattern(s.flux, s.pair, kin, p).empty());
  }
}

TEST_CASE("classical kinetic function reproduces the classical solution") {
  Setup s;
  const auto kin = classical_kinetic(s.flux);
  const auto p = solve_riemann(s.flux, s.pair, kin, 1.0, -1.0);
  REQUIRE(p.waves.size() == 2);
  check_wave(p.waves[0], WaveKind::ClassicalShock, 1.0, -0.5, 0.75, 0.75);
  check_wave(p.waves[1], WaveKind::Rarefaction, -0.5, -1.0, 0.75, 3.0);
  CHECK(check_pattern(s.flux, s.pair, kin, p).empty());
  CHECK(evaluate(s.flux, p, s.flux.df(-0.8)) == doctest::Approx(-0.8).epsilon(1e-12));
  CHECK(evaluate(s.flux, p, 1.92) == doctest::Approx(-0.8).epsilon(1e-12));
}

TEST_CASE("shock classification") {
  const auto f = FluxModel::cubic();
  CHECK(classify_shock(f, 1.0, -0.75) == ShockClass::SlowUndercompressive);
  CHECK(classify_shock(f, 1.0, 0.5) == ShockClass::Lax);
  CHECK(classify_shock(f, 0.5, 1.0) == ShockClass::Inadmissible);
  CHECK_THROWS_AS(classify_shock(f, 0.5, 0.5), DegenerateShock);
}

TEST_CASE("randomized soundness: 10^4 Riemann problems") {
  Setup s;
  std::vector<KineticFunction> family;
  for (int k = 0; k <= 8; ++k) family.push_back(KineticFunction::linear(s.pair, 0.55 + 0.05 * k));
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> state(-3.0, 3.0);
  std::uniform_int_distribution<int> pick(0, 8);
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto& kin = family[static_cast<std::size_t>(pick(rng))];
    const double ul = state(rng);
    const double ur = state(rng);
    const auto p = solve_riemann(s.flux, s.pair, kin, ul, ur);
    const auto problems = check_pattern(s.flux, s.pair, kin, p);
    if (!problems.empty()) {
      ++failures;
      if (failures < 5) MESSAGE(describe(p) << problems.front());
    }
    double total = 0.0;
    bool any_shock = false;
    for (const Wave& w : p.waves) {
      if (!w.is_shock()) continue;
      any_shock = true;
      total += entropy_dissipation(s.pair, w.u_minus, w.u_plus);
      if (w.kind == WaveKind::NonclassicalShock && w.u_plus != kin(w.u_minus)) ++failures;
    }
    if (total > 0.0 || (any_shock && !(total < 0.0))) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("classical limit agrees with the convex-hull oracle") {
  Setup s;
  const auto kin = classical_kinetic(s.flux);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> state(-3.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double ul = state(rng);
    const double ur = state(rng);
    const auto p = solve_riemann(s.flux, s.pair, kin, ul, ur);
    REQUIRE(check_pattern(s.flux, s.pair, kin, p).empty());
    const auto shocks = breakpoints(p);
    for (int k = 0; k <= 200; ++k) {
      const double xi = -1.0 + 30.0 * k / 200.0;
      bool near_shock = false;
      for (const Wave& w : p.waves) {
        if (w.is_shock() && std::abs(xi - w.speed_lo) < 1e-6) near_shock = true;
      }
      if (near_shock) continue;
      worst = std::max(worst, std::abs(evaluate(s.flux, p, xi) - oleinik_solution(s.flux, ul, ur, xi)));
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("continuity across the companion threshold and the intermediate-state jump") {
  Setup s;
  for (double c : {0.6, 0.75, 0.9}) {
    const auto kin = KineticFunction::linear(s.pair, c);
    for (double ul : {-2.0, 0.5, 1.0, 2.5}) {
      const double sharp = companion(s.flux, kin, ul);
      const double eps = 1e-9 * (ul > 0 ? 1.0 : -1.0);
      const auto one = solve_riemann(s.flux, s.pair, kin, ul, sharp + eps);
      const auto two = solve_riemann(s.flux, s.pair, kin, ul, sharp - eps);
      REQUIRE(one.waves.size() == 1);
      REQUIRE(two.waves.size() == 2);
      const double lo = s.flux.df(ul) * -1.0 - 1.0;
      const double hi = 2.0 * s.flux.df(ul) + 1.0;
      CHECK(l1_distance(s.flux, one, two, lo, hi) <= 1e-6);
      const double jump = std::abs(two.waves[0].u_plus - one.waves[0].u_plus);
      CHECK(jump == doctest::Approx(std::abs(kin(ul) - sharp)).epsilon(1e-6));
      CHECK(jump > 0.1 * std::abs(ul));
    }
  }
}

TEST_CASE("pattern listing") {
  Setup s;
  const auto kin = KineticFunction::linear(s.pair, 0.75);
  const std::string text = describe(solve_riemann(s.flux, s.pair, kin, 1.0, -0.5));
  CHECK(text.find("waves=2") != std::string::npos);
  CHECK(text.find("kind=NonclassicalShock u_minus=1 u_plus=-0.75 speed_lo=0.8125") != std::string::npos);
  CHECK(text.find("kind=ClassicalShock u_minus=-0.75 u_plus=-0.5 speed_lo=1.1875") != std::string::npos);
}
