#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nonclassical/fd_schemes.hpp"

using namespace nonclassical;

namespace {

EntropyPair quartic_entropy(const FluxModel& cubic) {
  EntropySpec s;
  s.name = "quartic";
  s.U = [](double u) { return 0.5 * u * u + u * u * u * u / 12.0; };
  s.dU = [](double u) { return u + u * u * u / 3.0; };
  s.d2U = [](double u) { return 1.0 + u * u; };
  s.F = [](double u) { return 0.75 * u * u * u * u + u * u * u * u * u * u / 6.0; };
  return EntropyPair(cubic, s);
}

SchemeConfig periodic(int order, double h, double beta = 0.0, double alpha = 0.0) {
  SchemeConfig cfg;
  cfg.order = order;
  cfg.h = h;
  cfg.beta = beta;
  cfg.alpha = alpha;
  cfg.domain_lo = 0.0;
  cfg.domain_hi = 1.0;
  cfg.boundary = Boundary::Periodic;
  return cfg;
}

double smooth(double x) { return 0.1 + 0.1 * std::sin(2.0 * std::numbers::pi * x); }

}  // namespace

TEST_CASE("two-point entropy-conservative flux") {
  const auto pair = EntropyPair::quadratic(FluxModel::cubic());
  CHECK(ec_flux_2pt(pair, 0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ec_flux_2pt(pair, 1.0, 1.0) == 1.0);
  CHECK(ec_flux_2pt(pair, 0.3, -1.7) == ec_flux_2pt(pair, -1.7, 0.3));
  const double a = 0.4;
  const double b = -1.1;
  CHECK(ec_flux_2pt(pair, a, b) == doctest::Approx((a * a * a + a * a * b + a * b * b + b * b * b) / 4).epsilon(1e-15));
  // (v1 - v0) g* = psi(v1) - psi(v0).
  CHECK((b - a) * ec_flux_2pt(pair, a, b) == doctest::Approx(pair.potential(b) - pair.potential(a)).epsilon(1e-14));

  const auto quartic = quartic_entropy(FluxModel::cubic());
  for (double v : {-1.5, 0.0, 0.8}) {
    CHECK(ec_flux_2pt(quartic, v, v) == doctest::Approx(quartic.g(v)).epsilon(1e-14));
  }
  CHECK((1.3 - 0.2) * ec_flux_2pt(quartic, 0.2, 1.3) ==
        doctest::Approx(quartic.potential(1.3) - quartic.potential(0.2)).epsilon(1e-13));
}

TEST_CASE("high-order fluxes") {
  const auto pair = EntropyPair::quadratic(FluxModel::cubic());
  for (int order : {2, 3, 4}) {
    CHECK(ec_flux_highorder(pair, {0.7, 0.7, 0.7, 0.7}, order) == doctest::Approx(0.343).epsilon(1e-15));
  }
  CHECK(ec_flux_highorder(pair, {0, 1, 1, 0}, 2) == 1.0);
  CHECK(ec_flux_highorder(pair, {0, 1, 1, 0}, 3) == doctest::Approx(11.0 / 9.0).epsilon(1e-15));
  CHECK(ec_flux_highorder(pair, {0, 1, 1, 0}, 4) == doctest::Approx(5.0 / 4.0).epsilon(1e-15));
  CHECK_THROWS_AS(ec_flux_highorder(pair, {0, 1, 1}, 3), ConfigError);
  CHECK_THROWS_AS(ec_flux_highorder(pair, {0, 1, 1, 0}, 5), ConfigError);
  // Potential of a constant stencil is the potential of the state.
  CHECK(ec_potential_highorder(pair, {0.5, 0.5, 0.5, 0.5}, 3) == doctest::Approx(pair.potential(0.5)).epsilon(1e-14));
}

TEST_CASE("configuration checks") {
  auto cfg = periodic(3, 0.01);
  CHECK(cfg.cells() == 100);
  CHECK_NOTHROW(cfg.validate());
  cfg.h = 0.013;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = periodic(5, 0.01);
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = periodic(3, 0.25);
  CHECK_THROWS_AS(cfg.validate(), ConfigError);  // four points cannot hold the seven-point stencil
  cfg = periodic(3, 0.01);
  cfg.cfl = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK(boundary_by_name("fixed") == Boundary::FixedStates);
  CHECK_THROWS_AS(boundary_by_name("open"), ConfigError);
}

TEST_CASE("constant state has zero right-hand side") {
  for (Boundary b : {Boundary::Periodic, Boundary::FixedStates}) {
    auto cfg = periodic(4, 0.02, 1.0, 3.0);
    cfg.boundary = b;
    GridState st{0.0, std::vector<double>(cfg.cells(), -0.4)};
    for (double r : controlled_dissipation_rhs(cfg, st)) CHECK(r == 0.0);
  }
}

TEST_CASE("semi-discrete conservation and entropy identity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> val(-1.5, 1.5);
  const auto cubic = FluxModel::cubic();
  for (const auto& pair : {EntropyPair::quadratic(cubic), quartic_entropy(cubic)}) {
    for (int order : {2, 3, 4}) {
      auto cfg = periodic(order, 0.01);
      cfg.pair = pair;
      GridState st{0.0, {}};
      for (std::size_t j = 0; j < cfg.cells(); ++j) st.cells.push_back(pair.u_of_v(val(rng)));
      double worst = 0.0;
      for (double r : entropy_identity_residual(cfg, st)) worst = std::max(worst, r);
      CHECK(worst <= 1e-13);

      const auto rhs = controlled_dissipation_rhs(cfg, st);
      double mass_rate = 0.0;
      double entropy_rate = 0.0;
      double scale = 0.0;
      for (std::size_t j = 0; j < rhs.size(); ++j) {
        mass_rate += rhs[j] * cfg.h;
        entropy_rate += pair.dU(st.cells[j]) * rhs[j] * cfg.h;
        scale += std::abs(pair.dU(st.cells[j]) * rhs[j]) * cfg.h;
      }
      CHECK(std::abs(mass_rate) <= 1e-12);
      CHECK(std::abs(entropy_rate) <= 1e-14 * scale);

      cfg.beta = 1.0;
      cfg.alpha = 2.0;
      mass_rate = 0.0;
      for (double r : controlled_dissipation_rhs(cfg, st)) mass_rate += r * cfg.h;
      CHECK(std::abs(mass_rate) <= 1e-12);
    }
  }
}

TEST_CASE("entropy drift is time-integration error only") {
  for (int order : {2, 3}) {
    auto cfg = periodic(order, 1.0 / 100.0);
    cfg.cfl = 0.1;
    const auto st = sample_grid(cfg, smooth);
    const double e0 = discrete_entropy(cfg, st);
    const auto run = integrate(cfg, st, 1.0);
    const double drift = std::abs(discrete_entropy(cfg, run.state) - e0);
    CHECK(drift <= 1e-10);
    cfg.cfl = 0.05;
    const auto half = integrate(cfg, st, 1.0);
    const double drift_half = std::abs(discrete_entropy(cfg, half.state) - e0);
    MESSAGE("order " << order << " drift " << drift << " halved " << drift_half);
    CHECK(drift / drift_half == doctest::Approx(16.0).epsilon(0.2));
    CHECK(std::abs(discrete_mass(cfg, half.state) - discrete_mass(cfg, st)) <= 1e-12);
  }
}

TEST_CASE("diffusion decay rate of a single mode") {
  const double h = 1.0 / 256.0;
  auto cfg = periodic(3, h, 1.0, 0.0);
  const double k = 2.0 * std::numbers::pi * 4.0;
  const auto st = sample_grid(cfg, [k](double x) { return 1e-3 * std::sin(k * x); });
  const double t = 0.5;
  const auto run = integrate(cfg, st, t);
  const double rate = -0.5 * std::log(discrete_entropy(cfg, run.state) / discrete_entropy(cfg, st)) / t;
  CHECK(rate == doctest::Approx(h * k * k).epsilon(0.05));
}

TEST_CASE("spatial order of the flux difference") {
  const auto flux = FluxModel::cubic();
  const auto pair = EntropyPair::quadratic(flux);
  const auto two = flux_difference_order(flux, pair, 2, 32, 3);
  const auto three = flux_difference_order(flux, pair, 3, 32, 3);
  const auto four = flux_difference_order(flux, pair, 4, 32, 3);
  REQUIRE(two.eoc.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    MESSAGE("EOC " << two.eoc[i] << " " << three.eoc[i] << " " << four.eoc[i]);
    CHECK(two.eoc[i] == doctest::Approx(2.0).epsilon(0.15));
    // The five-point flux is third order at least.
    CHECK(three.eoc[i] >= 2.7);
    CHECK(four.eoc[i] == doctest::Approx(4.0).epsilon(0.075));
  }
}

TEST_CASE("Lax shock data converge to the classical shock") {
  SchemeConfig cfg;
  cfg.order = 3;
  cfg.h = 1.0 / 200.0;
  cfg.beta = 1.0;
  cfg.alpha = 0.0;
  cfg.domain_lo = -1.0;
  cfg.domain_hi = 3.0;
  cfg.boundary = Boundary::FixedStates;
  const double t = 0.8;
  const auto run = integrate(cfg, riemann_grid(cfg, 1.0, 0.5), t);
  const double xs = 1.75 * t;
  for (std::size_t j = 0; j < cfg.cells(); ++j) {
    const double x = cfg.x(j);
    if (x > xs + 0.1) CHECK(std::abs(run.state.cells[j] - 0.5) <= 1e-3);
    if (x < xs - 0.1 && x > -0.9) CHECK(std::abs(run.state.cells[j] - 1.0) <= 1e-3);
  }
  CHECK(run.dt_hyperbolic == doctest::Approx(cfg.h / 3.0).epsilon(1e-12));
}

TEST_CASE("non-finite values abort with the last finite state") {
  SchemeConfig cfg = periodic(2, 0.02, 0.0, 0.0);
  auto st = sample_grid(cfg, smooth);
  st.cells[3] = 1e200;
  try {
    integrate(cfg, st, 1.0);
    FAIL("expected blow-up");
  } catch (const FdBlowup& e) {
    for (double u : e.last_finite_state().cells) CHECK(std::isfinite(u));
  }
}
