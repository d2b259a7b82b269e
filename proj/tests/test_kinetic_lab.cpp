#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "nonclassical/kinetic_lab.hpp"
#include "nonclassical/riemann.hpp"

using namespace nonclassical;

namespace {

// Plateaus of `len` cells joined by linear ramps of `ramp` cells.
std::vector<double> staircase(const std::vector<double>& levels, int len, int ramp) {
  std::vector<double> out;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    for (int i = 0; i < len; ++i) out.push_back(levels[k]);
    if (k + 1 < levels.size()) {
      for (int i = 1; i <= ramp; ++i) out.push_back(levels[k] + (levels[k + 1] - levels[k]) * i / (ramp + 1));
    }
  }
  return out;
}

KineticTable rows(const std::vector<double>& u, double slope) {
  KineticTable t;
  t.u_minus = u;
  for (double x : u) t.u_plus.push_back(slope * x);
  t.slope_at_zero = slope;
  return t;
}

SchemeConfig riemann_scheme(double alpha, double h) {
  SchemeConfig cfg;
  cfg.order = 3;
  cfg.beta = 1.0;
  cfg.alpha = alpha;
  cfg.h = h;
  cfg.domain_lo = -1.0;
  cfg.domain_hi = 3.0;
  cfg.boundary = Boundary::FixedStates;
  return cfg;
}

}  // namespace

TEST_CASE("extraction from synthetic profiles") {
  const auto flux = FluxModel::cubic();
  auto pair = extract_pair(staircase({1.0, -0.75, -0.5}, 60, 10), flux);
  REQUIRE(pair.has_value());
  CHECK(pair->u_minus == 1.0);
  CHECK(pair->u_plus == -0.75);
  CHECK(pair->noise == 0.0);
  CHECK(pair->confidence == doctest::Approx(1.0));

  std::string why;
  CHECK_FALSE(extract_pair(staircase({1.0, 0.5}, 60, 10), flux, {}, &why).has_value());
  CHECK(why.find("Lax") != std::string::npos);

  std::vector<double> wavy;
  for (int i = 0; i < 200; ++i) wavy.push_back(std::sin(0.3 * i));
  CHECK_FALSE(extract_pair(wavy, flux, {}, &why).has_value());
  CHECK(why.find("flat window") != std::string::npos);

  // Mirror image: increasing nonclassical jump.
  ExtractOptions up;
  up.direction = -1;
  pair = extract_pair(staircase({-1.0, 0.75, 0.5}, 60, 10), flux, up);
  REQUIRE(pair.has_value());
  CHECK(pair->u_minus == -1.0);
  CHECK(pair->u_plus == 0.75);
}

TEST_CASE("extraction recovers an exact Riemann pattern") {
  const auto flux = FluxModel::cubic();
  const auto ent = EntropyPair::quadratic(flux);
  for (double c : {0.6, 0.75, 0.9}) {
    const auto kin = KineticFunction::linear(ent, c);
    for (double ul : {0.8, 1.0, 1.6}) {
      const double ur = midpoint_far_state(flux, kin, ul);
      const auto pattern = solve_riemann(flux, ent, kin, ul, ur);
      REQUIRE(pattern.waves.size() == 2);
      std::vector<double> profile;
      const double t = 1.0;
      const double h = 1.0 / 400.0;
      for (int j = -200; j < 3000; ++j) profile.push_back(evaluate(flux, pattern, j * h / t));
      const auto pair = extract_pair(profile, flux);
      REQUIRE(pair.has_value());
      CHECK(pair->u_minus == ul);
      CHECK(pair->u_plus == doctest::Approx(kin(ul)).epsilon(1e-14));
    }
  }
}

TEST_CASE("table comparison") {
  const auto grid = std::vector<double>{0.2, 0.5, 1.0, 2.0};
  const auto natural = rows(grid, -0.5);
  const auto zero = rows(grid, -1.0);
  auto self = compare_tables(natural, natural);
  CHECK(self.rows == 4);
  CHECK(self.max_abs == 0.0);
  CHECK(self.max_rel == 0.0);
  CHECK(self.slope_at_zero_deviation == 0.0);
  const auto cmp = compare_tables(natural, zero);
  CHECK(cmp.max_rel == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cmp.mean_rel == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cmp.max_abs == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cmp.slope_at_zero_deviation == doctest::Approx(0.5));
  // Interpolation onto a finer grid of a linear table is exact.
  const auto fine = rows({0.3, 0.7, 1.5}, -0.5);
  CHECK(compare_tables(fine, natural).max_abs <= 1e-15);
  CHECK_THROWS_AS(compare_tables(rows({5.0, 6.0}, -0.5), natural), ConfigError);
  CHECK(format_comparison(cmp) == format_comparison(compare_tables(natural, zero)));
  CHECK(format_comparison(cmp).find("max_rel=0.5") != std::string::npos);
}

TEST_CASE("scheme with positive dispersion produces a nonclassical plateau") {
  const auto flux = FluxModel::cubic();
  auto cfg = riemann_scheme(2.0, 1.0 / 200.0);
  const auto run = integrate(cfg, riemann_grid(cfg, 1.0, -0.9), 1.5, {0, 0.0});
  const auto pair = extract_pair(run.state.cells, flux);
  REQUIRE(pair.has_value());
  MESSAGE("alpha=2 plateau " << pair->u_plus << " noise " << pair->noise);
  CHECK(pair->u_minus == doctest::Approx(1.0).epsilon(1e-3));
  // Traveling waves at alpha_tw = 1/sqrt(2): phi = -1 + 1/3.
  CHECK(pair->u_plus == doctest::Approx(-2.0 / 3.0).epsilon(0.01));
  CHECK(pair->noise <= 1e-3);
}

TEST_CASE("scheme with negative dispersion stays classical") {
  const auto flux = FluxModel::cubic();
  auto cfg = riemann_scheme(-2.0, 1.0 / 200.0);
  const auto run = integrate(cfg, riemann_grid(cfg, 1.0, -0.9), 1.5, {0, 0.0});
  std::string why;
  // Lax shock into the sonic state followed by a rarefaction: no second plateau.
  CHECK_FALSE(extract_pair(run.state.cells, flux, {}, &why).has_value());
  CHECK(why.find("flat window") != std::string::npos);
}

namespace {

KineticFunction tw_estimate(const FluxModel& flux, double alpha_tw) {
  std::vector<double> grid;
  for (int k = 1; k <= 30; ++k) grid.push_back(0.1 * k);
  const auto t = kinetic_table(TwModel(flux, alpha_tw, 0.0), grid);
  return KineticFunction::tabulated(EntropyPair::quadratic(flux), t.u_minus, t.u_plus, "tw");
}

}  // namespace

TEST_CASE("numerical kinetic function tracks the traveling-wave table") {
  const auto flux = FluxModel::cubic();
  SchemeConfig cfg;
  cfg.order = 3;
  cfg.h = 0.01;
  cfg.beta = 0.5;
  cfg.alpha = 1.0;
  CHECK(matched_tw_alpha(cfg) == 0.5);
  const std::vector<double> grid{0.75, 1.0, 1.5, 2.0};
  const auto tw = kinetic_table(TwModel(flux, 0.5, 0.0), grid);
  const auto fd = numerical_kinetic_function(cfg, grid, KineticSweepOptions(tw_estimate(flux, 0.5)));
  REQUIRE(fd.table.u_minus.size() == 4);
  CHECK(fd.dropped.empty());
  CHECK(check_kinetic_table(cfg.pair, fd.table).empty());
  for (std::size_t i = 0; i < 4; ++i) {
    // Between the traveling-wave value and the tangent state.
    CHECK(fd.table.u_plus[i] < -0.5 * grid[i]);
    CHECK(fd.table.u_plus[i] >= tw.u_plus[i] - 1e-3);
    CHECK(fd.pairs[i].noise < 5e-3);
  }
  const auto cmp = compare_tables(fd.table, tw);
  MESSAGE(format_comparison(cmp));
  CHECK(cmp.max_rel < 0.15);

  const auto file = to_table_file(flux, fd);
  CHECK(file.u_minus.size() == 4);
  CHECK(parse_kinetic_table(format_kinetic_table(file)) == file);

  cfg.alpha = -1.0;
  CHECK_THROWS_AS(matched_tw_alpha(cfg), ConfigError);
  cfg.alpha = 1.0;
  CHECK_THROWS_AS(numerical_kinetic_function(cfg, {1.0, 0.0, 2.0}, KineticSweepOptions(tw_estimate(flux, 0.5))),
                  ConfigError);
}

TEST_CASE("different dispersion selects different plateaus") {
  const auto flux = FluxModel::cubic();
  std::vector<double> plateau;
  double noise = 0.0;
  for (double alpha : {0.5, 2.0}) {
    auto cfg = riemann_scheme(alpha, 0.01);
    cfg.domain_lo = -2.0;
    cfg.domain_hi = 12.0;
    const auto run = integrate(cfg, riemann_grid(cfg, 2.0, -1.9), 0.8, {0, 0.0});
    const auto pair = extract_pair(run.state.cells, flux);
    REQUIRE(pair.has_value());
    plateau.push_back(pair->u_plus);
    noise = std::max(noise, pair->noise);
  }
  MESSAGE("plateaus " << plateau[0] << " " << plateau[1] << " noise " << noise);
  CHECK(std::abs(plateau[0] - plateau[1]) > 10.0 * noise);
  CHECK(plateau[0] > plateau[1]);
}
