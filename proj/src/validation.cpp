#include "nonclassical/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <sstream>

#include "nonclassical/errors.hpp"
#include "nonclassical/fd_schemes.hpp"
#include "nonclassical/front_tracking.hpp"
#include "nonclassical/kinetic_lab.hpp"
#include "nonclassical/oleinik.hpp"
#include "nonclassical/riemann.hpp"
#include "nonclassical/shock_algebra.hpp"
#include "nonclassical/traveling_wave.hpp"

namespace nonclassical {

namespace {

class Detail {
 public:
  template <class T>
  Detail& add(const std::string& key, const T& value) {
    if (!first_) out_ << ' ';
    first_ = false;
    out_ << key << '=' << value;
    return *this;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_ = [] {
    std::ostringstream s;
    s.precision(6);
    return s;
  }();
  bool first_ = true;
};

struct Outcome {
  bool ok = false;
  std::string detail;
};

using Body = std::function<Outcome(std::uint64_t)>;

Outcome riemann_soundness(std::uint64_t seed) {
  const auto flux = FluxModel::cubic();
  const auto pair = EntropyPair::quadratic(flux);
  std::vector<KineticFunction> family;
  for (int k = 0; k <= 8; ++k) family.push_back(KineticFunction::linear(pair, 0.55 + 0.05 * k));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> state(-3.0, 3.0);
  std::uniform_int_distribution<std::size_t> pick(0, family.size() - 1);
  int bad = 0;
  double worst_e = -1e300;
  for (int i = 0; i < 10000; ++i) {
    const auto& kin = family[pick(rng)];
    const double ul = state(rng);
    const double ur = state(rng);
    const auto p = solve_riemann(flux, pair, kin, ul, ur);
    bool fail = !check_pattern(flux, pair, kin, p).empty() || p.waves.size() > 2;
    for (const Wave& w : p.waves) {
      if (!w.is_shock()) continue;
      const double e = entropy_dissipation(pair, w.u_minus, w.u_plus);
      worst_e = std::max(worst_e, e);
      if (e > 1e-12) fail = true;
      if (w.kind == WaveKind::NonclassicalShock && w.u_plus != kin(w.u_minus)) fail = true;
    }
    if (fail) ++bad;
  }
  return {bad == 0, Detail().add("problems", 10000).add("failures", bad).add("max_shock_dissipation", worst_e).str()};
}

Outcome classical_limit(std::uint64_t seed) {
  const auto flux = FluxModel::cubic();
  const auto pair = EntropyPair::quadratic(flux);
  const auto kin = classical_kinetic(flux);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> state(-3.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double ul = state(rng);
    const double ur = state(rng);
    const auto p = solve_riemann(flux, pair, kin, ul, ur);
    for (int k = 0; k <= 200; ++k) {
      const double xi = -1.0 + 30.0 * k / 200.0;
      bool near_shock = false;
      for (const Wave& w : p.waves) near_shock = near_shock || (w.is_shock() && std::abs(xi - w.speed_lo) < 1e-6);
      if (near_shock) continue;
      worst = std::max(worst, std::abs(evaluate(flux, p, xi) - oleinik_solution(flux, ul, ur, xi)));
    }
  }
  return {worst <= 1e-9, Detail().add("problems", 1000).add("max_difference", worst).str()};
}

Outcome zero_dissipation_algebra(std::uint64_t) {
  const auto pair = EntropyPair::quadratic(FluxModel::cubic());
  double worst = 0.0;
  double worst_inv = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double u = -3.0 + 6.0 * (k + 0.5) / 100.0;
    const double z = zero_dissipation(pair, u);
    worst = std::max(worst, std::abs(z + u));
    worst_inv = std::max(worst_inv, std::abs(zero_dissipation(pair, z) - u));
  }
  return {worst <= 1e-10 && worst_inv <= 1e-8,
          Detail().add("max_deviation", worst).add("involution_residual", worst_inv).str()};
}

Outcome front_tracking(std::uint64_t seed) {
  const auto flux = FluxModel::cubic();
  const auto pair = EntropyPair::quadratic(flux);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> state(-2.0, 2.0);
  std::uniform_real_distribution<double> gap(0.2, 1.5);
  std::uniform_real_distribution<double> coef(0.55, 0.95);
  double worst_v = -1.0;
  double worst_mass = 0.0;
  long witness = 0;
  int invalid = 0;
  for (int run = 0; run < 1000; ++run) {
    const FrontTracker tracker(pair, KineticFunction::linear(pair, coef(rng)), 0.05);
    const std::vector<double> states{state(rng), state(rng), state(rng), state(rng)};
    const double x1 = gap(rng);
    const auto st = tracker.init_from_steps({0.0, x1, x1 + gap(rng)}, states, -40.0, 60.0);
    const auto res = tracker.run_cauchy(st, 3.0);
    worst_v = std::max(worst_v, res.max_v_increase);
    witness += res.tv_up_v_down;
    for (const auto& row : res.diagnostics) worst_mass = std::max(worst_mass, std::abs(row.mass_residual));
    if (!tracker.check_state(res.state).empty()) ++invalid;
  }
  return {worst_v <= 1e-12 && worst_mass <= 1e-10 && witness > 0 && invalid == 0,
          Detail()
              .add("runs", 1000)
              .add("max_V_increase", worst_v)
              .add("tv_up_v_down_interactions", witness)
              .add("max_mass_residual", worst_mass)
              .add("invalid_states", invalid)
              .str()};
}

Outcome entropy_conservation(std::uint64_t seed) {
  const auto flux = FluxModel::cubic();
  const auto pair = EntropyPair::quadratic(flux);
  Detail d;
  bool ok = true;
  for (int order : {2, 3}) {
    SchemeConfig cfg;
    cfg.order = order;
    cfg.h = 0.01;
    cfg.beta = 0.0;
    cfg.alpha = 0.0;
    cfg.cfl = 0.1;
    const auto st = sample_grid(cfg, [](double x) { return 0.1 + 0.1 * std::sin(2.0 * M_PI * x); });
    const double e0 = discrete_entropy(cfg, st);
    const double drift = std::abs(discrete_entropy(cfg, integrate(cfg, st, 1.0).state) - e0);
    cfg.cfl = 0.05;
    const double drift_half = std::abs(discrete_entropy(cfg, integrate(cfg, st, 1.0).state) - e0);
    const double ratio = drift / drift_half;
    ok = ok && drift <= 1e-10 && std::abs(ratio - 16.0) <= 0.2 * 16.0;
    d.add("order" + std::to_string(order) + "_drift", drift).add("order" + std::to_string(order) + "_ratio", ratio);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> val(-1.5, 1.5);
  double worst = 0.0;
  for (int order : {2, 3, 4}) {
    SchemeConfig cfg;
    cfg.order = order;
    GridState st;
    for (std::size_t j = 0; j < cfg.cells(); ++j) st.cells.push_back(pair.u_of_v(val(rng)));
    for (double r : entropy_identity_residual(cfg, st)) worst = std::max(worst, r);
  }
  ok = ok && worst <= 1e-13;
  d.add("identity_residual", worst);
  return {ok, d.str()};
}

Outcome scheme_order(std::uint64_t) {
  const auto flux = FluxModel::cubic();
  const auto pair = EntropyPair::quadratic(flux);
  Detail d;
  bool ok = true;
  for (int order : {2, 3, 4}) {
    const auto study = flux_difference_order(flux, pair, order, 32, 3);
    std::ostringstream eocs;
    eocs.precision(4);
    for (std::size_t i = 0; i < study.eoc.size(); ++i) {
      eocs << (i ? "," : "") << study.eoc[i];
      if (order != 4) ok = ok && std::abs(study.eoc[i] - order) <= 0.3;
    }
    d.add("order" + std::to_string(order) + "_eoc", eocs.str());
  }
  return {ok, d.str()};
}

Outcome tw_asymptotics(std::uint64_t) {
  const auto flux = FluxModel::cubic();
  const std::vector<double> small{0.001, 0.002, 0.004};
  auto slope = [&](double alpha, double p) { return kinetic_table(TwModel(flux, alpha, p), small).slope_at_zero; };
  Detail d;
  const double s0 = slope(1.0, 0.0);
  const double s04 = slope(1.0, 0.4);
  const double s1 = slope(1.0, 1.0);
  bool ok = std::abs(s0 + 0.5) <= 0.05 && std::abs(s04 + 0.5) <= 0.05 && std::abs(s1 + 1.0) <= 0.05;
  d.add("slope_p0", s0).add("slope_p0.4", s04).add("slope_p1", s1);
  // Decreasing alpha moves the slope toward -1.
  double previous = 0.0;
  for (const char* alpha : {"5", "1", "0.2"}) {
    const double s = slope(std::stod(alpha), 0.5);
    ok = ok && s > -1.0 && s < -0.5 && s < previous;
    previous = s;
    d.add(std::string("slope_p0.5_alpha") + alpha, s);
  }
  return {ok, d.str()};
}

Outcome tw_linearity(std::uint64_t) {
  const auto flux = FluxModel::cubic();
  std::vector<double> grid;
  for (int k = 0; k < 10; ++k) grid.push_back(0.2 + 1.8 * k / 9.0);
  const auto t = kinetic_table(TwModel(flux, 1.0, 0.5), grid);
  double lo = 1e300;
  double hi = -1e300;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    lo = std::min(lo, -t.u_plus[i] / grid[i]);
    hi = std::max(hi, -t.u_plus[i] / grid[i]);
  }
  const double variation = (hi - lo) / hi;
  return {variation <= 0.01 && lo > 0.5 && hi < 1.0,
          Detail().add("c_alpha_min", lo).add("c_alpha_max", hi).add("relative_variation", variation).str()};
}

Outcome tw_dissipation_identity(std::uint64_t) {
  const auto flux = FluxModel::cubic();
  const auto pair = EntropyPair::quadratic(flux);
  double worst = 0.0;
  int orbits = 0;
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    const TwModel m(flux, 0.4, p);
    for (double u : {0.5, 1.0, 1.5, -1.0, -2.0}) {
      const auto c = find_connection(m, u);
      if (c.trajectory.terminal != TwTerminal::ConvergedToFarSaddle) continue;
      const double e = entropy_dissipation(pair, u, c.u_plus);
      worst = std::max(worst, std::abs(tw_dissipation(c.trajectory, m, pair) - e) / std::abs(e));
      ++orbits;
    }
  }
  return {orbits == 20 && worst <= 1e-6, Detail().add("orbits", orbits).add("max_relative_error", worst).str()};
}

// Matched regularization alpha_tw = 0.5 at resolutions r = 1, 2: h = 0.01 / r,
// beta = 0.5 r, alpha = r^2, so beta h and alpha h^2 are fixed.
Outcome kinetic_extraction(std::uint64_t) {
  const auto flux = FluxModel::cubic();
  const auto pair = EntropyPair::quadratic(flux);
  const double alpha_tw = 0.5;
  const TwModel tw(flux, alpha_tw, 0.0);
  const std::vector<double> grid{0.75, 1.0, 1.5, 2.0};
  const auto reference = kinetic_table(tw, grid);
  std::vector<double> est_grid;
  for (int k = 1; k <= 30; ++k) est_grid.push_back(0.1 * k);
  const auto est = kinetic_table(tw, est_grid);
  KineticSweepOptions opt(KineticFunction::tabulated(pair, est.u_minus, est.u_plus, "traveling-wave estimate"));

  Detail d;
  bool ok = true;
  std::vector<std::vector<double>> dev(2);
  for (int level = 0; level < 2; ++level) {
    const double r = level == 0 ? 1.0 : 2.0;
    for (int order : {2, 3, 4}) {
      SchemeConfig cfg;
      cfg.order = order;
      cfg.h = 0.01 / r;
      cfg.beta = alpha_tw * r;
      cfg.alpha = r * r;
      auto o = opt;
      o.separation_cells = 300.0 * r;
      o.margin_cells = 200.0 * r;
      const auto fd = numerical_kinetic_function(cfg, grid, o);
      const auto cmp = compare_tables(fd.table, reference);
      ok = ok && fd.table.u_minus.size() == grid.size();
      dev[static_cast<std::size_t>(level)].push_back(cmp.max_rel);
      d.add("h1/" + std::to_string(static_cast<int>(100 * r)) + "_order" + std::to_string(order) + "_max_rel", cmp.max_rel);
    }
  }
  for (std::size_t k = 0; k < 3; ++k) {
    ok = ok && dev[1][k] <= 0.10 && dev[1][k] <= dev[0][k];
    if (k > 0) ok = ok && dev[0][k] <= dev[0][k - 1] && dev[1][k] <= dev[1][k - 1];
  }
  return {ok, d.str()};
}

Outcome regularization_sensitivity(std::uint64_t) {
  const auto flux = FluxModel::cubic();
  std::vector<double> plateau;
  double noise = 0.0;
  for (double alpha : {0.5, 2.0}) {
    SchemeConfig cfg;
    cfg.order = 3;
    cfg.h = 0.01;
    cfg.beta = 1.0;
    cfg.alpha = alpha;
    cfg.domain_lo = -2.0;
    cfg.domain_hi = 12.0;
    cfg.boundary = Boundary::FixedStates;
    const auto run = integrate(cfg, riemann_grid(cfg, 2.0, -1.9), 0.8, {0, 0.0});
    std::string why;
    const auto pair = extract_pair(run.state.cells, flux, {}, &why);
    if (!pair) return {false, "alpha=" + format_double(alpha) + ": " + why};
    plateau.push_back(pair->u_plus);
    noise = std::max(noise, pair->noise);
  }
  const double diff = std::abs(plateau[0] - plateau[1]);
  return {diff > 10.0 * noise, Detail()
                                   .add("plateau_alpha0.5", plateau[0])
                                   .add("plateau_alpha2", plateau[1])
                                   .add("difference", diff)
                                   .add("noise", noise)
                                   .str()};
}

struct Entry {
  CriterionInfo info;
  Body body;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table{
      {{1, "riemann-soundness", "10^4 random Riemann problems satisfy all wave invariants", 5.0}, riemann_soundness},
      {{2, "classical-limit", "classical kinetic function matches the convex-hull solution", 5.0}, classical_limit},
      {{3, "zero-dissipation", "zero-dissipation function is -u and an involution", 5.0}, zero_dissipation_algebra},
      {{4, "front-tracking", "V non-increasing, TV-up/V-down witness, mass conserved", 60.0}, front_tracking},
      {{5, "entropy-conservation", "entropy drift is RK4 error only; per-cell identity exact", 60.0},
       entropy_conservation},
      {{6, "scheme-order", "flux-difference EOC within 0.3 of nominal for orders 2 and 3", 120.0}, scheme_order},
      {{7, "tw-asymptotics", "slope of the kinetic function at zero", 600.0}, tw_asymptotics},
      {{8, "tw-linearity", "p = 1/2 kinetic function is linear with slope in (1/2, 1)", 300.0}, tw_linearity},
      {{9, "tw-dissipation", "orbit dissipation equals the jump dissipation", 120.0}, tw_dissipation_identity},
      {{10, "kinetic-extraction", "scheme kinetic table approaches the traveling-wave table", 1200.0},
       kinetic_extraction},
      {{11, "regularization-sensitivity", "different dispersion selects different plateaus", 600.0},
       regularization_sensitivity},
  };
  return table;
}

}  // namespace

const std::vector<CriterionInfo>& criteria() {
  static const std::vector<CriterionInfo> list = [] {
    std::vector<CriterionInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return list;
}

CriterionReport run_criterion(const std::string& id_or_name, std::uint64_t seed) {
  const Entry* entry = nullptr;
  for (const auto& e : entries()) {
    if (e.info.name == id_or_name || std::to_string(e.info.id) == id_or_name) entry = &e;
  }
  if (!entry) throw ConfigError("unknown criterion '" + id_or_name + "'");
  CriterionReport r;
  r.id = entry->info.id;
  r.name = entry->info.name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome o = entry->body(seed);
    r.passed = o.ok;
    r.detail = o.detail;
  } catch (const std::exception& ex) {
    r.passed = false;
    r.detail = std::string("error: ") + ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds > entry->info.budget_seconds) {
    r.passed = false;
    r.detail += " over_budget=" + format_double(entry->info.budget_seconds) + "s";
  }
  return r;
}

std::string format_report(const CriterionReport& r) {
  std::ostringstream out;
  out.precision(3);
  out << (r.passed ? "PASS " : "FAIL ") << r.id << ' ' << r.name << " (" << std::fixed << r.seconds << "s) "
      << r.detail;
  return out.str();
}

}  // namespace nonclassical
