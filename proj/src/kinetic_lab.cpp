#include "nonclassical/kinetic_lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nonclassical/detail/parallel.hpp"
#include "nonclassical/riemann.hpp"

namespace nonclassical {

namespace {

struct Window {
  std::size_t lo = 0;
  std::size_t hi = 0;  // inclusive
  bool ok = false;
};

double median(std::vector<double> v) {
  const std::size_t m = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<long>(m), v.end());
  if (v.size() % 2 == 1) return v[m];
  const double upper = v[m];
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<long>(m));
  return 0.5 * (lower + upper);
}

// First run of at least min_len flat cells met when walking from `start` in
// direction `step`. The window ends where the run ends or where the profile
// leaves the band of width tol around the run's first cell, so slowly varying
// regions (rarefactions) are not mistaken for plateaus.
Window find_window(const std::vector<bool>& flat, const std::vector<double>& s, long start, int step, int min_len,
                   double tol) {
  const long n = static_cast<long>(flat.size());
  long k = start;
  while (k >= 0 && k < n) {
    if (!flat[static_cast<std::size_t>(k)]) {
      k += step;
      continue;
    }
    long run = k;
    while (run + step >= 0 && run + step < n && flat[static_cast<std::size_t>(run + step)]) run += step;
    if (std::abs(run - k) + 1 < min_len) {
      k = run + step;
      continue;
    }
    const double anchor = s[static_cast<std::size_t>(k)];
    long end = k;
    while (end != run && std::abs(s[static_cast<std::size_t>(end + step)] - anchor) <= tol) end += step;
    if (std::abs(end - k) + 1 < min_len) return {};
    return {static_cast<std::size_t>(std::min(k, end)), static_cast<std::size_t>(std::max(k, end)), true};
  }
  return {};
}

struct Plateaus {
  Window left;
  Window right;
};

Plateaus locate(const std::vector<double>& s, std::size_t i_star, double thr, const ExtractOptions& opt) {
  const std::size_t n = s.size();
  std::vector<bool> flat(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const bool left_ok = k == 0 || std::abs(s[k] - s[k - 1]) <= thr;
    const bool right_ok = k + 1 == n || std::abs(s[k + 1] - s[k]) <= thr;
    flat[k] = left_ok && right_ok;
  }
  // Transition: cells i_star and i_star + 1 and every steep difference next to them.
  long a = static_cast<long>(i_star);
  while (a > 0 && std::abs(s[static_cast<std::size_t>(a)] - s[static_cast<std::size_t>(a - 1)]) > thr) --a;
  long b = static_cast<long>(i_star) + 1;
  while (b + 1 < static_cast<long>(n) &&
         std::abs(s[static_cast<std::size_t>(b + 1)] - s[static_cast<std::size_t>(b)]) > thr) {
    ++b;
  }
  return {find_window(flat, s, a - opt.buffer, -1, opt.min_window, thr),
          find_window(flat, s, b + opt.buffer, +1, opt.min_window, thr)};
}

std::vector<double> slice(const std::vector<double>& v, const Window& w) {
  return {v.begin() + static_cast<long>(w.lo), v.begin() + static_cast<long>(w.hi) + 1};
}

double half_range(const std::vector<double>& v) {
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  return 0.5 * (*mx - *mn);
}

}  // namespace

std::optional<PlateauPair> extract_pair(const std::vector<double>& profile, const FluxModel& flux,
                                        const ExtractOptions& opt, std::string* why) {
  auto fail = [why](const std::string& reason) -> std::optional<PlateauPair> {
    if (why) *why = reason;
    return std::nullopt;
  };
  const std::size_t n = profile.size();
  if (n < 3) return fail("profile too short");
  const double dir = opt.direction >= 0 ? 1.0 : -1.0;
  std::vector<double> s(n);
  for (std::size_t k = 0; k < n; ++k) s[k] = dir * profile[k];

  std::size_t i_star = 0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (s[k + 1] - s[k] < s[i_star + 1] - s[i_star]) i_star = k;
  }
  if (!(s[i_star + 1] - s[i_star] < 0.0)) return fail("no decreasing transition");

  const auto [mn, mx] = std::minmax_element(s.begin(), s.end());
  double jump = *mx - *mn;
  Plateaus p;
  double ul = 0.0;
  double ur = 0.0;
  // Second pass uses the jump between the first-pass plateaus.
  for (int pass = 0; pass < 2; ++pass) {
    p = locate(s, i_star, opt.flat_slope * jump, opt);
    if (!p.left.ok || !p.right.ok) {
      return fail("no flat window of at least " + std::to_string(opt.min_window) + " cells beside the transition");
    }
    ul = median(slice(profile, p.left));
    ur = median(slice(profile, p.right));
    jump = std::abs(ul - ur);
    if (jump == 0.0) return fail("plateaus coincide");
  }

  ShockClass cls;
  try {
    cls = classify_shock(flux, ul, ur);
  } catch (const DegenerateShock&) {
    return fail("degenerate jump");
  }
  if (cls != ShockClass::SlowUndercompressive && cls != ShockClass::FastUndercompressive) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "jump (" << ul << ", " << ur << ") is " << to_string(cls);
    return fail(msg.str());
  }
  PlateauPair out;
  out.u_minus = ul;
  out.u_plus = ur;
  out.noise = std::max(half_range(slice(profile, p.left)), half_range(slice(profile, p.right)));
  out.confidence = std::clamp(1.0 - 2.0 * out.noise / jump, 1e-6, 1.0);
  out.transition = i_star;
  return out;
}

double midpoint_far_state(const FluxModel& flux, const KineticFunction& estimate, double u) {
  return 0.5 * (estimate(u) + companion(flux, estimate, u));
}

double matched_tw_alpha(const SchemeConfig& scheme) {
  if (!(scheme.alpha > 0.0)) throw ConfigError("matched regularization needs positive dispersion");
  return scheme.beta / std::sqrt(scheme.alpha);
}

NumericalKineticTable numerical_kinetic_function(const SchemeConfig& scheme, const std::vector<double>& u_grid,
                                                 const KineticSweepOptions& options) {
  scheme.validate();
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    if (u_grid[i] == 0.0) throw ConfigError("kinetic sweep grid contains 0");
    if (i > 0 && !(u_grid[i] > u_grid[i - 1])) throw ConfigError("kinetic sweep grid must be increasing");
  }
  const FluxModel& flux = scheme.flux;
  const double h = scheme.h;
  std::vector<std::optional<PlateauPair>> found(u_grid.size());
  std::vector<std::string> reasons(u_grid.size());

  detail::parallel_for(u_grid.size(), [&](std::size_t i) {
    const double u = u_grid[i];
    const double ur = options.far_state ? options.far_state(u) : midpoint_far_state(flux, options.estimate, u);
    const auto pattern = solve_riemann(flux, scheme.pair, options.estimate, u, ur);
    if (pattern.waves.size() != 2 || pattern.waves[0].kind != WaveKind::NonclassicalShock) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "u_minus=" << u << ": right state " << ur << " does not give a nonclassical two-wave pattern";
      reasons[i] = msg.str();
      return;
    }
    const double s1 = pattern.waves[0].speed_hi;
    const double s2 = pattern.waves[1].speed_lo;
    const double s_max = pattern.waves[1].speed_hi;
    const double t_end = options.separation_cells * h / (s2 - s1);
    SchemeConfig cfg = scheme;
    cfg.boundary = Boundary::FixedStates;
    cfg.domain_lo = h * std::floor((std::min(0.0, s1 * t_end) - options.margin_cells * h) / h);
    cfg.domain_hi = h * std::ceil((std::max(0.0, s_max * t_end) + options.margin_cells * h) / h);
    const auto run = integrate(cfg, riemann_grid(cfg, u, ur), t_end, {0, 0.0});
    ExtractOptions ex = options.extract;
    ex.direction = u > 0.0 ? 1 : -1;
    std::string why;
    auto pair = extract_pair(run.state.cells, flux, ex, &why);
    if (!pair) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "u_minus=" << u << ": " << why;
      reasons[i] = msg.str();
      return;
    }
    pair->run_metadata = {{"scheme", "ec-order" + std::to_string(cfg.order)},
                          {"h", format_double(h)},
                          {"alpha", format_double(cfg.alpha)},
                          {"beta", format_double(cfg.beta)},
                          {"u_right", format_double(ur)},
                          {"t_end", format_double(t_end)}};
    found[i] = std::move(pair);
  });

  NumericalKineticTable out;
  out.table.alpha = scheme.alpha > 0.0 ? matched_tw_alpha(scheme) : 0.0;
  out.table.p = 0.0;
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    if (!found[i]) {
      out.dropped.push_back(reasons[i]);
      continue;
    }
    out.table.u_minus.push_back(u_grid[i]);
    out.table.u_plus.push_back(found[i]->u_plus);
    out.pairs.push_back(*found[i]);
  }
  out.metadata = {{"source", "finite-difference"},
                  {"order", std::to_string(scheme.order)},
                  {"h", format_double(h)},
                  {"alpha", format_double(scheme.alpha)},
                  {"beta", format_double(scheme.beta)},
                  {"matched_tw_alpha", format_double(out.table.alpha)}};
  if (out.table.u_minus.size() < 3) {
    std::string msg = "numerical kinetic table has fewer than 3 rows";
    for (const auto& r : out.dropped) msg += "; " + r;
    throw NumericalError(msg);
  }
  out.table.slope_at_zero = extrapolate_slope_at_zero(out.table.u_minus, out.table.u_plus);
  const auto problems = check_kinetic_table(scheme.pair, out.table);
  if (!problems.empty()) throw InvariantViolation("numerical kinetic table: " + problems.front());
  return out;
}

KineticTableFile to_table_file(const FluxModel& flux, const NumericalKineticTable& table) {
  KineticTableFile file;
  file.flux_name = flux.name();
  file.metadata = table.metadata;
  file.metadata.emplace_back("slope_at_zero", format_double(table.table.slope_at_zero));
  file.u_minus = table.table.u_minus;
  file.u_plus = table.table.u_plus;
  return file;
}

TableComparison compare_tables(const KineticTable& a, const KineticTable& b) {
  if (b.u_minus.size() < 2 || b.u_minus.size() != b.u_plus.size()) {
    throw ConfigError("compare_tables: reference table needs at least two rows");
  }
  TableComparison c;
  const double lo = b.u_minus.front();
  const double hi = b.u_minus.back();
  for (std::size_t i = 0; i < a.u_minus.size(); ++i) {
    const double u = a.u_minus[i];
    if (u < lo || u > hi) continue;
    const auto it = std::lower_bound(b.u_minus.begin(), b.u_minus.end(), u);
    std::size_t k = static_cast<std::size_t>(it - b.u_minus.begin());
    double ref;
    if (b.u_minus[k] == u) {
      ref = b.u_plus[k];
    } else {
      const double w = (u - b.u_minus[k - 1]) / (b.u_minus[k] - b.u_minus[k - 1]);
      ref = b.u_plus[k - 1] + w * (b.u_plus[k] - b.u_plus[k - 1]);
    }
    const double d = std::abs(a.u_plus[i] - ref);
    c.max_abs = std::max(c.max_abs, d);
    c.mean_abs += d;
    c.max_rel = std::max(c.max_rel, d / std::abs(u));
    c.mean_rel += d / std::abs(u);
    ++c.rows;
  }
  if (c.rows == 0) throw ConfigError("compare_tables: disjoint u ranges");
  c.mean_abs /= static_cast<double>(c.rows);
  c.mean_rel /= static_cast<double>(c.rows);
  c.slope_at_zero_deviation = std::abs(a.slope_at_zero - b.slope_at_zero);
  return c;
}

std::string format_comparison(const TableComparison& c) {
  std::ostringstream out;
  out << "rows=" << c.rows << " max_abs=" << format_double(c.max_abs) << " mean_abs=" << format_double(c.mean_abs)
      << " max_rel=" << format_double(c.max_rel) << " mean_rel=" << format_double(c.mean_rel)
      << " slope_at_zero_deviation=" << format_double(c.slope_at_zero_deviation);
  return out.str();
}

}  // namespace nonclassical
