#include "nonclassical/front_tracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace nonclassical {

namespace {

constexpr double kGroupWindow = 1e-12;

double psi(const EntropyPair& pair, double u) { return u >= 0.0 ? u : zero_dissipation(pair, u); }

FrontKind front_kind(WaveKind k) {
  switch (k) {
    case WaveKind::ClassicalShock:
      return FrontKind::ClassicalShockFront;
    case WaveKind::NonclassicalShock:
      return FrontKind::NonclassicalShockFront;
    case WaveKind::Rarefaction:
      break;
  }
  return FrontKind::RarefactionFront;
}

std::string describe_state(const FrontState& st) {
  std::ostringstream out;
  out.precision(17);
  out << "t=" << st.time << " fronts=" << st.fronts.size() << " u_far_left=" << st.u_far_left
      << " u_far_right=" << st.u_far_right();
  return out.str();
}

// Value at x of the state whose fronts sit at x_i + s_i * dt.
double value_at(const FrontState& st, double x, double dt) {
  double u = st.u_far_left;
  for (const Front& f : st.fronts) {
    if (f.position + f.speed * dt >= x) break;
    u = f.u_right;
  }
  return u;
}

// Integral of f(u(x, time + tau)) for tau in [0, dt] at fixed x.
double flux_through(const FluxModel& flux, const FrontState& st, double x, double dt) {
  std::vector<double> cuts{0.0, dt};
  for (const Front& f : st.fronts) {
    if (f.speed == 0.0) continue;
    const double tc = (x - f.position) / f.speed;
    if (tc > 0.0 && tc < dt) cuts.push_back(tc);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    if (len <= 0.0) continue;
    total += len * flux.f(value_at(st, x, 0.5 * (cuts[i] + cuts[i + 1])));
  }
  return total;
}

}  // namespace

double FrontState::value(double x) const { return value_at(*this, x, 0.0); }

double generalized_strength(const EntropyPair& pair, double u_minus, double u_plus) {
  if (u_minus == u_plus) return 0.0;
  return std::abs(psi(pair, u_minus) - psi(pair, u_plus));
}

FrontTracker::FrontTracker(EntropyPair pair, KineticFunction kin, double fan_step)
    : pair_(std::move(pair)), kin_(std::move(kin)), fan_step_(fan_step) {
  if (!(fan_step > 0.0) || !std::isfinite(fan_step)) throw ConfigError("fan_step must be positive");
  const FluxModel& flux = pair_.flux();
  double lo = 1.0;
  double hi = 1.0;
  auto ratio = [&](double a, double b) {
    if (a == b) return;
    const double r = generalized_strength(pair_, a, b) / std::abs(a - b);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  };
  const int n = 80;
  double prev_neg = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double m = std::pow(10.0, -3.0 + 4.0 * i / n);
    for (double u : {m, -m}) {
      const double sharp = companion(flux, kin_, u);
      ratio(u, kin_(u));
      for (double t : {1.0, 0.75, 0.5, 0.25}) ratio(u, t * sharp);
    }
    // Fronts between two negative (or two positive) states.
    if (i > 0) ratio(-m, prev_neg);
    prev_neg = -m;
  }
  c_lower_ = lo;
  c_upper_ = hi;
}

Front FrontTracker::make_front(double x, double ul, double ur, FrontKind kind) const {
  return Front{x, ul, ur, pair_.flux().chord(ul, ur), kind, generalized_strength(pair_, ul, ur)};
}

std::vector<Front> FrontTracker::fronts_from_pattern(const WavePattern& pattern, double x) const {
  std::vector<Front> out;
  for (const Wave& w : pattern.waves) {
    if (w.is_shock()) {
      out.push_back(make_front(x, w.u_minus, w.u_plus, front_kind(w.kind)));
      continue;
    }
    const double span = w.u_plus - w.u_minus;
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(span) / fan_step_ - 1e-12)));
    double a = w.u_minus;
    for (int k = 1; k <= n; ++k) {
      const double b = k == n ? w.u_plus : w.u_minus + span * k / n;
      out.push_back(make_front(x, a, b, FrontKind::RarefactionFront));
      a = b;
    }
  }
  return out;
}

FrontState FrontTracker::init_from_steps(const std::vector<double>& breakpoints,
                                         const std::vector<double>& states, double window_lo,
                                         double window_hi) const {
  if (!(window_hi > window_lo)) throw ConfigError("empty window");
  if (states.size() != breakpoints.size() + 1) throw ConfigError("need one more state than breakpoints");
  for (double u : states) {
    if (!std::isfinite(u)) throw ConfigError("non-finite initial state");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) throw ConfigError("breakpoints must increase");
  }
  FrontState st;
  st.u_far_left = states.front();
  st.window_lo = window_lo;
  st.window_hi = window_hi;
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const auto pattern = solve_riemann(pair_.flux(), pair_, kin_, states[i], states[i + 1]);
    for (Front& f : fronts_from_pattern(pattern, breakpoints[i])) st.fronts.push_back(f);
  }
  return st;
}

FrontState FrontTracker::init_from_data(const std::function<double(double)>& sampler,
                                        double window_lo, double window_hi, int n_cells) const {
  if (n_cells <= 0) throw ConfigError("n_cells must be positive");
  if (!(window_hi > window_lo)) throw ConfigError("empty window");
  const double h = (window_hi - window_lo) / n_cells;
  std::vector<double> states;
  std::vector<double> breaks;
  for (int j = 0; j < n_cells; ++j) {
    states.push_back(sampler(window_lo + (j + 0.5) * h));
    if (j > 0) breaks.push_back(window_lo + j * h);
  }
  return init_from_steps(breaks, states, window_lo, window_hi);
}

std::optional<InteractionEvent> FrontTracker::next_interaction(const FrontState& st) const {
  const auto& fr = st.fronts;
  const std::size_t n = fr.size();
  if (n < 2) return std::nullopt;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> tc(n - 1, inf);
  std::size_t best = n;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double ds = fr[i].speed - fr[i + 1].speed;
    if (!(ds > 0.0)) continue;
    tc[i] = st.time + std::max(0.0, fr[i + 1].position - fr[i].position) / ds;
    if (best == n || tc[i] < tc[best]) best = i;
  }
  if (best == n) return std::nullopt;
  const double t = tc[best];
  const double tol = kGroupWindow * std::max(1.0, std::abs(t));
  std::size_t first = best;
  std::size_t last = best + 1;
  while (first > 0 && tc[first - 1] <= t + tol) --first;
  while (last + 1 < n && tc[last] <= t + tol) ++last;
  double x = 0.0;
  for (std::size_t i = first; i <= last; ++i) x += fr[i].position + fr[i].speed * (t - st.time);
  x /= static_cast<double>(last - first + 1);
  return InteractionEvent{t, first, last, x};
}

FrontState FrontTracker::advance(const FrontState& st, double t) const {
  FrontState out = st;
  const double dt = t - st.time;
  if (dt <= 0.0) return out;
  const FluxModel& flux = pair_.flux();
  out.boundary_flux += flux_through(flux, st, st.window_lo, dt) - flux_through(flux, st, st.window_hi, dt);
  for (Front& f : out.fronts) f.position += f.speed * dt;
  out.time = t;
  return out;
}

FrontState FrontTracker::resolve_interaction(const FrontState& st, const InteractionEvent& ev) const {
  if (ev.last >= st.fronts.size() || ev.first >= ev.last) {
    throw InvariantViolation("interaction indices out of range");
  }
  FrontState out = advance(st, ev.time);
  const double ul = out.fronts[ev.first].u_left;
  const double ur = out.fronts[ev.last].u_right;
  WavePattern pattern;
  try {
    pattern = solve_riemann(pair_.flux(), pair_, kin_, ul, ur);
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Riemann solve failed at interaction t=" << ev.time << " x=" << ev.position
        << " u_left=" << ul << " u_right=" << ur << ": " << e.what();
    if (dynamic_cast<const ConfigError*>(&e)) throw ConfigError(msg.str());
    if (dynamic_cast<const InvariantViolation*>(&e)) throw InvariantViolation(msg.str());
    throw NumericalError(msg.str());
  }
  // Keep the ordering even when round-off places the neighbours past x.
  double x = ev.position;
  if (ev.first > 0) x = std::max(x, out.fronts[ev.first - 1].position);
  if (ev.last + 1 < out.fronts.size()) x = std::min(x, out.fronts[ev.last + 1].position);
  std::vector<Front> fresh = fronts_from_pattern(pattern, x);
  std::vector<Front> fronts;
  fronts.reserve(out.fronts.size() + fresh.size());
  fronts.insert(fronts.end(), out.fronts.begin(), out.fronts.begin() + static_cast<long>(ev.first));
  fronts.insert(fronts.end(), fresh.begin(), fresh.end());
  fronts.insert(fronts.end(), out.fronts.begin() + static_cast<long>(ev.last) + 1, out.fronts.end());
  out.fronts = std::move(fronts);
  return out;
}

Functionals FrontTracker::functionals(const FrontState& st) const {
  Functionals fn;
  const double lo = st.window_lo;
  const double hi = st.window_hi;
  double left = lo;
  double u = st.u_far_left;
  for (const Front& f : st.fronts) {
    fn.V += f.sigma;
    fn.TV += std::abs(f.u_right - f.u_left);
    const double x = std::clamp(f.position, lo, hi);
    fn.mass += u * (x - left);
    left = x;
    u = f.u_right;
  }
  fn.mass += u * (hi - left);
  return fn;
}

CauchyResult FrontTracker::run_cauchy(const FrontState& state0, double t_end,
                                      long max_interactions) const {
  if (!(t_end > state0.time)) throw ConfigError("t_end must exceed the initial time");
  CauchyResult res;
  FrontState st = state0;
  const double mass0 = functionals(st).mass - st.boundary_flux;

  auto record = [&](long id) {
    const Functionals fn = functionals(st);
    FrontDiagnostics row;
    row.time = st.time;
    row.V = fn.V;
    row.TV = fn.TV;
    row.mass = fn.mass;
    row.n_fronts = st.fronts.size();
    row.interaction_id = id;
    for (const Front& f : st.fronts) row.l1_rate += std::abs(f.speed) * std::abs(f.u_right - f.u_left);
    row.mass_residual = fn.mass - mass0 - st.boundary_flux;
    res.diagnostics.push_back(row);
  };
  auto dissipate = [&](double t) {
    const double dt = t - st.time;
    if (dt <= 0.0) return;
    for (const Front& f : st.fronts) {
      if (f.kind == FrontKind::RarefactionFront) continue;
      res.shock_entropy_production += dt * entropy_dissipation(pair_, f.u_left, f.u_right);
    }
  };

  record(0);
  while (true) {
    const auto ev = next_interaction(st);
    if (!ev || ev->time > t_end) {
      dissipate(t_end);
      st = advance(st, t_end);
      record(res.interactions);
      break;
    }
    if (res.interactions >= max_interactions) {
      throw InteractionBudgetExceeded("interaction budget exceeded (" + describe_state(st) + ")", st);
    }
    const Functionals before = functionals(st);
    dissipate(ev->time);
    st = resolve_interaction(st, *ev);
    ++res.interactions;
    record(res.interactions);
    const auto& after = res.diagnostics.back();
    res.max_v_increase = std::max(res.max_v_increase, after.V - before.V);
    if (after.TV > before.TV && after.V <= before.V) ++res.tv_up_v_down;
  }
  res.state = std::move(st);
  return res;
}

std::vector<std::string> FrontTracker::check_state(const FrontState& st) const {
  std::vector<std::string> problems;
  const FluxModel& flux = pair_.flux();
  double prev_u = st.u_far_left;
  for (std::size_t i = 0; i < st.fronts.size(); ++i) {
    const Front& f = st.fronts[i];
    std::ostringstream msg;
    msg.precision(17);
    msg << "front " << i << ": ";
    if (f.u_left != prev_u) problems.push_back(msg.str() + "state chaining broken");
    if (f.u_left == f.u_right) problems.push_back(msg.str() + "zero jump");
    if (!std::isfinite(f.sigma) || f.sigma < 0.0) problems.push_back(msg.str() + "invalid strength");
    const double scale = 1.0 + std::abs(f.u_left) + std::abs(f.u_right);
    if (std::abs(f.speed - flux.chord(f.u_left, f.u_right)) > 1e-14 * scale * scale) {
      problems.push_back(msg.str() + "speed differs from the Rankine-Hugoniot speed");
    }
    if (f.kind == FrontKind::RarefactionFront) {
      if (std::abs(f.u_right - f.u_left) > fan_step_ * (1.0 + 1e-12)) {
        problems.push_back(msg.str() + "rarefaction front exceeds the fan step");
      }
    } else {
      const auto shock_kind =
          f.kind == FrontKind::NonclassicalShockFront ? ShockKind::Nonclassical : ShockKind::Classical;
      for (const auto& p : check_shock(pair_, make_shock(flux, f.u_left, f.u_right, shock_kind))) {
        problems.push_back(msg.str() + p);
      }
    }
    if (i > 0) {
      const Front& g = st.fronts[i - 1];
      if (f.position < g.position || (f.position == g.position && f.speed < g.speed)) {
        msg << "out of order (" << g.position << ", " << f.position << ")";
        problems.push_back(msg.str());
      }
    }
    prev_u = f.u_right;
  }
  return problems;
}

const char* to_string(FrontKind k) {
  switch (k) {
    case FrontKind::ClassicalShockFront:
      return "ClassicalShockFront";
    case FrontKind::NonclassicalShockFront:
      return "NonclassicalShockFront";
    case FrontKind::RarefactionFront:
      break;
  }
  return "RarefactionFront";
}

}  // namespace nonclassical
