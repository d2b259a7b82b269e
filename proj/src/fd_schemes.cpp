#include "nonclassical/fd_schemes.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>

namespace nonclassical {

namespace {

constexpr int kGhost = 3;

double flux2(const EntropyPair& pair, double a, double b) {
  if (b < a) std::swap(a, b);
  if (pair.is_quadratic()) return pair.flux().mean_value(a, b);
  if (a == b) return pair.g(a);
  // psi' = g, so the average of g is a divided difference of the potential.
  if (b - a > 1e-3 * (1.0 + std::abs(a) + std::abs(b))) {
    return (pair.potential(b) - pair.potential(a)) / (b - a);
  }
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  return 0.5 * boost::math::quadrature::gauss<double, 16>::integrate(
                   [&](double t) { return pair.g(mid + t * half); }, -1.0, 1.0);
}

double entropy_flux2(const EntropyPair& pair, double a, double b) {
  return 0.5 * (a + b) * flux2(pair, a, b) - 0.5 * (pair.potential(a) + pair.potential(b));
}

double bstar(const EntropyPair& pair, double a, double b, double c) { return pair.dg((a + b + c) / 3.0); }

// Interface flux between v0 and v1.
double flux4(const EntropyPair& pair, double vm, double v0, double v1, double v2, int order) {
  switch (order) {
    case 2:
      return flux2(pair, v0, v1);
    case 3:
      return flux2(pair, v0, v1) -
             ((v2 - v1) * bstar(pair, v0, v1, v2) - (v0 - vm) * bstar(pair, vm, v0, v1)) / 12.0;
    default:
      return 4.0 / 3.0 * flux2(pair, v0, v1) - (flux2(pair, vm, v1) + flux2(pair, v0, v2)) / 6.0;
  }
}

double entropy_flux4(const EntropyPair& pair, double vm, double v0, double v1, double v2, int order) {
  switch (order) {
    case 2:
      return entropy_flux2(pair, v0, v1);
    case 3: {
      const double corr = -((v2 - v1) * bstar(pair, v0, v1, v2) - (v0 - vm) * bstar(pair, vm, v0, v1)) / 12.0;
      const double e0 = (v0 - vm) * (v1 - v0) * bstar(pair, vm, v0, v1);
      const double e1 = (v1 - v0) * (v2 - v1) * bstar(pair, v0, v1, v2);
      return entropy_flux2(pair, v0, v1) + 0.5 * (v0 + v1) * corr + (e0 + e1) / 24.0;
    }
    default:
      return 4.0 / 3.0 * entropy_flux2(pair, v0, v1) -
             (entropy_flux2(pair, vm, v1) + entropy_flux2(pair, v0, v2)) / 6.0;
  }
}

void check_stencil(const std::vector<double>& stencil, int order) {
  if (order < 2 || order > 4) throw ConfigError("scheme order must be 2, 3 or 4");
  if (stencil.size() != 4) throw ConfigError("interface stencil needs four values");
}

// State with kGhost ghost points on each side.
std::vector<double> extend(const SchemeConfig& cfg, const std::vector<double>& u) {
  const std::size_t n = u.size();
  std::vector<double> w(n + 2 * kGhost);
  std::copy(u.begin(), u.end(), w.begin() + kGhost);
  for (int g = 0; g < kGhost; ++g) {
    const auto gi = static_cast<std::size_t>(g);
    if (cfg.boundary == Boundary::Periodic) {
      w[gi] = u[n - kGhost + gi];
      w[n + kGhost + gi] = u[gi];
    } else {
      w[gi] = u.front();
      w[n + kGhost + gi] = u.back();
    }
  }
  return w;
}

std::vector<double> entropy_variables(const EntropyPair& pair, const std::vector<double>& w) {
  if (pair.is_quadratic()) return w;
  std::vector<double> v(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) v[i] = pair.dU(w[i]);
  return v;
}

// F[i] = flux at the interface left of point i, i = 0..n.
std::vector<double> interface_fluxes(const SchemeConfig& cfg, const std::vector<double>& v, std::size_t n,
                                     bool entropy) {
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const std::size_t k = i + kGhost;
    out[i] = entropy ? entropy_flux4(cfg.pair, v[k - 2], v[k - 1], v[k], v[k + 1], cfg.order)
                     : flux4(cfg.pair, v[k - 2], v[k - 1], v[k], v[k + 1], cfg.order);
  }
  return out;
}

double max_speed(const FluxModel& flux, const std::vector<double>& u) {
  double m = 0.0;
  for (double x : u) m = std::max(m, std::abs(flux.df(x)));
  return m;
}

bool all_finite(const std::vector<double>& u) {
  return std::all_of(u.begin(), u.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::size_t SchemeConfig::cells() const {
  return static_cast<std::size_t>(std::llround((domain_hi - domain_lo) / h));
}

void SchemeConfig::validate() const {
  if (order < 2 || order > 4) throw ConfigError("scheme order must be 2, 3 or 4");
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("h must be positive");
  if (!(domain_hi > domain_lo)) throw ConfigError("empty domain");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be non-negative");
  if (!std::isfinite(alpha)) throw ConfigError("alpha must be finite");
  if (pair.flux().name() != flux.name()) throw ConfigError("entropy pair belongs to a different flux");
  const double len = domain_hi - domain_lo;
  const double n = len / h;
  if (std::abs(n - std::round(n)) > 1e-9 * n) throw ConfigError("domain length must be a multiple of h");
  if (cells() < 2 * kGhost + 1) throw ConfigError("domain too small for the seven-point stencil");
}

double ec_flux_2pt(const EntropyPair& pair, double v0, double v1) { return flux2(pair, v0, v1); }

double ec_entropy_flux_2pt(const EntropyPair& pair, double v0, double v1) {
  return entropy_flux2(pair, v0, v1);
}

double ec_flux_highorder(const EntropyPair& pair, const std::vector<double>& s, int order) {
  check_stencil(s, order);
  return flux4(pair, s[0], s[1], s[2], s[3], order);
}

double ec_entropy_flux_highorder(const EntropyPair& pair, const std::vector<double>& s, int order) {
  check_stencil(s, order);
  return entropy_flux4(pair, s[0], s[1], s[2], s[3], order);
}

double ec_potential_highorder(const EntropyPair& pair, const std::vector<double>& s, int order) {
  check_stencil(s, order);
  return 0.5 * (s[1] + s[2]) * flux4(pair, s[0], s[1], s[2], s[3], order) -
         entropy_flux4(pair, s[0], s[1], s[2], s[3], order);
}

std::vector<double> flux_difference(const SchemeConfig& cfg, const std::vector<double>& u) {
  const std::size_t n = u.size();
  const auto v = entropy_variables(cfg.pair, extend(cfg, u));
  const auto F = interface_fluxes(cfg, v, n, false);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = -(F[j + 1] - F[j]) / cfg.h;
  return out;
}

std::vector<double> controlled_dissipation_rhs(const SchemeConfig& cfg, const GridState& state) {
  const std::size_t n = state.cells.size();
  const auto w = extend(cfg, state.cells);
  const auto v = entropy_variables(cfg.pair, w);
  const auto F = interface_fluxes(cfg, v, n, false);
  const bool high = cfg.order >= 3;
  const double h = cfg.h;
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double* p = w.data() + j + kGhost;
    double d2;
    double d3;
    if (high) {
      d2 = (16.0 * ((p[-1] - p[0]) + (p[1] - p[0])) - ((p[-2] - p[0]) + (p[2] - p[0]))) / 12.0;
      d3 = ((p[-3] - p[3]) - 8.0 * (p[-2] - p[2]) + 13.0 * (p[-1] - p[1])) / 8.0;
    } else {
      d2 = (p[-1] - p[0]) + (p[1] - p[0]);
      d3 = ((p[2] - p[-2]) - 2.0 * (p[1] - p[-1])) / 2.0;
    }
    // beta h D2 u = beta d2 / h and alpha h^2 D3 u = alpha d3 / h.
    out[j] = (-(F[j + 1] - F[j]) + cfg.beta * d2 + cfg.alpha * d3) / h;
  }
  return out;
}

std::vector<double> entropy_identity_residual(const SchemeConfig& cfg, const GridState& state) {
  const std::size_t n = state.cells.size();
  const auto v = entropy_variables(cfg.pair, extend(cfg, state.cells));
  const auto F = interface_fluxes(cfg, v, n, false);
  const auto G = interface_fluxes(cfg, v, n, true);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = std::abs(v[j + kGhost] * (F[j + 1] - F[j]) - (G[j + 1] - G[j]));
  }
  return out;
}

GridState sample_grid(const SchemeConfig& cfg, const std::function<double(double)>& u0) {
  cfg.validate();
  GridState st;
  st.cells.resize(cfg.cells());
  for (std::size_t j = 0; j < st.cells.size(); ++j) st.cells[j] = u0(cfg.x(j));
  return st;
}

GridState riemann_grid(const SchemeConfig& cfg, double u_left, double u_right, double x0) {
  return sample_grid(cfg, [=](double x) { return x < x0 ? u_left : u_right; });
}

double discrete_mass(const SchemeConfig& cfg, const GridState& state) {
  double m = 0.0;
  for (double u : state.cells) m += u;
  return m * cfg.h;
}

double discrete_entropy(const SchemeConfig& cfg, const GridState& state) {
  double e = 0.0;
  for (double u : state.cells) e += cfg.pair.U(u);
  return e * cfg.h;
}

FdRun integrate(const SchemeConfig& cfg, const GridState& state0, double t_end,
                const IntegrateOptions& options) {
  cfg.validate();
  if (state0.cells.size() != cfg.cells()) throw ConfigError("state length does not match the grid");
  if (!(t_end >= state0.time)) throw ConfigError("t_end precedes the initial time");
  if (!all_finite(state0.cells)) throw ConfigError("initial state is not finite");
  const double inf = std::numeric_limits<double>::infinity();
  const double h = cfg.h;

  FdRun run;
  run.state = state0;
  run.dt_parabolic = cfg.beta > 0.0 ? h / cfg.beta : inf;
  run.dt_dispersive = cfg.alpha != 0.0 ? h / std::abs(cfg.alpha) : inf;
  const double speed0 = max_speed(cfg.flux, state0.cells);
  run.dt_hyperbolic = speed0 > 0.0 ? h / speed0 : inf;

  auto record = [&](double dt) {
    run.diagnostics.push_back(
        {run.state.time, discrete_mass(cfg, run.state), discrete_entropy(cfg, run.state), dt});
  };
  record(0.0);

  const std::size_t n = state0.cells.size();
  GridState stage{0.0, std::vector<double>(n)};
  std::vector<double> acc(n);
  double last_dt = 0.0;
  while (t_end - run.state.time > 1e-14 * std::max(1.0, std::abs(t_end))) {
    double dt = options.fixed_dt;
    if (dt <= 0.0) {
      const double speed = max_speed(cfg.flux, run.state.cells);
      const double dt_h = speed > 0.0 ? h / speed : inf;
      dt = cfg.cfl * std::min({dt_h, run.dt_parabolic, run.dt_dispersive});
      if (dt == inf) dt = cfg.cfl * h;
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
      throw FdBlowup("time step collapsed at t=" + std::to_string(run.state.time), run.state);
    }
    dt = std::min(dt, t_end - run.state.time);

    const auto& u = run.state.cells;
    const auto k1 = controlled_dissipation_rhs(cfg, run.state);
    for (std::size_t j = 0; j < n; ++j) stage.cells[j] = u[j] + 0.5 * dt * k1[j];
    const auto k2 = controlled_dissipation_rhs(cfg, stage);
    for (std::size_t j = 0; j < n; ++j) stage.cells[j] = u[j] + 0.5 * dt * k2[j];
    const auto k3 = controlled_dissipation_rhs(cfg, stage);
    for (std::size_t j = 0; j < n; ++j) stage.cells[j] = u[j] + dt * k3[j];
    const auto k4 = controlled_dissipation_rhs(cfg, stage);
    for (std::size_t j = 0; j < n; ++j) acc[j] = u[j] + dt / 6.0 * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);
    if (!all_finite(acc)) {
      throw FdBlowup("non-finite value at t=" + std::to_string(run.state.time + dt), run.state);
    }
    run.state.cells.swap(acc);
    run.state.time += dt;
    ++run.steps;
    last_dt = dt;
    if (options.stride > 0 && run.steps % options.stride == 0) record(dt);
  }
  if (run.diagnostics.back().time != run.state.time) record(last_dt);
  return run;
}

OrderStudy flux_difference_order(const FluxModel& flux, const EntropyPair& pair, int order, int n0,
                                 int halvings) {
  OrderStudy study;
  const double two_pi = 2.0 * std::numbers::pi;
  for (int level = 0; level <= halvings; ++level) {
    const int n = n0 << level;
    SchemeConfig cfg;
    cfg.flux = flux;
    cfg.pair = pair;
    cfg.order = order;
    cfg.h = 1.0 / n;
    cfg.boundary = Boundary::Periodic;
    auto u = [&](double x) { return 0.3 + 0.5 * std::sin(two_pi * x); };
    const auto st = sample_grid(cfg, u);
    const auto d = flux_difference(cfg, st.cells);
    double err = 0.0;
    for (std::size_t j = 0; j < st.cells.size(); ++j) {
      const double x = cfg.x(j);
      const double exact = -flux.df(u(x)) * 0.5 * two_pi * std::cos(two_pi * x);
      err = std::max(err, std::abs(d[j] - exact));
    }
    study.n.push_back(n);
    study.error.push_back(err);
    if (level > 0) {
      const auto k = study.error.size();
      study.eoc.push_back(std::log2(study.error[k - 2] / study.error[k - 1]));
    }
  }
  return study;
}

const char* to_string(Boundary b) { return b == Boundary::Periodic ? "periodic" : "fixed"; }

Boundary boundary_by_name(const std::string& name) {
  if (name == "periodic") return Boundary::Periodic;
  if (name == "fixed") return Boundary::FixedStates;
  throw ConfigError("unknown boundary '" + name + "' (expected periodic or fixed)");
}

}  // namespace nonclassical
