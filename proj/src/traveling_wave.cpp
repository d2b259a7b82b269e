#include "nonclassical/traveling_wave.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "nonclassical/detail/dense_stepper.hpp"
#include "nonclassical/detail/parallel.hpp"
#include "nonclassical/detail/roots.hpp"
#include "nonclassical/errors.hpp"
#include "nonclassical/shock_algebra.hpp"

namespace nonclassical {

namespace {


constexpr double kEta = 1e-12;
constexpr double kLaunch = 1e-7;
constexpr double kRelTol = 1e-10;
constexpr double kAbsTol = 1e-12;
constexpr double kSaddleRadius = 1e-7;
constexpr double kArcBudget = 1e4;
constexpr long kStepBudget = 2'000'000;
constexpr double kProbe = 1e-9;
constexpr double kStiffRatio = 10.0;

double damping(const TwModel& m, double z) {
  if (m.p == 0.0) return m.alpha * z;
  return m.alpha * std::pow(z * z + kEta * kEta, 0.5 * m.p) * z;
}

struct Orbit {
  const TwModel& model;
  double u_minus;
  double lambda;
  double fm;

  double h(double w) const { return model.flux.f(w) - fm - lambda * (w - u_minus); }
  double accel(double w, double z) const { return h(w) - damping(model, z); }
};

// Roots of chord(., u) = lambda other than u itself, ordered (far, middle)
// along the direction from u towards its tangent state.
std::vector<double> other_roots(const FluxModel& flux, double u, double lambda) {
  const double t = tangent(flux, u);
  const double lt = flux.df(t);
  const double lu = flux.df(u);
  const double scale = std::abs(lu - lt);
  if (lambda < lt - 1e-14 * scale) return {};
  if (lambda <= lt + 1e-14 * scale) return {t};
  auto q = [&flux, u, lambda](double w) { return flux.chord(w, u) - lambda; };
  const double far_end = detail::expand_bracket(q, t, t - u, "equilibria");
  const double far = detail::bracketed_root(q, far_end, t, q(far_end), q(t), "equilibria");
  if (lambda == lu) return {far};
  double mid;
  if (lambda < lu) {
    mid = detail::bracketed_root(q, t, u, q(t), lu - lambda, "equilibria");
  } else {
    const double beyond = detail::expand_bracket(q, u, u - t, "equilibria");
    mid = detail::bracketed_root(q, u, beyond, lu - lambda, q(beyond), "equilibria");
  }
  return {far, mid};
}

std::string describe_point(const char* what, double u, double lambda) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " (u_minus = " << u << ", lambda = " << lambda << ")";
  return msg.str();
}

double primitive_h(const Orbit& o, double w) {
  const double dw = w - o.u_minus;
  return o.model.flux.primitive(w) - o.model.flux.primitive(o.u_minus) - o.fm * dw -
         0.5 * o.lambda * dw * dw;
}

// Linearized stable branch into the far saddle after the last sample.
void append_stable_tail(TwTrajectory& traj, const TwModel& model, double lin_damp) {
  const double hp = model.flux.df(traj.u1) - traj.lambda;
  const double nu = 0.5 * (lin_damp + std::sqrt(lin_damp * lin_damp + 4.0 * hp));
  const TwSample last = traj.samples.back();
  const double r = last.w - traj.u1;
  for (int k = 1; k <= 60; ++k) {
    const double e = std::exp(-0.5 * k);
    traj.samples.push_back({last.y + 0.5 * k / nu, traj.u1 + r * e, -nu * r * e});
  }
}

}  // namespace

TwModel::TwModel(FluxModel f, double a, double exponent)
    : flux(std::move(f)), alpha(a), p(exponent) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("traveling wave: alpha must be positive");
  if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("traveling wave: p must be non-negative");
}

std::vector<double> equilibria(const TwModel& model, double u_minus, double lambda) {
  if (u_minus == 0.0) throw ConfigError("equilibria: u_minus must be nonzero");
  std::vector<double> roots = other_roots(model.flux, u_minus, lambda);
  roots.push_back(u_minus);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

double orbit_energy(const TwModel& model, double u_minus, double lambda, double w, double z) {
  const Orbit o{model, u_minus, lambda, model.flux.f(u_minus)};
  return 0.5 * z * z - primitive_h(o, w);
}

namespace {

// Orbit integration in scaled variables W = w / sw, Z = z / (sw mu), Y = mu y,
// where mu is the unstable eigenvalue at u_minus.
struct Shot {
  const TwModel& model;
  Orbit orbit;
  TwTrajectory& traj;
  double d;         // direction of travel
  double mu;
  double sw;
  double zscale;
  double lin_damp;

  double W1() const { return traj.u1 / sw; }
  double far_distance(double W, double Z) const { return std::hypot(W - traj.u1 / sw, Z); }
  double mid_distance(double W, double Z) const { return std::hypot(W - traj.u2 / sw, Z); }
  TwSample sample(double Y, double W, double Z) const { return {Y / mu, sw * W, zscale * Z}; }

  double dZ(double W, double Z) const { return orbit.accel(sw * W, zscale * Z) / (zscale * mu); }
  // Partial derivatives of dZ for the implicit integrator.
  double dZ_dW(double W) const {
    const double w = sw * W;
    return sw * (model.flux.df(w) - orbit.lambda) / (zscale * mu);
  }
  double dZ_dZ(double Z) const {
    const double z = zscale * Z;
    double g1 = 1.0;
    if (model.p != 0.0) {
      const double r = z * z + kEta * kEta;
      g1 = std::pow(r, 0.5 * model.p) + model.p * z * z * std::pow(r, 0.5 * model.p - 1.0);
    }
    return -model.alpha * g1 / mu;
  }

  // Steps until a terminal event.
  void run(detail::DenseStepper2& stepper) {
    using X = detail::State2;
    const double w1 = W1();
    // Closest approach to the far saddle: distance, sample, and the number of
    // samples recorded before it.
    double best = traj.closest_approach;
    TwSample best_sample = traj.samples.back();
    std::size_t best_index = traj.samples.size() - 1;
    auto track = [&](double t, const X& x) {
      const double dist = far_distance(x[0], x[1]);
      if (dist < best) {
        best = dist;
        best_sample = sample(t, x[0], x[1]);
        best_index = traj.samples.size();
      }
    };
    auto finish = [&](TwTerminal fate) {
      traj.fate = fate;
      traj.terminal = fate;
      traj.closest_approach = best;
      if (best <= kSaddleRadius) {
        traj.samples.resize(best_index);
        traj.samples.push_back(best_sample);
        traj.terminal = TwTerminal::ConvergedToFarSaddle;
        append_stable_tail(traj, model, lin_damp);
      }
    };

    double arc = 0.0;
    X x0 = stepper.current_state();
    for (long step = 0;; ++step) {
      if (step >= kStepBudget || arc > kArcBudget) {
        finish(TwTerminal::Budget);
        return;
      }
      const auto [t0, t1] = stepper.do_step();
      const X x1 = stepper.current_state();
      arc += std::hypot(x1[0] - x0[0], x1[1] - x0[1]);
      x0 = x1;

      const bool escaped = d * (x1[0] - w1) >= 0.0;
      const bool turned = d * x1[1] <= 0.0;
      double t_end = t1;
      TwTerminal fate = TwTerminal::Budget;
      if (escaped || turned) {
        // First event in the step, located by bisection on the dense output.
        auto locate = [&](auto&& happened) {
          double a = t0, b = t1;
          while (b - a > 1e-12 * std::max(1.0, std::abs(b))) {
            const double m = 0.5 * (a + b);
            if (happened(stepper.state_at(m))) {
              b = m;
            } else {
              a = m;
            }
          }
          return b;
        };
        double t_escape = t1 + 1.0, t_turn = t1 + 1.0;
        if (escaped) t_escape = locate([&](const X& s) { return d * (s[0] - w1) >= 0.0; });
        if (turned) t_turn = locate([&](const X& s) { return d * s[1] <= 0.0; });
        t_end = std::min(t_escape, t_turn);
        fate = t_escape <= t_turn ? TwTerminal::Escaped : TwTerminal::CapturedByMiddle;
      }
      for (int k = 1; k <= 8; ++k) {
        const double tk = t0 + (t_end - t0) * k / 8.0;
        track(tk, k == 8 && t_end == t1 ? x1 : stepper.state_at(tk));
      }
      const X xe = t_end == t1 ? x1 : stepper.state_at(t_end);
      traj.samples.push_back(sample(t_end, xe[0], xe[1]));
      if (fate != TwTerminal::Budget) {
        finish(fate);
        return;
      }
      if (mid_distance(x1[0], x1[1]) <= kSaddleRadius) {
        finish(TwTerminal::CapturedByMiddle);
        return;
      }
    }
  }
};

}  // namespace

TwTrajectory shoot(const TwModel& model, double u_minus, double lambda) {
  if (u_minus == 0.0) throw ConfigError("shoot: u_minus must be nonzero");
  const auto roots = other_roots(model.flux, u_minus, lambda);
  if (roots.size() != 2 || !(lambda < model.flux.df(u_minus))) {
    throw ConfigError(describe_point("shoot: three distinct equilibria required", u_minus, lambda));
  }
  TwTrajectory traj;
  traj.u_minus = u_minus;
  traj.lambda = lambda;
  traj.u1 = roots[0];
  traj.u2 = roots[1];

  const double d = u_minus > 0.0 ? -1.0 : 1.0;
  const double hp = model.flux.df(u_minus) - lambda;
  const double lin_damp = model.p == 0.0 ? model.alpha : 0.0;
  const double mu = 0.5 * (-lin_damp + std::sqrt(lin_damp * lin_damp + 4.0 * hp));
  const double sw = std::abs(u_minus);
  const double delta = kLaunch * sw;
  Shot shot{model, Orbit{model, u_minus, lambda, model.flux.f(u_minus)}, traj, d, mu, sw, sw * mu, lin_damp};

  // Linearized unstable branch before the launch point, for boundary decay.
  for (int k = 60; k >= 1; --k) {
    const double e = std::exp(-0.5 * k);
    traj.samples.push_back({-0.5 * k / mu, u_minus + d * delta * e, d * delta * mu * e});
  }
  const double W0 = (u_minus + d * delta) / sw;
  const double Z0 = d * delta * mu / shot.zscale;
  traj.samples.push_back(shot.sample(0.0, W0, Z0));
  traj.closest_approach = shot.far_distance(W0, Z0);

  // Strong damping relative to the saddle time scale makes the system stiff.
  const double stiffness = std::max(-shot.dZ_dZ(Z0), -shot.dZ_dZ(d));
  auto rhs = [&shot](const detail::State2& x, detail::State2& dx) {
    dx[0] = x[1];
    dx[1] = shot.dZ(x[0], x[1]);
  };
  std::unique_ptr<detail::DenseStepper2> stepper;
  if (stiffness <= kStiffRatio) {
    stepper = detail::make_dopri5(rhs, {W0, Z0}, 1e-2, kAbsTol, kRelTol);
  } else {
    auto jac = [&shot](const detail::State2& x, std::array<double, 4>& j) {
      j = {0.0, 1.0, shot.dZ_dW(x[0]), shot.dZ_dZ(x[1])};
    };
    stepper = detail::make_rosenbrock4(rhs, jac, {W0, Z0}, 1e-2 / stiffness, kAbsTol, kRelTol);
  }
  shot.run(*stepper);
  return traj;
}

TwConnection find_connection(const TwModel& model, double u_minus) {
  if (u_minus == 0.0) throw ConfigError("kinetic_value: u_minus must be nonzero");
  const FluxModel& flux = model.flux;
  const double t = tangent(flux, u_minus);
  const double lt = flux.df(t);
  const double lu = flux.df(u_minus);
  TwConnection result;

  const double probe = lt + kProbe * (lu - lt);
  TwTrajectory low = shoot(model, u_minus, probe);
  if (low.fate == TwTerminal::Budget) {
    throw NumericalError(describe_point("traveling wave: integration budget exhausted", u_minus, probe));
  }
  if (low.fate == TwTerminal::CapturedByMiddle) {
    result.lambda = lt;
    result.u_plus = t;
    result.classical = true;
    return result;
  }

  double lo = probe;
  double hi = lu;
  const double width = 1e-12 * std::abs(lu);
  TwTrajectory best = std::move(low);
  // Past the width tolerance, refine until some orbit reaches the saddle radius.
  for (int it = 1; hi - lo > width || best.terminal != TwTerminal::ConvergedToFarSaddle; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= width && (it > 200 || mid <= lo || mid >= hi)) break;
    if (it > 200 || mid <= lo || mid >= hi) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "kinetic_value: lambda bisection did not converge for u_minus = " << u_minus
          << ", bracket [" << lo << ", " << hi << "]";
      throw NumericalError(msg.str());
    }
    TwTrajectory traj = shoot(model, u_minus, mid);
    result.iterations = it;
    if (traj.fate == TwTerminal::Budget) {
      throw NumericalError(describe_point("traveling wave: integration budget exhausted", u_minus, mid));
    }
    if (traj.fate == TwTerminal::Escaped) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (traj.closest_approach <= best.closest_approach) best = std::move(traj);
  }
  result.lambda = 0.5 * (lo + hi);
  result.u_plus = other_roots(flux, u_minus, result.lambda).front();
  result.trajectory = std::move(best);
  return result;
}
double kinetic_value(const TwModel& model, double u_minus) {
  return find_connection(model, u_minus).u_plus;
}

std::vector<std::string> check_kinetic_table(const EntropyPair& pair, const KineticTable& table) {
  std::vector<std::string> problems;
  std::ostringstream msg;
  msg.precision(17);
  auto flush = [&] {
    problems.push_back(msg.str());
    msg.str("");
  };
  const FluxModel& flux = pair.flux();
  for (std::size_t i = 0; i < table.u_minus.size(); ++i) {
    const double u = table.u_minus[i];
    const double v = table.u_plus[i];
    if (i > 0 && !(u > table.u_minus[i - 1])) {
      msg << "row " << i << ": u_minus not increasing";
      flush();
    }
    if (i > 0 && !(v < table.u_plus[i - 1])) {
      msg << "row " << i << ": u_plus not decreasing (" << table.u_plus[i - 1] << " -> " << v << ")";
      flush();
    }
    const double t = tangent(flux, u);
    const double z = zero_dissipation(pair, u);
    const double s = u > 0.0 ? 1.0 : -1.0;
    if (!(s * v <= s * t + 1e-12 * std::abs(u)) || !(s * v > s * z)) {
      msg << "row " << i << ": u_plus = " << v << " outside the pinching bounds (" << z << ", " << t
          << "] at u_minus = " << u;
      flush();
    }
  }
  return problems;
}

double extrapolate_slope_at_zero(const std::vector<double>& u_minus, const std::vector<double>& u_plus) {
  if (u_minus.empty() || u_minus.size() != u_plus.size()) {
    throw ConfigError("extrapolate_slope_at_zero: need matching non-empty rows");
  }
  if (u_minus.size() < 3) return u_plus.front() / u_minus.front();
  std::vector<std::size_t> idx(u_minus.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::partial_sort(idx.begin(), idx.begin() + 3, idx.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(u_minus[a]) < std::abs(u_minus[b]);
  });
  // Quadratic through (u_i, u_plus_i / u_i), evaluated at 0.
  double slope = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double xa = u_minus[idx[a]];
    double weight = 1.0;
    for (int b = 0; b < 3; ++b) {
      if (b == a) continue;
      const double xb = u_minus[idx[b]];
      weight *= (0.0 - xb) / (xa - xb);
    }
    slope += weight * u_plus[idx[a]] / xa;
  }
  return slope;
}

KineticTable kinetic_table(const TwModel& model, const std::vector<double>& u_grid) {
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    if (u_grid[i] == 0.0) throw ConfigError("kinetic_table: grid contains 0");
    if (i > 0 && !(u_grid[i] > u_grid[i - 1])) throw ConfigError("kinetic_table: grid must be increasing");
  }
  KineticTable table;
  table.alpha = model.alpha;
  table.p = model.p;
  table.u_minus = u_grid;
  table.u_plus.assign(u_grid.size(), 0.0);
  detail::parallel_for(u_grid.size(), [&](std::size_t i) {
    try {
      table.u_plus[i] = kinetic_value(model, u_grid[i]);
    } catch (const NumericalError& e) {
      std::ostringstream msg;
      msg.precision(17);
      msg << e.what() << " [kinetic_table row u = " << u_grid[i] << "]";
      throw NumericalError(msg.str());
    }
  });

  table.slope_at_zero = extrapolate_slope_at_zero(table.u_minus, table.u_plus);

  const auto problems = check_kinetic_table(EntropyPair::quadratic(model.flux), table);
  if (!problems.empty()) throw InvariantViolation("kinetic_table: " + problems.front());
  return table;
}

KineticTableFile to_table_file(const TwModel& model, const KineticTable& table) {
  KineticTableFile file;
  file.flux_name = model.flux.name();
  file.metadata = {{"source", "traveling-wave"},
                   {"alpha", format_double(table.alpha)},
                   {"p", format_double(table.p)},
                   {"slope_at_zero", format_double(table.slope_at_zero)}};
  file.u_minus = table.u_minus;
  file.u_plus = table.u_plus;
  return file;
}

double classical_threshold(const FluxModel& flux, double p, double u_minus) {
  if (p > 1.0 / 3.0) throw ConfigError("classical_threshold: requires p <= 1/3");
  if (u_minus == 0.0) throw ConfigError("classical_threshold: u_minus must be nonzero");
  auto classical = [&](double alpha) { return find_connection(TwModel(flux, alpha, p), u_minus).classical; };
  double lo = 1e-4;
  double hi = 1e4;
  if (classical(lo) || !classical(hi)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "classical_threshold: threshold outside range [1e-4, 1e4] for u_minus = " << u_minus;
    throw NumericalError(msg.str());
  }
  while (hi / lo - 1.0 > 1e-10) {
    const double mid = std::sqrt(lo * hi);
    if (classical(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::sqrt(lo * hi);
}

double tw_dissipation(const TwTrajectory& traj, const TwModel& model, const EntropyPair& pair) {
  if (traj.terminal != TwTerminal::ConvergedToFarSaddle) {
    throw NumericalError(describe_point("tw_dissipation: orbit does not connect to the far saddle",
                                        traj.u_minus, traj.lambda));
  }
  const Orbit orbit{model, traj.u_minus, traj.lambda, model.flux.f(traj.u_minus)};
  double total = 0.0;
  const auto& s = traj.samples;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double len = s[i + 1].y - s[i].y;
    if (!(len > 0.0)) continue;
    const double a0 = orbit.accel(s[i].w, s[i].dw);
    const double a1 = orbit.accel(s[i + 1].w, s[i + 1].dw);
    // Cubic Hermite interpolants of w and w' on the segment.
    auto integrand = [&](double tau) {
      const double t2 = tau * tau, t3 = t2 * tau;
      const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + tau;
      const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
      const double w = h00 * s[i].w + h10 * len * s[i].dw + h01 * s[i + 1].w + h11 * len * s[i + 1].dw;
      const double z = h00 * s[i].dw + h10 * len * a0 + h01 * s[i + 1].dw + h11 * len * a1;
      return std::pow(std::abs(z), model.p + 2.0) * pair.d2U(w);
    };
    total += len * boost::math::quadrature::gauss<double, 7>::integrate(integrand, 0.0, 1.0);
  }
  return -model.alpha * total;
}

const char* to_string(TwTerminal t) {
  switch (t) {
    case TwTerminal::ConvergedToFarSaddle: return "ConvergedToFarSaddle";
    case TwTerminal::CapturedByMiddle: return "CapturedByMiddle";
    case TwTerminal::Escaped: return "Escaped";
    case TwTerminal::Budget: return "Budget";
  }
  return "?";
}

}  // namespace nonclassical
