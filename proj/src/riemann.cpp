#include "nonclassical/riemann.hpp"

#include <cmath>
#include <sstream>

#include "nonclassical/detail/roots.hpp"

namespace nonclassical {

namespace {

Wave shock_wave(const FluxModel& flux, WaveKind kind, double um, double up) {
  const double s = shock_speed(flux, um, up);
  return Wave{kind, um, up, s, s};
}

Wave rarefaction(const FluxModel& flux, double um, double up) {
  return Wave{WaveKind::Rarefaction, um, up, flux.df(um), flux.df(up)};
}

}  // namespace

WavePattern solve_riemann(const FluxModel& flux, const EntropyPair& pair,
                          const KineticFunction& kin, double u_left, double u_right) {
  (void)pair;
  WavePattern pattern{u_left, u_right, {}};
  if (u_left == u_right) return pattern;

  if (std::abs(u_left) <= kDegenerateState) {
    // f is convex on [0, u_r] and concave on [u_r, 0]: the classical solution is a fan.
    pattern.waves.push_back(rarefaction(flux, u_left, u_right));
    return pattern;
  }

  // Orientation: s = +1 for u_l > 0; for u_l < 0 every comparison is mirrored.
  const double s = u_left > 0.0 ? 1.0 : -1.0;
  const double ul = u_left;
  const double ur = u_right;
  if (s * ur >= s * ul) {
    pattern.waves.push_back(rarefaction(flux, ul, ur));
    return pattern;
  }
  const double pb = kin(ul);
  const double sharp = companion(flux, kin, ul);
  const bool classical_branch =
      kin.is_classical() || std::abs(pb - tangent(flux, ul)) <= 1e-12 * std::abs(ul);
  const WaveKind first_kind = classical_branch ? WaveKind::ClassicalShock : WaveKind::NonclassicalShock;

  if (s * ur >= s * sharp) {
    pattern.waves.push_back(shock_wave(flux, WaveKind::ClassicalShock, ul, ur));
  } else if (ur == pb) {
    pattern.waves.push_back(shock_wave(flux, first_kind, ul, pb));
  } else if (s * ur > s * pb) {
    pattern.waves.push_back(shock_wave(flux, first_kind, ul, pb));
    pattern.waves.push_back(shock_wave(flux, WaveKind::ClassicalShock, pb, ur));
  } else {
    pattern.waves.push_back(shock_wave(flux, first_kind, ul, pb));
    pattern.waves.push_back(rarefaction(flux, pb, ur));
  }
  return pattern;
}

double inverse_characteristic(const FluxModel& flux, double a, double b, double speed) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  auto r = [&flux, speed](double u) { return flux.df(u) - speed; };
  const double rlo = r(lo);
  const double rhi = r(hi);
  if (std::signbit(rlo) == std::signbit(rhi) && rlo != 0.0 && rhi != 0.0) {
    // Outside the fan: clamp to the nearer edge.
    return std::abs(rlo) < std::abs(rhi) ? lo : hi;
  }
  return detail::bracketed_root(r, lo, hi, rlo, rhi, "inverse characteristic",
                                {1e-15 * (1.0 + hi - lo), 1e-15});
}

double evaluate(const FluxModel& flux, const WavePattern& pattern, double xi) {
  double state = pattern.u_left;
  for (const Wave& w : pattern.waves) {
    if (xi <= w.speed_lo) return state;
    if (w.kind == WaveKind::Rarefaction && xi < w.speed_hi) {
      return inverse_characteristic(flux, w.u_minus, w.u_plus, xi);
    }
    state = w.u_plus;
  }
  return state;
}

std::vector<std::string> check_pattern(const FluxModel& flux, const EntropyPair& pair,
                                       const KineticFunction& kin, const WavePattern& pattern) {
  std::vector<std::string> problems;
  std::ostringstream msg;
  msg.precision(17);
  auto flush = [&] {
    problems.push_back(msg.str());
    msg.str("");
  };
  const auto& waves = pattern.waves;
  if (waves.size() > 2) {
    msg << "pattern has " << waves.size() << " waves";
    flush();
  }
  if (waves.empty()) {
    if (pattern.u_left != pattern.u_right) {
      msg << "empty pattern for distinct states " << pattern.u_left << ", " << pattern.u_right;
      flush();
    }
    return problems;
  }
  if (waves.front().u_minus != pattern.u_left || waves.back().u_plus != pattern.u_right) {
    msg << "pattern end states do not match the Riemann data";
    flush();
  }
  for (std::size_t i = 0; i < waves.size(); ++i) {
    const Wave& w = waves[i];
    const double scale = 1.0 + std::abs(w.speed_lo) + std::abs(w.speed_hi);
    if (i + 1 < waves.size()) {
      if (w.u_plus != waves[i + 1].u_minus) {
        msg << "wave " << i << " does not chain into wave " << i + 1;
        flush();
      }
      if (w.speed_hi > waves[i + 1].speed_lo + 1e-12 * scale) {
        msg << "speed ordering violated between waves " << i << " and " << i + 1 << " ("
            << w.speed_hi << " > " << waves[i + 1].speed_lo << ")";
        flush();
      }
    }
    if (w.kind == WaveKind::Rarefaction) {
      if (!(w.speed_lo < w.speed_hi)) {
        msg << "rarefaction " << i << " is not expanding";
        flush();
      }
      const double dir = w.u_plus > w.u_minus ? 1.0 : -1.0;
      for (int k = 1; k < 16; ++k) {
        const double u = w.u_minus + (w.u_plus - w.u_minus) * k / 16.0;
        if (std::abs(u) > kDegenerateState && !(flux.d2f(u) * dir > 0.0)) {
          msg << "rarefaction " << i << ": f' not monotone at u = " << u;
          flush();
          break;
        }
      }
      continue;
    }
    const ShockData shock{w.u_minus, w.u_plus, w.speed_lo,
                          w.kind == WaveKind::NonclassicalShock ? ShockKind::Nonclassical
                                                                : ShockKind::Classical};
    for (auto& p : check_shock(pair, shock)) problems.push_back("wave " + std::to_string(i) + ": " + p);
    const double cm = flux.df(w.u_minus);
    const double cp = flux.df(w.u_plus);
    const double tol = 1e-12 * (1.0 + std::abs(cm) + std::abs(cp));
    if (w.kind == WaveKind::ClassicalShock) {
      if (!(cm >= w.speed_lo - tol && w.speed_lo >= cp - tol)) {
        msg << "classical shock " << i << " violates the Lax inequalities";
        flush();
      }
    } else {
      if (!(std::min(cm, cp) >= w.speed_lo - tol)) {
        msg << "nonclassical shock " << i << " is not undercompressive";
        flush();
      }
      if (w.u_plus != kin(w.u_minus)) {
        msg << "nonclassical shock " << i << " violates the kinetic relation (" << w.u_plus
            << " != " << kin(w.u_minus) << ")";
        flush();
      }
    }
  }
  return problems;
}

const char* to_string(WaveKind k) {
  switch (k) {
    case WaveKind::Rarefaction: return "Rarefaction";
    case WaveKind::ClassicalShock: return "ClassicalShock";
    case WaveKind::NonclassicalShock: return "NonclassicalShock";
  }
  return "?";
}

std::string describe(const WavePattern& pattern) {
  std::ostringstream out;
  out.precision(17);
  out << "pattern u_left=" << pattern.u_left << " u_right=" << pattern.u_right
      << " waves=" << pattern.waves.size() << "\n";
  for (const Wave& w : pattern.waves) {
    out << "wave kind=" << to_string(w.kind) << " u_minus=" << w.u_minus << " u_plus=" << w.u_plus
        << " speed_lo=" << w.speed_lo << " speed_hi=" << w.speed_hi << "\n";
  }
  return out.str();
}

}  // namespace nonclassical
