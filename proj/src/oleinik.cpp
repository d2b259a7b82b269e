#include "nonclassical/oleinik.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace nonclassical {

double oleinik_solution(const FluxModel& flux, double u_left, double u_right, double xi) {
  if (u_left == u_right) return u_left;
  const double lo = std::min(u_left, u_right);
  const double hi = std::max(u_left, u_right);
  const double sign = u_left < u_right ? 1.0 : -1.0;
  auto objective = [&](double u) { return sign * (flux.f(u) - xi * u); };
  auto slope = [&](double u) { return flux.df(u) - xi; };

  // f' is monotone on each side of the inflection point, so each piece holds
  // at most one critical point.
  std::vector<double> candidates{lo, hi};
  std::vector<std::pair<double, double>> pieces;
  if (lo < 0.0 && hi > 0.0) {
    pieces = {{lo, 0.0}, {0.0, hi}};
    candidates.push_back(0.0);
  } else {
    pieces = {{lo, hi}};
  }
  for (auto [x0, x1] : pieces) {
    double r0 = slope(x0);
    const double r1 = slope(x1);
    if (r0 == 0.0 || r1 == 0.0 || (r0 < 0.0) == (r1 < 0.0)) continue;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (x0 + x1);
      if (m <= x0 || m >= x1) break;
      const double rm = slope(m);
      if ((rm < 0.0) == (r0 < 0.0)) {
        x0 = m;
        r0 = rm;
      } else {
        x1 = m;
      }
    }
    candidates.push_back(0.5 * (x0 + x1));
  }
  double best = candidates.front();
  double best_value = objective(best);
  for (double u : candidates) {
    const double v = objective(u);
    if (v < best_value) {
      best = u;
      best_value = v;
    }
  }
  return best;
}

}  // namespace nonclassical
