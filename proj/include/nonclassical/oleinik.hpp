#ifndef NONCLASSICAL_OLEINIK_HPP_
#define NONCLASSICAL_OLEINIK_HPP_

#include "nonclassical/models.hpp"

namespace nonclassical {

/// Classical entropy solution of a Riemann problem by the convex-hull rule,
/// independent of the wave-pattern solver: u(xi) minimizes f(u) - xi u over
/// [u_l, u_r] when u_l < u_r and maximizes it over [u_r, u_l] otherwise.
/// Candidates are the endpoints, the inflection point and the roots of
/// f'(u) = xi found by bisection on the monotone branches of f'.
double oleinik_solution(const FluxModel& flux, double u_left, double u_right, double xi);

}  // namespace nonclassical

#endif  // NONCLASSICAL_OLEINIK_HPP_
