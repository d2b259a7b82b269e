#ifndef NONCLASSICAL_DETAIL_ROOTS_HPP_
#define NONCLASSICAL_DETAIL_ROOTS_HPP_

#include <functional>
#include <string>

namespace nonclassical::detail {

/// Bracket-width stopping rule |a - b| <= max(abs, rel * min(|a|, |b|)).
struct RootTolerance {
  double abs = 1e-15;
  double rel = 1e-15;
};

/// Root of `fn` on [a, b], where fa = fn(a) and fb = fn(b) have opposite
/// signs (or one vanishes). TOMS 748 (bracketed bisection with secant and
/// inverse-cubic steps). Throws NumericalError naming `what` and the final
/// bracket if 200 iterations do not meet the tolerance.
double bracketed_root(const std::function<double(double)>& fn, double a, double b,
                      double fa, double fb, const std::string& what,
                      RootTolerance tol = {});

/// Expands a bracket away from `fixed` in steps that double in length until
/// `fn` changes sign relative to fn(fixed). Returns the far endpoint.
double expand_bracket(const std::function<double(double)>& fn, double fixed,
                      double first_step, const std::string& what,
                      int max_doublings = 80);

}  // namespace nonclassical::detail

#endif  // NONCLASSICAL_DETAIL_ROOTS_HPP_
