#include "nonclassical/detail/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "nonclassical/errors.hpp"

namespace nonclassical::detail {

double bracketed_root(const std::function<double(double)>& fn, double a, double b,
                      double fa, double fb, const std::string& what, RootTolerance tol) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::signbit(fa) == std::signbit(fb)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": no sign change on [" << a << ", " << b << "] (f = " << fa << ", " << fb
        << ")";
    throw NumericalError(msg.str());
  }
  if (a > b) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  auto stop = [tol](double x, double y) {
    return std::abs(x - y) <= std::max(tol.abs, tol.rel * std::min(std::abs(x), std::abs(y)));
  };
  std::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(fn, a, b, fa, fb, stop, iters);
  if (iters >= 200 && !stop(lo, hi)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": root finder did not converge, bracket [" << lo << ", " << hi << "]";
    throw NumericalError(msg.str());
  }
  const double flo = fn(lo);
  const double fhi = fn(hi);
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

double expand_bracket(const std::function<double(double)>& fn, double fixed, double first_step,
                      const std::string& what, int max_doublings) {
  const bool sign0 = std::signbit(fn(fixed));
  double step = first_step;
  for (int i = 0; i < max_doublings; ++i) {
    const double x = fixed + step;
    const double fx = fn(x);
    if (fx == 0.0 || std::signbit(fx) != sign0) return x;
    step *= 2.0;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << what << ": no sign change found expanding from " << fixed << " up to " << fixed + step;
  throw NumericalError(msg.str());
}

}  // namespace nonclassical::detail
