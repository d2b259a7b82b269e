#ifndef NONCLASSICAL_DETAIL_DENSE_STEPPER_HPP_
#define NONCLASSICAL_DETAIL_DENSE_STEPPER_HPP_

#include <array>
#include <functional>
#include <memory>
#include <utility>

namespace nonclassical::detail {

using State2 = std::array<double, 2>;
using Rhs2 = std::function<void(const State2& x, State2& dx)>;
/// Jacobian of an autonomous planar system, row-major.
using Jacobian2 = std::function<void(const State2& x, std::array<double, 4>& j)>;

/// Adaptive stepper with dense output for an autonomous planar system.
class DenseStepper2 {
 public:
  virtual ~DenseStepper2() = default;
  /// Advances one accepted step; returns (t_old, t_new).
  virtual std::pair<double, double> do_step() = 0;
  virtual double current_time() const = 0;
  virtual State2 current_state() const = 0;
  /// Interpolated state inside the last step.
  virtual State2 state_at(double t) const = 0;
};

/// Dormand-Prince 5(4) with dense output.
std::unique_ptr<DenseStepper2> make_dopri5(Rhs2 rhs, State2 x0, double dt0, double abs_tol,
                                           double rel_tol);
/// Rosenbrock 4(3) with dense output, for stiff systems.
std::unique_ptr<DenseStepper2> make_rosenbrock4(Rhs2 rhs, Jacobian2 jac, State2 x0, double dt0,
                                                double abs_tol, double rel_tol);

}  // namespace nonclassical::detail

#endif  // NONCLASSICAL_DETAIL_DENSE_STEPPER_HPP_
