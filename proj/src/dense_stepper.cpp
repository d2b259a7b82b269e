// Built as C++17: the uBLAS containers used by odeint's Rosenbrock stepper
// rely on allocator members that C++20 removed.
#include "nonclassical/detail/dense_stepper.hpp"

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/ublas/matrix.hpp>
#include <boost/numeric/ublas/vector.hpp>

namespace nonclassical::detail {

namespace odeint = boost::numeric::odeint;

namespace {

class Dopri5 final : public DenseStepper2 {
 public:
  Dopri5(Rhs2 rhs, State2 x0, double dt0, double abs_tol, double rel_tol)
      : rhs_(std::move(rhs)),
        stepper_(odeint::make_dense_output(abs_tol, rel_tol, odeint::runge_kutta_dopri5<State2>())) {
    stepper_.initialize(x0, 0.0, dt0);
  }
  std::pair<double, double> do_step() override {
    return stepper_.do_step([this](const State2& x, State2& dx, double) { rhs_(x, dx); });
  }
  double current_time() const override { return stepper_.current_time(); }
  State2 current_state() const override { return stepper_.current_state(); }
  State2 state_at(double t) const override {
    State2 x{};
    const_cast<Stepper&>(stepper_).calc_state(t, x);
    return x;
  }

 private:
  using Stepper = odeint::result_of::make_dense_output<odeint::runge_kutta_dopri5<State2>>::type;
  Rhs2 rhs_;
  Stepper stepper_;
};

class Rosenbrock4 final : public DenseStepper2 {
 public:
  using Vec = boost::numeric::ublas::vector<double>;
  using Mat = boost::numeric::ublas::matrix<double>;

  Rosenbrock4(Rhs2 rhs, Jacobian2 jac, State2 x0, double dt0, double abs_tol, double rel_tol)
      : rhs_(std::move(rhs)),
        jac_(std::move(jac)),
        stepper_(odeint::make_dense_output(abs_tol, rel_tol, odeint::rosenbrock4<double>())) {
    Vec v(2);
    v[0] = x0[0];
    v[1] = x0[1];
    stepper_.initialize(v, 0.0, dt0);
  }
  std::pair<double, double> do_step() override {
    auto f = [this](const Vec& x, Vec& dx, double) {
      State2 s{x[0], x[1]}, ds{};
      rhs_(s, ds);
      dx[0] = ds[0];
      dx[1] = ds[1];
    };
    auto j = [this](const Vec& x, Mat& m, double, Vec& dfdt) {
      std::array<double, 4> a{};
      jac_(State2{x[0], x[1]}, a);
      m(0, 0) = a[0];
      m(0, 1) = a[1];
      m(1, 0) = a[2];
      m(1, 1) = a[3];
      dfdt[0] = 0.0;
      dfdt[1] = 0.0;
    };
    return stepper_.do_step(std::make_pair(f, j));
  }
  double current_time() const override { return stepper_.current_time(); }
  State2 current_state() const override {
    const Vec& v = stepper_.current_state();
    return {v[0], v[1]};
  }
  State2 state_at(double t) const override {
    Vec v(2);
    const_cast<Stepper&>(stepper_).calc_state(t, v);
    return {v[0], v[1]};
  }

 private:
  using Stepper = odeint::result_of::make_dense_output<odeint::rosenbrock4<double>>::type;
  Rhs2 rhs_;
  Jacobian2 jac_;
  Stepper stepper_;
};

}  // namespace

std::unique_ptr<DenseStepper2> make_dopri5(Rhs2 rhs, State2 x0, double dt0, double abs_tol,
                                           double rel_tol) {
  return std::make_unique<Dopri5>(std::move(rhs), x0, dt0, abs_tol, rel_tol);
}

std::unique_ptr<DenseStepper2> make_rosenbrock4(Rhs2 rhs, Jacobian2 jac, State2 x0, double dt0,
                                                double abs_tol, double rel_tol) {
  return std::make_unique<Rosenbrock4>(std::move(rhs), std::move(jac), x0, dt0, abs_tol, rel_tol);
}

}  // namespace nonclassical::detail
