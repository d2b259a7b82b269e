#ifndef NONCLASSICAL_TRAVELING_WAVE_HPP_
#define NONCLASSICAL_TRAVELING_WAVE_HPP_

#include <string>
#include <vector>

#include "nonclassical/kinetic.hpp"
#include "nonclassical/models.hpp"

namespace nonclassical {

/// Diffusive-dispersive regularization
///   u_t + f(u)_x = alpha (|u_x|^p u_x)_x + u_xxx.
struct TwModel {
  FluxModel flux;
  double alpha = 1.0;
  double p = 0.0;

  /// Throws ConfigError unless alpha > 0 and p >= 0.
  TwModel(FluxModel flux, double alpha, double p);
};

enum class TwTerminal { ConvergedToFarSaddle, CapturedByMiddle, Escaped, Budget };

struct TwSample {
  double y = 0.0;
  double w = 0.0;
  double dw = 0.0;
};

/// Orbit of w'' = h(w) - alpha |w'|^p w' leaving u_minus along its unstable
/// manifold, with h(w) = f(w) - f(u_minus) - lambda (w - u_minus).
struct TwTrajectory {
  double u_minus = 0.0;
  double lambda = 0.0;
  /// Equilibria ordered along the direction of travel: far saddle u1, middle
  /// point u2 (u1, u2 on the far side of u_minus).
  double u1 = 0.0;
  double u2 = 0.0;
  std::vector<TwSample> samples;
  /// ConvergedToFarSaddle when the orbit came within the saddle radius; the
  /// samples then stop at the closest approach and continue along the
  /// linearized stable branch.
  TwTerminal terminal = TwTerminal::Budget;
  /// Eventual outcome of the integration (never ConvergedToFarSaddle).
  TwTerminal fate = TwTerminal::Budget;
  /// Smallest distance to (u1, 0) reached, in units of |u_minus|.
  double closest_approach = 0.0;
};

struct KineticTable {
  double alpha = 0.0;
  double p = 0.0;
  std::vector<double> u_minus;
  std::vector<double> u_plus;
  /// phi'(0) extrapolated from the three entries of smallest |u|.
  double slope_at_zero = 0.0;
};

/// Distinct real roots of h, ascending. u_minus is always one of them.
std::vector<double> equilibria(const TwModel& model, double u_minus, double lambda);

/// Integrates the orbit until it escapes past u1, is captured by the middle
/// equilibrium, converges to (u1, 0), or exhausts its budget. Requires lambda
/// strictly between the tangent speed and f'(u_minus).
TwTrajectory shoot(const TwModel& model, double u_minus, double lambda);

struct TwConnection {
  double lambda = 0.0;
  double u_plus = 0.0;
  /// True when no saddle-saddle connection exists and u_plus is the tangent state.
  bool classical = false;
  /// Orbit for the final speed; empty for the classical regime.
  TwTrajectory trajectory;
  int iterations = 0;
};

/// Bisection in lambda for the saddle-saddle connection leaving u_minus.
TwConnection find_connection(const TwModel& model, double u_minus);

/// phi(u_minus) of the kinetic function generated by the regularization:
/// the far saddle of the connection, or the tangent state in the classical regime.
double kinetic_value(const TwModel& model, double u_minus);

/// Rows of kinetic_value over a sorted grid of nonzero states, computed by
/// the worker pool. Throws InvariantViolation if the rows are not strictly
/// decreasing or leave the pinching bounds.
KineticTable kinetic_table(const TwModel& model, const std::vector<double>& u_grid);

/// phi'(0) from a quadratic fit of u_plus / u_minus through the three rows of
/// smallest |u_minus|, evaluated at 0 (the single ratio for fewer rows).
double extrapolate_slope_at_zero(const std::vector<double>& u_minus, const std::vector<double>& u_plus);

/// Violated KineticTable invariants as messages.
std::vector<std::string> check_kinetic_table(const EntropyPair& pair, const KineticTable& table);

/// Conversion to and from the kinetic-table v1 file layout.
KineticTableFile to_table_file(const TwModel& model, const KineticTable& table);

/// Smallest alpha for which the kinetic function is classical at u_minus,
/// found by bisection in log(alpha) over [1e-4, 1e4]. Requires p <= 1/3.
double classical_threshold(const FluxModel& flux, double p, double u_minus);

/// -alpha * integral of |w'|^(p+2) U''(w) dy along a connecting orbit.
/// Throws NumericalError unless the orbit reached the far saddle.
double tw_dissipation(const TwTrajectory& traj, const TwModel& model, const EntropyPair& pair);

/// Energy z^2/2 - int_{u_minus}^w h along the orbit; non-increasing in y.
double orbit_energy(const TwModel& model, double u_minus, double lambda, double w, double z);

const char* to_string(TwTerminal t);

}  // namespace nonclassical

#endif  // NONCLASSICAL_TRAVELING_WAVE_HPP_
