#ifndef NONCLASSICAL_FRONT_TRACKING_HPP_
#define NONCLASSICAL_FRONT_TRACKING_HPP_

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonclassical/errors.hpp"
#include "nonclassical/kinetic.hpp"
#include "nonclassical/riemann.hpp"

namespace nonclassical {

enum class FrontKind { ClassicalShockFront, NonclassicalShockFront, RarefactionFront };

struct Front {
  double position = 0.0;
  double u_left = 0.0;
  double u_right = 0.0;
  double speed = 0.0;
  FrontKind kind = FrontKind::ClassicalShockFront;
  /// Generalized strength, computed when the front is created.
  double sigma = 0.0;
};

/// Piecewise-constant approximate solution at one instant. Fronts are
/// ordered by position; fronts sharing a position (fans just emitted from
/// one point) are ordered by increasing speed.
struct FrontState {
  double time = 0.0;
  std::vector<Front> fronts;
  double u_far_left = 0.0;
  /// Fixed window [window_lo, window_hi] over which mass is measured.
  double window_lo = 0.0;
  double window_hi = 0.0;
  /// Integral over [0, time] of f(u(window_lo)) - f(u(window_hi)).
  double boundary_flux = 0.0;

  double u_far_right() const { return fronts.empty() ? u_far_left : fronts.back().u_right; }
  /// u(x), left-continuous at fronts.
  double value(double x) const;
};

struct Functionals {
  double V = 0.0;
  double TV = 0.0;
  double mass = 0.0;
};

/// sigma(u-, u+) = |psi(u-) - psi(u+)| with psi(u) = u for u >= 0 and the
/// zero-dissipation state for u < 0.
double generalized_strength(const EntropyPair& pair, double u_minus, double u_plus);

struct InteractionEvent {
  double time = 0.0;
  /// Consecutive front indices [first, last] meeting at one point.
  std::size_t first = 0;
  std::size_t last = 0;
  double position = 0.0;
};

/// One row of the diagnostics series, recorded at t = 0, after every
/// interaction, and at the final time.
struct FrontDiagnostics {
  double time = 0.0;
  double V = 0.0;
  double TV = 0.0;
  double mass = 0.0;
  std::size_t n_fronts = 0;
  long interaction_id = 0;
  /// d/dt of the L1 norm difference: sum |speed| |jump|.
  double l1_rate = 0.0;
  /// mass(t) - mass(0) - boundary flux integral.
  double mass_residual = 0.0;
};

struct CauchyResult {
  FrontState state;
  std::vector<FrontDiagnostics> diagnostics;
  long interactions = 0;
  /// Largest V(after) - V(before) over all interactions (<= 0 when V never grew).
  double max_v_increase = -1.0;
  /// Number of interactions where TV increased while V did not.
  long tv_up_v_down = 0;
  /// Integral over time of the summed entropy dissipation of all shock fronts.
  double shock_entropy_production = 0.0;
};

/// Raised by run_cauchy when the interaction budget is exhausted.
class InteractionBudgetExceeded : public NumericalError {
 public:
  InteractionBudgetExceeded(const std::string& what, FrontState state)
      : NumericalError(what), state_(std::move(state)) {}
  const FrontState& state() const { return state_; }

 private:
  FrontState state_;
};

class FrontTracker {
 public:
  /// `fan_step` bounds the jump across each rarefaction front.
  FrontTracker(EntropyPair pair, KineticFunction kin, double fan_step);

  /// Cell-midpoint sampling of `sampler` on n_cells cells of the window,
  /// with every jump resolved by the Riemann solver.
  FrontState init_from_data(const std::function<double(double)>& sampler, double window_lo,
                            double window_hi, int n_cells) const;
  /// Initial state with given breakpoints x_1 < ... < x_n and n + 1 states.
  FrontState init_from_steps(const std::vector<double>& breakpoints,
                             const std::vector<double>& states, double window_lo,
                             double window_hi) const;

  std::optional<InteractionEvent> next_interaction(const FrontState& state) const;
  /// Moves all fronts to the event time and replaces the colliding group by
  /// the fronts of the Riemann solution between its outer states.
  FrontState resolve_interaction(const FrontState& state, const InteractionEvent& event) const;
  /// Fronts advanced linearly to time t (no interaction may occur before t).
  FrontState advance(const FrontState& state, double t) const;

  CauchyResult run_cauchy(const FrontState& state0, double t_end,
                          long max_interactions = 1'000'000) const;

  Functionals functionals(const FrontState& state) const;
  /// Violated Front / FrontState invariants.
  std::vector<std::string> check_state(const FrontState& state) const;

  /// sigma / |jump| lies in [c_lower, c_upper] for every front the solver can
  /// emit; sampled over |u| in [1e-3, 10] at construction.
  double c_lower() const { return c_lower_; }
  double c_upper() const { return c_upper_; }
  double fan_step() const { return fan_step_; }
  const EntropyPair& pair() const { return pair_; }
  const KineticFunction& kinetic() const { return kin_; }

 private:
  std::vector<Front> fronts_from_pattern(const WavePattern& pattern, double x) const;
  Front make_front(double x, double ul, double ur, FrontKind kind) const;

  EntropyPair pair_;
  KineticFunction kin_;
  double fan_step_;
  double c_lower_ = 1.0;
  double c_upper_ = 1.0;
};

const char* to_string(FrontKind k);

}  // namespace nonclassical

#endif  // NONCLASSICAL_FRONT_TRACKING_HPP_
