#ifndef NONCLASSICAL_RIEMANN_HPP_
#define NONCLASSICAL_RIEMANN_HPP_

#include <string>
#include <vector>

#include "nonclassical/kinetic.hpp"
#include "nonclassical/models.hpp"
#include "nonclassical/shock_algebra.hpp"

namespace nonclassical {

enum class WaveKind { Rarefaction, ClassicalShock, NonclassicalShock };

struct Wave {
  WaveKind kind = WaveKind::Rarefaction;
  double u_minus = 0.0;
  double u_plus = 0.0;
  // For shocks speed_lo == speed_hi == shock speed; for rarefactions the fan
  // edges f'(u_minus) < f'(u_plus).
  double speed_lo = 0.0;
  double speed_hi = 0.0;

  bool is_shock() const { return kind != WaveKind::Rarefaction; }
};

/// Self-similar solution of a Riemann problem as an ordered list of at most two waves.
struct WavePattern {
  double u_left = 0.0;
  double u_right = 0.0;
  std::vector<Wave> waves;
};

/// Nonclassical Riemann solver for the kinetic relation u+ = kin(u-).
///
/// For u_l > 0: rarefaction if u_r >= u_l; one classical shock if
/// u_r in [companion(u_l), u_l); nonclassical shock (u_l, kin(u_l)) followed
/// by a classical shock if u_r lies strictly between kin(u_l) and the
/// companion state; nonclassical shock followed by a rarefaction if
/// u_r <= kin(u_l). The case u_l < 0 is the mirror image, evaluated with the
/// kinetic function at negative arguments. At the inflection point the
/// classical monotone solution is returned. Equal states give no waves.
WavePattern solve_riemann(const FluxModel& flux, const EntropyPair& pair,
                          const KineticFunction& kin, double u_left, double u_right);

/// u(xi) for xi = x / t; left-continuous at shock speeds.
double evaluate(const FluxModel& flux, const WavePattern& pattern, double xi);

/// Inverse of f' on the monotone branch between a and b (same sign or
/// touching 0): the state u in [min(a, b), max(a, b)] with f'(u) = speed.
double inverse_characteristic(const FluxModel& flux, double a, double b, double speed);

/// Violated Wave / WavePattern invariants as messages; empty when valid.
std::vector<std::string> check_pattern(const FluxModel& flux, const EntropyPair& pair,
                                       const KineticFunction& kin, const WavePattern& pattern);

const char* to_string(WaveKind k);
/// Multi-line listing of the pattern (one wave per line).
std::string describe(const WavePattern& pattern);

}  // namespace nonclassical

#endif  // NONCLASSICAL_RIEMANN_HPP_
