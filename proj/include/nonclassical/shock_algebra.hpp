#ifndef NONCLASSICAL_SHOCK_ALGEBRA_HPP_
#define NONCLASSICAL_SHOCK_ALGEBRA_HPP_

#include <string>
#include <vector>

#include "nonclassical/errors.hpp"
#include "nonclassical/models.hpp"

namespace nonclassical {

/// States closer to the inflection point than this are treated as u = 0 by
/// every kinetic-algebra function.
inline constexpr double kDegenerateState = 1e-13;

/// Thrown by shock_speed and its callers when u_minus == u_plus.
class DegenerateShock : public ConfigError {
 public:
  DegenerateShock() : ConfigError("degenerate shock") {}
};

/// Rankine-Hugoniot speed (f(u-) - f(u+)) / (u- - u+). Symmetric in its states.
double shock_speed(const FluxModel& flux, double u_minus, double u_plus);

/// Tangent function: the state t of opposite sign to u with
/// f'(t) = shock_speed(u, t). Returns 0 for |u| <= kDegenerateState.
double tangent(const FluxModel& flux, double u);

/// Entropy dissipation E(u-, u+) = -s (U(u+) - U(u-)) + F(u+) - F(u-).
double entropy_dissipation(const EntropyPair& pair, double u_minus, double u_plus);

/// Same quantity from the integral identity
///   E = -int_{u-}^{u+} U''(v) (v - u-) (chord(u-, v) - chord(u-, u+)) dv,
/// by adaptive Gauss-Kronrod quadrature. Used to cross-check the closed form.
double entropy_dissipation_integral(const EntropyPair& pair, double u_minus, double u_plus);

/// Zero-dissipation function: the state z != u with E(u, z) = 0, on the far
/// side of tangent(u). Returns 0 for |u| <= kDegenerateState.
double zero_dissipation(const EntropyPair& pair, double u);

enum class ShockKind { Classical, Nonclassical };

struct ShockData {
  double u_minus = 0.0;
  double u_plus = 0.0;
  double speed = 0.0;
  ShockKind kind = ShockKind::Classical;
};

/// Shock with its Rankine-Hugoniot speed.
ShockData make_shock(const FluxModel& flux, double u_minus, double u_plus, ShockKind kind);

/// Violated ShockData invariants (Rankine-Hugoniot residual, E <= 1e-12) as
/// human-readable messages; empty when the shock is admissible.
std::vector<std::string> check_shock(const EntropyPair& pair, const ShockData& shock);

enum class ShockClass { Lax, SlowUndercompressive, FastUndercompressive, Inadmissible };

/// Compares characteristic speeds on both sides with the shock speed.
ShockClass classify_shock(const FluxModel& flux, double u_minus, double u_plus);

const char* to_string(ShockClass c);
const char* to_string(ShockKind k);

}  // namespace nonclassical

#endif  // NONCLASSICAL_SHOCK_ALGEBRA_HPP_
