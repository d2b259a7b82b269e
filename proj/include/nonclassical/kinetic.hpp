#ifndef NONCLASSICAL_KINETIC_HPP_
#define NONCLASSICAL_KINETIC_HPP_

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nonclassical/models.hpp"
#include "nonclassical/shock_algebra.hpp"

namespace nonclassical {

/// A validated kinetic function: the right state u+ = phi(u-) selected across
/// undercompressive shocks.
///
/// Every instance has passed the validator: phi is monotone decreasing,
/// phi(0) = 0, pinched between the zero-dissipation and tangent functions
/// (strictly above the former), and its second iterate is a strict
/// contraction |phi(phi(u))| <= K |u| with K < 1. The checks run on a
/// log-spaced grid out to `range`; construction throws ConfigError on failure.
class KineticFunction {
 public:
  /// phi(u) = -c u.
  static KineticFunction linear(const EntropyPair& pair, double c, double range = 10.0);
  /// phi = tangent function; the Riemann solver then yields classical solutions.
  static KineticFunction classical(const FluxModel& flux, double range = 10.0);
  /// Piecewise-linear interpolation of tabulated (u-, u+) samples through the
  /// origin. Beyond the outermost sample the ratio u+/u- is held constant; a
  /// table without negative rows is extended by odd reflection. The
  /// interpolant is clipped to the tangent bound.
  static KineticFunction tabulated(const EntropyPair& pair, std::vector<double> u_minus,
                                   std::vector<double> u_plus, std::string description,
                                   double range = 10.0);
  /// Arbitrary user-supplied map, validated like the others.
  static KineticFunction custom(const EntropyPair& pair, ScalarFn phi, std::string description,
                                double range = 10.0);

  double operator()(double u) const;

  double contraction_K() const { return contraction_; }
  double lipschitz_bound() const { return lipschitz_; }
  const std::string& description() const { return description_; }
  /// True when the function is the tangent function itself.
  bool is_classical() const { return classical_; }
  const FluxModel& flux() const { return flux_; }

 private:
  KineticFunction(FluxModel flux, ScalarFn phi, std::string description, bool classical);
  void validate(const EntropyPair* pair, double range);

  FluxModel flux_;
  ScalarFn phi_;
  std::string description_;
  bool classical_ = false;
  double contraction_ = 0.0;
  double lipschitz_ = 0.0;
};

/// Companion function: the state c between phi(u) and u, c != phi(u), with
/// shock_speed(u, c) = shock_speed(u, phi(u)). Equals tangent(u) when phi(u)
/// is the tangent state. Returns 0 for |u| <= kDegenerateState.
double companion(const FluxModel& flux, const KineticFunction& kin, double u);

/// Kinetic function selecting classical solutions only (phi = tangent).
KineticFunction classical_kinetic(const FluxModel& flux);

/// Contents of a kinetic-table v1 file:
///
///   # kinetic-table v1 flux=<name> key=value ...
///   u_minus<TAB>u_plus
///
/// Rows have strictly increasing u_minus and are printed with 17 significant
/// digits so that formatting and parsing round-trip bit-exactly.
struct KineticTableFile {
  std::string flux_name;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<double> u_minus;
  std::vector<double> u_plus;

  bool operator==(const KineticTableFile&) const = default;
};

std::string format_kinetic_table(const KineticTableFile& table);
/// Throws ConfigError on a malformed header, row, or non-increasing u_minus.
KineticTableFile parse_kinetic_table(std::string_view text);

KineticTableFile read_kinetic_table_file(const std::string& path);
void write_kinetic_table_file(const std::string& path, const KineticTableFile& table);

/// Seventeen significant digits ("%.17g"); reads back to the same double.
std::string format_double(double x);

}  // namespace nonclassical

#endif  // NONCLASSICAL_KINETIC_HPP_
