#ifndef NONCLASSICAL_FD_SCHEMES_HPP_
#define NONCLASSICAL_FD_SCHEMES_HPP_

#include <functional>
#include <string>
#include <vector>

#include "nonclassical/errors.hpp"
#include "nonclassical/models.hpp"

namespace nonclassical {

enum class Boundary { Periodic, FixedStates };

/// Semi-discrete scheme
///   du_j/dt = -(g*_{j+1/2} - g*_{j-1/2}) / h + beta h D2 u_j + alpha h^2 D3 u_j
/// built on an entropy-conservative flux g* of the given order.
struct SchemeConfig {
  FluxModel flux = FluxModel::cubic();
  EntropyPair pair = EntropyPair::quadratic(FluxModel::cubic());
  int order = 3;
  double alpha = 0.0;
  double beta = 1.0;
  double h = 0.01;
  double cfl = 0.4;
  double domain_lo = 0.0;
  double domain_hi = 1.0;
  Boundary boundary = Boundary::Periodic;

  /// Number of grid points: (domain_hi - domain_lo) / h, which must be an integer.
  std::size_t cells() const;
  double x(std::size_t j) const { return domain_lo + static_cast<double>(j) * h; }
  /// Throws ConfigError for an invalid configuration.
  void validate() const;
};

struct GridState {
  double time = 0.0;
  std::vector<double> cells;
};

/// int_0^1 g(v0 + s (v1 - v0)) ds in entropy variables.
double ec_flux_2pt(const EntropyPair& pair, double v0, double v1);
/// Entropy flux of the two-point flux: (v0 + v1)/2 g* - (psi(v0) + psi(v1))/2.
double ec_entropy_flux_2pt(const EntropyPair& pair, double v0, double v1);

/// Interface flux between stencil[1] and stencil[2] from four entropy-variable
/// values (v_{j-1}, v_j, v_{j+1}, v_{j+2}). Order 2 uses the two-point flux,
/// order 3 the two-point flux with the corrector
///   -(1/12) ((v_{j+2} - v_{j+1}) B*(v_j, v_{j+1}, v_{j+2}) - (v_j - v_{j-1}) B*(v_{j-1}, v_j, v_{j+1})),
/// B* = g' at the mean of its arguments, and order 4 the combination
///   4/3 g*(v_j, v_{j+1}) - 1/6 (g*(v_{j-1}, v_{j+1}) + g*(v_j, v_{j+2})).
double ec_flux_highorder(const EntropyPair& pair, const std::vector<double>& stencil, int order);
/// Matching discrete entropy flux G*, so that v_j (g*_{j+1/2} - g*_{j-1/2}) = G*_{j+1/2} - G*_{j-1/2}.
double ec_entropy_flux_highorder(const EntropyPair& pair, const std::vector<double>& stencil, int order);
/// Discrete potential psi* = (v_j + v_{j+1})/2 g* - G*.
double ec_potential_highorder(const EntropyPair& pair, const std::vector<double>& stencil, int order);

/// du/dt for every grid point.
std::vector<double> controlled_dissipation_rhs(const SchemeConfig& cfg, const GridState& state);

/// Per-point residual |v_j (g*_{j+1/2} - g*_{j-1/2}) - (G*_{j+1/2} - G*_{j-1/2})| of the discrete
/// entropy identity (flux-difference form, i.e. multiplied by h).
std::vector<double> entropy_identity_residual(const SchemeConfig& cfg, const GridState& state);

/// -(g*_{j+1/2} - g*_{j-1/2}) / h only.
std::vector<double> flux_difference(const SchemeConfig& cfg, const std::vector<double>& u);

struct FdDiagnostic {
  double time = 0.0;
  double mass = 0.0;
  double entropy = 0.0;
  double dt = 0.0;
};

struct FdRun {
  GridState state;
  std::vector<FdDiagnostic> diagnostics;
  long steps = 0;
  /// Time-step limits h / max|f'|, h / beta, h / |alpha| (before the cfl factor).
  double dt_hyperbolic = 0.0;
  double dt_parabolic = 0.0;
  double dt_dispersive = 0.0;
};

/// Raised when the integration produces a non-finite value.
class FdBlowup : public NumericalError {
 public:
  FdBlowup(const std::string& what, GridState last) : NumericalError(what), last_(std::move(last)) {}
  const GridState& last_finite_state() const { return last_; }

 private:
  GridState last_;
};

struct IntegrateOptions {
  /// Record diagnostics every `stride` steps (and always at the end).
  long stride = 1;
  /// Fixed time step; 0 selects the cfl-limited step.
  double fixed_dt = 0.0;
};

/// Classical four-stage Runge-Kutta to t_end with
/// dt = cfl * min(h / max|f'(u)|, h / beta, h / |alpha|), recomputed each step.
FdRun integrate(const SchemeConfig& cfg, const GridState& state0, double t_end,
                const IntegrateOptions& options = {});

/// Point values of `u0` on the grid of `cfg`.
GridState sample_grid(const SchemeConfig& cfg, const std::function<double(double)>& u0);

/// Riemann data u_left for x < x0, u_right otherwise.
GridState riemann_grid(const SchemeConfig& cfg, double u_left, double u_right, double x0 = 0.0);

double discrete_mass(const SchemeConfig& cfg, const GridState& state);
double discrete_entropy(const SchemeConfig& cfg, const GridState& state);

/// Max-norm error of the flux-difference operator against f(u)_x for a smooth
/// periodic profile on n points of [0, 1), and the observed orders over
/// successive halvings starting from n0.
struct OrderStudy {
  std::vector<int> n;
  std::vector<double> error;
  std::vector<double> eoc;
};
OrderStudy flux_difference_order(const FluxModel& flux, const EntropyPair& pair, int order, int n0,
                                 int halvings);

const char* to_string(Boundary b);
Boundary boundary_by_name(const std::string& name);

}  // namespace nonclassical

#endif  // NONCLASSICAL_FD_SCHEMES_HPP_
