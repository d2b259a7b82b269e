#ifndef NONCLASSICAL_KINETIC_LAB_HPP_
#define NONCLASSICAL_KINETIC_LAB_HPP_

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonclassical/fd_schemes.hpp"
#include "nonclassical/kinetic.hpp"
#include "nonclassical/traveling_wave.hpp"

namespace nonclassical {

struct PlateauPair {
  double u_minus = 0.0;
  double u_plus = 0.0;
  double confidence = 1.0;
  /// Half the larger value range inside the two plateau windows.
  double noise = 0.0;
  /// Grid index of the steepest decrease.
  std::size_t transition = 0;
  std::vector<std::pair<std::string, std::string>> run_metadata;
};

struct ExtractOptions {
  /// A cell is flat when its neighbouring differences are at most flat_slope * jump;
  /// a plateau window also stays within flat_slope * jump of its first cell.
  double flat_slope = 1e-3;
  /// Cells skipped on each side of the transition.
  int buffer = 10;
  int min_window = 5;
  /// +1 looks for the steepest decrease (left state > 0), -1 for the steepest increase.
  int direction = 1;
};

/// Plateau pair around the steepest decreasing transition of a profile, or
/// nullopt (with the reason in `why`) when no undercompressive jump is found.
std::optional<PlateauPair> extract_pair(const std::vector<double>& profile, const FluxModel& flux,
                                        const ExtractOptions& options = {}, std::string* why = nullptr);

struct KineticSweepOptions {
  explicit KineticSweepOptions(KineticFunction estimate) : estimate(std::move(estimate)) {}

  /// Kinetic function estimate used to place the right state and size the run.
  KineticFunction estimate;
  /// Right Riemann state for a given left state; defaults to the midpoint of
  /// estimate(u) and its companion state.
  std::function<double(double)> far_state;
  /// Width of the intermediate plateau at the final time, in cells.
  double separation_cells = 300.0;
  /// Extra cells beyond the outermost waves on each side.
  double margin_cells = 200.0;
  ExtractOptions extract;
};

struct NumericalKineticTable {
  KineticTable table;
  std::vector<PlateauPair> pairs;
  /// One message per grid point whose extraction failed.
  std::vector<std::string> dropped;
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// One Riemann run of `scheme` per grid point (worker pool), one extracted
/// pair per run. Throws NumericalError with fewer than three rows and
/// InvariantViolation if the rows fail the kinetic-table validators.
NumericalKineticTable numerical_kinetic_function(const SchemeConfig& scheme, const std::vector<double>& u_grid,
                                                 const KineticSweepOptions& options);

/// Midpoint of estimate(u) and its companion state.
double midpoint_far_state(const FluxModel& flux, const KineticFunction& estimate, double u);

/// Traveling-wave diffusion coefficient of the scheme's equivalent equation
/// (p = 0): beta / sqrt(alpha).
double matched_tw_alpha(const SchemeConfig& scheme);

KineticTableFile to_table_file(const FluxModel& flux, const NumericalKineticTable& table);

struct TableComparison {
  std::size_t rows = 0;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  /// Deviations divided by |u_minus|.
  double max_rel = 0.0;
  double mean_rel = 0.0;
  double slope_at_zero_deviation = 0.0;
};

/// Interpolates b linearly onto the rows of a inside b's range. Throws
/// ConfigError when no row of a lies in b's range.
TableComparison compare_tables(const KineticTable& a, const KineticTable& b);
std::string format_comparison(const TableComparison& c);

}  // namespace nonclassical

#endif  // NONCLASSICAL_KINETIC_LAB_HPP_
