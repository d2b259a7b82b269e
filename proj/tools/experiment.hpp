#ifndef NONCLASSICAL_TOOLS_EXPERIMENT_HPP_
#define NONCLASSICAL_TOOLS_EXPERIMENT_HPP_

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nonclassical::cli {

extern const char* const kArtifactVersion;

/// Flat key=value experiment description shared by every subcommand.
struct ExperimentConfig {
  std::string command = "riemann";
  std::string flux = "cubic";
  std::string entropy = "quadratic";
  /// linear:C | natural | table:PATH
  std::string kinetic = "linear:0.75";
  double alpha = 1.0;
  double beta = 1.0;
  double p = 0.0;
  int order = 3;
  /// Comma-separated scheme orders for `kinetics`.
  std::string orders = "2,3,4";
  double h = 0.01;
  double cfl = 0.4;
  double domain_lo = -1.0;
  double domain_hi = 3.0;
  std::string boundary = "fixed";
  double t_end = 1.0;
  /// lo:hi:n (n equally spaced points) or a comma-separated list.
  std::string u_grid = "0.75,1,1.5,2";
  double ul = 1.0;
  double ur = -0.5;
  /// riemann | steps:U0,X1,U1,... | sine:A:B:K
  std::string init = "riemann";
  double fan_step = 0.01;
  /// Intermediate plateau width, in cells, for `kinetics` runs.
  double separation = 300.0;
  std::string output = ".";
  std::uint64_t seed = 2024;
  /// all | comma-separated criterion ids or names.
  std::string criterion = "all";

  static const std::vector<std::string>& keys();
  /// Throws ConfigError for an unknown key or a malformed value.
  void set(std::string_view key, std::string_view value);
  std::string get(std::string_view key) const;

  /// One key=value line per key, in keys() order.
  std::string emit() const;
  /// Starts from the defaults; '#' lines and blank lines are ignored. Throws
  /// ConfigError on unknown or repeated keys.
  static ExperimentConfig parse(std::string_view text);
  static ExperimentConfig load(const std::string& path);

  bool operator==(const ExperimentConfig&) const = default;
};

std::vector<double> parse_u_grid(std::string_view spec);

/// Header lines written at the top of every output file.
std::string output_header(const ExperimentConfig& cfg);

/// Executes cfg.command, writing files under cfg.output and a summary to
/// `out`. Returns 0, or 4 when `validate` reports a failing criterion.
/// Module errors propagate.
int run(const ExperimentConfig& cfg, std::ostream& out);

/// Exit status for an exception escaping run(): 2 configuration, 3 numerical,
/// 4 invariant violation, 1 otherwise.
int exit_code_for(const std::exception_ptr& error);

}  // namespace nonclassical::cli

#endif  // NONCLASSICAL_TOOLS_EXPERIMENT_HPP_
