#include "nonclassical/kinetic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nonclassical/detail/roots.hpp"
#include "nonclassical/errors.hpp"

namespace nonclassical {

namespace {

std::string fmt_point(const char* what, double u, double value) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "kinetic function rejected: " << what << " at u = " << u << " (phi = " << value << ")";
  return msg.str();
}

// Validation grid: 0 plus +-10^k, k from -4 up to log10(range).
std::vector<double> validation_grid(double range) {
  std::vector<double> grid = symmetric_log_grid(-4.0, std::log10(range), 12);
  grid.push_back(0.0);
  std::sort(grid.begin(), grid.end());
  return grid;
}

}  // namespace

KineticFunction::KineticFunction(FluxModel flux, ScalarFn phi, std::string description,
                                 bool classical)
    : flux_(std::move(flux)),
      phi_(std::move(phi)),
      description_(std::move(description)),
      classical_(classical) {}

double KineticFunction::operator()(double u) const {
  if (std::abs(u) <= kDegenerateState) return 0.0;
  return phi_(u);
}

void KineticFunction::validate(const EntropyPair* pair, double range) {
  if (!(range > 0.0)) throw ConfigError("kinetic function: validation range must be positive");
  const std::vector<double> grid = validation_grid(range);
  std::vector<double> values;
  values.reserve(grid.size());
  for (double u : grid) values.push_back((*this)(u));

  if (std::abs(phi_(0.0)) > kDegenerateState) {
    throw ConfigError(fmt_point("phi(0) != 0", 0.0, phi_(0.0)));
  }
  double lip = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!std::isfinite(values[i])) throw ConfigError(fmt_point("non-finite value", grid[i], values[i]));
    if (values[i] < values[i + 1]) {
      throw ConfigError(fmt_point("not monotone decreasing", grid[i + 1], values[i + 1]));
    }
    lip = std::max(lip, (values[i] - values[i + 1]) / (grid[i + 1] - grid[i]));
  }
  double k = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = grid[i];
    if (u == 0.0) continue;
    const double v = values[i];
    const double au = std::abs(u);
    const double t = tangent(flux_, u);
    // Same side as the tangent state, no further from 0 than it.
    const bool beyond_tangent = u > 0.0 ? v > t + 1e-12 * au : v < t - 1e-12 * au;
    if (beyond_tangent || (u > 0.0 ? v >= 0.0 : v <= 0.0)) {
      throw ConfigError(fmt_point("upper pinching bound phi <= tangent", u, v));
    }
    if (pair != nullptr) {
      const double z = zero_dissipation(*pair, u);
      const bool above_zero = u > 0.0 ? v - z > 1e-10 * au : z - v > 1e-10 * au;
      if (!above_zero) {
        throw ConfigError(fmt_point("strict lower pinching bound phi > zero-dissipation", u, v));
      }
    }
    k = std::max(k, std::abs((*this)(v)) / au);
  }
  if (!(k < 1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "kinetic function rejected: second iterate is not a strict contraction (K = " << k
        << ")";
    throw ConfigError(msg.str());
  }
  contraction_ = k;
  lipschitz_ = lip;
}

KineticFunction KineticFunction::linear(const EntropyPair& pair, double c, double range) {
  std::ostringstream desc;
  desc.precision(17);
  desc << "linear:" << c;
  KineticFunction kin(pair.flux(), [c](double u) { return -c * u; }, desc.str(), false);
  kin.validate(&pair, range);
  return kin;
}

KineticFunction KineticFunction::classical(const FluxModel& flux, double range) {
  KineticFunction kin(flux, [flux](double u) { return tangent(flux, u); }, "phi-natural", true);
  // The zero-dissipation bound holds strictly for the tangent function.
  kin.validate(nullptr, range);
  return kin;
}

KineticFunction KineticFunction::custom(const EntropyPair& pair, ScalarFn phi,
                                        std::string description, double range) {
  KineticFunction kin(pair.flux(), std::move(phi), std::move(description), false);
  kin.validate(&pair, range);
  return kin;
}

KineticFunction KineticFunction::tabulated(const EntropyPair& pair, std::vector<double> u_minus,
                                           std::vector<double> u_plus, std::string description,
                                           double range) {
  if (u_minus.size() != u_plus.size() || u_minus.empty()) {
    throw ConfigError("kinetic table: need a non-empty set of (u_minus, u_plus) rows");
  }
  for (std::size_t i = 0; i < u_minus.size(); ++i) {
    if (u_minus[i] == 0.0) throw ConfigError("kinetic table: row with u_minus = 0");
    if (i > 0 && !(u_minus[i] > u_minus[i - 1])) {
      throw ConfigError("kinetic table: u_minus must be strictly increasing");
    }
  }
  // Knots through the origin; odd reflection for a missing negative side.
  std::vector<double> xs{0.0};
  std::vector<double> ys{0.0};
  const bool has_negative = u_minus.front() < 0.0;
  const bool has_positive = u_minus.back() > 0.0;
  for (std::size_t i = 0; i < u_minus.size(); ++i) {
    xs.push_back(u_minus[i]);
    ys.push_back(u_plus[i]);
    if (!has_negative && u_minus[i] > 0.0) {
      xs.push_back(-u_minus[i]);
      ys.push_back(-u_plus[i]);
    }
    if (!has_positive && u_minus[i] < 0.0) {
      xs.push_back(-u_minus[i]);
      ys.push_back(-u_plus[i]);
    }
  }
  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> sx, sy;
  for (std::size_t i : order) {
    sx.push_back(xs[i]);
    sy.push_back(ys[i]);
  }
  const FluxModel flux = pair.flux();
  auto phi = [sx, sy, flux](double u) {
    double v;
    if (u <= sx.front()) {
      v = u * (sy.front() / sx.front());
    } else if (u >= sx.back()) {
      v = u * (sy.back() / sx.back());
    } else {
      const auto it = std::upper_bound(sx.begin(), sx.end(), u);
      const std::size_t j = static_cast<std::size_t>(it - sx.begin());
      const double w = (u - sx[j - 1]) / (sx[j] - sx[j - 1]);
      v = (1.0 - w) * sy[j - 1] + w * sy[j];
    }
    const double t = tangent(flux, u);
    return u > 0.0 ? std::min(v, t) : std::max(v, t);
  };
  if (!has_negative || !has_positive) description += " (odd extension)";
  KineticFunction kin(flux, std::move(phi), std::move(description), false);
  kin.validate(&pair, range);
  return kin;
}

double companion(const FluxModel& flux, const KineticFunction& kin, double u) {
  if (std::abs(u) <= kDegenerateState) return 0.0;
  const double pb = kin(u);
  const double t = tangent(flux, u);
  if (kin.is_classical() || std::abs(pb - t) <= 1e-12 * std::abs(u)) return t;
  const double target = flux.chord(u, pb);
  // chord(u, .) is minimal at the tangent state and increases towards f'(u) at u.
  auto q = [&flux, u, target](double v) {
    return (v == u ? flux.df(u) : flux.chord(u, v)) - target;
  };
  return detail::bracketed_root(q, t, u, q(t), q(u), "companion");
}

KineticFunction classical_kinetic(const FluxModel& flux) { return KineticFunction::classical(flux); }

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_kinetic_table(const KineticTableFile& table) {
  std::string out = "# kinetic-table v1 flux=" + table.flux_name;
  for (const auto& [key, value] : table.metadata) out += " " + key + "=" + value;
  out += "\n";
  for (std::size_t i = 0; i < table.u_minus.size(); ++i) {
    out += format_double(table.u_minus[i]) + "\t" + format_double(table.u_plus[i]) + "\n";
  }
  return out;
}

namespace {

double parse_number(std::string_view token, std::size_t line) {
  std::string s(token);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("kinetic table line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

KineticTableFile parse_kinetic_table(std::string_view text) {
  KineticTableFile table;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      constexpr std::string_view prefix = "# kinetic-table v1 ";
      if (line.substr(0, prefix.size()) != prefix) {
        throw ConfigError("kinetic table: missing '# kinetic-table v1' header");
      }
      std::istringstream fields{std::string(line.substr(prefix.size()))};
      std::string kv;
      while (fields >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("kinetic table: bad header field '" + kv + "'");
        std::string key = kv.substr(0, eq);
        std::string value = kv.substr(eq + 1);
        if (key == "flux" && table.flux_name.empty()) {
          table.flux_name = value;
        } else {
          table.metadata.emplace_back(std::move(key), std::move(value));
        }
      }
      if (table.flux_name.empty()) throw ConfigError("kinetic table: header lacks flux=<name>");
      header_seen = true;
      continue;
    }
    if (line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ConfigError("kinetic table line " + std::to_string(line_no) + ": expected two tab-separated values");
    }
    const double um = parse_number(line.substr(0, tab), line_no);
    const double up = parse_number(line.substr(tab + 1), line_no);
    if (!table.u_minus.empty() && !(um > table.u_minus.back())) {
      throw ConfigError("kinetic table line " + std::to_string(line_no) + ": u_minus not strictly increasing");
    }
    table.u_minus.push_back(um);
    table.u_plus.push_back(up);
  }
  if (!header_seen) throw ConfigError("kinetic table: empty input");
  return table;
}

KineticTableFile read_kinetic_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open kinetic table '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kinetic_table(buf.str());
}

void write_kinetic_table_file(const std::string& path, const KineticTableFile& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write kinetic table '" + path + "'");
  out << format_kinetic_table(table);
}

}  // namespace nonclassical
