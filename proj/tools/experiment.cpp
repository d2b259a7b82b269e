#include "experiment.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "nonclassical/errors.hpp"
#include "nonclassical/fd_schemes.hpp"
#include "nonclassical/front_tracking.hpp"
#include "nonclassical/kinetic_lab.hpp"
#include "nonclassical/riemann.hpp"
#include "nonclassical/traveling_wave.hpp"
#include "nonclassical/validation.hpp"

namespace nonclassical::cli {

const char* const kArtifactVersion = NONCLASSICAL_VERSION;

namespace {

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) return out;
    pos = next + 1;
  }
}

double to_real(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(std::string(key) + ": expected a finite number, got '" + s + "'");
  }
  return v;
}

template <class Int>
Int to_int(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  Int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" + s + "'");
  }
  return v;
}

std::string word(std::string_view key, std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw ConfigError(std::string(key) + ": empty value");
  if (s.find_first_of(" \t\n=") != std::string::npos) {
    throw ConfigError(std::string(key) + ": value may not contain blanks or '='");
  }
  return s;
}

struct Field {
  std::string name;
  std::function<void(ExperimentConfig&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

Field real_field(const std::string& name, double ExperimentConfig::*m) {
  return {name, [name, m](ExperimentConfig& c, std::string_view v) { c.*m = to_real(name, v); },
          [m](const ExperimentConfig& c) { return format_double(c.*m); }};
}

Field word_field(const std::string& name, std::string ExperimentConfig::*m) {
  return {name, [name, m](ExperimentConfig& c, std::string_view v) { c.*m = word(name, v); },
          [m](const ExperimentConfig& c) { return c.*m; }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"command",
                 [](ExperimentConfig& c, std::string_view v) {
                   const std::string s = word("command", v);
                   for (const char* ok : {"riemann", "cauchy", "tw", "fd", "kinetics", "validate"}) {
                     if (s == ok) {
                       c.command = s;
                       return;
                     }
                   }
                   throw ConfigError("command: unknown command '" + s + "'");
                 },
                 [](const ExperimentConfig& c) { return c.command; }});
    f.push_back(word_field("flux", &ExperimentConfig::flux));
    f.push_back(word_field("entropy", &ExperimentConfig::entropy));
    f.push_back(word_field("kinetic", &ExperimentConfig::kinetic));
    f.push_back(real_field("alpha", &ExperimentConfig::alpha));
    f.push_back(real_field("beta", &ExperimentConfig::beta));
    f.push_back(real_field("p", &ExperimentConfig::p));
    f.push_back({"order", [](ExperimentConfig& c, std::string_view v) { c.order = to_int<int>("order", v); },
                 [](const ExperimentConfig& c) { return std::to_string(c.order); }});
    f.push_back(word_field("orders", &ExperimentConfig::orders));
    f.push_back(real_field("h", &ExperimentConfig::h));
    f.push_back(real_field("cfl", &ExperimentConfig::cfl));
    f.push_back({"domain",
                 [](ExperimentConfig& c, std::string_view v) {
                   const auto parts = split(v, ':');
                   if (parts.size() != 2) throw ConfigError("domain: expected lo:hi");
                   const double lo = to_real("domain", parts[0]);
                   const double hi = to_real("domain", parts[1]);
                   if (!(hi > lo)) throw ConfigError("domain: need lo < hi");
                   c.domain_lo = lo;
                   c.domain_hi = hi;
                 },
                 [](const ExperimentConfig& c) { return format_double(c.domain_lo) + ":" + format_double(c.domain_hi); }});
    f.push_back(word_field("boundary", &ExperimentConfig::boundary));
    f.push_back(real_field("t_end", &ExperimentConfig::t_end));
    f.push_back(word_field("u_grid", &ExperimentConfig::u_grid));
    f.push_back(real_field("ul", &ExperimentConfig::ul));
    f.push_back(real_field("ur", &ExperimentConfig::ur));
    f.push_back(word_field("init", &ExperimentConfig::init));
    f.push_back(real_field("fan_step", &ExperimentConfig::fan_step));
    f.push_back(real_field("separation", &ExperimentConfig::separation));
    f.push_back(word_field("output", &ExperimentConfig::output));
    f.push_back({"seed",
                 [](ExperimentConfig& c, std::string_view v) { c.seed = to_int<std::uint64_t>("seed", v); },
                 [](const ExperimentConfig& c) { return std::to_string(c.seed); }});
    f.push_back(word_field("criterion", &ExperimentConfig::criterion));
    return f;
  }();
  return table;
}

const Field& field(std::string_view key) {
  for (const auto& f : fields()) {
    if (f.name == key) return f;
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

// ---------------------------------------------------------------------------
// Output

void write_file(const ExperimentConfig& cfg, const std::string& name, const std::string& body) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.output, ec);
  const auto path = std::filesystem::path(cfg.output) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << body;
}

class Csv {
 public:
  Csv(const ExperimentConfig& cfg, const std::vector<std::string>& columns) {
    out_ << output_header(cfg);
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string num(double x) { return format_double(x); }

// Kinetic table file with the configuration as comment lines after its header.
std::string table_text(const ExperimentConfig& cfg, const KineticTableFile& file) {
  const std::string text = format_kinetic_table(file);
  const auto eol = text.find('\n');
  return text.substr(0, eol + 1) + output_header(cfg) + text.substr(eol + 1);
}

// ---------------------------------------------------------------------------
// Model construction

struct Models {
  FluxModel flux;
  EntropyPair pair;
};

Models models(const ExperimentConfig& cfg) {
  if (cfg.entropy != "quadratic") throw ConfigError("entropy: only 'quadratic' is available");
  FluxModel flux = FluxModel::by_name(cfg.flux);
  EntropyPair pair = EntropyPair::quadratic(flux);
  return {flux, pair};
}

KineticFunction make_kinetic(const ExperimentConfig& cfg, const Models& m) {
  const std::string& spec = cfg.kinetic;
  if (spec == "natural") return classical_kinetic(m.flux);
  if (spec.rfind("linear:", 0) == 0) return KineticFunction::linear(m.pair, to_real("kinetic", spec.substr(7)));
  if (spec.rfind("table:", 0) == 0) {
    const auto file = read_kinetic_table_file(spec.substr(6));
    if (file.flux_name != m.flux.name()) {
      throw ConfigError("kinetic table was computed for flux '" + file.flux_name + "'");
    }
    return KineticFunction::tabulated(m.pair, file.u_minus, file.u_plus, spec);
  }
  throw ConfigError("kinetic: expected linear:C, natural or table:PATH, got '" + spec + "'");
}

std::function<double(double)> initial_data(const ExperimentConfig& cfg) {
  const std::string& spec = cfg.init;
  if (spec == "riemann") {
    const double ul = cfg.ul;
    const double ur = cfg.ur;
    return [ul, ur](double x) { return x < 0.0 ? ul : ur; };
  }
  if (spec.rfind("sine:", 0) == 0) {
    const auto parts = split(spec.substr(5), ':');
    if (parts.size() != 3) throw ConfigError("init: expected sine:A:B:K");
    const double a = to_real("init", parts[0]);
    const double b = to_real("init", parts[1]);
    const double k = to_real("init", parts[2]);
    const double lo = cfg.domain_lo;
    const double len = cfg.domain_hi - cfg.domain_lo;
    return [=](double x) { return a + b * std::sin(2.0 * M_PI * k * (x - lo) / len); };
  }
  if (spec.rfind("steps:", 0) == 0) {
    const auto parts = split(spec.substr(6), ',');
    if (parts.size() < 3 || parts.size() % 2 == 0) throw ConfigError("init: expected steps:U0,X1,U1,...");
    std::vector<double> xs;
    std::vector<double> us;
    for (std::size_t i = 0; i < parts.size(); ++i) (i % 2 ? xs : us).push_back(to_real("init", parts[i]));
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (!(xs[i] > xs[i - 1])) throw ConfigError("init: breakpoints must increase");
    }
    return [xs, us](double x) {
      std::size_t k = 0;
      while (k < xs.size() && x >= xs[k]) ++k;
      return us[k];
    };
  }
  throw ConfigError("init: expected riemann, sine:A:B:K or steps:U0,X1,U1,...");
}

SchemeConfig scheme(const ExperimentConfig& cfg, const Models& m) {
  SchemeConfig s;
  s.flux = m.flux;
  s.pair = m.pair;
  s.order = cfg.order;
  s.alpha = cfg.alpha;
  s.beta = cfg.beta;
  s.h = cfg.h;
  s.cfl = cfg.cfl;
  s.domain_lo = cfg.domain_lo;
  s.domain_hi = cfg.domain_hi;
  s.boundary = boundary_by_name(cfg.boundary);
  s.validate();
  return s;
}

void require_positive_time(const ExperimentConfig& cfg) {
  if (!(cfg.t_end > 0.0)) throw ConfigError("t_end must be positive");
}

// ---------------------------------------------------------------------------
// Commands

int run_riemann(const ExperimentConfig& cfg, std::ostream& out) {
  const Models m = models(cfg);
  const KineticFunction kin = make_kinetic(cfg, m);
  const auto pattern = solve_riemann(m.flux, m.pair, kin, cfg.ul, cfg.ur);
  const auto problems = check_pattern(m.flux, m.pair, kin, pattern);
  if (!problems.empty()) throw InvariantViolation("riemann: " + problems.front());
  out << describe(pattern);

  Csv waves(cfg, {"kind", "u_minus", "u_plus", "speed_lo", "speed_hi"});
  for (const Wave& w : pattern.waves) {
    waves.row({to_string(w.kind), num(w.u_minus), num(w.u_plus), num(w.speed_lo), num(w.speed_hi)});
  }
  write_file(cfg, "riemann_waves.csv", waves.str());

  if (!(cfg.h > 0.0)) throw ConfigError("h must be positive");
  Csv profile(cfg, {"xi", "u"});
  const long n = std::lround((cfg.domain_hi - cfg.domain_lo) / cfg.h);
  for (long k = 0; k <= n; ++k) {
    const double xi = cfg.domain_lo + static_cast<double>(k) * cfg.h;
    profile.row({num(xi), num(evaluate(m.flux, pattern, xi))});
  }
  write_file(cfg, "riemann_profile.csv", profile.str());
  return 0;
}

int run_cauchy(const ExperimentConfig& cfg, std::ostream& out) {
  require_positive_time(cfg);
  const Models m = models(cfg);
  const FrontTracker tracker(m.pair, make_kinetic(cfg, m), cfg.fan_step);
  FrontState st;
  if (cfg.init == "riemann") {
    st = tracker.init_from_steps({0.0}, {cfg.ul, cfg.ur}, cfg.domain_lo, cfg.domain_hi);
  } else if (cfg.init.rfind("steps:", 0) == 0) {
    const auto parts = split(cfg.init.substr(6), ',');
    if (parts.size() < 3 || parts.size() % 2 == 0) throw ConfigError("init: expected steps:U0,X1,U1,...");
    std::vector<double> xs;
    std::vector<double> us;
    for (std::size_t i = 0; i < parts.size(); ++i) (i % 2 ? xs : us).push_back(to_real("init", parts[i]));
    st = tracker.init_from_steps(xs, us, cfg.domain_lo, cfg.domain_hi);
  } else {
    if (!(cfg.h > 0.0)) throw ConfigError("h must be positive");
    const int cells = static_cast<int>(std::lround((cfg.domain_hi - cfg.domain_lo) / cfg.h));
    st = tracker.init_from_data(initial_data(cfg), cfg.domain_lo, cfg.domain_hi, cells);
  }
  const auto res = tracker.run_cauchy(st, cfg.t_end);
  const auto problems = tracker.check_state(res.state);
  if (!problems.empty()) throw InvariantViolation("cauchy: " + problems.front());
  if (res.max_v_increase > 1e-12) {
    throw InvariantViolation("cauchy: V increased by " + num(res.max_v_increase) + " at an interaction");
  }

  Csv fronts(cfg, {"position", "u_left", "u_right", "speed", "kind", "sigma"});
  for (const Front& f : res.state.fronts) {
    fronts.row({num(f.position), num(f.u_left), num(f.u_right), num(f.speed), to_string(f.kind), num(f.sigma)});
  }
  write_file(cfg, "cauchy_fronts.csv", fronts.str());
  Csv diag(cfg, {"time", "V", "TV", "mass", "n_fronts", "interaction_id", "l1_rate", "mass_residual"});
  double worst_mass = 0.0;
  for (const auto& d : res.diagnostics) {
    diag.row({num(d.time), num(d.V), num(d.TV), num(d.mass), std::to_string(d.n_fronts),
              std::to_string(d.interaction_id), num(d.l1_rate), num(d.mass_residual)});
    worst_mass = std::max(worst_mass, std::abs(d.mass_residual));
  }
  write_file(cfg, "cauchy_diagnostics.csv", diag.str());
  out << "fronts=" << res.state.fronts.size() << " interactions=" << res.interactions
      << " max_v_increase=" << num(res.max_v_increase) << " tv_up_v_down=" << res.tv_up_v_down
      << " max_mass_residual=" << num(worst_mass) << "\n";
  return 0;
}

int run_tw(const ExperimentConfig& cfg, std::ostream& out) {
  const Models m = models(cfg);
  const TwModel model(m.flux, cfg.alpha, cfg.p);
  const auto grid = parse_u_grid(cfg.u_grid);
  const auto table = kinetic_table(model, grid);
  write_file(cfg, "tw_kinetic_table.txt", table_text(cfg, to_table_file(model, table)));
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    lo = std::min(lo, table.u_plus[i] / grid[i]);
    hi = std::max(hi, table.u_plus[i] / grid[i]);
  }
  out << "rows=" << grid.size() << " ratio_min=" << num(lo) << " ratio_max=" << num(hi)
      << " slope_at_zero=" << num(table.slope_at_zero) << "\n";
  return 0;
}

void write_snapshot(const ExperimentConfig& cfg, const SchemeConfig& s, const GridState& st) {
  Csv snap(cfg, {"x", "u"});
  for (std::size_t j = 0; j < st.cells.size(); ++j) snap.row({num(s.x(j)), num(st.cells[j])});
  write_file(cfg, "fd_snapshot.csv", snap.str());
}

int run_fd(const ExperimentConfig& cfg, std::ostream& out) {
  require_positive_time(cfg);
  const Models m = models(cfg);
  const SchemeConfig s = scheme(cfg, m);
  const GridState st0 = cfg.init == "riemann" ? riemann_grid(s, cfg.ul, cfg.ur) : sample_grid(s, initial_data(cfg));
  FdRun run;
  try {
    run = integrate(s, st0, cfg.t_end);
  } catch (const FdBlowup& e) {
    write_snapshot(cfg, s, e.last_finite_state());
    throw;
  }
  write_snapshot(cfg, s, run.state);
  Csv diag(cfg, {"t", "mass", "entropy", "dt"});
  for (const auto& d : run.diagnostics) diag.row({num(d.time), num(d.mass), num(d.entropy), num(d.dt)});
  write_file(cfg, "fd_diagnostics.csv", diag.str());

  const auto& first = run.diagnostics.front();
  const auto& last = run.diagnostics.back();
  out << "steps=" << run.steps << " mass_change=" << num(last.mass - first.mass)
      << " entropy_change=" << num(last.entropy - first.entropy) << "\n";
  if (cfg.init == "riemann") {
    ExtractOptions ex;
    ex.direction = cfg.ul >= cfg.ur ? 1 : -1;
    std::string why;
    if (const auto pair = extract_pair(run.state.cells, m.flux, ex, &why)) {
      out << "undercompressive_pair u_minus=" << num(pair->u_minus) << " u_plus=" << num(pair->u_plus)
          << " noise=" << num(pair->noise) << "\n";
    } else {
      out << "no undercompressive pair: " << why << "\n";
    }
  }
  return 0;
}

std::vector<int> parse_orders(const std::string& spec) {
  std::vector<int> out;
  for (const auto& part : split(spec, ',')) out.push_back(to_int<int>("orders", part));
  return out;
}

int run_kinetics(const ExperimentConfig& cfg, std::ostream& out) {
  const Models m = models(cfg);
  const auto grid = parse_u_grid(cfg.u_grid);
  const auto orders = parse_orders(cfg.orders);
  SchemeConfig base = scheme(cfg, m);
  const double alpha_tw = matched_tw_alpha(base);
  const TwModel tw(m.flux, alpha_tw, 0.0);
  const auto reference = kinetic_table(tw, grid);
  write_file(cfg, "kinetics_tw_table.txt", table_text(cfg, to_table_file(tw, reference)));

  double reach = 0.0;
  for (double u : grid) reach = std::max(reach, std::abs(u));
  std::vector<double> est_grid;
  for (int k = 1; k <= 30; ++k) est_grid.push_back(reach * k / 20.0);
  const auto est = kinetic_table(tw, est_grid);
  KineticSweepOptions opt(KineticFunction::tabulated(m.pair, est.u_minus, est.u_plus, "traveling-wave estimate"));
  opt.separation_cells = cfg.separation;
  opt.margin_cells = 2.0 * cfg.separation / 3.0;

  std::ostringstream report;
  report << output_header(cfg) << "# matched_tw_alpha=" << num(alpha_tw) << "\n";
  std::vector<std::string> columns{"u_minus", "u_plus_tw"};
  std::vector<std::vector<std::string>> cells(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) cells[i] = {num(grid[i]), num(reference.u_plus[i])};
  for (int order : orders) {
    SchemeConfig s = base;
    s.order = order;
    s.validate();
    const auto fd = numerical_kinetic_function(s, grid, opt);
    write_file(cfg, "kinetics_fd_order" + std::to_string(order) + ".txt",
               table_text(cfg, to_table_file(m.flux, fd)));
    const auto cmp = compare_tables(fd.table, reference);
    report << "order=" << order << " " << format_comparison(cmp) << "\n";
    for (const auto& d : fd.dropped) report << "order=" << order << " dropped " << d << "\n";
    columns.push_back("u_plus_fd_order" + std::to_string(order));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::string v = "nan";
      for (std::size_t r = 0; r < fd.table.u_minus.size(); ++r) {
        if (fd.table.u_minus[r] == grid[i]) v = num(fd.table.u_plus[r]);
      }
      cells[i].push_back(v);
    }
  }
  Csv plot(cfg, columns);
  for (const auto& row : cells) plot.row(row);
  write_file(cfg, "kinetics_plot.csv", plot.str());
  write_file(cfg, "kinetics_report.txt", report.str());
  out << "matched_tw_alpha=" << num(alpha_tw) << "\n";
  const std::string text = report.str();
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (!line.empty() && line.front() != '#') out << line << "\n";
  }
  return 0;
}

int run_validate(const ExperimentConfig& cfg, std::ostream& out) {
  std::vector<std::string> which;
  if (cfg.criterion == "all") {
    for (const auto& c : criteria()) which.push_back(std::to_string(c.id));
  } else {
    which = split(cfg.criterion, ',');
  }
  std::ostringstream report;
  report << output_header(cfg);
  int failed = 0;
  for (const auto& w : which) {
    const auto r = run_criterion(w, cfg.seed);
    const auto line = format_report(r);
    out << line << "\n" << std::flush;
    report << line << "\n";
    if (!r.passed) ++failed;
  }
  write_file(cfg, "validate_report.txt", report.str());
  return failed == 0 ? 0 : 4;
}

}  // namespace

const std::vector<std::string>& ExperimentConfig::keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& f : fields()) out.push_back(f.name);
    return out;
  }();
  return names;
}

void ExperimentConfig::set(std::string_view key, std::string_view value) { field(key).set(*this, value); }

std::string ExperimentConfig::get(std::string_view key) const { return field(key).get(*this); }

std::string ExperimentConfig::emit() const {
  std::string out;
  for (const auto& f : fields()) out += f.name + "=" + f.get(*this) + "\n";
  return out;
}

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  ExperimentConfig cfg;
  std::vector<std::string> seen;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    if (raw.empty() || raw.front() == '#') continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(raw).substr(0, eq));
    for (const auto& k : seen) {
      if (k == key) throw ConfigError("config line " + std::to_string(line_no) + ": repeated key '" + key + "'");
    }
    seen.push_back(key);
    cfg.set(key, std::string_view(raw).substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::ostringstream text;
  text << f.rdbuf();
  return parse(text.str());
}

std::vector<double> parse_u_grid(std::string_view spec) {
  std::vector<double> grid;
  const auto range = split(spec, ':');
  if (range.size() == 3) {
    const double lo = to_real("u_grid", range[0]);
    const double hi = to_real("u_grid", range[1]);
    const int n = to_int<int>("u_grid", range[2]);
    if (n < 1 || (n > 1 && !(hi > lo))) throw ConfigError("u_grid: expected lo:hi:n with lo < hi and n >= 1");
    for (int k = 0; k < n; ++k) grid.push_back(n == 1 ? lo : (lo * (n - 1 - k) + hi * k) / (n - 1));
  } else if (range.size() == 1) {
    for (const auto& part : split(spec, ',')) grid.push_back(to_real("u_grid", part));
  } else {
    throw ConfigError("u_grid: expected lo:hi:n or a comma-separated list");
  }
  return grid;
}

std::string output_header(const ExperimentConfig& cfg) {
  std::string out = std::string("# nonclassical_lab ") + kArtifactVersion + "\n";
  for (const auto& f : fields()) out += "# " + f.name + "=" + f.get(cfg) + "\n";
  return out;
}

int run(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.command == "riemann") return run_riemann(cfg, out);
  if (cfg.command == "cauchy") return run_cauchy(cfg, out);
  if (cfg.command == "tw") return run_tw(cfg, out);
  if (cfg.command == "fd") return run_fd(cfg, out);
  if (cfg.command == "kinetics") return run_kinetics(cfg, out);
  return run_validate(cfg, out);
}

int exit_code_for(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const ConfigError&) {
    return 2;
  } catch (const NumericalError&) {
    return 3;
  } catch (const InvariantViolation&) {
    return 4;
  } catch (...) {
    return 1;
  }
}

}  // namespace nonclassical::cli
