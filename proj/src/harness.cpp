#include "molt/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

namespace molt {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string &s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  for (auto &ch : s)
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

double parse_double(const std::string &key, const std::string &v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception &) {
    throw ConfigError("'" + key + "': not a number: '" + v + "'");
  }
  if (used != v.size() || !std::isfinite(out))
    throw ConfigError("'" + key + "': not a finite number: '" + v + "'");
  return out;
}

int parse_int(const std::string &key, const std::string &v) {
  const double d = parse_double(key, v);
  if (d != std::floor(d) || std::abs(d) > 1e9)
    throw ConfigError("'" + key + "': expected an integer, got '" + v + "'");
  return static_cast<int>(d);
}

bool parse_bool(const std::string &key, const std::string &v) {
  const std::string s = lower(v);
  if (s == "true" || s == "yes" || s == "on" || s == "1")
    return true;
  if (s == "false" || s == "no" || s == "off" || s == "0")
    return false;
  throw ConfigError("'" + key + "': expected true/false, got '" + v + "'");
}

Resolution parse_resolution(const std::string &item) {
  const std::string s = lower(trim(item));
  Resolution r;
  const auto x = s.find('x');
  if (x == std::string::npos) {
    r.nx = parse_int("cells", s);
  } else {
    r.nx = parse_int("cells", trim(s.substr(0, x)));
    r.nv = parse_int("cells", trim(s.substr(x + 1)));
  }
  if (r.nx < 2 || (x != std::string::npos && r.nv < 2))
    throw ConfigError("cells: every resolution needs at least 2 cells per axis ('" + item + "')");
  return r;
}

const std::vector<std::string> &known_problems() {
  static const std::vector<std::string> names = {
      "advection_periodic", "advection_dirichlet", "advection_neumann", "square_periodic",
      "square_dirichlet",   "rotation_smooth",     "rotation_square",   "landau_strong",
      "two_stream_1",       "two_stream_2",        "bump_on_tail",      "sheath"};
  return names;
}

// Smooth profile cos^4(x - t) = 3/8 + cos(2 th)/2 + cos(4 th)/8; its l-th
// time derivative at fixed x.
double cos4_time_derivative(double x, double t, int l) {
  const double th = x - t;
  auto term = [&](double a) { return std::pow(a, l) * std::cos(a * th - l * kPi / 2.0); };
  return (l == 0 ? 3.0 / 8.0 : 0.0) + term(2.0) / 2.0 + term(4.0) / 8.0;
}

double square_profile(double x) { return std::abs(x) <= 0.25 * kPi ? 1.0 : 0.0; }

double square_inflow(double t) { return (t >= 0.75 * kPi && t <= 1.25 * kPi) ? 1.0 : 0.0; }

double wrap_periodic(double x, double a, double b) {
  const double L = b - a;
  double r = std::fmod(x - a, L);
  if (r < 0.0)
    r += L;
  return a + r;
}

double rotation_initial(const std::string &problem, double x, double y, double lo, double hi) {
  if (x < lo || x > hi || y < lo || y > hi)
    return 0.0;
  if (problem == "rotation_smooth") {
    auto B = [](double r) { return r <= 0.5 * kPi ? std::pow(std::cos(r), 6) : 0.0; };
    return 0.5 * B(std::sqrt(x * x + 8.0 * y * y)) + 0.5 * B(std::sqrt(8.0 * x * x + y * y));
  }
  const bool bar1 = std::abs(x) <= 0.75 && std::abs(y) <= 0.25;
  const bool bar2 = std::abs(x) <= 0.25 && std::abs(y) <= 0.75;
  return (bar1 || bar2) ? 1.0 : 0.0;
}

void write_row(std::ostream &os, std::initializer_list<double> vals) {
  bool first = true;
  for (double v : vals) {
    if (!first)
      os << ',';
    os << format_number(v);
    first = false;
  }
  os << '\n';
}

std::ofstream open_output(const std::filesystem::path &p) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os)
    throw std::runtime_error("cannot open '" + p.string() + "' for writing");
  return os;
}

VpScheme vp_scheme(const ResolvedRun &rr) {
  VpScheme s;
  s.step = rr.step;
  s.sequence = rr.sequence;
  s.cfl = rr.cfl;
  return s;
}

InitialCondition vp_condition(const std::string &problem, const ResolvedRun &rr) {
  InitialCondition ic = standard_condition(vp_problem_from_string(problem));
  ic.x_min = rr.x_min;
  ic.x_max = rr.x_max;
  return ic;
}

int vp_velocity_cells(const Resolution &r) { return r.nv > 0 ? r.nv : 2 * r.nx; }

} // namespace

ProblemFamily problem_family(const std::string &problem) {
  if (problem.rfind("advection_", 0) == 0 || problem.rfind("square_", 0) == 0) {
    if (std::find(known_problems().begin(), known_problems().end(), problem) !=
        known_problems().end())
      return ProblemFamily::advection_1d;
  }
  if (problem == "rotation_smooth" || problem == "rotation_square")
    return ProblemFamily::rotation_2d;
  if (problem == "landau_strong" || problem == "two_stream_1" || problem == "two_stream_2" ||
      problem == "bump_on_tail" || problem == "sheath")
    return ProblemFamily::vlasov;
  std::string list;
  for (const auto &n : known_problems())
    list += (list.empty() ? "" : ", ") + n;
  throw ConfigError("unknown problem '" + problem + "' (known: " + list + ")");
}

std::string Resolution::label() const {
  return nv > 0 ? std::to_string(nx) + "x" + std::to_string(nv) : std::to_string(nx);
}

RunConfig parse_config(const std::string &text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  bool have_name = false;
  std::map<std::string, int> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(where + "malformed section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section != "problem" && section != "scheme" && section != "output")
        throw ConfigError(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where + "expected key = value");
    if (section.empty())
      throw ConfigError(where + "key outside of a section");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    const std::string full = section + "." + key;
    if (seen[full]++)
      throw ConfigError(where + "duplicate key '" + full + "'");
    if (value.empty())
      throw ConfigError(where + "empty value for '" + full + "'");

    if (full == "problem.name") {
      cfg.problem = lower(value);
      problem_family(cfg.problem);
      have_name = true;
    } else if (full == "problem.cells") {
      cfg.resolutions.clear();
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ','))
        cfg.resolutions.push_back(parse_resolution(item));
    } else if (full == "problem.t") {
      cfg.final_time = parse_double(full, value);
      if (*cfg.final_time <= 0.0)
        throw ConfigError(where + "T must be positive");
    } else if (full == "problem.x_min") {
      cfg.x_min = parse_double(full, value);
    } else if (full == "problem.x_max") {
      cfg.x_max = parse_double(full, value);
    } else if (full == "scheme.weno") {
      const int w = parse_int(full, value);
      if (w != 3 && w != 5)
        throw ConfigError(where + "weno must be 3 or 5");
      cfg.weno = w == 3 ? WenoOrder::weno3 : WenoOrder::weno5;
    } else if (full == "scheme.tableau") {
      cfg.tableau = tableau_from_string(value);
    } else if (full == "scheme.split") {
      const int s = parse_int(full, value);
      if (s < 1 || s > 4)
        throw ConfigError(where + "split must be between 1 and 4");
      cfg.split_order = s;
    } else if (full == "scheme.cfl") {
      cfg.cfl = parse_double(full, value);
      if (*cfg.cfl <= 0.0)
        throw ConfigError(where + "cfl must be positive");
    } else if (full == "scheme.limiter") {
      cfg.limiter = parse_bool(full, value);
    } else if (full == "output.dir") {
      cfg.output_dir = value;
    } else if (full == "output.every") {
      cfg.diagnostic_every = parse_int(full, value);
      if (cfg.diagnostic_every < 1)
        throw ConfigError(where + "every must be at least 1");
    } else {
      throw ConfigError(where + "unknown key '" + full + "'");
    }
  }
  if (!have_name)
    throw ConfigError("missing [problem] name");
  if (cfg.resolutions.empty())
    throw ConfigError("missing [problem] cells");
  resolve(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot read config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

double default_cfl(TableauName tab, bool split) {
  if (tab == TableauName::RK23)
    return 1.5;
  return split ? 1.6 : 2.9;
}

ResolvedRun resolve(const RunConfig &cfg) {
  ResolvedRun rr;
  rr.family = problem_family(cfg.problem);
  const bool split = rr.family != ProblemFamily::advection_1d;
  rr.step = StepConfig::paired(cfg.weno, cfg.limiter);
  if (cfg.tableau)
    rr.step.tableau = tableau(*cfg.tableau);
  rr.sequence = splitting_sequence(cfg.split_order.value_or(default_split_order(cfg.weno)));
  rr.cfl = cfg.cfl.value_or(default_cfl(rr.step.tableau.name, split));

  switch (rr.family) {
  case ProblemFamily::advection_1d:
    rr.x_min = -kPi;
    rr.x_max = kPi;
    rr.final_time = 2.0 * kPi;
    break;
  case ProblemFamily::rotation_2d:
    rr.x_min = cfg.problem == "rotation_smooth" ? -0.5 * kPi : -1.0;
    rr.x_max = -rr.x_min;
    rr.final_time = 2.0 * kPi;
    break;
  case ProblemFamily::vlasov: {
    const auto ic = standard_condition(vp_problem_from_string(cfg.problem));
    rr.x_min = ic.x_min;
    rr.x_max = ic.x_max;
    rr.final_time = cfg.problem == "sheath" ? 140.0 : 10.0;
    break;
  }
  }
  rr.x_min = cfg.x_min.value_or(rr.x_min);
  rr.x_max = cfg.x_max.value_or(rr.x_max);
  if (!(rr.x_max > rr.x_min))
    throw ConfigError("domain: x_max must exceed x_min");
  rr.final_time = cfg.final_time.value_or(rr.final_time);
  for (const auto &r : cfg.resolutions) {
    if (rr.family != ProblemFamily::vlasov && r.nv > 0 &&
        !(rr.family == ProblemFamily::rotation_2d && r.nv == r.nx))
      throw ConfigError("cells: '" + r.label() + "' is not valid for " + cfg.problem);
  }
  return rr;
}

Diagnostics field_diagnostics(const Field1D &u, double t) {
  const auto w = trapezoid_weights(u.grid);
  Diagnostics d;
  d.t = t;
  d.min_f = std::numeric_limits<double>::infinity();
  double sq = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d.mass += w[i] * u[i];
    d.l1 += w[i] * std::abs(u[i]);
    sq += w[i] * u[i] * u[i];
    d.min_f = std::min(d.min_f, u[i]);
  }
  d.l2 = std::sqrt(sq);
  d.energy = 0.5 * sq;
  return d;
}

Diagnostics field_diagnostics(const Field2D &u, double t) {
  const auto wx = trapezoid_weights(u.gx);
  const auto wy = trapezoid_weights(u.gv);
  Diagnostics d;
  d.t = t;
  d.min_f = std::numeric_limits<double>::infinity();
  double sq = 0.0;
  for (int i = 0; i < u.nx(); ++i)
    for (int j = 0; j < u.nv(); ++j) {
      const double w = wx[i] * wy[j];
      const double v = u(i, j);
      d.mass += w * v;
      d.l1 += w * std::abs(v);
      sq += w * v * v;
      d.min_f = std::min(d.min_f, v);
    }
  d.l2 = std::sqrt(sq);
  d.energy = 0.5 * sq;
  return d;
}

Advection1DResult run_advection_1d(const std::string &problem, int cells, const ResolvedRun &run,
                                   const Observer1D &observer) {
  if (problem_family(problem) != ProblemFamily::advection_1d)
    throw ConfigError("'" + problem + "' is not a 1D advection problem");
  const Grid1D grid(run.x_min, run.x_max, cells);
  const double a = run.x_min;
  const double b = run.x_max;
  const bool smooth = problem.rfind("advection_", 0) == 0;
  const bool periodic = problem == "advection_periodic" || problem == "square_periodic";

  std::function<double(double, double)> exact;
  if (smooth) {
    exact = [](double x, double t) { return std::pow(std::cos(x - t), 4); };
  } else if (periodic) {
    exact = [a, b](double x, double t) { return square_profile(wrap_periodic(x - t, a, b)); };
  } else {
    exact = [a](double x, double t) {
      const double xi = x - t;
      return xi >= a ? square_profile(xi) : square_inflow(t - (x - a));
    };
  }

  BoundarySpec bc = BoundarySpec::periodic();
  if (problem == "advection_dirichlet")
    bc = BoundarySpec::dirichlet([a](double t, int l) { return cos4_time_derivative(a, t, l); });
  else if (problem == "advection_neumann")
    bc = BoundarySpec::neumann([a](double t, int l) { return -cos4_time_derivative(a, t, l + 1); });
  else if (problem == "square_dirichlet")
    bc = BoundarySpec::dirichlet([](double t, int l) { return l == 0 ? square_inflow(t) : 0.0; });

  Advection1DResult r;
  r.solution = sample_function(grid, [&](double x) { return exact(x, 0.0); });
  r.min_over_steps = *std::min_element(r.solution.values.begin(), r.solution.values.end());
  r.max_over_steps = *std::max_element(r.solution.values.begin(), r.solution.values.end());

  const double T = run.final_time;
  const double dt0 = run.cfl * grid.dx();
  const double tol = 1e-12 * std::max(1.0, T);
  StepWorkspace ws;
  Field1D next(grid);
  double t = 0.0;
  while (t < T - tol) {
    double dt = dt0;
    const bool last = t + dt >= T - tol;
    if (last)
      dt = T - t;
    advance_line(r.solution.values, next.values, grid, 1.0, dt, run.step, bc, t, ws);
    std::swap(r.solution.values, next.values);
    t = last ? T : t + dt;
    ++r.steps;
    require_finite(r.solution.values, "u at step " + std::to_string(r.steps));
    for (double v : r.solution.values) {
      r.min_over_steps = std::min(r.min_over_steps, v);
      r.max_over_steps = std::max(r.max_over_steps, v);
    }
    if (observer)
      observer(r.solution, t);
  }
  r.exact = sample_function(grid, [&](double x) { return exact(x, T); });
  r.norms = error_norms(r.solution, r.exact);
  return r;
}

Rotation2DResult run_rotation_2d(const std::string &problem, int cells, const ResolvedRun &run,
                                 const Observer2D &observer) {
  if (problem_family(problem) != ProblemFamily::rotation_2d)
    throw ConfigError("'" + problem + "' is not a rotation problem");
  const Grid1D grid(run.x_min, run.x_max, cells);
  const double lo = run.x_min;
  const double hi = run.x_max;
  auto exact = [&](double x, double y, double t) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    return rotation_initial(problem, x * c - y * s, x * s + y * c, lo, hi);
  };
  const Advection2D adv{[](double y, double) { return y; }, [](double x, double) { return -x; },
                        BoundarySpec::zero_dirichlet(), BoundarySpec::zero_dirichlet()};

  Rotation2DResult r;
  r.solution = sample_function(grid, grid, [&](double x, double y) { return exact(x, y, 0.0); });
  r.min_over_steps = *std::min_element(r.solution.values.begin(), r.solution.values.end());
  r.max_over_steps = *std::max_element(r.solution.values.begin(), r.solution.values.end());

  const double T = run.final_time;
  const double dt0 = cfl_time_step_2d(r.solution, adv, run.cfl, 0.0);
  const double tol = 1e-12 * std::max(1.0, T);
  double t = 0.0;
  while (t < T - tol) {
    double dt = dt0;
    const bool last = t + dt >= T - tol;
    if (last)
      dt = T - t;
    r.solution = step_2d(r.solution, adv, dt, run.sequence, run.step, t);
    t = last ? T : t + dt;
    ++r.steps;
    require_finite(r.solution.values, "u at step " + std::to_string(r.steps));
    for (double v : r.solution.values) {
      r.min_over_steps = std::min(r.min_over_steps, v);
      r.max_over_steps = std::max(r.max_over_steps, v);
    }
    if (observer)
      observer(r.solution, t);
  }
  r.exact = sample_function(grid, grid, [&](double x, double y) { return exact(x, y, T); });
  r.norms = error_norms(r.solution, r.exact);
  return r;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_diagnostics_header(std::ostream &os) { os << "t,mass,l1,l2,energy,momentum,min_f\n"; }

void write_diagnostics_row(const Diagnostics &d, std::ostream &os) {
  write_row(os, {d.t, d.mass, d.l1, d.l2, d.energy, d.momentum, d.min_f});
}

RunSummary run(const RunConfig &cfg) {
  if (cfg.resolutions.size() != 1)
    throw ConfigError("run takes exactly one resolution (got " +
                      std::to_string(cfg.resolutions.size()) + "); use converge for a list");
  const ResolvedRun rr = resolve(cfg);
  const Resolution res = cfg.resolutions.front();
  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);

  RunSummary s;
  s.diagnostics_csv = dir / "diagnostics.csv";
  s.final_csv = dir / "final.csv";
  auto diag = open_output(s.diagnostics_csv);
  write_diagnostics_header(diag);
  const int every = cfg.diagnostic_every;
  long step = 0;
  auto record = [&](const Diagnostics &d, bool force) {
    if (force || step % every == 0)
      write_diagnostics_row(d, diag);
    s.last = d;
  };

  switch (rr.family) {
  case ProblemFamily::advection_1d: {
    ResolvedRun initial = rr;
    initial.final_time = 0.0;
    record(field_diagnostics(run_advection_1d(cfg.problem, res.nx, initial).solution, 0.0), true);
    const double T = rr.final_time;
    const auto r = run_advection_1d(cfg.problem, res.nx, rr, [&](const Field1D &u, double t) {
      ++step;
      record(field_diagnostics(u, t), t == T);
    });
    s.min_over_steps = r.min_over_steps;
    s.steps = r.steps;
    auto out = open_output(s.final_csv);
    out << "x,u,exact\n";
    for (int i = 0; i < r.solution.grid.nodes(); ++i)
      write_row(out, {r.solution.grid.x(i), r.solution[i], r.exact[i]});
    break;
  }
  case ProblemFamily::rotation_2d: {
    ResolvedRun initial = rr;
    initial.final_time = 0.0;
    record(field_diagnostics(run_rotation_2d(cfg.problem, res.nx, initial).solution, 0.0), true);
    const double T = rr.final_time;
    const auto r = run_rotation_2d(cfg.problem, res.nx, rr, [&](const Field2D &u, double t) {
      ++step;
      record(field_diagnostics(u, t), t == T);
    });
    s.min_over_steps = r.min_over_steps;
    s.steps = r.steps;
    auto out = open_output(s.final_csv);
    out << "x,y,u\n";
    for (int i = 0; i < r.solution.nx(); ++i)
      for (int j = 0; j < r.solution.nv(); ++j)
        write_row(out, {r.solution.gx.x(i), r.solution.gv.x(j), r.solution(i, j)});
    break;
  }
  case ProblemFamily::vlasov: {
    VpState state = initial_condition(vp_condition(cfg.problem, rr), res.nx, vp_velocity_cells(res));
    record(diagnostics(state), true);
    const double T = rr.final_time;
    s.min_over_steps = evolve(state, T, vp_scheme(rr), [&](const VpState &st, const VpStepStats &) {
      ++step;
      record(diagnostics(st), st.t == T);
    });
    s.steps = step;
    auto out = open_output(s.final_csv);
    out << "x,v,f\n";
    for (int i = 0; i < state.f.nx(); ++i)
      for (int j = 0; j < state.f.nv(); ++j)
        write_row(out, {state.f.gx.x(i), state.f.gv.x(j), state.f(i, j)});
    break;
  }
  }
  return s;
}

double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

std::vector<ConvergenceRow> convergence_study(const RunConfig &cfg) {
  const auto &res = cfg.resolutions;
  if (res.size() < 2)
    throw ConfigError("convergence study needs at least two resolutions");
  const ResolvedRun rr = resolve(cfg);
  for (std::size_t q = 1; q < res.size(); ++q) {
    const bool nx_ok = res[q].nx == 2 * res[q - 1].nx;
    const bool nv_ok = (res[q].nv == 0 && res[q - 1].nv == 0) || res[q].nv == 2 * res[q - 1].nv;
    if (!nx_ok || !nv_ok)
      throw ConfigError("convergence study: resolution " + res[q].label() + " does not double " +
                        res[q - 1].label());
  }
  std::vector<ConvergenceRow> rows;
  for (const auto &r : res) {
    ConvergenceRow row;
    row.resolution = r.label();
    switch (rr.family) {
    case ProblemFamily::advection_1d: {
      const auto out = run_advection_1d(cfg.problem, r.nx, rr);
      row.l1 = out.norms.l1;
      row.linf = out.norms.linf;
      row.min_value = out.min_over_steps;
      break;
    }
    case ProblemFamily::rotation_2d: {
      const auto out = run_rotation_2d(cfg.problem, r.nx, rr);
      row.resolution = std::to_string(r.nx) + "x" + std::to_string(r.nx);
      row.l1 = out.norms.l1;
      row.linf = out.norms.linf;
      row.min_value = out.min_over_steps;
      break;
    }
    case ProblemFamily::vlasov: {
      const Resolution full{r.nx, vp_velocity_cells(r)};
      row.resolution = full.label();
      const auto out = reversibility_run(vp_condition(cfg.problem, rr), full.nx, full.nv,
                                         rr.final_time, vp_scheme(rr));
      row.l1 = out.norms.l1;
      row.linf = out.norms.linf;
      row.min_value = out.min_f;
      break;
    }
    }
    if (!rows.empty()) {
      row.l1_order = observed_order(rows.back().l1, row.l1);
      row.linf_order = observed_order(rows.back().linf, row.linf);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_convergence_csv(const std::vector<ConvergenceRow> &rows, std::ostream &os) {
  os << "resolution,l1,l1_order,linf,linf_order,min_value\n";
  for (const auto &r : rows) {
    os << r.resolution << ',' << format_number(r.l1) << ','
       << (r.l1_order ? format_number(*r.l1_order) : "") << ',' << format_number(r.linf) << ','
       << (r.linf_order ? format_number(*r.linf_order) : "") << ',' << format_number(r.min_value)
       << '\n';
  }
}

std::string convergence_table(const std::vector<ConvergenceRow> &rows) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %12s %7s %12s %7s %12s\n", "resolution", "L1", "order",
                "Linf", "order", "min");
  os << buf;
  for (const auto &r : rows) {
    auto ord = [](const std::optional<double> &o) {
      char b[16];
      if (o)
        std::snprintf(b, sizeof b, "%.2f", *o);
      else
        std::snprintf(b, sizeof b, "--");
      return std::string(b);
    };
    std::snprintf(buf, sizeof buf, "%-12s %12.2E %7s %12.2E %7s %12.2E\n", r.resolution.c_str(),
                  r.l1, ord(r.l1_order).c_str(), r.linf, ord(r.linf_order).c_str(), r.min_value);
    os << buf;
  }
  return os.str();
}

} // namespace molt
