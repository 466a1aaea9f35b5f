#include "molt/vlasov.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace molt {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW planning is not thread-safe.
std::mutex &fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

} // namespace

VpProblem vp_problem_from_string(const std::string &name) {
  if (name == "landau_strong")
    return VpProblem::landau_strong;
  if (name == "two_stream_1")
    return VpProblem::two_stream_1;
  if (name == "two_stream_2")
    return VpProblem::two_stream_2;
  if (name == "bump_on_tail")
    return VpProblem::bump_on_tail;
  if (name == "sheath")
    return VpProblem::sheath;
  throw ConfigError("unknown Vlasov-Poisson problem '" + name + "'");
}

std::string to_string(VpProblem p) {
  switch (p) {
  case VpProblem::landau_strong:
    return "landau_strong";
  case VpProblem::two_stream_1:
    return "two_stream_1";
  case VpProblem::two_stream_2:
    return "two_stream_2";
  case VpProblem::bump_on_tail:
    return "bump_on_tail";
  case VpProblem::sheath:
    return "sheath";
  }
  return "unknown";
}

InitialCondition standard_condition(VpProblem p) {
  InitialCondition ic;
  ic.name = p;
  switch (p) {
  case VpProblem::landau_strong:
    ic.alpha = 0.5;
    ic.k = 0.5;
    ic.x_min = 0.0;
    ic.x_max = 4.0 * kPi;
    ic.vc = 2.0 * kPi;
    break;
  case VpProblem::two_stream_1:
    ic.alpha = 0.01;
    ic.k = 0.5;
    ic.x_min = 0.0;
    ic.x_max = 4.0 * kPi;
    ic.vc = 2.0 * kPi;
    break;
  case VpProblem::two_stream_2:
    ic.alpha = 0.05;
    ic.k = 0.5;
    ic.x_min = 0.0;
    ic.x_max = 4.0 * kPi;
    ic.vc = 2.0 * kPi;
    break;
  case VpProblem::bump_on_tail:
    ic.alpha = 0.04;
    ic.k = 0.3;
    ic.x_min = -10.0 * kPi / 3.0;
    ic.x_max = 10.0 * kPi / 3.0;
    ic.vc = 10.0;
    break;
  case VpProblem::sheath:
    ic.alpha = 0.0005526350206;
    ic.k = 0.0;
    ic.x_min = 0.0;
    ic.x_max = 1.0;
    ic.vc = 0.2;
    break;
  }
  return ic;
}

double initial_density(const InitialCondition &ic, double x, double v) {
  const double gauss = std::exp(-0.5 * v * v);
  const double norm = 1.0 / std::sqrt(2.0 * kPi);
  const double a = ic.alpha;
  const double k = ic.k;
  switch (ic.name) {
  case VpProblem::landau_strong:
    return norm * (1.0 + a * std::cos(k * x)) * gauss;
  case VpProblem::two_stream_1:
    return 2.0 / (7.0 * std::sqrt(2.0 * kPi)) * (1.0 + 5.0 * v * v) *
           (1.0 + a * ((std::cos(2.0 * k * x) + std::cos(3.0 * k * x)) / 1.2 + std::cos(k * x))) *
           gauss;
  case VpProblem::two_stream_2:
    return norm * (1.0 + a * std::cos(k * x)) * v * v * gauss;
  case VpProblem::bump_on_tail:
    return norm * (1.0 + a * std::cos(k * x)) *
           (0.9 * gauss + 0.2 * std::exp(-4.0 * (v - 4.5) * (v - 4.5)));
  case VpProblem::sheath:
    return std::exp(-v * v / a) / std::sqrt(a * kPi);
  }
  throw ConfigError("unknown initial condition");
}

FieldBoundary field_boundary(VpProblem p) {
  return p == VpProblem::sheath ? FieldBoundary::grounded : FieldBoundary::periodic;
}

Field1D charge_density(const Field2D &f) {
  Field1D rho(f.gx, 0.0);
  const auto w = trapezoid_weights(f.gv);
  const int nv = f.nv();
  for (int i = 0; i < f.nx(); ++i) {
    const double *row = &f.values[f.index(i, 0)];
    double s = 0.0;
    for (int j = 0; j < nv; ++j)
      s += w[j] * row[j];
    rho[i] = s;
  }
  return rho;
}

struct PeriodicPoissonSolver::Impl {
  Grid1D grid;
  int m = 0;
  double *in = nullptr;
  fftw_complex *spec = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

PeriodicPoissonSolver::PeriodicPoissonSolver(const Grid1D &grid) : impl_(std::make_unique<Impl>()) {
  impl_->grid = grid;
  const int m = grid.cells();
  impl_->m = m;
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  impl_->in = fftw_alloc_real(static_cast<std::size_t>(m));
  impl_->spec = fftw_alloc_complex(static_cast<std::size_t>(m / 2 + 1));
  impl_->forward = fftw_plan_dft_r2c_1d(m, impl_->in, impl_->spec, FFTW_ESTIMATE);
  impl_->backward = fftw_plan_dft_c2r_1d(m, impl_->spec, impl_->in, FFTW_ESTIMATE);
  if (!impl_->forward || !impl_->backward)
    throw std::runtime_error("FFTW plan creation failed");
}

PeriodicPoissonSolver::~PeriodicPoissonSolver() {
  if (!impl_)
    return;
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  fftw_destroy_plan(impl_->forward);
  fftw_destroy_plan(impl_->backward);
  fftw_free(impl_->in);
  fftw_free(impl_->spec);
}

Field1D PeriodicPoissonSolver::solve(const Field1D &rho) {
  Impl &s = *impl_;
  if (!(rho.grid == s.grid))
    throw std::invalid_argument("PeriodicPoissonSolver: grid mismatch");
  const int m = s.m;
  for (int i = 0; i < m; ++i)
    s.in[i] = rho[i] - 1.0;
  fftw_execute(s.forward);
  const double two_pi_over_l = 2.0 * kPi / s.grid.length();
  // Zero mode projected out; Nyquist has no odd partner and is dropped.
  s.spec[0][0] = 0.0;
  s.spec[0][1] = 0.0;
  for (int q = 1; q <= m / 2; ++q) {
    if (2 * q == m) {
      s.spec[q][0] = 0.0;
      s.spec[q][1] = 0.0;
      continue;
    }
    const double kappa = two_pi_over_l * q;
    // E_hat = -i rho_hat / kappa
    const double re = s.spec[q][0];
    const double im = s.spec[q][1];
    s.spec[q][0] = im / kappa;
    s.spec[q][1] = -re / kappa;
  }
  fftw_execute(s.backward);
  Field1D e(s.grid, 0.0);
  for (int i = 0; i < m; ++i)
    e[i] = s.in[i] / m;
  e[m] = e[0];
  return e;
}

Field1D solve_field_periodic(const Field1D &rho) {
  PeriodicPoissonSolver solver(rho.grid);
  return solver.solve(rho);
}

std::vector<double> solve_potential_dirichlet(const Field1D &rho) {
  const int m = rho.grid.cells();
  const double h = rho.grid.dx();
  std::vector<double> phi(static_cast<std::size_t>(m + 1), 0.0);
  if (m < 2)
    return phi;
  // Numerov: phi_{i-1} - 2 phi_i + phi_{i+1} = -h^2/12 (s_{i-1} + 10 s_i + s_{i+1}), s = rho - 1
  const int n = m - 1;
  std::vector<double> diag(n, -2.0), rhs(n);
  for (int q = 0; q < n; ++q) {
    const int i = q + 1;
    rhs[q] = -h * h / 12.0 * ((rho[i - 1] - 1.0) + 10.0 * (rho[i] - 1.0) + (rho[i + 1] - 1.0));
  }
  // Thomas algorithm, unit off-diagonals.
  for (int q = 1; q < n; ++q) {
    const double w = 1.0 / diag[q - 1];
    diag[q] -= w;
    rhs[q] -= w * rhs[q - 1];
  }
  phi[n] = rhs[n - 1] / diag[n - 1];
  for (int q = n - 2; q >= 0; --q)
    phi[q + 1] = (rhs[q] - phi[q + 2]) / diag[q];
  return phi;
}

Field1D solve_field_dirichlet(const Field1D &rho) {
  const int m = rho.grid.cells();
  if (m < 4)
    throw ConfigError("grounded field solve needs at least 4 cells");
  const double h = rho.grid.dx();
  const auto phi = solve_potential_dirichlet(rho);
  Field1D e(rho.grid, 0.0);
  const double s = 1.0 / (12.0 * h);
  for (int i = 2; i <= m - 2; ++i)
    e[i] = -s * (phi[i - 2] - 8.0 * phi[i - 1] + 8.0 * phi[i + 1] - phi[i + 2]);
  e[0] = -s * (-25.0 * phi[0] + 48.0 * phi[1] - 36.0 * phi[2] + 16.0 * phi[3] - 3.0 * phi[4]);
  e[1] = -s * (-3.0 * phi[0] - 10.0 * phi[1] + 18.0 * phi[2] - 6.0 * phi[3] + phi[4]);
  e[m] = -s * (25.0 * phi[m] - 48.0 * phi[m - 1] + 36.0 * phi[m - 2] - 16.0 * phi[m - 3] +
               3.0 * phi[m - 4]);
  e[m - 1] = -s * (3.0 * phi[m] + 10.0 * phi[m - 1] - 18.0 * phi[m - 2] + 6.0 * phi[m - 3] -
                   phi[m - 4]);
  return e;
}

Field1D electric_field(const Field2D &f, FieldBoundary bc) {
  const Field1D rho = charge_density(f);
  return bc == FieldBoundary::periodic ? solve_field_periodic(rho) : solve_field_dirichlet(rho);
}

VpState initial_condition(const InitialCondition &ic, int nx_cells, int nv_cells) {
  const Grid1D gx = make_uniform_grid(ic.x_min, ic.x_max, nx_cells);
  const Grid1D gv = make_uniform_grid(-ic.vc, ic.vc, nv_cells);
  VpState state;
  state.f = sample_function(gx, gv, [&](double x, double v) { return initial_density(ic, x, v); });
  state.field_bc = field_boundary(ic.name);
  if (state.field_bc == FieldBoundary::periodic) {
    // Exact image so the periodic duplicate row matches bitwise.
    for (int j = 0; j < state.f.nv(); ++j)
      state.f(state.f.nx() - 1, j) = state.f(0, j);
    for (int i = 0; i < state.f.nx(); ++i)
      state.f(i, state.f.nv() - 1) = state.f(i, 0);
  }
  state.E = electric_field(state.f, state.field_bc);
  state.t = 0.0;
  return state;
}

VpScheme VpScheme::paired(WenoOrder order, bool limiter) {
  VpScheme s;
  s.step = StepConfig::paired(order, limiter);
  s.sequence = splitting_sequence(default_split_order(order));
  s.cfl = order == WenoOrder::weno3 ? 1.5 : 1.6;
  return s;
}

double vp_time_step(const VpState &state, double cfl) {
  const double vmax = std::max(std::abs(state.f.gv.a()), std::abs(state.f.gv.b()));
  double emax = 0.0;
  for (double e : state.E.values)
    emax = std::max(emax, std::abs(e));
  const double rate = std::max(vmax / state.f.gx.dx(), emax / state.f.gv.dx());
  if (!(rate > 0.0))
    throw ConfigError("vp_time_step: no transport");
  return cfl / rate;
}

VpStepStats vp_step(VpState &state, double dt, const SplitSequence &seq, const StepConfig &cfg) {
  Field2D &f = state.f;
  const bool periodic = state.field_bc == FieldBoundary::periodic;
  const BoundarySpec bc_x = periodic ? BoundarySpec::periodic() : BoundarySpec::zero_inflow();
  const BoundarySpec bc_v = periodic ? BoundarySpec::periodic() : BoundarySpec::zero_dirichlet();

  std::vector<double> vspeeds(static_cast<std::size_t>(f.nv()));
  for (int j = 0; j < f.nv(); ++j)
    vspeeds[j] = f.gv.x(j);

  VpStepStats stats;
  double tx = state.t;
  double tv = state.t;
  for (const SplitStep &st : seq.steps) {
    const double h = st.fraction * dt;
    if (st.axis == Axis::X) {
      stats.lines_limited += advect_x_lines(f, vspeeds, h, cfg, bc_x, tx).lines_limited;
      tx += h;
    } else {
      const Field1D e = electric_field(f, state.field_bc);
      stats.lines_limited += advect_y_lines(f, e.values, h, cfg, bc_v, tv).lines_limited;
      tv += h;
    }
  }
  state.E = electric_field(f, state.field_bc);
  state.t += dt;
  stats.min_f = *std::min_element(f.values.begin(), f.values.end());
  return stats;
}

VpState reverse_velocity(const VpState &state) {
  const Grid1D &gv = state.f.gv;
  if (std::abs(gv.a() + gv.b()) > 1e-12 * std::max(1.0, std::abs(gv.b())))
    throw ConfigError("reverse_velocity: v-grid is not symmetric about zero");
  VpState out = state;
  const int nv = state.f.nv();
  for (int i = 0; i < state.f.nx(); ++i)
    for (int j = 0; j < nv; ++j)
      out.f(i, j) = state.f(i, nv - 1 - j);
  return out;
}

Diagnostics diagnostics(const VpState &state) {
  const Field2D &f = state.f;
  const auto wx = trapezoid_weights(f.gx);
  const auto wv = trapezoid_weights(f.gv);
  Diagnostics d;
  d.t = state.t;
  d.min_f = std::numeric_limits<double>::infinity();
  double kinetic = 0.0;
  double l2sq = 0.0;
  for (int i = 0; i < f.nx(); ++i) {
    for (int j = 0; j < f.nv(); ++j) {
      const double w = wx[i] * wv[j];
      const double val = f(i, j);
      const double v = f.gv.x(j);
      d.mass += w * val;
      d.l1 += w * std::abs(val);
      l2sq += w * val * val;
      kinetic += w * val * v * v;
      d.momentum += w * val * v;
      d.min_f = std::min(d.min_f, val);
    }
  }
  double potential = 0.0;
  for (int i = 0; i < f.nx(); ++i)
    potential += wx[i] * state.E[i] * state.E[i];
  d.l2 = std::sqrt(l2sq);
  d.energy = 0.5 * (kinetic + potential);
  return d;
}

double evolve(VpState &state, double t_end, const VpScheme &scheme, const StepObserver &observer) {
  double min_f = std::numeric_limits<double>::infinity();
  const double tol = 1e-12 * std::max(1.0, std::abs(t_end));
  long step = 0;
  while (state.t < t_end - tol) {
    double dt = vp_time_step(state, scheme.cfl);
    const bool last = state.t + dt >= t_end - tol;
    if (last)
      dt = t_end - state.t;
    const VpStepStats stats = vp_step(state, dt, scheme.sequence, scheme.step);
    if (last)
      state.t = t_end;
    ++step;
    if (!std::isfinite(stats.min_f))
      throw std::runtime_error("non-finite phase-space density at step " + std::to_string(step) +
                               " (t = " + std::to_string(state.t) + ")");
    require_finite(state.f.values, "f at step " + std::to_string(step));
    min_f = std::min(min_f, stats.min_f);
    if (observer)
      observer(state, stats);
  }
  return min_f;
}

ReversibilityResult reversibility_run(const InitialCondition &ic, int nx_cells, int nv_cells,
                                      double T, const VpScheme &scheme) {
  VpState state = initial_condition(ic, nx_cells, nv_cells);
  const VpState reference = reverse_velocity(state);
  ReversibilityResult r;
  r.min_f = evolve(state, 0.5 * T, scheme);
  state = reverse_velocity(state);
  state.E = electric_field(state.f, state.field_bc);
  r.min_f = std::min(r.min_f, evolve(state, T, scheme));
  r.norms = error_norms(state.f, reference.f);
  r.final_f = std::move(state.f);
  return r;
}

} // namespace molt
