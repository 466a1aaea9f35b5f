#pragma once

#include <functional>
#include <memory>
#include <string>

#include "molt/dirk.hpp"
#include "molt/mesh.hpp"
#include "molt/split2d.hpp"

namespace molt {

enum class VpProblem { landau_strong, two_stream_1, two_stream_2, bump_on_tail, sheath };

VpProblem vp_problem_from_string(const std::string &name);
std::string to_string(VpProblem p);

/// Grounded walls (phi = 0 at both ends) or a periodic box.
enum class FieldBoundary { periodic, grounded };

struct InitialCondition {
  VpProblem name = VpProblem::landau_strong;
  double alpha = 0.5;
  double k = 0.5;
  double x_min = 0.0;
  double x_max = 0.0;
  double vc = 0.0;
};

/// The benchmark parameter sets.
InitialCondition standard_condition(VpProblem p);

/// f(x, v, 0) for the given condition.
double initial_density(const InitialCondition &ic, double x, double v);

FieldBoundary field_boundary(VpProblem p);

struct VpState {
  Field2D f;  // x slow, v fast
  Field1D E;
  double t = 0.0;
  FieldBoundary field_bc = FieldBoundary::periodic;
};

/// rho_i = trapezoid rule over v of f(x_i, .).
Field1D charge_density(const Field2D &f);

/// Periodic field solve of -phi'' = rho - 1, E = -phi', spectral on the M
/// unique nodes. Holds an FFTW plan; reuse one instance per grid.
class PeriodicPoissonSolver {
public:
  explicit PeriodicPoissonSolver(const Grid1D &grid);
  ~PeriodicPoissonSolver();
  PeriodicPoissonSolver(const PeriodicPoissonSolver &) = delete;
  PeriodicPoissonSolver &operator=(const PeriodicPoissonSolver &) = delete;

  Field1D solve(const Field1D &rho);

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Field1D solve_field_periodic(const Field1D &rho);

/// -phi'' = rho - 1 with phi_0 = phi_M = 0 (Numerov tridiagonal system),
/// E = -phi' by fourth-order differences (one-sided near the walls).
Field1D solve_field_dirichlet(const Field1D &rho);
/// The potential of the grounded solve, exposed for checks.
std::vector<double> solve_potential_dirichlet(const Field1D &rho);

/// Field for the current f according to the state's field boundary.
Field1D electric_field(const Field2D &f, FieldBoundary bc);

VpState initial_condition(const InitialCondition &ic, int nx_cells, int nv_cells);

struct VpScheme {
  StepConfig step;
  SplitSequence sequence;
  double cfl = 1.5;

  /// WENO3/RK23/sp3 at CFL 1.5 or WENO5/RK44/sp4 at CFL 1.6.
  static VpScheme paired(WenoOrder order, bool limiter);
};

/// dt = cfl / max(max|v| / dx, max|E| / dv).
double vp_time_step(const VpState &state, double cfl);

/// Per-step bookkeeping.
struct VpStepStats {
  double min_f = 0.0;
  int lines_limited = 0;
};

/// One split step. E is recomputed from the current f before every
/// velocity substep and once more at the end.
VpStepStats vp_step(VpState &state, double dt, const SplitSequence &seq, const StepConfig &cfg);

/// f_ij -> f_{i, Mv - j}; requires a v-grid symmetric about zero.
VpState reverse_velocity(const VpState &state);

struct Diagnostics {
  double t = 0.0;
  double mass = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double energy = 0.0;
  double momentum = 0.0;
  double min_f = 0.0;
};

Diagnostics diagnostics(const VpState &state);

using StepObserver = std::function<void(const VpState &, const VpStepStats &)>;

/// Steps until state.t reaches t_end; the last step is shortened to land on
/// it exactly. Returns the smallest f seen after any step. Throws if f turns
/// non-finite, naming the step.
double evolve(VpState &state, double t_end, const VpScheme &scheme,
              const StepObserver &observer = {});

struct ReversibilityResult {
  ErrorNorms norms;     // f~(x, v, T) against f(x, -v, 0)
  double min_f = 0.0;   // over every step of the run
  Field2D final_f;
};

/// Evolve to T/2, flip v, evolve to T, compare with the flipped initial data.
ReversibilityResult reversibility_run(const InitialCondition &ic, int nx_cells, int nv_cells,
                                      double T, const VpScheme &scheme);

} // namespace molt
