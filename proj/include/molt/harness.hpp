#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "molt/dirk.hpp"
#include "molt/mesh.hpp"
#include "molt/split2d.hpp"
#include "molt/vlasov.hpp"

namespace molt {

/// Benchmark families the harness knows how to run.
enum class ProblemFamily { advection_1d, rotation_2d, vlasov };

/// Known problem ids:
///   advection_periodic, advection_dirichlet, advection_neumann,
///   square_periodic, square_dirichlet,
///   rotation_smooth, rotation_square,
///   landau_strong, two_stream_1, two_stream_2, bump_on_tail, sheath
ProblemFamily problem_family(const std::string &problem);

/// Cells along the first axis and, for phase-space runs, along v (0 otherwise).
struct Resolution {
  int nx = 0;
  int nv = 0;
  std::string label() const;
};

struct RunConfig {
  std::string problem = "advection_periodic";
  std::vector<Resolution> resolutions;
  WenoOrder weno = WenoOrder::weno3;
  std::optional<TableauName> tableau;
  std::optional<int> split_order;
  std::optional<double> cfl;
  std::optional<double> final_time;
  std::optional<double> x_min;
  std::optional<double> x_max;
  bool limiter = false;
  std::string output_dir = "out";
  int diagnostic_every = 1;
};

/// Parses the sectioned key = value format (see README). Throws ConfigError.
RunConfig parse_config(const std::string &text);
RunConfig load_config(const std::filesystem::path &path);

/// 1.5 for RK(2,3); 2.9 for RK(4,4) in 1D and 1.6 for RK(4,4) with splitting.
double default_cfl(TableauName tab, bool split);

/// Everything a run needs once defaults are filled in.
struct ResolvedRun {
  ProblemFamily family = ProblemFamily::advection_1d;
  StepConfig step;
  SplitSequence sequence;
  double cfl = 1.5;
  double final_time = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
};

ResolvedRun resolve(const RunConfig &cfg);

/// Outcome of a scalar transport run against its exact solution.
struct TransportOutcome {
  ErrorNorms norms;
  double min_over_steps = 0.0;
  double max_over_steps = 0.0;
  long steps = 0;
};

struct Advection1DResult : TransportOutcome {
  Field1D solution;
  Field1D exact;
};

struct Rotation2DResult : TransportOutcome {
  Field2D solution;
  Field2D exact;
};

using Observer1D = std::function<void(const Field1D &, double t)>;
using Observer2D = std::function<void(const Field2D &, double t)>;

/// u_t + u_x = 0 on [x_min, x_max] (defaults [-pi, pi]) up to T.
Advection1DResult run_advection_1d(const std::string &problem, int cells, const ResolvedRun &run,
                                   const Observer1D &observer = {});

/// u_t + y u_x - x u_y = 0 with zero inflow data, one square grid.
Rotation2DResult run_rotation_2d(const std::string &problem, int cells, const ResolvedRun &run,
                                 const Observer2D &observer = {});

/// Integrals of a scalar field in the diagnostics layout; momentum is zero
/// for scalar transport, energy is half the squared L2 norm.
Diagnostics field_diagnostics(const Field1D &u, double t);
Diagnostics field_diagnostics(const Field2D &u, double t);

struct RunSummary {
  std::filesystem::path diagnostics_csv;
  std::filesystem::path final_csv;
  Diagnostics last;
  double min_over_steps = 0.0;
  long steps = 0;
};

/// Executes the single resolution of `cfg`, writing diagnostics.csv and
/// final.csv into the output directory.
RunSummary run(const RunConfig &cfg);

struct ConvergenceRow {
  std::string resolution;
  double l1 = 0.0;
  std::optional<double> l1_order;
  double linf = 0.0;
  std::optional<double> linf_order;
  double min_value = 0.0;
};

/// Requires at least two resolutions, each doubling the previous one.
/// Advection and rotation compare with the exact solution, phase-space
/// problems use the velocity-reversal protocol.
std::vector<ConvergenceRow> convergence_study(const RunConfig &cfg);

/// log2(coarse / fine).
double observed_order(double coarse, double fine);

std::string format_number(double v);
void write_convergence_csv(const std::vector<ConvergenceRow> &rows, std::ostream &os);
void write_diagnostics_header(std::ostream &os);
void write_diagnostics_row(const Diagnostics &d, std::ostream &os);
std::string convergence_table(const std::vector<ConvergenceRow> &rows);

} // namespace molt
