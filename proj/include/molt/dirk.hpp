#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "molt/mesh.hpp"
#include "molt/sweep.hpp"
#include "molt/weno.hpp"

namespace molt {

enum class TableauName { RK23, RK44 };

TableauName tableau_from_string(const std::string &name);
std::string to_string(TableauName name);

/// Diagonally implicit Butcher tableau, at most four stages.
struct DirkTableau {
  TableauName name = TableauName::RK23;
  int stages = 0;
  int order = 0;
  std::array<std::array<double, 4>, 4> a{};
  std::array<double, 4> b{};
  std::array<double, 4> c{};
};

DirkTableau tableau(TableauName name);

/// Stage i solves u_x + sgn alpha_i u = sgn alpha_i (on_un[i] u^n + sum_{j<i} on_stage[i][j] u^(j)),
/// i.e. row i of Lambda A^{-1} 1 and (A - Lambda) A^{-1}. The step result is
/// final_un u^n + sum_j final_stage[j] u^(j), from b^T A^{-1}.
struct StageCombination {
  std::array<double, 4> on_un{};
  std::array<std::array<double, 4>, 4> on_stage{};
  double final_un = 0.0;
  std::array<double, 4> final_stage{};
};

StageCombination stage_combination(const DirkTableau &tab);

/// How the intermediate boundary formula combines A^l 1 with c^l.
///  - matrix: g_i = sum_{l<k-1} dt^l (A^l 1)_i g^(l)(t_n) + dt^{k-1} sum_j (A^{k-1})_ij g^(k-1)(t_n + c_j dt)
///  - elementwise: the same with each term scaled by c_i^l (the literal reading of the product)
///  - stage_time: g(t_n + c_i dt), the uncorrected choice
enum class BoundaryReading { matrix, elementwise, stage_time };

/// Per-stage boundary data (g or h values) for one step.
std::vector<double> stage_boundary_values(const BoundaryData &data, const DirkTableau &tab,
                                          double dt, double t_n,
                                          BoundaryReading reading = BoundaryReading::matrix);

struct StepConfig {
  WenoOrder order = WenoOrder::weno3;
  DirkTableau tableau = molt::tableau(TableauName::RK23);
  bool use_pp_limiter = false;
  WeightMode weno_mode = WeightMode::nonlinear;
  BoundaryReading reading = BoundaryReading::matrix;

  /// WENO3 with RK(2,3) or WENO5 with RK(4,4).
  static StepConfig paired(WenoOrder order, bool limiter = false);
};

/// Scratch buffers reused across lines.
struct StepWorkspace {
  SweepWorkspace sweep;
  std::vector<std::vector<double>> stages;
  std::vector<double> rhs;
  std::vector<double> scratch;
};

/// One DIRK step of u_t + c u_x = 0 on a single line. `out` may not alias `u_n`.
/// Returns true if the positivity limiter modified the step.
bool advance_line(std::span<const double> u_n, std::span<double> out, const Grid1D &grid,
                  double c, double dt, const StepConfig &cfg, const BoundarySpec &bc, double t_n,
                  StepWorkspace &ws);

Field1D advance_1d(const Field1D &u_n, double c, double dt, const StepConfig &cfg,
                   const BoundarySpec &bc, double t_n);

} // namespace molt
