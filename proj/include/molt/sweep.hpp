#pragma once

#include <functional>
#include <span>
#include <vector>

#include "molt/mesh.hpp"
#include "molt/weno.hpp"

namespace molt {

enum class BoundaryKind { periodic, dirichlet, neumann, zero_inflow };

/// l-th time derivative of the boundary datum at time t.
using BoundaryData = std::function<double(double t, int derivative)>;

/// Boundary conditions for one axis. For dirichlet the callbacks give g
/// (u at the boundary), for neumann they give h (u_x at the boundary).
/// Only the inflow side of a sweep is consulted, so a problem that always
/// advects rightwards may leave `right` empty.
struct BoundarySpec {
  BoundaryKind kind = BoundaryKind::periodic;
  BoundaryData left;
  BoundaryData right;

  static BoundarySpec periodic() { return {}; }
  static BoundarySpec zero_inflow() { return {BoundaryKind::zero_inflow, {}, {}}; }
  static BoundarySpec dirichlet(BoundaryData left, BoundaryData right = {}) {
    return {BoundaryKind::dirichlet, std::move(left), std::move(right)};
  }
  static BoundarySpec neumann(BoundaryData left, BoundaryData right = {}) {
    return {BoundaryKind::neumann, std::move(left), std::move(right)};
  }
  /// Homogeneous Dirichlet on both ends.
  static BoundarySpec zero_dirichlet();

  /// Inflow-side datum for a sweep in direction `dir`; throws if absent.
  const BoundaryData &inflow(Direction dir) const;
};

/// Closure data of one stage solve: the boundary kind plus the already
/// evaluated value of g (dirichlet) or h (neumann). Ignored for periodic
/// and zero_inflow.
struct StageClosure {
  BoundaryKind kind = BoundaryKind::periodic;
  double value = 0.0;
};

struct SweepResult {
  std::vector<double> convolution;
  double coefficient = 0.0;
  std::vector<double> solution;
};

/// I_i = I_{i-1} e^{-nu} + J_i (L, I_0 = 0) or I_i = I_{i+1} e^{-nu} + J_i (R, I_M = 0).
std::vector<double> accumulate_convolution(std::span<const double> increments, double nu,
                                           Direction dir);

/// Amplitude A (L) or B (R) of the homogeneous solution. Periodic lines
/// match the two ends of the period.
double closure_coefficient(const StageClosure &closure, std::span<const double> convolution,
                           std::span<const double> rhs, double alpha, double nu, Direction dir);

/// Reusable buffers for repeated sweeps over lines of the same length.
struct SweepWorkspace {
  std::vector<double> extended;
  std::vector<double> increments;
  std::vector<double> convolution;
};

/// Solves u_x + alpha u = alpha v (L) or u_x - alpha u = -alpha v (R) on one
/// line, writing the nodal solution into `out` (size M+1). Periodic lines
/// conserve the discrete mass of `rhs`.
void solve_stage(std::span<const double> rhs, const Grid1D &grid, double alpha,
                 const StageClosure &closure, Direction dir, WenoOrder order, WeightMode mode,
                 std::span<double> out, SweepWorkspace &ws, double *coefficient = nullptr);

SweepResult solve_stage(const Field1D &rhs, double alpha, const StageClosure &closure,
                        Direction dir, WenoOrder order, WeightMode mode = WeightMode::nonlinear);

/// Convenience form evaluating the inflow datum of `bc` at `t_eval`.
SweepResult solve_stage(const Field1D &rhs, double alpha, const BoundarySpec &bc, Direction dir,
                        WenoOrder order, double t_eval,
                        WeightMode mode = WeightMode::nonlinear);

/// Fills `ws.extended` with v_{-g}..v_{M+g}: periodic wrap or WENO extrapolation.
void build_extended(std::span<const double> v, BoundaryKind kind, WenoOrder order, double dx,
                    std::vector<double> &extended, WeightMode mode = WeightMode::nonlinear);

} // namespace molt
