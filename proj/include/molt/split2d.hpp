#pragma once

#include <functional>
#include <span>
#include <vector>

#include "molt/dirk.hpp"
#include "molt/mesh.hpp"
#include "molt/sweep.hpp"

namespace molt {

enum class Axis { X, Y };

struct SplitStep {
  Axis axis = Axis::X;
  double fraction = 0.0;
};

/// Substeps in application order; each axis' fractions add up to one.
struct SplitSequence {
  int order = 2;
  std::vector<SplitStep> steps;
};

/// Orders 1 to 4: Lie, Strang, the 3rd order six-step sequence and the
/// 4th order seven-step palindrome.
SplitSequence splitting_sequence(int order);

/// Splitting order conventionally paired with a WENO order (3 or 4).
int default_split_order(WenoOrder order);

/// Speed along one axis as a function of the other coordinate and time.
using SpeedFn = std::function<double(double coord, double t)>;

/// Counters gathered while advecting lines.
struct AdvectStats {
  int lines_limited = 0;
};

/// Advances every x-line (fixed second-axis index j) by dt with speed
/// speeds[j]. Lines with zero speed are left alone.
AdvectStats advect_x_lines(Field2D &field, std::span<const double> speeds, double dt,
                           const StepConfig &cfg, const BoundarySpec &bc, double t);

/// Same along the second axis, speeds indexed by x node i.
AdvectStats advect_y_lines(Field2D &field, std::span<const double> speeds, double dt,
                           const StepConfig &cfg, const BoundarySpec &bc, double t);

Field2D advect_x(const Field2D &field, const SpeedFn &speed_of_row, double dt,
                 const StepConfig &cfg, const BoundarySpec &bc, double t);
Field2D advect_y(const Field2D &field, const SpeedFn &speed_of_col, double dt,
                 const StepConfig &cfg, const BoundarySpec &bc, double t);

struct Advection2D {
  SpeedFn fx;  // x-speed as a function of (y, t)
  SpeedFn gy;  // y-speed as a function of (x, t)
  BoundarySpec bc_x;
  BoundarySpec bc_y;
};

/// One split step. Speed callbacks and boundary data see, per axis, the
/// time already advanced along that axis.
Field2D step_2d(const Field2D &field, const Advection2D &problem, double dt,
                const SplitSequence &seq, const StepConfig &cfg, double t);

/// dt = cfl / max(max|c_x| / dx, max|c_y| / dy) over the nodes at time t.
double cfl_time_step_2d(const Field2D &field, const Advection2D &problem, double cfl, double t);

Field2D transpose(const Field2D &field);

} // namespace molt
