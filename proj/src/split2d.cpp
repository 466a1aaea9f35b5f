#include "molt/split2d.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "molt/parallel.hpp"

namespace molt {

SplitSequence splitting_sequence(int order) {
  SplitSequence seq;
  seq.order = order;
  switch (order) {
  case 1:
    seq.steps = {{Axis::X, 1.0}, {Axis::Y, 1.0}};
    break;
  case 2:
    seq.steps = {{Axis::X, 0.5}, {Axis::Y, 1.0}, {Axis::X, 0.5}};
    break;
  case 3:
    seq.steps = {{Axis::X, 7.0 / 24.0}, {Axis::Y, 2.0 / 3.0}, {Axis::X, 3.0 / 4.0},
                 {Axis::Y, -2.0 / 3.0}, {Axis::X, -1.0 / 24.0}, {Axis::Y, 1.0}};
    break;
  case 4: {
    const double a = (std::cbrt(2.0) + 1.0 / std::cbrt(2.0) - 1.0) / 6.0;
    seq.steps = {{Axis::Y, a + 0.5},        {Axis::X, 2.0 * a + 1.0}, {Axis::Y, -a},
                 {Axis::X, -(4.0 * a + 1.0)}, {Axis::Y, -a},           {Axis::X, 2.0 * a + 1.0},
                 {Axis::Y, a + 0.5}};
    break;
  }
  default:
    throw ConfigError("splitting order must be 1, 2, 3 or 4");
  }
  return seq;
}

int default_split_order(WenoOrder order) { return order == WenoOrder::weno3 ? 3 : 4; }

namespace {

StepWorkspace &local_workspace() {
  thread_local StepWorkspace ws;
  return ws;
}

} // namespace

AdvectStats advect_x_lines(Field2D &field, std::span<const double> speeds, double dt,
                           const StepConfig &cfg, const BoundarySpec &bc, double t) {
  const int nx = field.nx();
  const int nv = field.nv();
  if (speeds.size() != static_cast<std::size_t>(nv))
    throw std::invalid_argument("advect_x_lines: one speed per line required");
  std::atomic<int> limited{0};
  parallel_for(nv, [&](int begin, int end) {
    StepWorkspace &ws = local_workspace();
    std::vector<double> line(nx), out(nx);
    for (int j = begin; j < end; ++j) {
      if (speeds[j] == 0.0)
        continue;
      for (int i = 0; i < nx; ++i)
        line[i] = field(i, j);
      if (advance_line(line, out, field.gx, speeds[j], dt, cfg, bc, t, ws))
        ++limited;
      for (int i = 0; i < nx; ++i)
        field(i, j) = out[i];
    }
  });
  return {limited.load()};
}

AdvectStats advect_y_lines(Field2D &field, std::span<const double> speeds, double dt,
                           const StepConfig &cfg, const BoundarySpec &bc, double t) {
  const int nx = field.nx();
  const int nv = field.nv();
  if (speeds.size() != static_cast<std::size_t>(nx))
    throw std::invalid_argument("advect_y_lines: one speed per line required");
  std::atomic<int> limited{0};
  parallel_for(nx, [&](int begin, int end) {
    StepWorkspace &ws = local_workspace();
    std::vector<double> out(nv);
    for (int i = begin; i < end; ++i) {
      if (speeds[i] == 0.0)
        continue;
      std::span<double> row(&field.values[field.index(i, 0)], static_cast<std::size_t>(nv));
      if (advance_line(row, out, field.gv, speeds[i], dt, cfg, bc, t, ws))
        ++limited;
      std::copy(out.begin(), out.end(), row.begin());
    }
  });
  return {limited.load()};
}

Field2D advect_x(const Field2D &field, const SpeedFn &speed_of_row, double dt,
                 const StepConfig &cfg, const BoundarySpec &bc, double t) {
  std::vector<double> speeds(static_cast<std::size_t>(field.nv()));
  for (int j = 0; j < field.nv(); ++j)
    speeds[j] = speed_of_row(field.gv.x(j), t);
  Field2D out = field;
  advect_x_lines(out, speeds, dt, cfg, bc, t);
  return out;
}

Field2D advect_y(const Field2D &field, const SpeedFn &speed_of_col, double dt,
                 const StepConfig &cfg, const BoundarySpec &bc, double t) {
  std::vector<double> speeds(static_cast<std::size_t>(field.nx()));
  for (int i = 0; i < field.nx(); ++i)
    speeds[i] = speed_of_col(field.gx.x(i), t);
  Field2D out = field;
  advect_y_lines(out, speeds, dt, cfg, bc, t);
  return out;
}

Field2D step_2d(const Field2D &field, const Advection2D &problem, double dt,
                const SplitSequence &seq, const StepConfig &cfg, double t) {
  Field2D u = field;
  double tx = t;
  double ty = t;
  std::vector<double> sx(static_cast<std::size_t>(u.nv()));
  std::vector<double> sy(static_cast<std::size_t>(u.nx()));
  for (const SplitStep &st : seq.steps) {
    const double h = st.fraction * dt;
    if (st.axis == Axis::X) {
      for (int j = 0; j < u.nv(); ++j)
        sx[j] = problem.fx(u.gv.x(j), tx);
      advect_x_lines(u, sx, h, cfg, problem.bc_x, tx);
      tx += h;
    } else {
      for (int i = 0; i < u.nx(); ++i)
        sy[i] = problem.gy(u.gx.x(i), ty);
      advect_y_lines(u, sy, h, cfg, problem.bc_y, ty);
      ty += h;
    }
  }
  return u;
}

double cfl_time_step_2d(const Field2D &field, const Advection2D &problem, double cfl, double t) {
  double cx = 0.0;
  double cy = 0.0;
  for (int j = 0; j < field.nv(); ++j)
    cx = std::max(cx, std::abs(problem.fx(field.gv.x(j), t)));
  for (int i = 0; i < field.nx(); ++i)
    cy = std::max(cy, std::abs(problem.gy(field.gx.x(i), t)));
  const double rate = std::max(cx / field.gx.dx(), cy / field.gv.dx());
  if (!(rate > 0.0))
    throw ConfigError("cfl_time_step_2d: all speeds vanish");
  return cfl / rate;
}

Field2D transpose(const Field2D &field) {
  Field2D out(field.gv, field.gx);
  for (int i = 0; i < field.nx(); ++i)
    for (int j = 0; j < field.nv(); ++j)
      out(j, i) = field(i, j);
  return out;
}

} // namespace molt
