#include "molt/dirk.hpp"

#include <cmath>
#include <stdexcept>

#include "molt/limiter.hpp"

namespace molt {

TableauName tableau_from_string(const std::string &name) {
  if (name == "RK23" || name == "rk23")
    return TableauName::RK23;
  if (name == "RK44" || name == "rk44")
    return TableauName::RK44;
  throw ConfigError("unknown tableau '" + name + "' (expected RK23 or RK44)");
}

std::string to_string(TableauName name) { return name == TableauName::RK23 ? "RK23" : "RK44"; }

DirkTableau tableau(TableauName name) {
  DirkTableau t;
  t.name = name;
  if (name == TableauName::RK23) {
    const double s3 = std::sqrt(3.0);
    const double g = 0.5 * (1.0 - 1.0 / s3);
    t.stages = 2;
    t.order = 3;
    t.a[0] = {g, 0.0, 0.0, 0.0};
    t.a[1] = {1.0 / s3, g, 0.0, 0.0};
    t.b = {0.5, 0.5, 0.0, 0.0};
  } else if (name == TableauName::RK44) {
    t.stages = 4;
    t.order = 4;
    t.a[0] = {0.087475824368378, 0.0, 0.0, 0.0};
    t.a[1] = {0.306653000581791, 0.106634669130071, 0.0, 0.0};
    t.a[2] = {0.306653000581791, 0.325811845343484, 0.106634688637712, 0.0};
    t.a[3] = {0.306049667930486, 0.220166571892301, 0.220166585074543, 0.087475807723977};
    t.b = {0.306092539007907, 0.204522170534763, 0.204522182780312, 0.284863107677018};
  } else {
    throw ConfigError("unknown tableau");
  }
  for (int i = 0; i < t.stages; ++i) {
    double s = 0.0;
    for (int j = 0; j <= i; ++j)
      s += t.a[i][j];
    t.c[i] = s;
  }
  return t;
}

namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;

// Inverse of a lower-triangular matrix with nonzero diagonal.
Mat4 lower_inverse(const Mat4 &a, int n) {
  Mat4 inv{};
  for (int col = 0; col < n; ++col) {
    for (int i = col; i < n; ++i) {
      double s = (i == col) ? 1.0 : 0.0;
      for (int j = col; j < i; ++j)
        s -= a[i][j] * inv[j][col];
      inv[i][col] = s / a[i][i];
    }
  }
  return inv;
}

Mat4 matmul(const Mat4 &x, const Mat4 &y, int n) {
  Mat4 r{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int q = 0; q < n; ++q)
        s += x[i][q] * y[q][j];
      r[i][j] = s;
    }
  return r;
}

} // namespace

StageCombination stage_combination(const DirkTableau &tab) {
  const int s = tab.stages;
  for (int i = 0; i < s; ++i)
    if (!(tab.a[i][i] > 0.0))
      throw std::invalid_argument("stage_combination: diagonal entries must be positive");
  const Mat4 inv = lower_inverse(tab.a, s);
  StageCombination sc;
  for (int i = 0; i < s; ++i) {
    double row = 0.0;
    for (int j = 0; j <= i; ++j)
      row += inv[i][j];
    sc.on_un[i] = tab.a[i][i] * row;
    for (int j = 0; j < i; ++j) {
      // ((A - Lambda) A^{-1})_{ij}; the diagonal vanishes identically
      double v = 0.0;
      for (int q = j; q < i; ++q)
        v += tab.a[i][q] * inv[q][j];
      sc.on_stage[i][j] = v;
    }
  }
  double total = 0.0;
  for (int j = 0; j < s; ++j) {
    double w = 0.0;
    for (int i = j; i < s; ++i)
      w += tab.b[i] * inv[i][j];
    sc.final_stage[j] = w;
    total += w;
  }
  sc.final_un = 1.0 - total;
  return sc;
}

std::vector<double> stage_boundary_values(const BoundaryData &data, const DirkTableau &tab,
                                          double dt, double t_n, BoundaryReading reading) {
  const int s = tab.stages;
  std::vector<double> out(static_cast<std::size_t>(s), 0.0);
  if (!data)
    throw ConfigError("boundary data callback missing");
  if (reading == BoundaryReading::stage_time) {
    for (int i = 0; i < s; ++i)
      out[i] = data(t_n + tab.c[i] * dt, 0);
    return out;
  }

  const int k = tab.order;
  // powers[l] = A^l
  std::vector<Mat4> powers(static_cast<std::size_t>(k));
  Mat4 id{};
  for (int i = 0; i < s; ++i)
    id[i][i] = 1.0;
  powers[0] = id;
  for (int l = 1; l < k; ++l)
    powers[l] = matmul(powers[l - 1], tab.a, s);

  for (int l = 0; l <= k - 2; ++l) {
    const double deriv = data(t_n, l);
    if (deriv == 0.0)
      continue;
    const double dtl = std::pow(dt, l);
    for (int i = 0; i < s; ++i) {
      double row = 0.0;
      for (int j = 0; j < s; ++j)
        row += powers[l][i][j];
      double term = dtl * row * deriv;
      if (reading == BoundaryReading::elementwise)
        term *= std::pow(tab.c[i], l);
      out[i] += term;
    }
  }
  std::array<double, 4> last{};
  for (int j = 0; j < s; ++j)
    last[j] = data(t_n + tab.c[j] * dt, k - 1);
  const double dtk = std::pow(dt, k - 1);
  for (int i = 0; i < s; ++i) {
    double term = 0.0;
    for (int j = 0; j < s; ++j)
      term += powers[k - 1][i][j] * last[j];
    term *= dtk;
    if (reading == BoundaryReading::elementwise)
      term *= std::pow(tab.c[i], k - 1);
    out[i] += term;
  }
  return out;
}

StepConfig StepConfig::paired(WenoOrder order, bool limiter) {
  StepConfig cfg;
  cfg.order = order;
  cfg.tableau = molt::tableau(order == WenoOrder::weno3 ? TableauName::RK23 : TableauName::RK44);
  cfg.use_pp_limiter = limiter;
  return cfg;
}

bool advance_line(std::span<const double> u_n, std::span<double> out, const Grid1D &grid,
                  double c, double dt, const StepConfig &cfg, const BoundarySpec &bc, double t_n,
                  StepWorkspace &ws) {
  const std::size_t n = u_n.size();
  if (n != static_cast<std::size_t>(grid.nodes()) || out.size() != n)
    throw std::invalid_argument("advance_line: line length does not match grid");
  if (c == 0.0 || dt == 0.0) {
    std::copy(u_n.begin(), u_n.end(), out.begin());
    return false;
  }
  const DirkTableau &tab = cfg.tableau;
  const int s = tab.stages;
  // Recomputed per line; negligible next to the sweeps.
  const StageCombination sc = stage_combination(tab);
  const Direction dir = (c * dt > 0.0) ? Direction::L : Direction::R;

  std::array<double, 4> closure_values{};
  if (bc.kind == BoundaryKind::dirichlet || bc.kind == BoundaryKind::neumann) {
    const auto vals = stage_boundary_values(bc.inflow(dir), tab, dt, t_n, cfg.reading);
    for (int i = 0; i < s; ++i)
      closure_values[i] = vals[i];
  }

  // A periodic line's last node is read as a copy of node 0.
  const bool periodic = bc.kind == BoundaryKind::periodic;
  if (periodic && u_n[n - 1] != u_n[0]) {
    ws.scratch.assign(u_n.begin(), u_n.end());
    ws.scratch[n - 1] = ws.scratch[0];
    u_n = ws.scratch;
  }

  ws.stages.resize(static_cast<std::size_t>(s));
  ws.rhs.resize(n);
  for (int i = 0; i < s; ++i) {
    for (std::size_t q = 0; q < n; ++q) {
      double v = sc.on_un[i] * u_n[q];
      for (int j = 0; j < i; ++j)
        v += sc.on_stage[i][j] * ws.stages[j][q];
      ws.rhs[q] = v;
    }
    ws.stages[i].resize(n);
    const double alpha = 1.0 / std::abs(c * tab.a[i][i] * dt);
    const StageClosure closure{bc.kind, closure_values[i]};
    solve_stage(ws.rhs, grid, alpha, closure, dir, cfg.order, cfg.weno_mode, ws.stages[i],
                ws.sweep);
  }

  for (std::size_t q = 0; q < n; ++q) {
    double v = sc.final_un * u_n[q];
    for (int j = 0; j < s; ++j)
      v += sc.final_stage[j] * ws.stages[j][q];
    out[q] = v;
  }
  const std::size_t inflow = (dir == Direction::L) ? 0 : n - 1;
  if (periodic) {
    out[n - 1] = out[0];
  } else if (bc.kind == BoundaryKind::dirichlet) {
    // The recombination weights amplify any mismatch at the pinned node.
    out[inflow] = bc.inflow(dir)(t_n + dt, 0);
  } else if (bc.kind == BoundaryKind::zero_inflow) {
    out[inflow] = 0.0;
  }

  if (!cfg.use_pp_limiter)
    return false;
  return enforce_positivity(u_n, out, dt / grid.dx(), dir, limiter_boundary(bc.kind));
}

Field1D advance_1d(const Field1D &u_n, double c, double dt, const StepConfig &cfg,
                   const BoundarySpec &bc, double t_n) {
  StepWorkspace ws;
  Field1D out{u_n.grid, std::vector<double>(u_n.values.size())};
  advance_line(u_n.values, out.values, u_n.grid, c, dt, cfg, bc, t_n, ws);
  return out;
}

} // namespace molt
