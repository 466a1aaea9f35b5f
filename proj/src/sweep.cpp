#include "molt/sweep.hpp"

#include <cmath>
#include <stdexcept>

namespace molt {

namespace {

// Below this the homogeneous factors are flushed to zero so the recursion
// never walks through subnormals.
constexpr double kDecayFloor = 1e-290;

inline double next_decay(double d, double factor) {
  d *= factor;
  return std::abs(d) < kDecayFloor ? 0.0 : d;
}

// Nonlinear weights leave a small mass defect on a periodic line. It is
// spread over the nodes in proportion to |u| rather than left to the closure,
// which would put all of it next to the seam.
void restore_mass(std::span<const double> rhs, std::span<double> out) {
  const std::size_t m = out.size() - 1;
  double defect = 0.0;
  double weight = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    defect += rhs[i] - out[i];
    weight += std::abs(out[i]);
  }
  if (defect == 0.0 || !(weight > 0.0))
    return;
  const double scale = defect / weight;
  for (std::size_t i = 0; i < m; ++i)
    out[i] += scale * std::abs(out[i]);
  out[m] = out[0];
}

} // namespace

BoundarySpec BoundarySpec::zero_dirichlet() {
  auto zero = [](double, int) { return 0.0; };
  return {BoundaryKind::dirichlet, zero, zero};
}

const BoundaryData &BoundarySpec::inflow(Direction dir) const {
  const BoundaryData &d = (dir == Direction::L) ? left : right;
  if (!d)
    throw ConfigError(dir == Direction::L ? "boundary data missing on the left (inflow) side"
                                          : "boundary data missing on the right (inflow) side");
  return d;
}

std::vector<double> accumulate_convolution(std::span<const double> increments, double nu,
                                           Direction dir) {
  if (!(nu > 0.0))
    throw std::invalid_argument("accumulate_convolution: nu must be positive");
  const std::size_t n = increments.size();
  std::vector<double> conv(n, 0.0);
  if (n == 0)
    return conv;
  const double decay = std::exp(-nu);
  if (dir == Direction::L) {
    for (std::size_t i = 1; i < n; ++i)
      conv[i] = conv[i - 1] * decay + increments[i];
  } else {
    for (std::size_t i = n - 1; i-- > 0;)
      conv[i] = conv[i + 1] * decay + increments[i];
  }
  return conv;
}

double closure_coefficient(const StageClosure &closure, std::span<const double> convolution,
                           std::span<const double> rhs, double alpha, double nu, Direction dir) {
  const std::size_t n = convolution.size();
  if (rhs.size() != n || n < 2)
    throw std::invalid_argument("closure_coefficient: size mismatch");
  const std::size_t m = n - 1;
  switch (closure.kind) {
  case BoundaryKind::zero_inflow:
    return 0.0;
  case BoundaryKind::dirichlet:
    return closure.value;
  case BoundaryKind::neumann:
    return dir == Direction::L ? rhs[0] - closure.value / alpha : rhs[m] + closure.value / alpha;
  case BoundaryKind::periodic: {
    // Matching u(a) = u(b) around the period.
    const double wrap = -std::expm1(-nu * static_cast<double>(m));
    return (dir == Direction::L ? convolution[m] : convolution[0]) / wrap;
  }
  }
  throw std::logic_error("closure_coefficient: unknown boundary kind");
}

void build_extended(std::span<const double> v, BoundaryKind kind, WenoOrder order, double dx,
                    std::vector<double> &extended, WeightMode mode) {
  const int g = ghost_count(order);
  const int m = static_cast<int>(v.size()) - 1;
  extended.resize(v.size() + 2 * static_cast<std::size_t>(g));
  for (int i = 0; i <= m; ++i)
    extended[i + g] = v[i];
  if (kind == BoundaryKind::periodic) {
    // node M duplicates node 0
    extended[m + g] = v[0];
    for (int q = 1; q <= g; ++q) {
      extended[g - q] = v[((-q % m) + m) % m];
      extended[m + g + q] = v[q % m];
    }
    return;
  }
  const int k = stencil_k(order);
  const int w = 2 * k - 1;
  if (m + 1 < w)
    throw ConfigError("grid too coarse for WENO boundary extrapolation");
  const auto left = extrapolate_ghosts(v.subspan(0, w), order, Side::left, dx, mode);
  const auto right = extrapolate_ghosts(v.subspan(m + 1 - w, w), order, Side::right, dx, mode);
  for (int q = 1; q <= g; ++q) {
    extended[g - q] = left[q - 1];
    extended[m + g + q] = right[q - 1];
  }
}

void solve_stage(std::span<const double> rhs, const Grid1D &grid, double alpha,
                 const StageClosure &closure, Direction dir, WenoOrder order, WeightMode mode,
                 std::span<double> out, SweepWorkspace &ws, double *coefficient) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("solve_stage: alpha must be positive");
  const std::size_t n = rhs.size();
  if (n != static_cast<std::size_t>(grid.nodes()) || out.size() != n)
    throw std::invalid_argument("solve_stage: line length does not match grid");
  const int m = grid.cells();
  const double nu = alpha * grid.dx();
  const KernelCoefficients kc = kernel_coefficients(nu, order);

  build_extended(rhs, closure.kind, order, grid.dx(), ws.extended, mode);
  ws.increments.resize(n);
  integrate_increments(ws.extended, kc, dir, mode, ws.increments);

  const double decay = std::exp(-nu);
  ws.convolution.resize(n);
  auto &conv = ws.convolution;
  if (dir == Direction::L) {
    conv[0] = 0.0;
    for (int i = 1; i <= m; ++i)
      conv[i] = conv[i - 1] * decay + ws.increments[i];
  } else {
    conv[m] = 0.0;
    for (int i = m - 1; i >= 0; --i)
      conv[i] = conv[i + 1] * decay + ws.increments[i];
  }

  const double coeff = closure_coefficient(closure, conv, rhs, alpha, nu, dir);
  if (coefficient)
    *coefficient = coeff;

  double d = coeff;
  if (dir == Direction::L) {
    for (int i = 0; i <= m; ++i) {
      out[i] = conv[i] + d;
      d = (d == 0.0) ? 0.0 : next_decay(d, decay);
    }
    if (closure.kind == BoundaryKind::periodic)
      out[m] = out[0];
  } else {
    for (int i = m; i >= 0; --i) {
      out[i] = conv[i] + d;
      d = (d == 0.0) ? 0.0 : next_decay(d, decay);
    }
    if (closure.kind == BoundaryKind::periodic)
      out[0] = out[m];
  }
  if (closure.kind == BoundaryKind::periodic)
    restore_mass(rhs, out);
}

SweepResult solve_stage(const Field1D &rhs, double alpha, const StageClosure &closure,
                        Direction dir, WenoOrder order, WeightMode mode) {
  SweepWorkspace ws;
  SweepResult result;
  result.solution.resize(rhs.size());
  solve_stage(rhs.values, rhs.grid, alpha, closure, dir, order, mode, result.solution, ws,
              &result.coefficient);
  result.convolution = ws.convolution;
  return result;
}

SweepResult solve_stage(const Field1D &rhs, double alpha, const BoundarySpec &bc, Direction dir,
                        WenoOrder order, double t_eval, WeightMode mode) {
  StageClosure closure{bc.kind, 0.0};
  if (bc.kind == BoundaryKind::dirichlet || bc.kind == BoundaryKind::neumann)
    closure.value = bc.inflow(dir)(t_eval, 0);
  return solve_stage(rhs, alpha, closure, dir, order, mode);
}

} // namespace molt
