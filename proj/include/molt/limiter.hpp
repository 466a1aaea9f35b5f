#pragma once

#include <span>
#include <vector>

#include "molt/sweep.hpp"
#include "molt/weno.hpp"

namespace molt {

/// Artificial fluxes putting a completed step in conservative form
///   u^{n+1}_i = u^n_i - lambda (f_{i+1/2} - f_{i-1/2}).
/// fluxes[i + 1] holds f_{i+1/2} for i = -1..M.
struct FluxSet {
  double lambda = 0.0;
  std::vector<double> fluxes;
  Direction direction = Direction::L;

  double at(int i_half_minus) const { return fluxes[static_cast<std::size_t>(i_half_minus + 1)]; }
};

enum class LimiterBoundary { periodic, dirichlet, neumann };

LimiterBoundary limiter_boundary(BoundaryKind kind);

/// The inflow flux is pinned to zero: f_{-1/2} = 0 for L, f_{M+1/2} = 0 for R.
FluxSet reconstruct_fluxes(std::span<const double> u_n, std::span<const double> u_np1,
                           double lambda, Direction dir);

/// Resets outflow fluxes of cells whose provisional value is negative so
/// that those cells end at zero. Periodic fields get the second
/// screening pass that restores f_{M-1/2} = f_{-1/2}.
FluxSet limit_fluxes(const FluxSet &fs, std::span<const double> u_n, LimiterBoundary kind);

/// u^new_i = u^n_i - lambda (f~_{i+1/2} - f~_{i-1/2}); throws std::logic_error
/// if any limited value ends below zero.
std::vector<double> apply_limited(std::span<const double> u_n, const FluxSet &fs,
                                  LimiterBoundary kind);

/// Full post-processing of one step, in place on `u_np1`. Leaves `u_np1`
/// untouched (bitwise) when no value is negative.
/// Returns true if any flux was modified.
bool enforce_positivity(std::span<const double> u_n, std::span<double> u_np1, double lambda,
                        Direction dir, LimiterBoundary kind);

} // namespace molt
