#pragma once

#include <array>
#include <span>
#include <vector>

namespace molt {

/// Stencil half-width k. k = 2 gives the third-order scheme (WENO3),
/// k = 3 the fifth-order one (WENO5).
enum class WenoOrder { weno3 = 2, weno5 = 3 };

constexpr int stencil_k(WenoOrder order) { return static_cast<int>(order); }
constexpr int ghost_count(WenoOrder order) { return stencil_k(order) - 1; }

WenoOrder weno_order_from_k(int k);

/// Characteristic direction of a sweep. L: information travels left to
/// right (positive effective speed), R: right to left.
enum class Direction { L, R };

enum class WeightMode { linear, nonlinear };

enum class Side { left, right };

inline constexpr double kWenoEpsilon = 1e-6;

/// Quadrature weights of alpha * int_{x_{i-1}}^{x_i} e^{-alpha (x_i - y)} p(y) dy
/// for the interpolants on each small stencil, plus the linear weights that
/// recombine them into the big-stencil value.
struct KernelCoefficients {
  double nu = 0.0;
  WenoOrder order = WenoOrder::weno3;
  /// small[r][j] multiplies v at offset (-r-1+j) from x_i, j = 0..k.
  std::array<std::array<double, 4>, 3> small{};
  std::array<double, 3> linear_weights{};
  /// 1 - e^{-nu}: the increment of constant unit data.
  double unit_increment = 0.0;
};

KernelCoefficients kernel_coefficients(double nu, WenoOrder order);

/// Coefficients of the big-stencil interpolant (offsets -k..k-1), obtained
/// from the small stencils and the linear weights.
std::array<double, 6> big_stencil_coefficients(const KernelCoefficients &kc);

struct SmoothnessSet {
  std::array<double, 5> beta{};
  int count = 0;
  double epsilon = kWenoEpsilon;
};

/// window = v_{i-k}..v_{i+k-1} (length 2k).
SmoothnessSet smoothness_indicators(std::span<const double> window, WenoOrder order);

/// omega_r = (d_r / (eps + beta_r)^2) / sum_s (d_s / (eps + beta_s)^2).
std::vector<double> nonlinear_weights(std::span<const double> linear, const SmoothnessSet &smooth);

/// Increments J_i for one sweep.
///
/// `extended` holds v_{-g}..v_{M+g} with g = k-1 ghost values on each side.
/// The result has M+1 entries: for L it carries J_1..J_M (entry 0 is zero),
/// for R it carries J_0..J_{M-1} (entry M is zero).
std::vector<double> integrate_increments(std::span<const double> extended, double nu,
                                         WenoOrder order, Direction dir, WeightMode mode);

/// Same as above, writing into `out` (size M+1) without allocating.
void integrate_increments(std::span<const double> extended, const KernelCoefficients &kc,
                          Direction dir, WeightMode mode, std::span<double> out);

/// WENO extrapolation of k-1 ghost values beyond one boundary.
///
/// Left: window = v_0..v_{2k-2}, returns {v_{-1}, .., v_{-(k-1)}}.
/// Right: window = v_{M-2k+2}..v_M, returns {v_{M+1}, .., v_{M+k-1}}.
/// Linear mode combines the candidates with d_r directly.
std::vector<double> extrapolate_ghosts(std::span<const double> window, WenoOrder order,
                                       Side side, double dx,
                                       WeightMode mode = WeightMode::nonlinear);

} // namespace molt
