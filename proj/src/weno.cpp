#include "molt/weno.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace molt {

namespace {

// Below this nu the closed forms lose more than ~1e-14 to cancellation.
constexpr double kSeriesThreshold = 1.0;
constexpr int kSeriesTerms = 40;

// m_p = nu * int_0^1 s^p e^{-nu s} ds, p = 0..pmax, by power series in nu.
std::array<double, 8> kernel_moments(double nu, int pmax) {
  std::array<double, 8> m{};
  for (int p = 0; p <= pmax; ++p) {
    double term = 1.0; // (-nu)^n / n!
    double sum = 0.0;
    for (int n = 0; n < kSeriesTerms; ++n) {
      sum += term / (n + p + 1);
      term *= -nu / (n + 1);
    }
    m[p] = nu * sum;
  }
  return m;
}

// Coefficients of the Lagrange basis polynomial for node offsets[j], written
// as a polynomial in s where y = -s (y measured in cells from x_i).
std::array<double, 8> lagrange_in_s(std::span<const int> offsets, std::size_t j) {
  std::array<double, 8> poly{};
  poly[0] = 1.0;
  int degree = 0;
  for (std::size_t m = 0; m < offsets.size(); ++m) {
    if (m == j)
      continue;
    // factor (y - o_m) / (o_j - o_m) with y = -s
    const double denom = offsets[j] - offsets[m];
    std::array<double, 8> next{};
    for (int p = 0; p <= degree; ++p) {
      next[p] += -offsets[m] * poly[p] / denom;
      next[p + 1] += -poly[p] / denom;
    }
    poly = next;
    ++degree;
  }
  return poly;
}

double stencil_weight(std::span<const int> offsets, std::size_t j,
                      const std::array<double, 8> &moments) {
  const auto poly = lagrange_in_s(offsets, j);
  double c = 0.0;
  for (std::size_t p = 0; p < offsets.size(); ++p)
    c += poly[p] * moments[p];
  return c;
}

KernelCoefficients series_coefficients(double nu, WenoOrder order) {
  const int k = stencil_k(order);
  KernelCoefficients kc;
  kc.nu = nu;
  kc.order = order;
  const auto moments = kernel_moments(nu, 2 * k - 1);
  for (int r = 0; r < k; ++r) {
    std::array<int, 4> offs{};
    for (int j = 0; j <= k; ++j)
      offs[j] = -r - 1 + j;
    for (int j = 0; j <= k; ++j)
      kc.small[r][j] = stencil_weight(std::span<const int>(offs.data(), k + 1), j, moments);
  }
  std::array<int, 6> big{};
  for (int j = 0; j < 2 * k; ++j)
    big[j] = -k + j;
  const std::span<const int> bigspan(big.data(), 2 * k);
  // The outermost big-stencil nodes are reached by a single small stencil each.
  const double c_left = stencil_weight(bigspan, 0, moments);
  const double c_right = stencil_weight(bigspan, 2 * k - 1, moments);
  const double d_first = c_right / kc.small[0][k];
  const double d_last = c_left / kc.small[k - 1][0];
  if (k == 2) {
    kc.linear_weights = {d_first, d_last, 0.0};
  } else {
    kc.linear_weights = {d_first, 1.0 - d_first - d_last, d_last};
  }
  kc.unit_increment = -std::expm1(-nu);
  return kc;
}

KernelCoefficients closed_form_coefficients(double nu, WenoOrder order) {
  KernelCoefficients kc;
  kc.nu = nu;
  kc.order = order;
  const double e = std::exp(-nu);
  const double n2 = nu * nu;
  const double n3 = n2 * nu;
  const double n4 = n3 * nu;
  if (order == WenoOrder::weno3) {
    kc.small[0] = {(2 + nu - (2 + 3 * nu + 2 * n2) * e) / (2 * n2),
                   -(2 - n2 - (2 + 2 * nu) * e) / n2,
                   (2 - nu - (2 + nu) * e) / (2 * n2), 0.0};
    kc.small[1] = {(2 - nu - (2 + nu) * e) / (2 * n2),
                   -(2 - 2 * nu - (2 - n2) * e) / n2,
                   (2 - 3 * nu + 2 * n2 - (2 - nu) * e) / (2 * n2), 0.0};
    const double den = 3 * nu * (2 - nu - (2 + nu) * e);
    const double d0 = (-(6 - 6 * nu + 2 * n2) + (6 - n2) * e) / den;
    const double d1 = (6 - n2 - (6 + 6 * nu + 2 * n2) * e) / den;
    kc.linear_weights = {d0, d1, 0.0};
  } else {
    kc.small[0] = {(6 + 6 * nu + 2 * n2 - (6 + 12 * nu + 11 * n2 + 6 * n3) * e) / (6 * n3),
                   -(6 + 4 * nu - n2 - 2 * n3 - (6 + 10 * nu + 6 * n2) * e) / (2 * n3),
                   (6 + 2 * nu - 2 * n2 - (6 + 8 * nu + 3 * n2) * e) / (2 * n3),
                   -(6 - n2 - (6 + 6 * nu + 2 * n2) * e) / (6 * n3)};
    kc.small[1] = {(6 - n2 - (6 + 6 * nu + 2 * n2) * e) / (6 * n3),
                   -(6 - 2 * nu - 2 * n2 - (6 + 4 * nu - n2 - 2 * n3) * e) / (2 * n3),
                   (6 - 4 * nu - n2 + 2 * n3 - (6 + 2 * nu - 2 * n2) * e) / (2 * n3),
                   -(6 - 6 * nu + 2 * n2 - (6 - n2) * e) / (6 * n3)};
    kc.small[2] = {(6 - 6 * nu + 2 * n2 - (6 - n2) * e) / (6 * n3),
                   -(6 - 8 * nu + 3 * n2 - (6 - 2 * nu - 2 * n2) * e) / (2 * n3),
                   (6 - 10 * nu + 6 * n2 - (6 - 4 * nu - n2 + 2 * n3) * e) / (2 * n3),
                   -(6 - 12 * nu + 11 * n2 - 6 * n3 - (6 - 6 * nu + 2 * n2) * e) / (6 * n3)};
    const double d0 = (60 - 60 * nu + 15 * n2 + 5 * n3 - 3 * n4 - (60 - 15 * n2 + 2 * n4) * e) /
                      (10 * n2 * (6 - n2 - (6 + 6 * nu + 2 * n2) * e));
    const double d2 = (60 - 15 * n2 + 2 * n4 - (60 + 60 * nu + 15 * n2 - 5 * n3 - 3 * n4) * e) /
                      (10 * n2 * ((6 - 6 * nu + 2 * n2) - (6 - n2) * e));
    kc.linear_weights = {d0, 1.0 - d0 - d2, d2};
  }
  kc.unit_increment = -std::expm1(-nu);
  return kc;
}

inline double sq(double x) { return x * x; }

// Smoothness indicators on a window w[0..2k-1] = v_{i-k}..v_{i+k-1}.
inline void beta_k2(const double *w, double &b0, double &b1) {
  const double d1 = sq(w[1] - w[2]);
  b0 = 13.0 / 12.0 * sq(w[1] - 2 * w[2] + w[3]) + d1;
  b1 = 13.0 / 12.0 * sq(w[0] - 2 * w[1] + w[2]) + d1;
}

inline void beta_k3(const double *w, double &b0, double &b1, double &b2) {
  constexpr double c3 = 781.0 / 720.0;
  constexpr double c2 = 13.0 / 48.0;
  const double d1 = sq(w[2] - w[3]);
  b0 = c3 * sq(-w[2] + 3 * w[3] - 3 * w[4] + w[5]) + c2 * sq(-3 * w[2] + 7 * w[3] - 5 * w[4] + w[5]) + d1;
  b1 = c3 * sq(-w[1] + 3 * w[2] - 3 * w[3] + w[4]) + c2 * sq(-w[1] + w[2] + w[3] - w[4]) + d1;
  b2 = c3 * sq(-w[0] + 3 * w[1] - 3 * w[2] + w[3]) + c2 * sq(w[0] - 5 * w[1] + 7 * w[2] - 3 * w[3]) + d1;
}

inline double increment_k2(const double *w, const KernelCoefficients &kc, WeightMode mode) {
  const auto &s0 = kc.small[0];
  const auto &s1 = kc.small[1];
  const double j0 = s0[0] * w[1] + s0[1] * w[2] + s0[2] * w[3];
  const double j1 = s1[0] * w[0] + s1[1] * w[1] + s1[2] * w[2];
  const double d0 = kc.linear_weights[0];
  const double d1 = kc.linear_weights[1];
  if (mode == WeightMode::linear)
    return d0 * j0 + d1 * j1;
  double b0, b1;
  beta_k2(w, b0, b1);
  const double a0 = d0 / sq(kWenoEpsilon + b0);
  const double a1 = d1 / sq(kWenoEpsilon + b1);
  return (a0 * j0 + a1 * j1) / (a0 + a1);
}

inline double increment_k3(const double *w, const KernelCoefficients &kc, WeightMode mode) {
  const auto &s0 = kc.small[0];
  const auto &s1 = kc.small[1];
  const auto &s2 = kc.small[2];
  const double j0 = s0[0] * w[2] + s0[1] * w[3] + s0[2] * w[4] + s0[3] * w[5];
  const double j1 = s1[0] * w[1] + s1[1] * w[2] + s1[2] * w[3] + s1[3] * w[4];
  const double j2 = s2[0] * w[0] + s2[1] * w[1] + s2[2] * w[2] + s2[3] * w[3];
  const double d0 = kc.linear_weights[0];
  const double d1 = kc.linear_weights[1];
  const double d2 = kc.linear_weights[2];
  if (mode == WeightMode::linear)
    return d0 * j0 + d1 * j1 + d2 * j2;
  double b0, b1, b2;
  beta_k3(w, b0, b1, b2);
  const double a0 = d0 / sq(kWenoEpsilon + b0);
  const double a1 = d1 / sq(kWenoEpsilon + b1);
  const double a2 = d2 / sq(kWenoEpsilon + b2);
  return (a0 * j0 + a1 * j1 + a2 * j2) / (a0 + a1 + a2);
}

} // namespace

WenoOrder weno_order_from_k(int k) {
  if (k == 2)
    return WenoOrder::weno3;
  if (k == 3)
    return WenoOrder::weno5;
  throw std::invalid_argument("WENO stencil parameter k must be 2 or 3, got " + std::to_string(k));
}

KernelCoefficients kernel_coefficients(double nu, WenoOrder order) {
  if (!(nu > 0.0))
    throw std::invalid_argument("kernel_coefficients: nu must be positive");
  if (nu < kSeriesThreshold)
    return series_coefficients(nu, order);
  return closed_form_coefficients(nu, order);
}

std::array<double, 6> big_stencil_coefficients(const KernelCoefficients &kc) {
  const int k = stencil_k(kc.order);
  std::array<double, 6> big{};
  for (int r = 0; r < k; ++r)
    for (int j = 0; j <= k; ++j) {
      // offset -r-1+j maps to big index offset + k
      big[-r - 1 + j + k] += kc.linear_weights[r] * kc.small[r][j];
    }
  return big;
}

SmoothnessSet smoothness_indicators(std::span<const double> window, WenoOrder order) {
  const int k = stencil_k(order);
  if (window.size() != static_cast<std::size_t>(2 * k))
    throw std::invalid_argument("smoothness_indicators: window must hold 2k values");
  SmoothnessSet s;
  s.count = k;
  if (k == 2)
    beta_k2(window.data(), s.beta[0], s.beta[1]);
  else
    beta_k3(window.data(), s.beta[0], s.beta[1], s.beta[2]);
  return s;
}

std::vector<double> nonlinear_weights(std::span<const double> linear, const SmoothnessSet &smooth) {
  if (linear.size() != static_cast<std::size_t>(smooth.count))
    throw std::invalid_argument("nonlinear_weights: weight/indicator count mismatch");
  if (!(smooth.epsilon > 0.0))
    throw std::invalid_argument("nonlinear_weights: epsilon must be positive");
  std::vector<double> w(linear.size());
  double total = 0.0;
  for (std::size_t r = 0; r < linear.size(); ++r) {
    w[r] = linear[r] / sq(smooth.epsilon + smooth.beta[r]);
    total += w[r];
  }
  for (double &x : w)
    x /= total;
  return w;
}

void integrate_increments(std::span<const double> extended, const KernelCoefficients &kc,
                          Direction dir, WeightMode mode, std::span<double> out) {
  const int k = stencil_k(kc.order);
  const int g = k - 1;
  const int m = static_cast<int>(extended.size()) - 2 * g - 1;
  if (m < 1 || out.size() != static_cast<std::size_t>(m + 1))
    throw std::invalid_argument("integrate_increments: extended field must carry k-1 ghosts per side");
  const double *v = extended.data() + g; // v[i] = v_i, valid for -g..m+g
  std::array<double, 6> w{};
  if (dir == Direction::L) {
    out[0] = 0.0;
    for (int i = 1; i <= m; ++i) {
      const double *base = v + i - k;
      out[i] = (k == 2) ? increment_k2(base, kc, mode) : increment_k3(base, kc, mode);
    }
  } else {
    out[m] = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < 2 * k; ++j)
        w[j] = v[i + k - j];
      out[i] = (k == 2) ? increment_k2(w.data(), kc, mode) : increment_k3(w.data(), kc, mode);
    }
  }
}

std::vector<double> integrate_increments(std::span<const double> extended, double nu,
                                         WenoOrder order, Direction dir, WeightMode mode) {
  const int g = ghost_count(order);
  if (extended.size() < static_cast<std::size_t>(2 * g + 2))
    throw std::invalid_argument("integrate_increments: missing ghost data");
  std::vector<double> out(extended.size() - 2 * g);
  integrate_increments(extended, kernel_coefficients(nu, order), dir, mode, out);
  return out;
}

namespace {

// Extrapolation indicators for nested stencils {x_0..x_r}, r >= 1, on
// values w_0..w_r (w_0 at the boundary node).
double extrapolation_beta(int r, const double *w) {
  switch (r) {
  case 1:
    return sq(w[0] - w[1]);
  case 2:
    return 13.0 / 12.0 * sq(w[0] - 2 * w[1] + w[2]) + sq(2 * w[0] - 3 * w[1] + w[2]);
  case 3:
    return 781.0 / 720.0 * sq(w[0] - 3 * w[1] + 3 * w[2] - w[3]) +
           13.0 / 48.0 * sq(5 * w[0] - 13 * w[1] + 11 * w[2] - 3 * w[3]) +
           sq(3 * w[0] - 6 * w[1] + 4 * w[2] - w[3]);
  case 4:
    return 1421461.0 / 1310400.0 * sq(w[0] - 4 * w[1] + 6 * w[2] - 4 * w[3] + w[4]) +
           781.0 / 720.0 * sq(-3 * w[0] + 11 * w[1] - 15 * w[2] + 9 * w[3] - 2 * w[4]) +
           13.0 / 7300800.0 * sq(3379 * w[0] - 10786 * w[1] + 12864 * w[2] - 6886 * w[3] + 1429 * w[4]) +
           sq(-4 * w[0] + 10 * w[1] - 10 * w[2] + 5 * w[3] - w[4]);
  default:
    throw std::logic_error("extrapolation_beta: unsupported stencil");
  }
}

// Interpolant through nodes 0..r evaluated at node position `at` (in cells).
double lagrange_eval(int r, const double *w, double at) {
  double sum = 0.0;
  for (int j = 0; j <= r; ++j) {
    double l = 1.0;
    for (int m = 0; m <= r; ++m)
      if (m != j)
        l *= (at - m) / static_cast<double>(j - m);
    sum += l * w[j];
  }
  return sum;
}

} // namespace

std::vector<double> extrapolate_ghosts(std::span<const double> window, WenoOrder order,
                                       Side side, double dx, WeightMode mode) {
  const int k = stencil_k(order);
  const int n = 2 * k - 1;
  if (window.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("extrapolate_ghosts: window must hold 2k-1 values");
  std::array<double, 5> w{};
  for (int j = 0; j < n; ++j)
    w[j] = (side == Side::left) ? window[j] : window[n - 1 - j];

  const int top = n - 1; // largest stencil index 2k-2
  std::array<double, 5> d{};
  double sum = 0.0;
  for (int r = 0; r < top; ++r) {
    d[r] = std::pow(dx, top - r);
    sum += d[r];
  }
  d[top] = 1.0 - sum;

  std::array<double, 5> omega{};
  double total = 0.0;
  for (int r = 0; r <= top; ++r) {
    if (mode == WeightMode::linear) {
      omega[r] = d[r];
    } else {
      const double beta = (r == 0) ? dx * dx : extrapolation_beta(r, w.data());
      omega[r] = d[r] / sq(kWenoEpsilon + beta);
    }
    total += omega[r];
  }

  std::vector<double> ghosts(static_cast<std::size_t>(k - 1));
  for (int gi = 1; gi <= k - 1; ++gi) {
    double value = 0.0;
    for (int r = 0; r <= top; ++r)
      value += omega[r] / total * lagrange_eval(r, w.data(), -static_cast<double>(gi));
    ghosts[gi - 1] = value;
  }
  return ghosts;
}

} // namespace molt
