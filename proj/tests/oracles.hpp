#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16)
        break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

/// Composite Gauss-Legendre quadrature of fn over [a, b].
inline double integrate(const std::function<double(double)> &fn, double a, double b,
                        int panels = 8, int order = 20) {
  static thread_local std::pair<std::vector<double>, std::vector<double>> gl;
  if (static_cast<int>(gl.first.size()) != order)
    gl = gauss_legendre(order);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int q = 0; q < order; ++q)
      sum += 0.5 * h * gl.second[q] * fn(lo + 0.5 * h * (gl.first[q] + 1.0));
  }
  return sum;
}

/// Monomial coefficients of the Lagrange basis polynomial l_j on `nodes`.
inline std::vector<double> lagrange_coefficients(const std::vector<double> &nodes, std::size_t j) {
  std::vector<double> poly{1.0};
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    if (m == j)
      continue;
    const double denom = nodes[j] - nodes[m];
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t p = 0; p < poly.size(); ++p) {
      next[p] += -nodes[m] * poly[p] / denom;
      next[p + 1] += poly[p] / denom;
    }
    poly = next;
  }
  return poly;
}

/// Coefficients of the interpolant through (nodes, values).
inline std::vector<double> interpolant(const std::vector<double> &nodes,
                                       const std::vector<double> &values) {
  std::vector<double> out(nodes.size(), 0.0);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const auto l = lagrange_coefficients(nodes, j);
    for (std::size_t p = 0; p < l.size(); ++p)
      out[p] += values[j] * l[p];
  }
  return out;
}

inline double poly_eval(const std::vector<double> &c, double x, int derivative = 0) {
  double sum = 0.0;
  for (std::size_t p = static_cast<std::size_t>(derivative); p < c.size(); ++p) {
    double f = 1.0;
    for (int d = 0; d < derivative; ++d)
      f *= static_cast<double>(p - d);
    sum += c[p] * f * std::pow(x, static_cast<double>(p - derivative));
  }
  return sum;
}

/// sum_{l=1}^{deg} int_{-1}^{0} (p^(l)(s))^2 ds for the interpolant through
/// (nodes, values), coordinates in cells.
inline double smoothness(const std::vector<double> &nodes, const std::vector<double> &values) {
  const auto c = interpolant(nodes, values);
  double beta = 0.0;
  for (std::size_t l = 1; l < nodes.size(); ++l) {
    beta += integrate([&](double s) {
      const double d = poly_eval(c, s, static_cast<int>(l));
      return d * d;
    }, -1.0, 0.0, 1, 12);
  }
  return beta;
}

/// alpha * int_{x_{i-1}}^{x_i} e^{-alpha (x_i - y)} v(y) dy.
inline double left_kernel_integral(const std::function<double(double)> &v, double xi, double dx,
                                   double alpha) {
  return integrate([&](double y) { return alpha * std::exp(-alpha * (xi - y)) * v(y); }, xi - dx,
                   xi, 4, 24);
}

/// alpha * int_{x_i}^{x_{i+1}} e^{-alpha (y - x_i)} v(y) dy.
inline double right_kernel_integral(const std::function<double(double)> &v, double xi, double dx,
                                    double alpha) {
  return integrate([&](double y) { return alpha * std::exp(-alpha * (y - xi)) * v(y); }, xi,
                   xi + dx, 4, 24);
}

/// l-th time derivative of cos^4(x - t) at fixed x.
inline double cos4_dt(double x, double t, int l) {
  const double th = x - t;
  auto term = [&](double a) { return std::pow(a, l) * std::cos(a * th - l * pi / 2.0); };
  return (l == 0 ? 3.0 / 8.0 : 0.0) + term(2.0) / 2.0 + term(4.0) / 8.0;
}

/// Spectral derivative of periodic samples by a direct O(N^2) DFT.
inline std::vector<double> spectral_derivative(const std::vector<double> &u, double length) {
  const int n = static_cast<int>(u.size());
  std::vector<std::complex<double>> c(n);
  for (int k = 0; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (int j = 0; j < n; ++j)
      s += u[j] * std::polar(1.0, -2.0 * pi * k * j / n);
    c[k] = s / static_cast<double>(n);
  }
  std::vector<double> d(n, 0.0);
  for (int j = 0; j < n; ++j) {
    std::complex<double> s = 0.0;
    for (int k = 0; k < n; ++k) {
      int kk = k <= n / 2 ? k : k - n;
      if (2 * k == n)
        kk = 0;
      const double kappa = 2.0 * pi * kk / length;
      s += std::complex<double>(0.0, kappa) * c[k] * std::polar(1.0, 2.0 * pi * k * j / n);
    }
    d[j] = s.real();
  }
  return d;
}

inline std::vector<double> random_vector(std::size_t n, double lo, double hi, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto &x : v)
    x = dist(rng);
  return v;
}

} // namespace oracle
