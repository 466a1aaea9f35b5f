#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace molt {

/// Raised for inconsistent domain or run configuration.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Uniform node set a = x_0 < x_1 < ... < x_M = b.
class Grid1D {
public:
  Grid1D() = default;
  Grid1D(double a, double b, int cells);

  double a() const { return a_; }
  double b() const { return b_; }
  int cells() const { return cells_; }
  int nodes() const { return cells_ + 1; }
  double dx() const { return dx_; }
  double length() const { return b_ - a_; }

  /// x_i; the last node is pinned to b exactly.
  double x(int i) const;

  bool operator==(const Grid1D &other) const = default;

private:
  double a_ = 0.0;
  double b_ = 1.0;
  int cells_ = 2;
  double dx_ = 0.5;
};

Grid1D make_uniform_grid(double a, double b, int cells);

struct Field1D {
  Grid1D grid;
  std::vector<double> values;

  Field1D() = default;
  explicit Field1D(const Grid1D &g, double fill = 0.0)
      : grid(g), values(static_cast<std::size_t>(g.nodes()), fill) {}
  Field1D(const Grid1D &g, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double &operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Nodal values on gx x gv, row-major with x as the slow axis:
/// value(i, j) lives at i * gv.nodes() + j.
struct Field2D {
  Grid1D gx;
  Grid1D gv;
  std::vector<double> values;

  Field2D() = default;
  Field2D(const Grid1D &x, const Grid1D &v, double fill = 0.0)
      : gx(x), gv(v),
        values(static_cast<std::size_t>(x.nodes()) * static_cast<std::size_t>(v.nodes()), fill) {}

  int nx() const { return gx.nodes(); }
  int nv() const { return gv.nodes(); }
  double &operator()(int i, int j) { return values[index(i, j)]; }
  double operator()(int i, int j) const { return values[index(i, j)]; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(gv.nodes()) +
           static_cast<std::size_t>(j);
  }
};

struct ErrorNorms {
  double l1 = 0.0;
  double linf = 0.0;
  double min_value = 0.0;
};

Field1D sample_function(const Grid1D &grid, const std::function<double(double)> &fn);
Field2D sample_function(const Grid1D &gx, const Grid1D &gv,
                        const std::function<double(double, double)> &fn);

/// Trapezoid weights: dx at interior nodes, dx/2 at the two ends. On a
/// periodic field (u_M = u_0) this equals the rectangle rule over 0..M-1.
std::vector<double> trapezoid_weights(const Grid1D &grid);

ErrorNorms error_norms(const Field1D &numerical, const Field1D &exact);
ErrorNorms error_norms(const Field2D &numerical, const Field2D &exact);

/// Throws std::runtime_error naming the first non-finite entry.
void require_finite(std::span<const double> values, const std::string &what);

} // namespace molt
