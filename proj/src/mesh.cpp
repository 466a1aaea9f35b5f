#include "molt/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace molt {

Grid1D::Grid1D(double a, double b, int cells) : a_(a), b_(b), cells_(cells) {
  if (!(std::isfinite(a) && std::isfinite(b)) || !(b > a)) {
    std::ostringstream os;
    os << "grid endpoints must satisfy b > a (got a=" << a << ", b=" << b << ")";
    throw ConfigError(os.str());
  }
  if (cells < 2)
    throw ConfigError("grid needs at least 2 cells, got " + std::to_string(cells));
  dx_ = (b - a) / cells;
}

double Grid1D::x(int i) const {
  if (i == cells_)
    return b_;
  return a_ + i * dx_;
}

Grid1D make_uniform_grid(double a, double b, int cells) { return Grid1D(a, b, cells); }

Field1D::Field1D(const Grid1D &g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != static_cast<std::size_t>(g.nodes()))
    throw std::invalid_argument("Field1D: value count does not match grid");
}

Field1D sample_function(const Grid1D &grid, const std::function<double(double)> &fn) {
  Field1D f(grid);
  for (int i = 0; i < grid.nodes(); ++i)
    f[i] = fn(grid.x(i));
  require_finite(f.values, "sample_function");
  return f;
}

Field2D sample_function(const Grid1D &gx, const Grid1D &gv,
                        const std::function<double(double, double)> &fn) {
  Field2D f(gx, gv);
  for (int i = 0; i < gx.nodes(); ++i)
    for (int j = 0; j < gv.nodes(); ++j)
      f(i, j) = fn(gx.x(i), gv.x(j));
  require_finite(f.values, "sample_function");
  return f;
}

std::vector<double> trapezoid_weights(const Grid1D &grid) {
  std::vector<double> w(static_cast<std::size_t>(grid.nodes()), grid.dx());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

ErrorNorms error_norms(const Field1D &numerical, const Field1D &exact) {
  if (numerical.size() != exact.size() || !(numerical.grid == exact.grid))
    throw std::invalid_argument("error_norms: shape mismatch");
  const auto w = trapezoid_weights(numerical.grid);
  ErrorNorms n;
  n.min_value = numerical.values.empty() ? 0.0 : numerical[0];
  for (std::size_t i = 0; i < numerical.size(); ++i) {
    const double e = std::abs(numerical[i] - exact[i]);
    n.l1 += w[i] * e;
    n.linf = std::max(n.linf, e);
    n.min_value = std::min(n.min_value, numerical[i]);
  }
  return n;
}

ErrorNorms error_norms(const Field2D &numerical, const Field2D &exact) {
  if (numerical.values.size() != exact.values.size() || !(numerical.gx == exact.gx) ||
      !(numerical.gv == exact.gv))
    throw std::invalid_argument("error_norms: shape mismatch");
  const auto wx = trapezoid_weights(numerical.gx);
  const auto wv = trapezoid_weights(numerical.gv);
  ErrorNorms n;
  n.min_value = numerical.values.front();
  for (int i = 0; i < numerical.nx(); ++i) {
    for (int j = 0; j < numerical.nv(); ++j) {
      const double e = std::abs(numerical(i, j) - exact(i, j));
      n.l1 += wx[i] * wv[j] * e;
      n.linf = std::max(n.linf, e);
      n.min_value = std::min(n.min_value, numerical(i, j));
    }
  }
  return n;
}

void require_finite(std::span<const double> values, const std::string &what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      std::ostringstream os;
      os << what << ": non-finite value at index " << i;
      throw std::runtime_error(os.str());
    }
  }
}

} // namespace molt
