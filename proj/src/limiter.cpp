#include "molt/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace molt {

namespace {

// f[i + 1] = f_{i+1/2}
inline double &flux(std::vector<double> &f, int i_half) { return f[static_cast<std::size_t>(i_half + 1)]; }
inline double flux(const std::vector<double> &f, int i_half) { return f[static_cast<std::size_t>(i_half + 1)]; }

inline double cell_update(double un, double lambda, double right, double left) {
  return un - lambda * (right - left);
}

// Resets f_{i+1/2} so that cell i ends at zero. Rounding can leave the
// evaluated update a hair below zero; the flux is then pushed with a
// doubling step (starting at one ulp) until it is not.
double zeroing_flux(double un, double lambda, double left) {
  double right = left + un / lambda;
  const double sign = lambda > 0.0 ? -1.0 : 1.0;
  double step = 0.0;
  for (int guard = 0; guard < 200 && cell_update(un, lambda, right, left) < 0.0; ++guard) {
    const double ulp = std::abs(std::nextafter(right, std::numeric_limits<double>::infinity()) - right);
    step = std::max(step * 2.0, ulp);
    right += sign * step;
  }
  return right;
}

// Limiter for left-to-right transport. Returns the modified fluxes; sets
// `modified` when any flux changed.
std::vector<double> limit_left_to_right(std::span<const double> un, const std::vector<double> &fhat,
                                        double lambda, LimiterBoundary kind, bool &modified) {
  const int m = static_cast<int>(un.size()) - 1;
  std::vector<double> ft = fhat;
  modified = false;

  if (kind != LimiterBoundary::periodic) {
    // Dirichlet pins node 0; Neumann leaves it free, so screening starts there.
    const int first = (kind == LimiterBoundary::dirichlet) ? 1 : 0;
    for (int i = first; i <= m; ++i) {
      const double prov = cell_update(un[i], lambda, flux(fhat, i), flux(ft, i - 1));
      if (prov < 0.0) {
        flux(ft, i) = zeroing_flux(un[i], lambda, flux(ft, i - 1));
        modified = true;
      } else {
        flux(ft, i) = flux(fhat, i);
      }
    }
    return ft;
  }

  // First pass over the periodic cells 0..M-1.
  std::vector<double> fhh = fhat;
  for (int i = 0; i < m; ++i) {
    const double prov = cell_update(un[i], lambda, flux(fhat, i), flux(fhh, i - 1));
    if (prov < 0.0) {
      flux(fhh, i) = zeroing_flux(un[i], lambda, flux(fhh, i - 1));
      modified = true;
    } else {
      flux(fhh, i) = flux(fhat, i);
    }
  }
  if (!modified)
    return ft;

  // Second screening with the wrapped inflow flux.
  ft = fhh;
  flux(ft, -1) = flux(fhh, m - 1);
  bool settled = false;
  for (int i = 0; i < m; ++i) {
    const double prov = cell_update(un[i], lambda, flux(fhh, i), flux(ft, i - 1));
    if (prov < 0.0) {
      if (i == m - 1)
        break;
      flux(ft, i) = zeroing_flux(un[i], lambda, flux(ft, i - 1));
    } else {
      for (int j = i; j < m; ++j)
        flux(ft, j) = flux(fhh, j);
      settled = true;
      break;
    }
  }
  if (!settled) {
    // Every cell would be reset: only possible when the line carries no
    // mass beyond rounding. Hold it at u^n.
    std::fill(ft.begin(), ft.end(), 0.0);
    return ft;
  }
  // Node M is the image of node 0.
  flux(ft, m) = flux(ft, m - 1) + (flux(ft, 0) - flux(ft, -1));
  return ft;
}

std::vector<double> mirror_values(std::span<const double> u) {
  return std::vector<double>(u.rbegin(), u.rend());
}

// f'[i'+1] = -f[M - i'] maps fluxes of the reflected line.
std::vector<double> mirror_fluxes(const std::vector<double> &f) {
  std::vector<double> out(f.size());
  const std::size_t n = f.size();
  for (std::size_t q = 0; q < n; ++q)
    out[q] = -f[n - 1 - q];
  return out;
}

} // namespace

LimiterBoundary limiter_boundary(BoundaryKind kind) {
  switch (kind) {
  case BoundaryKind::periodic:
    return LimiterBoundary::periodic;
  case BoundaryKind::neumann:
    return LimiterBoundary::neumann;
  case BoundaryKind::dirichlet:
  case BoundaryKind::zero_inflow:
    return LimiterBoundary::dirichlet;
  }
  return LimiterBoundary::dirichlet;
}

FluxSet reconstruct_fluxes(std::span<const double> u_n, std::span<const double> u_np1,
                           double lambda, Direction dir) {
  if (u_n.size() != u_np1.size() || u_n.size() < 2)
    throw std::invalid_argument("reconstruct_fluxes: size mismatch");
  if (lambda == 0.0)
    throw std::invalid_argument("reconstruct_fluxes: lambda must be nonzero");
  const int m = static_cast<int>(u_n.size()) - 1;
  FluxSet fs;
  fs.lambda = lambda;
  fs.direction = dir;
  fs.fluxes.assign(static_cast<std::size_t>(m + 2), 0.0);
  if (dir == Direction::L) {
    flux(fs.fluxes, -1) = 0.0;
    for (int i = 0; i <= m; ++i)
      flux(fs.fluxes, i) = flux(fs.fluxes, i - 1) - (u_np1[i] - u_n[i]) / lambda;
  } else {
    flux(fs.fluxes, m) = 0.0;
    for (int i = m; i >= 0; --i)
      flux(fs.fluxes, i - 1) = flux(fs.fluxes, i) + (u_np1[i] - u_n[i]) / lambda;
  }
  return fs;
}

FluxSet limit_fluxes(const FluxSet &fs, std::span<const double> u_n, LimiterBoundary kind) {
  if (fs.fluxes.size() != u_n.size() + 1)
    throw std::invalid_argument("limit_fluxes: flux/field size mismatch");
  FluxSet out = fs;
  bool modified = false;
  if (fs.direction == Direction::L) {
    out.fluxes = limit_left_to_right(u_n, fs.fluxes, fs.lambda, kind, modified);
  } else {
    const auto un_m = mirror_values(u_n);
    const auto f_m = limit_left_to_right(un_m, mirror_fluxes(fs.fluxes), fs.lambda, kind, modified);
    out.fluxes = mirror_fluxes(f_m);
  }
  return out;
}

std::vector<double> apply_limited(std::span<const double> u_n, const FluxSet &fs,
                                  LimiterBoundary kind) {
  if (fs.fluxes.size() != u_n.size() + 1)
    throw std::invalid_argument("apply_limited: flux/field size mismatch");
  const int m = static_cast<int>(u_n.size()) - 1;
  std::vector<double> out(u_n.size());
  for (int i = 0; i <= m; ++i)
    out[i] = cell_update(u_n[i], fs.lambda, flux(fs.fluxes, i), flux(fs.fluxes, i - 1));
  if (kind == LimiterBoundary::periodic) {
    if (fs.direction == Direction::L)
      out[m] = out[0];
    else
      out[0] = out[m];
  }
  // Dirichlet pins the inflow node; everything else was screened.
  int lo = 0;
  int hi = m;
  if (kind == LimiterBoundary::dirichlet) {
    if (fs.direction == Direction::L)
      lo = 1;
    else
      hi = m - 1;
  }
  for (int i = lo; i <= hi; ++i) {
    if (out[i] < 0.0)
      throw std::logic_error("positivity limiter: negative value survived limiting at node " +
                             std::to_string(i));
  }
  return out;
}

bool enforce_positivity(std::span<const double> u_n, std::span<double> u_np1, double lambda,
                        Direction dir, LimiterBoundary kind) {
  const int m = static_cast<int>(u_np1.size()) - 1;
  bool clean = true;
  for (int i = 0; i <= m; ++i) {
    if (u_np1[i] < 0.0) {
      clean = false;
      break;
    }
  }
  if (clean)
    return false;

  const FluxSet fs = reconstruct_fluxes(u_n, u_np1, lambda, dir);
  bool modified = false;
  FluxSet limited = fs;
  if (dir == Direction::L) {
    limited.fluxes = limit_left_to_right(u_n, fs.fluxes, lambda, kind, modified);
  } else {
    const auto un_m = mirror_values(u_n);
    limited.fluxes =
        mirror_fluxes(limit_left_to_right(un_m, mirror_fluxes(fs.fluxes), lambda, kind, modified));
  }
  // Applied even when no flux moved: the flux form re-evaluates u^{n+1}
  // and clears a negative that only existed through rounding.
  const auto fixed = apply_limited(u_n, limited, kind);
  // The pinned Dirichlet node keeps its boundary value bitwise.
  const std::size_t pinned = (dir == Direction::L) ? 0 : u_np1.size() - 1;
  const double boundary_value = u_np1[pinned];
  std::copy(fixed.begin(), fixed.end(), u_np1.begin());
  if (kind == LimiterBoundary::dirichlet)
    u_np1[pinned] = boundary_value;
  return modified;
}

} // namespace molt
