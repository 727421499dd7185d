// Copyright 2026 The eltip Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ELTIP_SPECTRAL_HPP
#define ELTIP_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eltip/error.hpp"
#include "eltip/hamiltonian.hpp"

namespace eltip {

// ---------------------------------------------------------------------------
// Dense eigendecomposition

struct Eigensystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k belongs to values[k]
};

inline Eigensystem full_spectrum(const DenseOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge (dim " +
                         std::to_string(op.dim()) + ")");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline Eigen::VectorXd eigenvalues(const DenseOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge (dim " +
                         std::to_string(op.dim()) + ")");
  }
  return solver.eigenvalues();
}

// ---------------------------------------------------------------------------
// Gap traces

/// Uniform grid on [0, 1] including both endpoints; s_i = i / (points - 1).
inline std::vector<double> uniform_grid(int points) {
  if (points < 2) throw InputError("grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[i] = static_cast<double>(i) / (points - 1);
  g.back() = 1.0;
  return g;
}

struct SpectralTrace {
  std::vector<double> grid;                 // ascending s
  std::vector<std::vector<double>> levels;  // levels[p] = lowest E_k(grid[p]), ascending
  std::vector<double> gap;                  // E_1 - E_0 per point
};

/// E_1(s) - E_0(s).
inline double gap_at(const ScheduleSpec& sched, double s) {
  const auto ev = eigenvalues(hamiltonian_at(sched, s));
  return ev[1] - ev[0];
}

inline SpectralTrace gap_trace(const ScheduleSpec& sched, int grid_points = 2001,
                               int levels = 6) {
  if (levels < 2) throw InputError("gap trace needs at least 2 levels");
  SpectralTrace t;
  t.grid = uniform_grid(grid_points);
  t.levels.reserve(t.grid.size());
  t.gap.reserve(t.grid.size());
  for (double s : t.grid) {
    Eigen::VectorXd ev;
    try {
      ev = eigenvalues(hamiltonian_at(sched, s));
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " at s = " + std::to_string(s));
    }
    const auto m = std::min<Eigen::Index>(levels, ev.size());
    t.levels.emplace_back(ev.data(), ev.data() + m);
    t.gap.push_back(ev[1] - ev[0]);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Minimum localization

/// Golden-section search for a minimum of `f` on [lo, hi], stopping once the
/// bracket half-width is <= tol. Returns the best evaluated abscissa.
inline double golden_section_minimize(const std::function<double(double)>& f, double lo,
                                      double hi, double tol, double* best_value = nullptr) {
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  double best_x = fc <= fd ? c : d;
  double best_f = std::min(fc, fd);
  while ((b - a) / 2.0 > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      if (fc < best_f) {
        best_f = fc;
        best_x = c;
      }
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      if (fd < best_f) {
        best_f = fd;
        best_x = d;
      }
    }
  }
  if (best_value) *best_value = best_f;
  return best_x;
}

struct GapMinimum {
  double s = 0.0;
  double gap = 0.0;
  bool interior = false;  // strict interior local minimum passing the prominence test
  double prominence = 0.0;
};

/// Anti-crossings must dip at least this factor below the lower of their two
/// flanking gap peaks. Rejects the generic shallow dip right before s = 1
/// (the gap slope there equals the final gap) and level-2 kinks in E_1.
inline constexpr double kDefaultMinProminence = 1.35;

namespace detail {

/// Topographic prominence ratio of grid point i using `value` as its depth:
/// min(left peak, right peak) / value, each peak taken up to the nearest
/// strictly lower sample (or the end of the grid).
inline double prominence_ratio(const std::vector<double>& g, std::size_t i, double value) {
  std::size_t l = i;
  double left_peak = g[i];
  while (l > 0 && g[l - 1] >= g[i]) left_peak = std::max(left_peak, g[--l]);
  std::size_t r = i;
  double right_peak = g[i];
  while (r + 1 < g.size() && g[r + 1] >= g[i]) right_peak = std::max(right_peak, g[++r]);
  const double peak = std::min(left_peak, right_peak);
  if (value <= 0.0) return peak > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  return peak / value;
}

inline bool strict_local_min(const std::vector<double>& g, std::size_t i) {
  return i > 0 && i + 1 < g.size() && g[i - 1] > g[i] && g[i + 1] > g[i];
}

/// Golden-section refinement of the gap on the grid cell pair around index i.
inline GapMinimum refine_at(const ScheduleSpec& sched, const SpectralTrace& t, std::size_t i,
                            double s_tol) {
  const std::size_t lo = i == 0 ? 0 : i - 1;
  const std::size_t hi = std::min(i + 1, t.grid.size() - 1);
  GapMinimum m{t.grid[i], t.gap[i], false, 0.0};
  double fbest = 0.0;
  const double sbest = golden_section_minimize(
      [&](double s) { return gap_at(sched, s); }, t.grid[lo], t.grid[hi], s_tol, &fbest);
  if (fbest < m.gap) {
    m.s = sbest;
    m.gap = fbest;
  }
  return m;
}

}  // namespace detail

/// Every strict interior local minimum of the traced gap, refined, with its
/// prominence ratio. No prominence filtering.
inline std::vector<GapMinimum> local_minima(const ScheduleSpec& sched, const SpectralTrace& t,
                                            double s_tol = 1e-6) {
  std::vector<GapMinimum> out;
  for (std::size_t i = 1; i + 1 < t.gap.size(); ++i) {
    if (!detail::strict_local_min(t.gap, i)) continue;
    auto m = detail::refine_at(sched, t, i, s_tol);
    m.prominence = detail::prominence_ratio(t.gap, i, m.gap);
    m.interior = true;
    out.push_back(m);
  }
  return out;
}

/// Interior anti-crossings: strict local minima whose prominence ratio is at
/// least `min_prominence`. Empty when the gap is minimized only at (or
/// indistinguishably near) an endpoint.
inline std::vector<GapMinimum> detect_anticrossing(const ScheduleSpec& sched,
                                                   const SpectralTrace& t,
                                                   double s_tol = 1e-6,
                                                   double min_prominence = kDefaultMinProminence) {
  auto all = local_minima(sched, t, s_tol);
  std::erase_if(all, [&](const GapMinimum& m) { return m.prominence < min_prominence; });
  return all;
}

struct MinGapOptions {
  int grid_points = 2001;
  double s_tol = 1e-6;
  double min_prominence = kDefaultMinProminence;
};

/// Global minimum of the gap on an existing trace, refined to s_tol.
inline GapMinimum min_gap(const ScheduleSpec& sched, const SpectralTrace& t,
                          const MinGapOptions& opt = {}) {
  if (!(opt.s_tol > 0.0)) throw InputError("s_tol must be positive");
  const auto it = std::min_element(t.gap.begin(), t.gap.end());
  const auto i = static_cast<std::size_t>(it - t.gap.begin());
  auto m = detail::refine_at(sched, t, i, opt.s_tol);
  m.prominence = detail::prominence_ratio(t.gap, i, m.gap);
  m.interior = detail::strict_local_min(t.gap, i) && m.prominence >= opt.min_prominence;
  return m;
}

inline GapMinimum min_gap(const ScheduleSpec& sched, const MinGapOptions& opt = {}) {
  return min_gap(sched, gap_trace(sched, opt.grid_points, 2), opt);
}

// ---------------------------------------------------------------------------
// Adiabatic estimates

struct EpsilonResult {
  double value = 0.0;  // max_s |<E_1(s)| dH/ds |E_0(s)>|
  double s = 0.0;      // where it is attained
};

/// Relative E_1 - E_0 below which the matrix element is considered ill-defined.
inline constexpr double kDegeneracyTol = 1e-10;

namespace detail {
/// |<E_1|dH/ds|E_0>|. When E_1 is itself degenerate (e.g. H_B at s = 0) the
/// value is the norm of dH|E_0> projected on the whole E_1 eigenspace, which
/// is independent of the eigensolver's choice of basis inside that space.
inline double transition_element(const ScheduleSpec& sched, double s) {
  const auto es = full_spectrum(hamiltonian_at(sched, s));
  const double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());
  const double tol = kDegeneracyTol * scale;
  if (es.values[1] - es.values[0] <= tol) {
    throw DegenerateLevelError("E_0 and E_1 are degenerate; transition element is ill-defined",
                               s);
  }
  Eigen::Index shell_end = 2;
  while (shell_end < es.values.size() && es.values[shell_end] - es.values[1] <= tol) {
    ++shell_end;
  }
  const auto dh = derivative_at(sched, s);
  const Eigen::VectorXd image = dh.matrix() * es.vectors.col(0);
  return (es.vectors.middleCols(1, shell_end - 1).transpose() * image).norm();
}
}  // namespace detail

/// Scans the grid, then resamples 10x finer around the argmax once.
inline EpsilonResult epsilon(const ScheduleSpec& sched, int grid_points = 2001) {
  const auto grid = uniform_grid(grid_points);
  EpsilonResult best{-1.0, 0.0};
  std::size_t arg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = detail::transition_element(sched, grid[i]);
    if (v > best.value) {
      best = {v, grid[i]};
      arg = i;
    }
  }
  const double lo = grid[arg == 0 ? 0 : arg - 1];
  const double hi = grid[std::min(arg + 1, grid.size() - 1)];
  constexpr int kRefine = 20;
  for (int j = 0; j <= kRefine; ++j) {
    const double s = lo + (hi - lo) * j / kRefine;
    const double v = detail::transition_element(sched, s);
    if (v > best.value) best = {v, s};
  }
  return best;
}

/// Order-of-magnitude annealing time Delta_min^-2.
inline double t_approx(double delta_min) {
  if (!(delta_min > 0.0)) throw InputError("t_approx needs a positive min-gap");
  return 1.0 / (delta_min * delta_min);
}

// ---------------------------------------------------------------------------
// Two-level hyperbola fit
//
//   E_pm(s) = E_c + B (s - s*) pm 1/2 sqrt(Delta^2 + A^2 (s - s*)^2)
//
// With Delta and s* held fixed, the least-squares problem on the two lowest
// levels separates into a linear fit of the level mean for (E_c, B) and a
// one-parameter fit of the gap for A.

struct HyperbolaFit {
  double a = 0.0;         // difference of the asymptote slopes
  double b = 0.0;         // mean of the asymptote slopes
  double e_center = 0.0;  // E(s*)
  double s_star = 0.0;
  double delta_min = 0.0;
  double residual = 0.0;  // RMS over both levels
  int points = 0;
  bool within_threshold = false;
};

inline HyperbolaFit fit_hyperbola(const SpectralTrace& t, double s_star, double delta_min,
                                  double window = 0.05, double residual_threshold = 1e-3) {
  if (!(s_star > 0.0 && s_star < 1.0)) {
    throw InputError("hyperbola fit needs an interior s*");
  }
  std::vector<double> x, mean, gap;
  for (std::size_t p = 0; p < t.grid.size(); ++p) {
    if (std::abs(t.grid[p] - s_star) > window) continue;
    x.push_back(t.grid[p] - s_star);
    mean.push_back(0.5 * (t.levels[p][0] + t.levels[p][1]));
    gap.push_back(t.levels[p][1] - t.levels[p][0]);
  }
  const std::size_t n = x.size();
  if (n < 5) {
    throw InputError("hyperbola fit window holds " + std::to_string(n) + " points; need >= 5");
  }

  HyperbolaFit fit;
  fit.s_star = s_star;
  fit.delta_min = delta_min;
  fit.points = static_cast<int>(n);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += mean[i];
    sxx += x[i] * x[i];
    sxy += x[i] * mean[i];
  }
  const double det = n * sxx - sx * sx;
  fit.b = det != 0.0 ? (n * sxy - sx * sy) / det : 0.0;
  fit.e_center = (sy - fit.b * sx) / n;

  const double d2 = delta_min * delta_min;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x2 = x[i] * x[i];
    num += x2 * (gap[i] * gap[i] - d2);
    den += x2 * x2;
  }
  double a = den > 0.0 ? std::sqrt(std::max(num / den, 0.0)) : 0.0;
  if (a == 0.0) a = 1e-8;
  // Gauss-Newton on r_i = gap_i - sqrt(Delta^2 + A^2 x_i^2).
  for (int iter = 0; iter < 100; ++iter) {
    double jr = 0, jj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x2 = x[i] * x[i];
      const double r = std::sqrt(d2 + a * a * x2);
      const double jac = r > 0.0 ? a * x2 / r : 0.0;
      jr += jac * (gap[i] - r);
      jj += jac * jac;
    }
    if (jj <= 0.0) break;
    const double step = jr / jj;
    a = std::abs(a + step);
    if (std::abs(step) <= 1e-15 * std::max(1.0, a)) break;
  }
  fit.a = a;

  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::sqrt(d2 + a * a * x[i] * x[i]);
    const double centre = fit.e_center + fit.b * x[i];
    const double lower = mean[i] - 0.5 * gap[i];
    const double upper = mean[i] + 0.5 * gap[i];
    const double rl = lower - (centre - 0.5 * r);
    const double ru = upper - (centre + 0.5 * r);
    ss += rl * rl + ru * ru;
  }
  fit.residual = std::sqrt(ss / (2.0 * n));
  fit.within_threshold = fit.residual <= residual_threshold;
  return fit;
}

// ---------------------------------------------------------------------------
// Summary

struct AnalysisOptions {
  int grid_points = 2001;
  double s_tol = 1e-6;
  int levels = 6;
  double min_prominence = kDefaultMinProminence;
  double fit_window = 0.05;
  double fit_residual_threshold = 1e-3;
};

struct AntiCrossingReport {
  GapMinimum minimum;  // global min-gap; minimum.interior is the anti-crossing flag
  double epsilon = 0.0;
  double epsilon_s = 0.0;
  double t_approx = 0.0;
  std::optional<HyperbolaFit> hyperbola;  // only when the minimum is interior
  std::vector<GapMinimum> anticrossings;  // all interior anti-crossings
};

inline AntiCrossingReport anticrossing_report(const ScheduleSpec& sched,
                                              const SpectralTrace& trace,
                                              const AnalysisOptions& opt = {}) {
  AntiCrossingReport r;
  r.minimum = min_gap(sched, trace, {opt.grid_points, opt.s_tol, opt.min_prominence});
  r.anticrossings = detect_anticrossing(sched, trace, opt.s_tol, opt.min_prominence);
  const auto eps = epsilon(sched, opt.grid_points);
  r.epsilon = eps.value;
  r.epsilon_s = eps.s;
  r.t_approx = t_approx(r.minimum.gap);
  if (r.minimum.interior) {
    r.hyperbola = fit_hyperbola(trace, r.minimum.s, r.minimum.gap, opt.fit_window,
                                opt.fit_residual_threshold);
  }
  return r;
}

}  // namespace eltip

#endif  // ELTIP_SPECTRAL_HPP
