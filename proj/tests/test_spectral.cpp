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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "eltip/hamiltonian.hpp"
#include "eltip/problem.hpp"
#include "eltip/spectral.hpp"
#include "eltip/transform.hpp"
#include "test_support.hpp"

namespace eltip {
namespace {

const IsingProblem kSingleField(1, {}, {1.0});
const double kSqrt2 = std::sqrt(2.0);

ScheduleSpec mis_stoq(double db) { return ScheduleSpec::stoquastic(qubo_to_ising(mis_chain({db}))); }
ScheduleSpec mis_eltip(double db, int k) {
  return ScheduleSpec::stoquastic(transform(qubo_to_ising(mis_chain({db})), k));
}

// Closed-form two-level gap for (1-s) sigma^x + s sigma^z.
double two_level_gap(double s) { return 2.0 * std::sqrt((1 - s) * (1 - s) + s * s); }

TEST(FullSpectrum, PauliX) {
  Eigen::Matrix2d x;
  x << 0, 1, 1, 0;
  const auto es = full_spectrum(DenseOperator(1, x));
  EXPECT_NEAR(es.values[0], -1.0, 1e-15);
  EXPECT_NEAR(es.values[1], 1.0, 1e-15);
}

TEST(FullSpectrum, DiagonalOperator) {
  Eigen::VectorXd d(4);
  d << 3.0, -1.0, 2.0, 0.5;
  const auto es = full_spectrum(DenseOperator(2, d.asDiagonal().toDenseMatrix()));
  const std::vector<double> expected{-1.0, 0.5, 2.0, 3.0};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(es.values[i], expected[i]);
    EXPECT_NEAR(es.vectors.col(i).cwiseAbs().maxCoeff(), 1.0, 1e-15);
  }
}

TEST(FullSpectrum, ResidualContractOnRandomSymmetric) {
  std::mt19937_64 rng(51);
  std::normal_distribution<double> g;
  for (int n : {5, 8}) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXd a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j <= i; ++j) a(i, j) = a(j, i) = g(rng);
    const auto es = full_spectrum(DenseOperator(n, a));
    const Eigen::MatrixXd recon = es.vectors * es.values.asDiagonal() * es.vectors.transpose();
    EXPECT_LE((a - recon).cwiseAbs().maxCoeff(), 1e-9 * a.cwiseAbs().maxCoeff());
    EXPECT_LE((es.vectors.transpose() * es.vectors - Eigen::MatrixXd::Identity(dim, dim))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
    for (Eigen::Index i = 1; i < dim; ++i) EXPECT_LE(es.values[i - 1], es.values[i]);
  }
}

TEST(GapTrace, TwoLevelAnalytic) {
  const auto t = gap_trace(ScheduleSpec::stoquastic(kSingleField), 101);
  ASSERT_EQ(t.grid.size(), 101U);
  EXPECT_EQ(t.grid.front(), 0.0);
  EXPECT_EQ(t.grid.back(), 1.0);
  for (std::size_t p = 0; p < t.grid.size(); ++p) {
    EXPECT_NEAR(t.gap[p], two_level_gap(t.grid[p]), 1e-12);
  }
  EXPECT_NEAR(t.gap.front(), 2.0, 1e-12);
  EXPECT_NEAR(t.gap.back(), 2.0, 1e-12);
  EXPECT_EQ(t.levels.front().size(), 2U);
}

TEST(GapTrace, MisFinalGapEqualsDeltaB) {
  EXPECT_NEAR(gap_trace(mis_stoq(0.04), 101).gap.back(), 0.04, 1e-9);
  EXPECT_NEAR(gap_trace(mis_eltip(0.01, 0), 101).gap.back(), 0.01, 1e-9);
}

TEST(GapTrace, Invariants) {
  const auto t = gap_trace(ScheduleSpec::nonstoquastic(qubo_to_ising(mis_chain({0.02}))), 201, 6);
  for (std::size_t p = 0; p < t.grid.size(); ++p) {
    ASSERT_EQ(t.levels[p].size(), 6U);
    EXPECT_TRUE(std::is_sorted(t.levels[p].begin(), t.levels[p].end()));
    EXPECT_GE(t.gap[p], 0.0);
    if (p) EXPECT_LT(t.grid[p - 1], t.grid[p]);
  }
  EXPECT_THROW(gap_trace(mis_stoq(0.02), 1), InputError);
  EXPECT_THROW(gap_trace(mis_stoq(0.02), 10, 1), InputError);
}

// Weyl: |E_k(s') - E_k(s)| <= ||H(s') - H(s)||_2 <= dim * max entry.
TEST(GapTraceProperty, EigenvalueContinuityBound) {
  for (const auto& sched : {mis_stoq(0.01), ScheduleSpec::nonstoquastic(
                                                  qubo_to_ising(mis_chain({0.08})))}) {
    const auto t = gap_trace(sched, 401, 6);
    for (std::size_t p = 0; p + 1 < t.grid.size(); ++p) {
      const double bound = (hamiltonian_at(sched, t.grid[p + 1]).matrix() -
                            hamiltonian_at(sched, t.grid[p]).matrix())
                               .cwiseAbs()
                               .maxCoeff() *
                           32;
      for (int k = 0; k < 6; ++k) {
        ASSERT_LE(std::abs(t.levels[p + 1][k] - t.levels[p][k]), bound);
      }
    }
  }
}

TEST(SpectralInvariance, EltipLevelsAgreeOnlyAtTheEnd) {
  for (double db : {0.01, 0.08}) {
    const auto a = gap_trace(mis_stoq(db), 201, 6);
    for (int k = 0; k < 5; ++k) {
      const auto b = gap_trace(mis_eltip(db, k), 201, 6);
      for (int l = 0; l < 6; ++l) EXPECT_NEAR(a.levels.back()[l], b.levels.back()[l], 1e-9);
      double interior_diff = 0.0;
      for (std::size_t p = 1; p + 1 < a.grid.size(); ++p) {
        interior_diff = std::max(interior_diff, std::abs(a.gap[p] - b.gap[p]));
      }
      EXPECT_GT(interior_diff, 1e-3);
    }
  }
}

TEST(GoldenSection, FindsParabolaMinimum) {
  double fmin = 0;
  const double x = golden_section_minimize([](double s) { return (s - 0.3) * (s - 0.3) + 1.0; },
                                           0.0, 1.0, 1e-9, &fmin);
  // Near a quadratic minimum f is flat to rounding within ~sqrt(eps).
  EXPECT_NEAR(x, 0.3, 1e-7);
  EXPECT_NEAR(fmin, 1.0, 1e-15);
}

TEST(MinGap, TwoLevelAnalytic) {
  const auto m = min_gap(ScheduleSpec::stoquastic(kSingleField));
  EXPECT_NEAR(m.s, 0.5, 1e-6);
  EXPECT_NEAR(m.gap, kSqrt2, 1e-9);
  EXPECT_TRUE(m.interior);
  EXPECT_NEAR(m.prominence, kSqrt2, 1e-9);
}

// Oracle: brute-force scan at 20001 points, then a uniform 1e-8-step scan of
// the two cells around the coarse minimum. No bracketing search involved.
double fine_grid_min_gap(const ScheduleSpec& sched, double* where) {
  const int n = 20001;
  double best = std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int i = 0; i < n; ++i) {
    const double g = gap_at(sched, static_cast<double>(i) / (n - 1));
    if (g < best) best = g, arg = i;
  }
  const double lo = std::max(0.0, (arg - 1.0) / (n - 1));
  const double hi = std::min(1.0, (arg + 1.0) / (n - 1));
  for (double s = lo; s <= hi; s += 1e-8) {
    const double g = gap_at(sched, s);
    if (g < best) best = g, *where = s;
  }
  return best;
}

TEST(MinGap, MisStoquasticAgainstFineGridOracle) {
  const auto sched = mis_stoq(0.04);
  const auto m = min_gap(sched);
  double s_oracle = 0.0;
  const double oracle = fine_grid_min_gap(sched, &s_oracle);
  EXPECT_TRUE(m.interior);
  EXPECT_GT(m.s, 0.5);
  EXPECT_LT(m.s, 1.0);
  EXPECT_LT(m.gap, 0.04 / 10);
  EXPECT_NEAR(m.gap, oracle, 1e-6 * oracle + 1e-12);
  EXPECT_NEAR(m.s, s_oracle, 2e-6);
}

TEST(MinGap, EltipMinimumSitsAtTheEnd) {
  for (int k = 0; k < 5; ++k) {
    const auto m = min_gap(mis_eltip(0.04, k));
    EXPECT_FALSE(m.interior);
    EXPECT_GT(m.s, 0.99);
    EXPECT_NEAR(m.gap, 0.04, 1e-4);
  }
}

TEST(MinGapProperty, RefinementNeverExceedsGridMinimum) {
  for (double db : {0.01, 0.02, 0.04, 0.06, 0.08}) {
    for (const auto& sched : {mis_stoq(db), mis_eltip(db, 2)}) {
      const auto t = gap_trace(sched, 2001, 2);
      const auto m = min_gap(sched, t);
      EXPECT_LE(m.gap, *std::min_element(t.gap.begin(), t.gap.end()));
    }
  }
}

TEST(MinGap, RejectsBadTolerance) {
  const auto sched = ScheduleSpec::stoquastic(kSingleField);
  EXPECT_THROW(min_gap(sched, gap_trace(sched, 11), {11, 0.0}), InputError);
}

TEST(DetectAnticrossing, TwoLevelHasOneAtMidpoint) {
  const auto sched = ScheduleSpec::stoquastic(kSingleField);
  const auto found = detect_anticrossing(sched, gap_trace(sched, 2001));
  ASSERT_EQ(found.size(), 1U);
  EXPECT_NEAR(found[0].s, 0.5, 1e-6);
}

TEST(DetectAnticrossing, MisStoquasticHasExactlyOne) {
  for (double db : {0.01, 0.08}) {
    const auto sched = mis_stoq(db);
    EXPECT_EQ(detect_anticrossing(sched, gap_trace(sched, 2001, 2)).size(), 1U) << db;
  }
}

TEST(DetectAnticrossing, EltipHasNone) {
  for (double db : {0.01, 0.02, 0.04, 0.06, 0.08}) {
    for (int k = 0; k < 5; ++k) {
      const auto sched = mis_eltip(db, k);
      const auto t = gap_trace(sched, 2001, 2);
      EXPECT_TRUE(detect_anticrossing(sched, t).empty()) << "db=" << db << " k=" << k;
      // Shallow dips exist but stay far below the prominence threshold.
      for (const auto& m : local_minima(sched, t)) EXPECT_LT(m.prominence, 1.3);
    }
  }
}

TEST(DetectAnticrossing, MonotoneTraceIsEmpty) {
  SpectralTrace t;
  t.grid = uniform_grid(50);
  for (double s : t.grid) {
    t.gap.push_back(2.0 - s);
    t.levels.push_back({0.0, 2.0 - s});
  }
  const auto sched = ScheduleSpec::stoquastic(kSingleField);
  EXPECT_TRUE(local_minima(sched, t).empty());
  EXPECT_TRUE(detect_anticrossing(sched, t).empty());
}

// Closed form: |<E_1|(sigma^z - sigma^x)|E_0>| = 1 / sqrt(s^2 + (1-s)^2),
// maximal at s = 1/2 with value sqrt(2).
TEST(Epsilon, TwoLevelClosedForm) {
  double oracle = 0.0, s_oracle = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double s = i / 100000.0;
    const double v = 1.0 / std::sqrt(s * s + (1 - s) * (1 - s));
    if (v > oracle) oracle = v, s_oracle = s;
  }
  ASSERT_NEAR(oracle, kSqrt2, 1e-12);
  const auto e = epsilon(ScheduleSpec::stoquastic(kSingleField));
  EXPECT_NEAR(e.value, oracle, 1e-6);
  EXPECT_NEAR(e.s, s_oracle, 1e-6);
}

TEST(Epsilon, BoundedBySpectralNormOfDerivative) {
  for (const auto& sched : {mis_stoq(0.04), mis_eltip(0.04, 1),
                            ScheduleSpec::nonstoquastic(qubo_to_ising(mis_chain({0.04})))}) {
    const auto e = epsilon(sched, 401);
    const auto ev = eigenvalues(derivative_at(sched, e.s));
    const double norm = std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
    EXPECT_LE(e.value, norm + 1e-12);
  }
}

TEST(Epsilon, MisIsOfOrderUnity) {
  const auto e = epsilon(mis_stoq(0.04));
  EXPECT_GT(e.value, 0.1);
  EXPECT_LT(e.value, 10.0);
}

TEST(Epsilon, DegenerateFinalLevelsReported) {
  try {
    epsilon(mis_stoq(0.0), 11);
    FAIL() << "expected DegenerateLevelError";
  } catch (const DegenerateLevelError& e) {
    EXPECT_EQ(e.s(), 1.0);
  }
}

TEST(TApprox, Examples) {
  EXPECT_NEAR(t_approx(kSqrt2), 0.5, 1e-15);
  EXPECT_NEAR(t_approx(0.01), 10000.0, 1e-9);
  EXPECT_NEAR(t_approx(0.1), 100.0, 1e-12);
  EXPECT_THROW(t_approx(0.0), InputError);
  EXPECT_THROW(t_approx(-1.0), InputError);
}

TEST(TApproxProperty, ReciprocalSquare) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> logd(-6.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double d = std::pow(10.0, logd(rng));
    EXPECT_NEAR(t_approx(d) * d * d, 1.0, 4 * std::numeric_limits<double>::epsilon());
  }
}

TEST(Hyperbola, TwoLevelIsExact) {
  const auto sched = ScheduleSpec::stoquastic(kSingleField);
  const auto t = gap_trace(sched, 2001);
  const auto m = min_gap(sched, t, {2001, 1e-10});
  const auto exact = fit_hyperbola(t, 0.5, kSqrt2);
  EXPECT_NEAR(exact.a, 2.0 * kSqrt2, 1e-12);
  EXPECT_LE(exact.residual, 1e-12);
  // With the refined s* the centre is off by ~1e-9, which shifts A to first order.
  const auto fit = fit_hyperbola(t, m.s, m.gap);
  EXPECT_LE(fit.residual, 1e-9);
  EXPECT_NEAR(fit.a, 2.0 * kSqrt2, 1e-8);
  EXPECT_NEAR(fit.b, 0.0, 1e-12);
  EXPECT_NEAR(fit.e_center, 0.0, 1e-12);
  EXPECT_TRUE(fit.within_threshold);
}

TEST(Hyperbola, RecoversSyntheticParameters) {
  const double a = 1.7, b = -0.4, ec = -2.3, delta = 0.05, s_star = 0.6;
  SpectralTrace t;
  t.grid = uniform_grid(2001);
  for (double s : t.grid) {
    const double x = s - s_star;
    const double r = std::sqrt(delta * delta + a * a * x * x);
    t.levels.push_back({ec + b * x - r / 2, ec + b * x + r / 2});
    t.gap.push_back(r);
  }
  const auto fit = fit_hyperbola(t, s_star, delta);
  EXPECT_NEAR(fit.a, a, 1e-6);
  EXPECT_NEAR(fit.b, b, 1e-6);
  EXPECT_NEAR(fit.e_center, ec, 1e-6);
  EXPECT_LE(fit.residual, 1e-9);
}

TEST(Hyperbola, MisStoquasticReportsResidual) {
  const auto sched = mis_stoq(0.04);
  const auto t = gap_trace(sched, 2001, 2);
  const auto m = min_gap(sched, t);
  const auto fit = fit_hyperbola(t, m.s, m.gap);
  EXPECT_TRUE(std::isfinite(fit.a));
  EXPECT_TRUE(std::isfinite(fit.b));
  EXPECT_GT(fit.a, 0.0);
  EXPECT_TRUE(std::isfinite(fit.residual));
  EXPECT_GT(fit.points, 100);
  // Closer to the dip the two-level model fits better.
  const auto narrow = fit_hyperbola(t, m.s, m.gap, 0.005);
  EXPECT_LT(narrow.residual, fit.residual);
}

TEST(Hyperbola, Errors) {
  const auto t = gap_trace(ScheduleSpec::stoquastic(kSingleField), 11);
  EXPECT_THROW(fit_hyperbola(t, 0.5, kSqrt2, 0.05), InputError);  // 1 point in window
  EXPECT_THROW(fit_hyperbola(t, 1.0, kSqrt2, 0.5), InputError);   // not interior
}

TEST(Report, SummaryFields) {
  const auto sched = mis_stoq(0.04);
  const auto r = anticrossing_report(sched, gap_trace(sched, 2001, 2));
  EXPECT_TRUE(r.minimum.interior);
  ASSERT_TRUE(r.hyperbola.has_value());
  EXPECT_EQ(r.anticrossings.size(), 1U);
  EXPECT_EQ(r.t_approx, t_approx(r.minimum.gap));
  EXPECT_GT(r.epsilon, 0.0);

  const auto e = mis_eltip(0.04, 0);
  const auto re = anticrossing_report(e, gap_trace(e, 2001, 2));
  EXPECT_FALSE(re.minimum.interior);
  EXPECT_FALSE(re.hyperbola.has_value());
  EXPECT_TRUE(re.anticrossings.empty());
}

}  // namespace
}  // namespace eltip
