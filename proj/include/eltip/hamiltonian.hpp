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

#ifndef ELTIP_HAMILTONIAN_HPP
#define ELTIP_HAMILTONIAN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "eltip/error.hpp"
#include "eltip/problem.hpp"

namespace eltip {

/// Dense storage is refused above this spin count (16384 x 16384 doubles).
inline constexpr int kMaxDenseSpins = 14;

/// Real symmetric 2^n x 2^n operator on n spins.
class DenseOperator {
 public:
  DenseOperator(int spins, Eigen::MatrixXd m) : spins_(spins), m_(std::move(m)) {
    const Eigen::Index dim = Eigen::Index{1} << spins_;
    if (m_.rows() != dim || m_.cols() != dim) {
      throw InputError("operator dimension does not match 2^" + std::to_string(spins_));
    }
  }

  static DenseOperator zero(int spins) {
    const Eigen::Index dim = Eigen::Index{1} << spins;
    return DenseOperator(spins, Eigen::MatrixXd::Zero(dim, dim));
  }

  int spins() const noexcept { return spins_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  double operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

 private:
  int spins_;
  Eigen::MatrixXd m_;
};

namespace detail {
inline void check_dense_cap(int n) {
  if (n < 1) throw InputError("operator needs at least one spin");
  if (n > kMaxDenseSpins) {
    throw InputError("n = " + std::to_string(n) + " exceeds the dense operator cap of " +
                     std::to_string(kMaxDenseSpins));
  }
}
}  // namespace detail

/// Diagonal H_P; entry m is energy(p, basis state m) including the offset.
inline DenseOperator build_problem_operator(const IsingProblem& p) {
  detail::check_dense_cap(p.size());
  const auto e = basis_energies(p);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(e.size()),
                                            static_cast<Eigen::Index>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i) m(i, i) = e[i];
  return DenseOperator(p.size(), std::move(m));
}

/// H_B = sum_i sigma^x_i.
inline DenseOperator build_transverse_driver(int n) {
  detail::check_dense_cap(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    for (int i = 0; i < n; ++i) m(s, s ^ (Eigen::Index{1} << i)) = 1.0;
  }
  return DenseOperator(n, std::move(m));
}

/// H_AFF = (1/N) (sum_i sigma^x_i)^2
///       = (n/N) I + (2/N) sum_{i<j} sigma^x_i sigma^x_j.
inline DenseOperator build_aff_driver(int n, double norm) {
  detail::check_dense_cap(n);
  if (!(norm > 0.0)) throw InputError("AFF normalizer N must be positive");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  const double diag = static_cast<double>(n) / norm;
  const double pair = 2.0 / norm;
  for (Eigen::Index s = 0; s < dim; ++s) {
    m(s, s) = diag;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        m(s, s ^ (Eigen::Index{1} << i) ^ (Eigen::Index{1} << j)) += pair;
      }
    }
  }
  return DenseOperator(n, std::move(m));
}

// ---------------------------------------------------------------------------
// Schedules

/// lambda(s) for the non-stoquastic schedule. `slope` may be left empty, in
/// which case derivatives fall back to a central difference of `value`.
struct LambdaPath {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> slope;

  static LambdaPath linear() {
    return {"linear", [](double s) { return s; }, [](double) { return 1.0; }};
  }
};

inline LambdaPath lambda_path_by_name(std::string_view name) {
  if (name == "linear") return LambdaPath::linear();
  throw InputError("unknown lambda path '" + std::string(name) + "'");
}

enum class Driver { stoquastic, nonstoquastic };

constexpr std::string_view driver_name(Driver d) noexcept {
  return d == Driver::stoquastic ? "stoquastic" : "nonstoquastic";
}

/// Central-difference step used when a lambda path has no analytic slope.
inline constexpr double kLambdaFallbackStep = 1e-6;

/// An annealing schedule bound to a problem:
///   stoquastic:     H(s) = (1-s) H_B + s H_P
///   non-stoquastic: H(s) = s [lambda(s) H_P + (1-lambda(s)) H_AFF] + (1-s) H_B
/// The operators are built once and shared between copies.
class ScheduleSpec {
 public:
  static ScheduleSpec stoquastic(IsingProblem p) {
    return ScheduleSpec(Driver::stoquastic, std::move(p), LambdaPath::linear(), std::nullopt);
  }

  /// `aff_norm` defaults to the spin count.
  static ScheduleSpec nonstoquastic(IsingProblem p, LambdaPath path = LambdaPath::linear(),
                                    std::optional<double> aff_norm = std::nullopt) {
    return ScheduleSpec(Driver::nonstoquastic, std::move(p), std::move(path), aff_norm);
  }

  Driver driver() const noexcept { return driver_; }
  const IsingProblem& problem() const noexcept { return ops_->problem; }
  int spins() const noexcept { return ops_->problem.size(); }
  const LambdaPath& lambda_path() const noexcept { return path_; }
  double aff_norm() const noexcept { return aff_norm_; }

  const DenseOperator& problem_operator() const noexcept { return ops_->hp; }
  const DenseOperator& transverse_operator() const noexcept { return ops_->hb; }
  /// Only populated for the non-stoquastic driver.
  const DenseOperator* aff_operator() const noexcept {
    return ops_->haff ? &*ops_->haff : nullptr;
  }

  double lambda(double s) const { return path_.value(s); }

  /// d lambda / ds; analytic when available.
  double lambda_slope(double s) const {
    if (path_.slope) return path_.slope(s);
    const double h = kLambdaFallbackStep;
    const double lo = std::max(0.0, s - h);
    const double hi = std::min(1.0, s + h);
    return (path_.value(hi) - path_.value(lo)) / (hi - lo);
  }

 private:
  struct Operators {
    IsingProblem problem;
    DenseOperator hp;
    DenseOperator hb;
    std::optional<DenseOperator> haff;
  };

  ScheduleSpec(Driver d, IsingProblem p, LambdaPath path, std::optional<double> aff_norm)
      : driver_(d), path_(std::move(path)) {
    detail::check_dense_cap(p.size());
    aff_norm_ = aff_norm.value_or(static_cast<double>(p.size()));
    if (driver_ == Driver::nonstoquastic) {
      if (!path_.value) throw InputError("lambda path has no value function");
      if (std::abs(path_.value(1.0) - 1.0) > 1e-12) {
        throw InputError("lambda path '" + path_.name + "' must satisfy lambda(1) = 1");
      }
    }
    auto hp = build_problem_operator(p);
    auto hb = build_transverse_driver(p.size());
    std::optional<DenseOperator> haff;
    if (driver_ == Driver::nonstoquastic) haff = build_aff_driver(p.size(), aff_norm_);
    ops_ = std::make_shared<const Operators>(
        Operators{std::move(p), std::move(hp), std::move(hb), std::move(haff)});
  }

  Driver driver_;
  LambdaPath path_;
  double aff_norm_ = 0.0;
  std::shared_ptr<const Operators> ops_;
};

namespace detail {
inline void check_schedule_point(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw InputError("schedule point s = " + std::to_string(s) + " outside [0, 1]");
  }
}
}  // namespace detail

inline DenseOperator hamiltonian_at(const ScheduleSpec& sched, double s) {
  detail::check_schedule_point(s);
  const auto& hp = sched.problem_operator().matrix();
  const auto& hb = sched.transverse_operator().matrix();
  if (sched.driver() == Driver::stoquastic) {
    return DenseOperator(sched.spins(), (1.0 - s) * hb + s * hp);
  }
  const double lam = sched.lambda(s);
  const auto& haff = sched.aff_operator()->matrix();
  return DenseOperator(sched.spins(),
                       s * lam * hp + s * (1.0 - lam) * haff + (1.0 - s) * hb);
}

/// dH/ds. For the non-stoquastic driver the product rule gives
///   (lambda + s lambda') H_P + (1 - lambda - s lambda') H_AFF - H_B.
inline DenseOperator derivative_at(const ScheduleSpec& sched, double s) {
  detail::check_schedule_point(s);
  const auto& hp = sched.problem_operator().matrix();
  const auto& hb = sched.transverse_operator().matrix();
  if (sched.driver() == Driver::stoquastic) return DenseOperator(sched.spins(), hp - hb);
  const double lam = sched.lambda(s);
  const double dlam = sched.lambda_slope(s);
  const auto& haff = sched.aff_operator()->matrix();
  const double cp = lam + s * dlam;
  return DenseOperator(sched.spins(), cp * hp + (1.0 - cp) * haff - hb);
}

}  // namespace eltip

#endif  // ELTIP_HAMILTONIAN_HPP
