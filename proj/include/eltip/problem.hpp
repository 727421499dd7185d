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

#ifndef ELTIP_PROBLEM_HPP
#define ELTIP_PROBLEM_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eltip/error.hpp"

namespace eltip {

/// Unordered spin pair stored as i < j.
struct Edge {
  int i = 0;
  int j = 0;

  auto operator<=>(const Edge&) const = default;
};

/// Normalizes (j, i) to (i, j). Does not validate.
constexpr Edge make_edge(int a, int b) noexcept {
  return a < b ? Edge{a, b} : Edge{b, a};
}

enum class Form { qubo, ising };

constexpr std::string_view form_name(Form f) noexcept {
  return f == Form::qubo ? "qubo" : "ising";
}

/// Upper bound for anything that enumerates all 2^n assignments.
inline constexpr int kMaxEnumerableSpins = 24;

/// Quadratic pseudo-Boolean function in either the QUBO (q in {0,1}) or the
/// Ising (sigma in {-1,+1}) convention:
///
///   E = sum_{i<j} quadratic(i,j) x_i x_j + sum_i linear(i) x_i + offset
///
/// Coefficients are held as a sparse upper-triangular map; exact zeros are
/// dropped so that equality is structural. Immutable after construction.
template <Form F>
class QuadraticForm {
 public:
  using Coefficients = std::map<Edge, double>;
  static constexpr Form form = F;

  explicit QuadraticForm(int n) : QuadraticForm(n, {}, std::vector<double>(n > 0 ? n : 0, 0.0)) {}

  QuadraticForm(int n, Coefficients quadratic, std::vector<double> linear,
                double offset = 0.0)
      : n_(n), linear_(std::move(linear)), offset_(offset) {
    if (n_ < 1) throw InputError("problem must have at least one variable");
    if (linear_.size() != static_cast<std::size_t>(n_)) {
      throw InputError("linear term count " + std::to_string(linear_.size()) +
                       " does not match n = " + std::to_string(n_));
    }
    if (!std::isfinite(offset_)) throw InputError("offset is not finite");
    for (double v : linear_) {
      if (!std::isfinite(v)) throw InputError("linear coefficient is not finite");
    }
    for (const auto& [e, v] : quadratic) {
      if (e.i == e.j) {
        throw InputError("self-coupling (" + std::to_string(e.i) + "," +
                         std::to_string(e.j) + ") is not allowed");
      }
      if (e.i < 0 || e.j < 0 || e.i >= n_ || e.j >= n_) {
        throw InputError("index (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                         ") out of bounds for n = " + std::to_string(n_));
      }
      if (e.i > e.j) throw InputError("quadratic keys must satisfy i < j");
      if (!std::isfinite(v)) throw InputError("quadratic coefficient is not finite");
      if (v != 0.0) quadratic_.emplace(e, v);
    }
  }

  int size() const noexcept { return n_; }
  const Coefficients& quadratic() const noexcept { return quadratic_; }
  const std::vector<double>& linear() const noexcept { return linear_; }
  double offset() const noexcept { return offset_; }

  /// Symmetric lookup; absent pairs are zero.
  double quadratic(int a, int b) const {
    if (a == b) return 0.0;
    auto it = quadratic_.find(make_edge(a, b));
    return it == quadratic_.end() ? 0.0 : it->second;
  }
  double linear(int i) const { return linear_.at(static_cast<std::size_t>(i)); }

  bool operator==(const QuadraticForm&) const = default;

 private:
  int n_ = 0;
  Coefficients quadratic_;
  std::vector<double> linear_;
  double offset_ = 0.0;
};

using IsingProblem = QuadraticForm<Form::ising>;
using QuboProblem = QuadraticForm<Form::qubo>;

/// Largest absolute difference over all coefficients and the offset.
template <Form F>
double max_coefficient_difference(const QuadraticForm<F>& a, const QuadraticForm<F>& b) {
  if (a.size() != b.size()) throw InputError("problem sizes differ");
  double d = std::abs(a.offset() - b.offset());
  for (int i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a.linear(i) - b.linear(i)));
    for (int j = i + 1; j < a.size(); ++j) {
      d = std::max(d, std::abs(a.quadratic(i, j) - b.quadratic(i, j)));
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Assignments

enum class Convention { binary, spin };

/// One classical configuration. Binary values are q in {0,1}, spin values are
/// sigma in {-1,+1}, related by sigma = 2q - 1.
///
/// Computational basis index m encodes spin i in bit i: bit 0 is the sigma^z
/// eigenvalue +1 (q = 1), bit 1 is sigma = -1 (q = 0).
class SpinAssignment {
 public:
  static SpinAssignment binary(std::vector<int> q) {
    for (int v : q) {
      if (v != 0 && v != 1) throw InputError("binary assignment values must be 0 or 1");
    }
    return SpinAssignment(Convention::binary, std::move(q));
  }

  static SpinAssignment spin(std::vector<int> s) {
    for (int v : s) {
      if (v != -1 && v != 1) throw InputError("spin assignment values must be -1 or +1");
    }
    return SpinAssignment(Convention::spin, std::move(s));
  }

  static SpinAssignment from_basis_index(std::uint64_t m, int n) {
    std::vector<int> s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s[i] = ((m >> i) & 1U) ? -1 : 1;
    return SpinAssignment(Convention::spin, std::move(s));
  }

  /// Accepts "10101" (binary), "+-+-+" (spin) or "-1,1,-1" / "0,1,0" lists.
  static SpinAssignment parse(std::string_view text);

  Convention convention() const noexcept { return convention_; }
  std::size_t size() const noexcept { return values_.size(); }
  /// Value in the assignment's own convention.
  int operator[](std::size_t i) const { return values_.at(i); }

  std::vector<int> spins() const {
    if (convention_ == Convention::spin) return values_;
    std::vector<int> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = 2 * values_[i] - 1;
    return out;
  }

  std::vector<int> bits() const {
    if (convention_ == Convention::binary) return values_;
    std::vector<int> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = (values_[i] + 1) / 2;
    return out;
  }

  SpinAssignment to(Convention c) const {
    return c == Convention::spin ? SpinAssignment(c, spins()) : SpinAssignment(c, bits());
  }

  std::uint64_t basis_index() const {
    std::uint64_t m = 0;
    const auto s = spins();
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0) m |= std::uint64_t{1} << i;
    }
    return m;
  }

  /// "10101" for binary, "+-+-+" for spin.
  std::string str(Convention c) const {
    std::string out;
    if (c == Convention::binary) {
      for (int v : bits()) out.push_back(v ? '1' : '0');
    } else {
      for (int v : spins()) out.push_back(v > 0 ? '+' : '-');
    }
    return out;
  }

  /// Equal as configurations, regardless of convention.
  bool same_configuration(const SpinAssignment& other) const {
    return spins() == other.spins();
  }

 private:
  SpinAssignment(Convention c, std::vector<int> v) : convention_(c), values_(std::move(v)) {}

  Convention convention_;
  std::vector<int> values_;
};

inline SpinAssignment SpinAssignment::parse(std::string_view text) {
  std::vector<int> vals;
  bool has_sign_chars = false;
  bool has_comma = text.find(',') != std::string_view::npos;
  if (has_comma) {
    // Signed tokens ("+1", "-1") select spin form; otherwise binary.
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t next = text.find(',', pos);
      if (next == std::string_view::npos) next = text.size();
      std::string tok(text.substr(pos, next - pos));
      std::erase_if(tok, [](char ch) { return ch == ' '; });
      if (tok == "+1") {
        vals.push_back(1);
        has_sign_chars = true;
      } else if (tok == "-1") {
        vals.push_back(-1);
        has_sign_chars = true;
      } else if (tok == "1") {
        vals.push_back(1);
      } else if (tok == "0") {
        vals.push_back(0);
      } else {
        throw InputError("malformed assignment token '" + tok + "'");
      }
      pos = next + 1;
    }
    return has_sign_chars ? spin(std::move(vals)) : binary(std::move(vals));
  }
  for (char ch : text) {
    switch (ch) {
      case '0': vals.push_back(0); break;
      case '1': vals.push_back(1); break;
      case '+': vals.push_back(1); has_sign_chars = true; break;
      case '-': vals.push_back(-1); has_sign_chars = true; break;
      default: throw InputError(std::string("malformed assignment character '") + ch + "'");
    }
  }
  if (vals.empty()) throw InputError("empty assignment");
  if (has_sign_chars) {
    for (int v : vals) {
      if (v == 0) throw InputError("assignment mixes 0/1 and +/- characters");
    }
    return spin(std::move(vals));
  }
  return binary(std::move(vals));
}

// ---------------------------------------------------------------------------
// Energies

inline double energy(const IsingProblem& p, const SpinAssignment& a) {
  if (a.size() != static_cast<std::size_t>(p.size())) {
    throw InputError("assignment length " + std::to_string(a.size()) +
                     " does not match n = " + std::to_string(p.size()));
  }
  const auto s = a.spins();
  double e = p.offset();
  for (const auto& [edge, v] : p.quadratic()) e += v * s[edge.i] * s[edge.j];
  for (int i = 0; i < p.size(); ++i) e += p.linear(i) * s[i];
  return e;
}

inline double energy(const QuboProblem& p, const SpinAssignment& a) {
  if (a.size() != static_cast<std::size_t>(p.size())) {
    throw InputError("assignment length " + std::to_string(a.size()) +
                     " does not match n = " + std::to_string(p.size()));
  }
  const auto q = a.bits();
  double e = p.offset();
  for (const auto& [edge, v] : p.quadratic()) e += v * q[edge.i] * q[edge.j];
  for (int i = 0; i < p.size(); ++i) e += p.linear(i) * q[i];
  return e;
}

/// Energy of every computational basis state, indexed by basis index.
inline std::vector<double> basis_energies(const IsingProblem& p) {
  if (p.size() > kMaxEnumerableSpins) {
    throw InputError("n = " + std::to_string(p.size()) + " too large to enumerate");
  }
  const std::size_t dim = std::size_t{1} << p.size();
  std::vector<double> out(dim);
  for (std::size_t m = 0; m < dim; ++m) {
    auto sigma = [m](int i) { return ((m >> i) & 1U) ? -1.0 : 1.0; };
    double e = p.offset();
    for (const auto& [edge, v] : p.quadratic()) e += v * sigma(edge.i) * sigma(edge.j);
    for (int i = 0; i < p.size(); ++i) e += p.linear(i) * sigma(i);
    out[m] = e;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conversions. With q = (1 + sigma)/2 both directions are exact identities on
// energies; the constant difference is carried in the offset.

inline IsingProblem qubo_to_ising(const QuboProblem& p) {
  const int n = p.size();
  IsingProblem::Coefficients J;
  std::vector<double> h(n);
  double offset = p.offset();
  for (int i = 0; i < n; ++i) {
    h[i] = p.linear(i) / 2.0;
    offset += p.linear(i) / 2.0;
  }
  for (const auto& [e, q] : p.quadratic()) {
    J[e] = q / 4.0;
    h[e.i] += q / 4.0;
    h[e.j] += q / 4.0;
    offset += q / 4.0;
  }
  return IsingProblem(n, std::move(J), std::move(h), offset);
}

inline QuboProblem ising_to_qubo(const IsingProblem& p) {
  const int n = p.size();
  QuboProblem::Coefficients Q;
  std::vector<double> b(n);
  double offset = p.offset();
  for (int i = 0; i < n; ++i) {
    b[i] = 2.0 * p.linear(i);
    offset -= p.linear(i);
  }
  for (const auto& [e, j] : p.quadratic()) {
    Q[e] = 4.0 * j;
    b[e.i] -= 2.0 * j;
    b[e.j] -= 2.0 * j;
    offset += j;
  }
  return QuboProblem(n, std::move(Q), std::move(b), offset);
}

inline IsingProblem to_ising(const IsingProblem& p) { return p; }
inline IsingProblem to_ising(const QuboProblem& p) { return qubo_to_ising(p); }
inline QuboProblem to_qubo(const QuboProblem& p) { return p; }
inline QuboProblem to_qubo(const IsingProblem& p) { return ising_to_qubo(p); }

// ---------------------------------------------------------------------------
// MIS chain family

/// Five-vertex path-graph weighted independent set with tunable final gap.
/// Weights are (-4, -6 + delta_b, -4, -6, -4); every path edge carries
/// `coupling`. The unique minimum is q = 10101 at -12 and the next level is
/// q = 01010 at -12 + delta_b.
struct MisChainSpec {
  double delta_b = 0.04;
  double coupling = 6.08;
};

inline QuboProblem mis_chain(const MisChainSpec& spec) {
  if (!(spec.delta_b >= 0.0)) throw InputError("delta_b must be non-negative");
  QuboProblem::Coefficients Q;
  for (int i = 0; i + 1 < 5; ++i) Q[Edge{i, i + 1}] = spec.coupling;
  return QuboProblem(5, std::move(Q), {-4.0, -6.0 + spec.delta_b, -4.0, -6.0, -4.0});
}

}  // namespace eltip

#endif  // ELTIP_PROBLEM_HPP
