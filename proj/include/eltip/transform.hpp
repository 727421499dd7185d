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

#ifndef ELTIP_TRANSFORM_HPP
#define ELTIP_TRANSFORM_HPP

#include <string>
#include <utility>
#include <vector>

#include "eltip/error.hpp"
#include "eltip/problem.hpp"

namespace eltip {

// U_k is the fan of n-1 CNOTs controlled by spin k. Conjugation maps
//   sigma_k sigma_i -> sigma_i,  sigma_i -> sigma_k sigma_i   (i != k)
// and fixes sigma_k and sigma_i sigma_j for i, j != k. On the coefficients this
// is an exchange of J_ik with h_i for every i != k; the spectrum, including
// multiplicities, is unchanged.

namespace detail {
inline void check_spin_index(int n, int k, const char* what) {
  if (k < 0 || k >= n) {
    throw InputError(std::string(what) + " index " + std::to_string(k) +
                     " out of range for n = " + std::to_string(n));
  }
}
}  // namespace detail

/// H_k = U_k H U_k^dagger as a coefficient exchange.
inline IsingProblem transform(const IsingProblem& p, int k) {
  const int n = p.size();
  detail::check_spin_index(n, k, "transform");
  IsingProblem::Coefficients J;
  std::vector<double> h(n);
  for (const auto& [e, v] : p.quadratic()) {
    if (e.i != k && e.j != k) J.emplace(e, v);
  }
  for (int i = 0; i < n; ++i) {
    if (i == k) {
      h[i] = p.linear(k);
      continue;
    }
    h[i] = p.quadratic(i, k);
    J[make_edge(i, k)] = p.linear(i);
  }
  return IsingProblem(n, std::move(J), std::move(h), p.offset());
}

/// Maps a configuration of H_k to the configuration of H with the same
/// energy (|GS> = U_k^dagger |GS_k>): when spin k is in the control-on state
/// (sigma_k = -1) every other spin is flipped. Returns the spin convention.
inline SpinAssignment back_map(const SpinAssignment& a, int k) {
  detail::check_spin_index(static_cast<int>(a.size()), k, "back_map");
  auto s = a.spins();
  if (s[k] < 0) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (static_cast<int>(i) != k) s[i] = -s[i];
    }
  }
  return SpinAssignment::spin(std::move(s));
}

/// p with spin labels i and j exchanged.
inline IsingProblem relabel_swap(const IsingProblem& p, int i, int j) {
  const int n = p.size();
  detail::check_spin_index(n, i, "swap");
  detail::check_spin_index(n, j, "swap");
  auto relabel = [i, j](int a) { return a == i ? j : (a == j ? i : a); };
  IsingProblem::Coefficients J;
  for (const auto& [e, v] : p.quadratic()) J.emplace(make_edge(relabel(e.i), relabel(e.j)), v);
  std::vector<double> h(n);
  for (int a = 0; a < n; ++a) h[relabel(a)] = p.linear(a);
  return IsingProblem(n, std::move(J), std::move(h), p.offset());
}

/// U_j U_i U_j applied by conjugation, i.e. transform by j, then i, then j.
/// The result equals relabel_swap(p, i, j).
inline IsingProblem compose_swap_check(const IsingProblem& p, int i, int j) {
  if (i == j) throw InputError("compose_swap_check requires i != j");
  return transform(transform(transform(p, j), i), j);
}

}  // namespace eltip

#endif  // ELTIP_TRANSFORM_HPP
