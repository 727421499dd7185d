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

#ifndef ELTIP_OVERLAP_HPP
#define ELTIP_OVERLAP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "eltip/error.hpp"
#include "eltip/hamiltonian.hpp"
#include "eltip/problem.hpp"
#include "eltip/spectral.hpp"

namespace eltip {

/// Eigenstate of the (diagonal) final Hamiltonian: a computational basis state.
struct FinalState {
  std::uint64_t basis_index = 0;
  double energy = 0.0;
};

/// Basis states by ascending energy, ties by ascending basis index.
/// Element 0 is |GS>, element 1 is |FS>.
inline std::vector<FinalState> final_basis(const IsingProblem& p) {
  const auto e = basis_energies(p);
  std::vector<FinalState> out(e.size());
  for (std::size_t m = 0; m < e.size(); ++m) out[m] = {m, e[m]};
  std::stable_sort(out.begin(), out.end(),
                   [](const FinalState& a, const FinalState& b) { return a.energy < b.energy; });
  return out;
}

/// Final levels closer than this are one degenerate shell.
inline constexpr double kShellTol = 1e-12;

/// A degenerate shell of final eigenstates, by position in final_basis().
struct OverlapGroup {
  double energy = 0.0;
  std::vector<int> members;
};

struct OverlapTrace {
  std::vector<double> grid;
  std::vector<FinalState> labels;             // final_basis()[0..k_max]
  std::vector<std::vector<double>> weights;   // weights[p][k] = a_{k,0}(grid[p])
  std::vector<double> total;                  // full-basis sum per point
  std::vector<OverlapGroup> groups;           // shells touching k = 0..k_max
  std::vector<std::vector<double>> grouped;   // grouped[p][g], summed over each shell

  int k_max() const noexcept { return static_cast<int>(labels.size()) - 1; }
};

/// a_{k,0}(s) = |<E_k(1)|E_0(s)>|^2 on a uniform grid.
inline OverlapTrace overlap_trace(const ScheduleSpec& sched, int grid_points = 2001,
                                  int k_max = 5) {
  const auto basis = final_basis(sched.problem());
  if (k_max < 0 || static_cast<std::size_t>(k_max) >= basis.size()) {
    throw InputError("k_max = " + std::to_string(k_max) + " must be below 2^n = " +
                     std::to_string(basis.size()));
  }
  OverlapTrace t;
  t.grid = uniform_grid(grid_points);
  t.labels.assign(basis.begin(), basis.begin() + k_max + 1);

  // Shells over the whole basis, kept when they reach into the reported range.
  std::vector<std::vector<int>> shell_members;
  for (std::size_t k = 0; k < basis.size();) {
    std::size_t e = k + 1;
    while (e < basis.size() && basis[e].energy - basis[k].energy <= kShellTol) ++e;
    if (static_cast<int>(k) <= k_max) {
      std::vector<int> mem(e - k);
      std::iota(mem.begin(), mem.end(), static_cast<int>(k));
      t.groups.push_back({basis[k].energy, mem});
    }
    k = e;
  }

  for (double s : t.grid) {
    const auto es = full_spectrum(hamiltonian_at(sched, s));
    const double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());
    if (es.values[1] - es.values[0] <= kDegeneracyTol * scale) {
      throw DegenerateLevelError(
          "instantaneous ground state is degenerate; overlaps are basis-dependent", s);
    }
    const auto v0 = es.vectors.col(0);
    std::vector<double> w(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
      const double amp = v0[static_cast<Eigen::Index>(basis[k].basis_index)];
      w[k] = amp * amp;
    }
    std::vector<double> gw;
    gw.reserve(t.groups.size());
    for (const auto& g : t.groups) {
      double acc = 0.0;
      for (int k : g.members) {
        const double amp = v0[static_cast<Eigen::Index>(basis[k].basis_index)];
        acc += amp * amp;
      }
      gw.push_back(acc);
    }
    t.weights.push_back(std::move(w));
    t.grouped.push_back(std::move(gw));
    t.total.push_back(v0.squaredNorm());
  }
  return t;
}

/// max over grid cells of |a_{k,0}(s_{p+1}) - a_{k,0}(s_p)| / (s_{p+1} - s_p).
inline double max_weight_slope(const OverlapTrace& t, int k) {
  double best = 0.0;
  for (std::size_t p = 0; p + 1 < t.grid.size(); ++p) {
    const double ds = t.grid[p + 1] - t.grid[p];
    best = std::max(best, std::abs(t.weights[p + 1][k] - t.weights[p][k]) / ds);
  }
  return best;
}

/// Last s where a_{0,0} - a_{1,0} changes sign, linearly interpolated.
inline std::optional<double> ground_first_crossover(const OverlapTrace& t) {
  if (t.k_max() < 1) return std::nullopt;
  std::optional<double> out;
  for (std::size_t p = 0; p + 1 < t.grid.size(); ++p) {
    const double d0 = t.weights[p][0] - t.weights[p][1];
    const double d1 = t.weights[p + 1][0] - t.weights[p + 1][1];
    if ((d0 < 0.0 && d1 >= 0.0) || (d0 > 0.0 && d1 <= 0.0)) {
      out = t.grid[p] + (t.grid[p + 1] - t.grid[p]) * d0 / (d0 - d1);
    }
  }
  return out;
}

}  // namespace eltip

#endif  // ELTIP_OVERLAP_HPP
