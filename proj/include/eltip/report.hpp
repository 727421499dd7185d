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

#ifndef ELTIP_REPORT_HPP
#define ELTIP_REPORT_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "eltip/error.hpp"
#include "eltip/hamiltonian.hpp"
#include "eltip/overlap.hpp"
#include "eltip/problem.hpp"
#include "eltip/spectral.hpp"
#include "eltip/transform.hpp"

namespace eltip {

/// Fixed 12-significant-digit rendering used in every CSV.
inline std::string format_real(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Single-schedule analysis

struct Analysis {
  SpectralTrace trace;
  OverlapTrace overlaps;
  AntiCrossingReport report;
};

inline Analysis analyze(const ScheduleSpec& sched, const AnalysisOptions& opt = {},
                        int k_max = 5) {
  Analysis a;
  a.trace = gap_trace(sched, opt.grid_points, opt.levels);
  const int dim_minus_one = (1 << sched.spins()) - 1;
  a.overlaps = overlap_trace(sched, opt.grid_points, std::min(k_max, dim_minus_one));
  a.report = anticrossing_report(sched, a.trace, opt);
  return a;
}

/// s,E0,...,E{m-1},gap
inline void write_gaps_csv(std::ostream& out, const SpectralTrace& t) {
  const std::size_t m = t.levels.empty() ? 0 : t.levels.front().size();
  out << "s";
  for (std::size_t k = 0; k < m; ++k) out << ",E" << k;
  out << ",gap\n";
  for (std::size_t p = 0; p < t.grid.size(); ++p) {
    out << format_real(t.grid[p]);
    for (double e : t.levels[p]) out << ',' << format_real(e);
    out << ',' << format_real(t.gap[p]) << '\n';
  }
}

/// s,a0,...,a{k_max}
inline void write_overlaps_csv(std::ostream& out, const OverlapTrace& t) {
  out << "s";
  for (int k = 0; k <= t.k_max(); ++k) out << ",a" << k;
  out << '\n';
  for (std::size_t p = 0; p < t.grid.size(); ++p) {
    out << format_real(t.grid[p]);
    for (double w : t.weights[p]) out << ',' << format_real(w);
    out << '\n';
  }
}

inline nlohmann::json gap_minimum_json(const GapMinimum& m) {
  return {{"s", m.s}, {"gap", m.gap}, {"prominence", m.prominence}};
}

/// report.json body; `eltip_k` records a transform applied before analysis.
inline nlohmann::json report_to_json(const AntiCrossingReport& r, const ScheduleSpec& sched,
                                     const AnalysisOptions& opt,
                                     std::optional<int> eltip_k = std::nullopt) {
  nlohmann::json j;
  j["s_star"] = r.minimum.s;
  j["delta_min"] = r.minimum.gap;
  j["t_approx"] = r.t_approx;
  j["epsilon"] = r.epsilon;
  j["epsilon_s"] = r.epsilon_s;
  j["interior"] = r.minimum.interior;
  j["prominence"] = r.minimum.prominence;
  j["anticrossings"] = nlohmann::json::array();
  for (const auto& m : r.anticrossings) j["anticrossings"].push_back(gap_minimum_json(m));
  if (r.hyperbola) {
    const auto& h = *r.hyperbola;
    j["hyperbola"] = {{"A", h.a},
                      {"B", h.b},
                      {"E_center", h.e_center},
                      {"residual", h.residual},
                      {"points", h.points},
                      {"within_threshold", h.within_threshold}};
  }
  nlohmann::json prov;
  prov["driver"] = std::string(driver_name(sched.driver()));
  prov["lambda_path"] = sched.driver() == Driver::nonstoquastic
                            ? nlohmann::json(sched.lambda_path().name)
                            : nlohmann::json(nullptr);
  prov["grid"] = opt.grid_points;
  prov["s_tol"] = opt.s_tol;
  prov["aff_norm"] = sched.aff_norm();
  prov["levels"] = opt.levels;
  prov["min_prominence"] = opt.min_prominence;
  prov["spins"] = sched.spins();
  prov["eltip_k"] = eltip_k ? nlohmann::json(*eltip_k) : nlohmann::json(nullptr);
  j["provenance"] = prov;
  return j;
}

// ---------------------------------------------------------------------------
// Delta-b sweep over the MIS chain family

/// stoquastic, nonstoquastic, or stoquastic on the ELTIP transform by spin k.
struct SweepMethod {
  Driver driver = Driver::stoquastic;
  std::optional<int> eltip_k;

  std::string name() const {
    if (eltip_k) return "eltip-k" + std::to_string(*eltip_k);
    return std::string(driver_name(driver));
  }

  static SweepMethod parse(std::string_view s) {
    if (s == "stoquastic" || s == "stoq") return {Driver::stoquastic, std::nullopt};
    if (s == "nonstoquastic" || s == "nonstoq") return {Driver::nonstoquastic, std::nullopt};
    if (s.starts_with("eltip-k")) {
      const std::string digits(s.substr(7));
      if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
        return {Driver::stoquastic, std::stoi(digits)};
      }
    }
    throw InputError("unknown sweep method '" + std::string(s) + "'");
  }
};

inline std::vector<double> default_sweep_delta_b() { return {0.01, 0.02, 0.04, 0.06, 0.08}; }

inline std::vector<SweepMethod> default_sweep_methods() {
  std::vector<SweepMethod> m{{Driver::stoquastic, std::nullopt},
                             {Driver::nonstoquastic, std::nullopt}};
  for (int k = 0; k < 5; ++k) m.push_back({Driver::stoquastic, k});
  return m;
}

struct SweepRow {
  double delta_b = 0.0;
  std::string method;
  double s_star = 0.0;
  double delta_min = 0.0;
  double t_approx = 0.0;
  double epsilon = 0.0;
  bool interior = false;
  std::optional<double> ratio_vs_stoq;
  std::string error;  // non-empty when the cell failed

  bool ok() const noexcept { return error.empty(); }
};

struct SweepOptions {
  AnalysisOptions analysis{2001, 1e-6, 2};
  double coupling = 6.08;
  int workers = 1;
  LambdaPath lambda_path = LambdaPath::linear();
  std::optional<double> aff_norm;
};

inline ScheduleSpec sweep_schedule(double delta_b, const SweepMethod& m,
                                   const SweepOptions& opt) {
  auto ising = qubo_to_ising(mis_chain({delta_b, opt.coupling}));
  if (m.eltip_k) ising = transform(ising, *m.eltip_k);
  if (m.driver == Driver::nonstoquastic) {
    return ScheduleSpec::nonstoquastic(std::move(ising), opt.lambda_path, opt.aff_norm);
  }
  return ScheduleSpec::stoquastic(std::move(ising));
}

inline SweepRow run_sweep_cell(double delta_b, const SweepMethod& m, const SweepOptions& opt) {
  SweepRow row;
  row.delta_b = delta_b;
  row.method = m.name();
  try {
    const auto sched = sweep_schedule(delta_b, m, opt);
    const auto trace = gap_trace(sched, opt.analysis.grid_points, 2);
    const auto mg =
        min_gap(sched, trace, {opt.analysis.grid_points, opt.analysis.s_tol,
                               opt.analysis.min_prominence});
    row.s_star = mg.s;
    row.delta_min = mg.gap;
    row.interior = mg.interior;
    row.t_approx = t_approx(mg.gap);
    row.epsilon = epsilon(sched, opt.analysis.grid_points).value;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

namespace detail {
/// `reused[c]` marks rows taken from a previous summary. Their ratio is kept
/// when the stoquastic row it refers to was reused as well, so that resuming
/// a finished sweep rewrites the same bytes.
inline void fill_ratios(std::vector<SweepRow>& rows, const std::vector<bool>& reused) {
  std::map<double, double> stoq;
  std::map<double, bool> stoq_reused;
  for (std::size_t c = 0; c < rows.size(); ++c) {
    const auto& r = rows[c];
    if (r.ok() && r.method == "stoquastic") {
      stoq[r.delta_b] = r.t_approx;
      stoq_reused[r.delta_b] = reused[c];
    }
  }
  for (std::size_t c = 0; c < rows.size(); ++c) {
    auto& r = rows[c];
    if (reused[c] && r.ratio_vs_stoq && stoq_reused[r.delta_b]) continue;
    r.ratio_vs_stoq.reset();
    auto it = stoq.find(r.delta_b);
    if (r.ok() && it != stoq.end() && r.t_approx > 0.0) r.ratio_vs_stoq = it->second / r.t_approx;
  }
}
}  // namespace detail

/// Rows ordered by (delta_b, method) in the order given, independent of the
/// worker count. Cells present in `completed` without an error are reused.
inline std::vector<SweepRow> run_sweep(const std::vector<double>& delta_bs,
                                       const std::vector<SweepMethod>& methods,
                                       const SweepOptions& opt = {},
                                       const std::vector<SweepRow>& completed = {}) {
  struct Cell {
    double delta_b;
    SweepMethod method;
  };
  std::vector<Cell> cells;
  for (double db : delta_bs) {
    for (const auto& m : methods) cells.push_back({db, m});
  }
  std::vector<SweepRow> rows(cells.size());
  std::vector<bool> done(cells.size(), false);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (const auto& r : completed) {
      if (r.ok() && r.delta_b == cells[c].delta_b && r.method == cells[c].method.name()) {
        rows[c] = r;
        done[c] = true;
        break;
      }
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < cells.size(); c = next++) {
      if (!done[c]) rows[c] = run_sweep_cell(cells[c].delta_b, cells[c].method, opt);
    }
  };
  const int nworkers = std::max(1, opt.workers);
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
  }
  detail::fill_ratios(rows, done);
  return rows;
}

inline constexpr std::string_view kSummaryHeader =
    "delta_b,method,s_star,delta_min,t_approx,epsilon,interior,ratio_vs_stoq,error";

inline void write_summary_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << format_real(r.delta_b) << ',' << r.method << ',';
    if (r.ok()) {
      out << format_real(r.s_star) << ',' << format_real(r.delta_min) << ','
          << format_real(r.t_approx) << ',' << format_real(r.epsilon) << ','
          << (r.interior ? "true" : "false") << ','
          << (r.ratio_vs_stoq ? format_real(*r.ratio_vs_stoq) : "") << ',';
    } else {
      std::string msg = r.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      out << ",,,,,," << msg;
    }
    out << '\n';
  }
}

/// Parses a summary written by write_summary_csv (used to resume a sweep).
inline std::vector<SweepRow> read_summary_csv(std::istream& in) {
  std::vector<SweepRow> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  if (line != kSummaryHeader) throw InputError("unexpected summary header: " + line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 9) throw InputError("summary row has " + std::to_string(f.size()) + " fields");
    SweepRow r;
    try {
      r.delta_b = std::stod(f[0]);
      r.method = f[1];
      r.error = f[8];
      if (r.ok()) {
        r.s_star = std::stod(f[2]);
        r.delta_min = std::stod(f[3]);
        r.t_approx = std::stod(f[4]);
        r.epsilon = std::stod(f[5]);
        r.interior = f[6] == "true";
        if (!f[7].empty()) r.ratio_vs_stoq = std::stod(f[7]);
      }
    } catch (const std::logic_error&) {
      throw InputError("malformed summary row: " + line);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace eltip

#endif  // ELTIP_REPORT_HPP
