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

#include "eltip_cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eltip/eltip.hpp"

namespace eltip::cli {
namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  return f;
}

void save_to(const AnyProblem& p, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  save_problem(p, path);
}

Form parse_form(const std::string& s) {
  if (s == "qubo") return Form::qubo;
  if (s == "ising") return Form::ising;
  throw InputError("unknown form '" + s + "' (expected qubo or ising)");
}

AnyProblem as_form(const AnyProblem& p, Form f) {
  if (f == Form::qubo) return to_qubo(p);
  return to_ising(p);
}

std::string spin_list(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i] > 0 ? "+1" : "-1";
  }
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ising/QUBO annealing spectra, ELTIP transforms and anti-crossing analysis",
               "eltip"};
  app.require_subcommand(1);

  // mis
  double mis_delta_b = 0.04;
  double mis_coupling = 6.08;
  std::string mis_form = "qubo";
  std::string mis_out;
  auto* mis = app.add_subcommand("mis", "Write a 5-spin MIS chain problem file");
  mis->add_option("--delta-b", mis_delta_b, "Gap-tuning weight offset on vertex 1")
      ->capture_default_str();
  mis->add_option("--coupling", mis_coupling, "Edge quadratic weight")->capture_default_str();
  mis->add_option("--form", mis_form, "Output form: qubo or ising")->capture_default_str();
  mis->add_option("--out", mis_out, "Output problem file")->required();

  // convert
  std::string conv_in, conv_to, conv_out;
  auto* convert = app.add_subcommand("convert", "Convert between QUBO and Ising forms");
  convert->add_option("--problem", conv_in, "Input problem file")->required();
  convert->add_option("--to", conv_to, "Target form: qubo or ising")->required();
  convert->add_option("--out", conv_out, "Output problem file")->required();

  // transform
  std::string tr_in, tr_out, tr_to = "ising";
  int tr_k = 0;
  auto* transform_cmd = app.add_subcommand("transform", "Apply the ELTIP transform H_k");
  transform_cmd->add_option("--problem", tr_in, "Input problem file")->required();
  transform_cmd->add_option("--k", tr_k, "Control spin index")->required();
  transform_cmd->add_option("--to", tr_to, "Output form: ising or qubo")->capture_default_str();
  transform_cmd->add_option("--out", tr_out, "Output problem file")->required();

  // analyze
  std::string an_in, an_out, an_driver = "stoq", an_lambda = "linear";
  std::optional<int> an_k;
  std::optional<double> an_aff_norm;
  AnalysisOptions an_opt;
  int an_kmax = 5;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "Gap trace, overlaps and anti-crossing report");
  analyze_cmd->add_option("--problem", an_in, "Input problem file")->required();
  analyze_cmd->add_option("--driver", an_driver, "stoq or nonstoq")
      ->check(CLI::IsMember({"stoq", "nonstoq", "stoquastic", "nonstoquastic"}))
      ->capture_default_str();
  analyze_cmd->add_option("--lambda-path", an_lambda, "Non-stoquastic lambda(s) path")
      ->capture_default_str();
  analyze_cmd->add_option("--aff-norm", an_aff_norm, "AFF normalizer N (default: n)");
  analyze_cmd->add_option("--k", an_k, "Apply ELTIP transform by spin k first");
  analyze_cmd->add_option("--grid", an_opt.grid_points, "Grid points on [0,1]")
      ->capture_default_str();
  analyze_cmd->add_option("--s-tol", an_opt.s_tol, "Min-gap refinement tolerance")
      ->capture_default_str();
  analyze_cmd->add_option("--levels", an_opt.levels, "Levels written to gaps.csv")
      ->capture_default_str();
  analyze_cmd->add_option("--k-max", an_kmax, "Highest final eigenstate in overlaps.csv")
      ->capture_default_str();
  analyze_cmd->add_option("--min-prominence", an_opt.min_prominence,
                          "Prominence ratio an anti-crossing must reach")
      ->capture_default_str();
  analyze_cmd->add_option("--out", an_out, "Output prefix (e.g. results/ or run1_)")
      ->required();

  // sweep
  std::vector<double> sw_db = default_sweep_delta_b();
  std::vector<std::string> sw_methods;
  std::string sw_out, sw_lambda = "linear";
  SweepOptions sw_opt;
  std::optional<double> sw_aff_norm;
  bool sw_resume = false;
  auto* sweep = app.add_subcommand("sweep", "MIS chain delta_b x method summary");
  sweep->add_option("--delta-b", sw_db, "delta_b values")->delimiter(',')->capture_default_str();
  sweep->add_option("--methods", sw_methods,
                    "stoquastic, nonstoquastic, eltip-k<K> (default: all seven)")
      ->delimiter(',');
  sweep->add_option("--grid", sw_opt.analysis.grid_points, "Grid points")->capture_default_str();
  sweep->add_option("--s-tol", sw_opt.analysis.s_tol, "Refinement tolerance")
      ->capture_default_str();
  sweep->add_option("--min-prominence", sw_opt.analysis.min_prominence,
                    "Prominence ratio an anti-crossing must reach")
      ->capture_default_str();
  sweep->add_option("--coupling", sw_opt.coupling, "MIS edge weight")->capture_default_str();
  sweep->add_option("--lambda-path", sw_lambda, "Non-stoquastic lambda(s) path")
      ->capture_default_str();
  sweep->add_option("--aff-norm", sw_aff_norm, "AFF normalizer N (default: n)");
  sweep->add_option("--workers", sw_opt.workers, "Concurrent cells")->capture_default_str();
  sweep->add_flag("--resume", sw_resume, "Reuse error-free rows of an existing --out file");
  sweep->add_option("--out", sw_out, "Summary CSV path")->required();

  // backmap
  std::string bm_assignment, bm_problem;
  int bm_k = 0;
  auto* backmap = app.add_subcommand("backmap", "Map an H_k assignment back to H");
  backmap->add_option("--assignment", bm_assignment, "e.g. 10101, +-+-+ or -1,1,-1")
      ->required();
  backmap->add_option("--k", bm_k, "Control spin index")->required();
  backmap->add_option("--problem", bm_problem, "Original problem, to print both energies");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*mis) {
      const auto q = mis_chain({mis_delta_b, mis_coupling});
      save_to(as_form(q, parse_form(mis_form)), mis_out);
      out << "wrote " << mis_out << '\n';
    } else if (*convert) {
      const auto p = load_problem(conv_in);
      const auto converted = as_form(p, parse_form(conv_to));
      const double before = std::visit([](const auto& x) { return x.offset(); }, p);
      const double after = std::visit([](const auto& x) { return x.offset(); }, converted);
      save_to(converted, conv_out);
      out << "converted " << form_name(form_of(p)) << " -> " << form_name(form_of(converted))
          << "; offset delta " << format_real(after - before) << '\n';
    } else if (*transform_cmd) {
      const auto ising = to_ising(load_problem(tr_in));
      const auto hk = transform(ising, tr_k);
      save_to(as_form(hk, parse_form(tr_to)), tr_out);
      out << "wrote H_" << tr_k << " to " << tr_out << '\n';
    } else if (*analyze_cmd) {
      auto ising = to_ising(load_problem(an_in));
      if (an_k) ising = transform(ising, *an_k);
      const bool nonstoq = an_driver == "nonstoq" || an_driver == "nonstoquastic";
      const auto sched =
          nonstoq ? ScheduleSpec::nonstoquastic(std::move(ising), lambda_path_by_name(an_lambda),
                                                an_aff_norm)
                  : ScheduleSpec::stoquastic(std::move(ising));
      const auto a = analyze(sched, an_opt, an_kmax);
      {
        auto f = open_output(an_out + "gaps.csv");
        write_gaps_csv(f, a.trace);
      }
      {
        auto f = open_output(an_out + "overlaps.csv");
        write_overlaps_csv(f, a.overlaps);
      }
      {
        auto f = open_output(an_out + "report.json");
        f << report_to_json(a.report, sched, an_opt, an_k).dump(2) << '\n';
      }
      out << "s_star " << format_real(a.report.minimum.s) << " delta_min "
          << format_real(a.report.minimum.gap) << " t_approx " << format_real(a.report.t_approx)
          << " interior " << (a.report.minimum.interior ? "true" : "false") << '\n';
    } else if (*sweep) {
      std::vector<SweepMethod> methods;
      for (const auto& m : sw_methods) methods.push_back(SweepMethod::parse(m));
      if (methods.empty()) methods = default_sweep_methods();
      sw_opt.lambda_path = lambda_path_by_name(sw_lambda);
      sw_opt.aff_norm = sw_aff_norm;
      std::vector<SweepRow> previous;
      if (sw_resume && fs::exists(sw_out)) {
        std::ifstream in(sw_out);
        previous = read_summary_csv(in);
      }
      const auto rows = run_sweep(sw_db, methods, sw_opt, previous);
      auto f = open_output(sw_out);
      write_summary_csv(f, rows);
      const auto failed = std::count_if(rows.begin(), rows.end(),
                                        [](const SweepRow& r) { return !r.ok(); });
      out << "wrote " << rows.size() << " rows to " << sw_out << " (" << failed
          << " failed)\n";
    } else if (*backmap) {
      const auto a = SpinAssignment::parse(bm_assignment);
      const auto b = back_map(a, bm_k);
      out << "q     " << b.str(Convention::binary) << '\n';
      out << "sigma " << spin_list(b.spins()) << '\n';
      if (!bm_problem.empty()) {
        const auto h = to_ising(load_problem(bm_problem));
        const auto hk = transform(h, bm_k);
        out << "energy H_k(input) " << format_real(energy(hk, a)) << '\n';
        out << "energy H(mapped)  " << format_real(energy(h, b)) << '\n';
      }
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace eltip::cli
