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

#ifndef ELTIP_PROBLEM_IO_HPP
#define ELTIP_PROBLEM_IO_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "eltip/error.hpp"
#include "eltip/problem.hpp"

namespace eltip {

using AnyProblem = std::variant<QuboProblem, IsingProblem>;

inline Form form_of(const AnyProblem& p) {
  return std::holds_alternative<QuboProblem>(p) ? Form::qubo : Form::ising;
}

inline IsingProblem to_ising(const AnyProblem& p) {
  return std::visit([](const auto& q) { return to_ising(q); }, p);
}

inline QuboProblem to_qubo(const AnyProblem& p) {
  return std::visit([](const auto& q) { return to_qubo(q); }, p);
}

// File layout:
//   {"form": "qubo"|"ising", "n": 5,
//    "quadratic": [[i, j, value], ...], "linear": [...], "offset": 0.0}

template <Form F>
nlohmann::json problem_to_json(const QuadraticForm<F>& p) {
  nlohmann::json quad = nlohmann::json::array();
  for (const auto& [e, v] : p.quadratic()) quad.push_back({e.i, e.j, v});
  return nlohmann::json{{"form", std::string(form_name(F))},
                        {"n", p.size()},
                        {"quadratic", quad},
                        {"linear", p.linear()},
                        {"offset", p.offset()}};
}

inline nlohmann::json problem_to_json(const AnyProblem& p) {
  return std::visit([](const auto& q) { return problem_to_json(q); }, p);
}

inline AnyProblem problem_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw InputError("problem document must be a JSON object");
    const std::string form = doc.at("form").get<std::string>();
    const int n = doc.at("n").get<int>();
    if (n < 1) throw InputError("n must be >= 1");
    const auto linear = doc.at("linear").get<std::vector<double>>();
    const double offset = doc.contains("offset") ? doc.at("offset").get<double>() : 0.0;

    std::map<Edge, double> quad;
    for (const auto& entry : doc.at("quadratic")) {
      if (!entry.is_array() || entry.size() != 3) {
        throw InputError("quadratic entries must be [i, j, value]");
      }
      const int i = entry[0].get<int>();
      const int j = entry[1].get<int>();
      if (i == j) {
        throw InputError("self-coupling (" + std::to_string(i) + "," + std::to_string(j) +
                         ") is not allowed");
      }
      if (i < 0 || j < 0 || i >= n || j >= n) {
        throw InputError("index (" + std::to_string(i) + "," + std::to_string(j) +
                         ") out of bounds for n = " + std::to_string(n));
      }
      const Edge e = make_edge(i, j);
      if (!quad.emplace(e, entry[2].get<double>()).second) {
        throw InputError("duplicate quadratic key (" + std::to_string(e.i) + "," +
                         std::to_string(e.j) + ")");
      }
    }
    if (form == "qubo") return QuboProblem(n, std::move(quad), linear, offset);
    if (form == "ising") return IsingProblem(n, std::move(quad), linear, offset);
    throw InputError("unknown form '" + form + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed problem document: ") + e.what());
  }
}

inline AnyProblem parse_problem(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("problem file is not valid JSON: ") + e.what());
  }
  return problem_from_json(doc);
}

inline AnyProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

inline void save_problem(const AnyProblem& p, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write problem file '" + path.string() + "'");
  out << problem_to_json(p).dump(2) << '\n';
  if (!out) throw InputError("failed writing problem file '" + path.string() + "'");
}

}  // namespace eltip

#endif  // ELTIP_PROBLEM_IO_HPP
