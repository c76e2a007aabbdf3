// Copyright 2026 The Ontic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <numeric>
#include <utility>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "ontic/error.hpp"
#include "ontic/program.hpp"

namespace ontic {

namespace {

void check_link(const WiredCircuit& from, const WiredCircuit& to,
                const std::vector<std::size_t>& link, std::size_t t) {
  const auto& outs = from.boundary_outputs();
  const auto& ins = to.boundary_inputs();
  if (link.size() != ins.size() || outs.size() != ins.size()) {
    throw DimensionError(fmt::format(
        "link {}: step {} has {} outputs, step {} has {} inputs", t, t,
        outs.size(), t + 1, ins.size()));
  }
  std::vector<bool> seen(link.size(), false);
  for (std::size_t i = 0; i < link.size(); ++i) {
    if (link[i] >= link.size() || seen[link[i]]) {
      throw DimensionError(fmt::format("link {} is not a permutation", t));
    }
    seen[link[i]] = true;
    if (from.edge(outs[link[i]]).dim != to.edge(ins[i]).dim) {
      throw DimensionError(fmt::format(
          "link {}: output {} has dimension {}, input {} expects {}", t, link[i],
          from.edge(outs[link[i]]).dim, i, to.edge(ins[i]).dim));
    }
  }
}

WiredCircuit step_from_json(const Json& entry, const std::string& base_dir) {
  if (entry.is_string()) {
    std::filesystem::path p(entry.get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return WiredCircuit(load_circuit(p.string()));
  }
  if (entry.is_object()) return WiredCircuit(circuit_from_json(entry));
  throw FormatError("program step must be a circuit object or a path");
}

}  // namespace

Program make_program(std::string name, std::vector<WiredCircuit> steps,
                     StateVector initial_state, std::vector<std::string> inputs,
                     std::vector<std::vector<std::size_t>> links) {
  if (steps.empty()) throw DomainError("program has no steps");
  if (inputs.empty()) inputs.assign(steps.size(), kDefaultInput);
  if (inputs.size() != steps.size()) {
    throw DomainError(fmt::format("program has {} steps but {} inputs",
                                  steps.size(), inputs.size()));
  }
  if (links.empty()) {
    for (std::size_t t = 0; t + 1 < steps.size(); ++t) {
      std::vector<std::size_t> id(steps[t].boundary_outputs().size());
      std::iota(id.begin(), id.end(), std::size_t{0});
      links.push_back(std::move(id));
    }
  }
  if (links.size() + 1 != steps.size()) {
    throw DimensionError(fmt::format("program has {} steps but {} links",
                                     steps.size(), links.size()));
  }
  for (std::size_t t = 0; t < links.size(); ++t) {
    check_link(steps[t], steps[t + 1], links[t], t);
  }
  if (static_cast<std::size_t>(initial_state.size()) != steps.front().input_dim()) {
    throw DimensionError(fmt::format(
        "initial state has dimension {}, first step expects {}",
        initial_state.size(), steps.front().input_dim()));
  }
  if (!is_normalized(initial_state)) {
    throw DomainError(fmt::format("initial state has norm {}", initial_state.norm()));
  }
  return Program{std::move(name), std::move(steps), std::move(links),
                 std::move(initial_state), std::move(inputs)};
}

Program program_from_json(const Json& doc, const std::string& base_dir) {
  if (!doc.is_object()) throw FormatError("program document must be an object");
  std::vector<WiredCircuit> steps;
  std::string name;
  if (!doc.contains("steps")) {
    steps.emplace_back(circuit_from_json(doc));
    name = steps.front().circuit().name;
  } else {
    name = doc.value("name", std::string("program"));
    const Json& list = doc.at("steps");
    if (!list.is_array() || list.empty()) {
      throw FormatError("\"steps\" must be a non-empty array");
    }
    const std::size_t repeat = doc.value("repeat", std::size_t{1});
    std::vector<WiredCircuit> once;
    for (const auto& entry : list) once.push_back(step_from_json(entry, base_dir));
    for (std::size_t r = 0; r < repeat; ++r) {
      steps.insert(steps.end(), once.begin(), once.end());
    }
  }
  const std::size_t d0 = steps.front().input_dim();
  StateVector initial;
  if (doc.contains("initial_state")) {
    initial = vector_from_json(doc.at("initial_state"));
  } else if (doc.contains("initial_factors")) {
    initial = StateVector::Ones(1);
    for (const auto& f : doc.at("initial_factors")) {
      initial = tensor_product(initial, vector_from_json(f));
    }
  } else {
    initial = StateVector::Zero(d0);
    initial(0) = 1.0;
  }
  std::vector<std::string> inputs;
  if (doc.contains("inputs")) {
    for (const auto& x : doc.at("inputs")) {
      inputs.push_back(x.is_string() ? x.get<std::string>() : x.dump());
    }
  }
  std::vector<std::vector<std::size_t>> links;
  if (doc.contains("links")) {
    try {
      links = doc.at("links").get<std::vector<std::vector<std::size_t>>>();
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(fmt::format("bad \"links\": {}", e.what()));
    }
  }
  return make_program(std::move(name), std::move(steps), std::move(initial),
                      std::move(inputs), std::move(links));
}

Program load_program(const std::string& path) {
  const std::string text = read_text_file(path);
  const std::string base = std::filesystem::path(path).parent_path().string();
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') {
    std::vector<WiredCircuit> steps;
    steps.emplace_back(load_circuit(path));
    StateVector initial = StateVector::Zero(steps.front().input_dim());
    initial(0) = 1.0;
    std::string name = steps.front().circuit().name;
    return make_program(std::move(name), std::move(steps), std::move(initial));
  }
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(fmt::format("{}: {}", path, e.what()));
  }
  return program_from_json(doc, base.empty() ? "." : base);
}

HistoryOperator compile_program_history(const Program& program,
                                        const std::vector<Assignment>& events,
                                        std::size_t max_dim) {
  if (events.size() != program.steps.size()) {
    throw DimensionError("one assignment per step is required");
  }
  const std::size_t d0 = program.steps.front().input_dim();
  ComplexMatrix omega = ComplexMatrix::Identity(d0, d0);
  std::size_t factors = 0;
  for (std::size_t t = 0; t < program.steps.size(); ++t) {
    const WiredCircuit& step = program.steps[t];
    check_assignment(step, events[t], program.inputs[t]);
    const auto h = compile_history(step, foliate(step, FoliationStrategy::kAsap),
                                   events[t], max_dim);
    factors += h.factor_count;
    omega = h.op * omega;
    if (t + 1 < program.steps.size()) {
      const SystemShape shape = step.shape_of(step.boundary_outputs());
      for (Eigen::Index c = 0; c < omega.cols(); ++c) {
        StateVector col = omega.col(c);
        omega.col(c) = permute_factors(col, shape, program.links[t]);
      }
    }
  }
  return HistoryOperator{std::move(omega), factors};
}

std::vector<History> enumerate_histories(const Program& program, std::size_t cap,
                                         std::size_t max_dim) {
  const std::size_t steps = program.steps.size();
  std::vector<std::vector<Assignment>> assignments(steps);
  std::vector<std::vector<ComplexMatrix>> ops(steps);
  std::vector<SystemShape> shapes(steps);
  std::size_t total = 1;
  for (std::size_t t = 0; t < steps; ++t) {
    const WiredCircuit& step = program.steps[t];
    assignments[t] = step.enumerate_assignments(program.inputs[t], cap);
    total *= assignments[t].size();
    if (total > cap) {
      throw CapExceeded(fmt::format("more than {} histories", cap));
    }
    const Foliation f = foliate(step, FoliationStrategy::kAsap);
    for (const auto& a : assignments[t]) {
      ops[t].push_back(compile_history(step, f, a, max_dim).op);
    }
    shapes[t] = step.shape_of(step.boundary_outputs());
  }
  std::vector<History> out;
  out.reserve(total);
  std::vector<Assignment> path(steps);
  auto visit = [&](auto&& self, std::size_t t, const StateVector& v) -> void {
    if (t == steps) {
      out.push_back(History{path, v.squaredNorm()});
      return;
    }
    for (std::size_t k = 0; k < assignments[t].size(); ++k) {
      path[t] = assignments[t][k];
      StateVector w = ops[t][k] * v;
      if (t + 1 < steps) w = permute_factors(w, shapes[t], program.links[t]);
      self(self, t + 1, w);
    }
  };
  visit(visit, 0, program.initial_state);
  return out;
}

std::string history_key(const Program& program,
                        const std::vector<Assignment>& events) {
  std::string key;
  for (std::size_t t = 0; t < events.size(); ++t) {
    if (t > 0) key += '|';
    key += fmt::format("{}", fmt::join(program.steps[t].outcome_labels(events[t]), " "));
  }
  return key;
}

Json trajectory_record(const Trajectory& trajectory, bool include_state) {
  Json outcomes = Json::array();
  for (const auto& s : trajectory.steps) outcomes.push_back(s.outcomes);
  Json rec{{"seed", trajectory.seed},
           {"trajectory", trajectory.index},
           {"outcomes", std::move(outcomes)},
           {"probability", trajectory.probability}};
  if (include_state) rec["final_state"] = vector_to_json(trajectory.final_state);
  return rec;
}

Json histories_to_json(const Program& program,
                       const std::vector<History>& histories) {
  Json out = Json::array();
  for (const auto& h : histories) {
    Json outcomes = Json::array();
    for (std::size_t t = 0; t < h.events.size(); ++t) {
      outcomes.push_back(program.steps[t].outcome_labels(h.events[t]));
    }
    out.push_back(Json{{"outcomes", std::move(outcomes)},
                       {"probability", h.probability}});
  }
  return out;
}

}  // namespace ontic
