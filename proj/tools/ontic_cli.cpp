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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "ontic/circuit.hpp"
#include "ontic/error.hpp"
#include "ontic/foliation.hpp"
#include "ontic/individuation.hpp"
#include "ontic/measurement.hpp"
#include "ontic/memory_bench.hpp"
#include "ontic/parallel.hpp"
#include "ontic/program.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;

struct Common {
  std::uint64_t seed = ontic::kDefaultSeed;
  std::size_t trajectories = 1;
  std::string format;
  double tolerance = ontic::tol::kNum;
  std::size_t max_dim = ontic::kDefaultMaxDim;
  bool store_states = false;
  std::string out;
  std::size_t threads = 0;
};

// Output sink: the --out file, or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::ios_base::failure("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void require_readable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read " + path);
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw CLI::ValidationError("--format", "unsupported format '" + format + "'");
}

int cmd_validate(const std::string& path, const Common& opt) {
  const std::string text = ontic::read_text_file(path);
  const ontic::Circuit circuit = ontic::decode_circuit(text);
  const ontic::ValidationReport report = ontic::validate_dag(circuit, opt.tolerance);
  std::cerr << report.summary();
  return report.ok() ? kOk : kDomain;
}

ontic::EngineOptions engine_options(const Common& opt) {
  ontic::EngineOptions e;
  e.max_dim = opt.max_dim;
  e.tolerance = opt.tolerance;
  e.store_states = opt.store_states;
  return e;
}

int cmd_run(const std::string& path, Common opt) {
  if (opt.format.empty()) opt.format = "jsonl";
  require_format(opt.format, {"jsonl", "json"});
  require_readable(path);
  const ontic::Program program = ontic::load_program(path);
  const auto trajectories = ontic::run_trajectories(
      program, opt.seed, opt.trajectories, engine_options(opt), opt.threads);
  Sink sink(opt.out);
  auto& os = sink.stream();
  if (opt.format == "jsonl") {
    for (const auto& t : trajectories) {
      os << ontic::trajectory_record(t, opt.store_states).dump() << '\n';
    }
  } else {
    ontic::Json all = ontic::Json::array();
    for (const auto& t : trajectories) {
      all.push_back(ontic::trajectory_record(t, opt.store_states));
    }
    os << all.dump(2) << '\n';
  }
  return kOk;
}

int cmd_enumerate(const std::string& path, Common opt, std::size_t cap) {
  if (opt.format.empty()) opt.format = "json";
  require_format(opt.format, {"json", "csv"});
  require_readable(path);
  const ontic::Program program = ontic::load_program(path);
  const auto histories = ontic::enumerate_histories(program, cap, opt.max_dim);
  double total = 0.0;
  for (const auto& h : histories) total += h.probability;
  Sink sink(opt.out);
  auto& os = sink.stream();
  if (opt.format == "json") {
    const ontic::Json doc{{"program", program.name},
                          {"histories", ontic::histories_to_json(program, histories)},
                          {"total", total}};
    os << doc.dump(2) << '\n';
  } else {
    os << "history,probability\n";
    for (const auto& h : histories) {
      os << fmt::format("{},{:.17g}\n", ontic::history_key(program, h.events),
                        h.probability);
    }
  }
  std::cerr << fmt::format("{} histories, total probability {:.17g}\n",
                           histories.size(), total);
  return kOk;
}

int cmd_foliate(const std::string& path, const Common& opt,
                const std::string& strategy) {
  require_readable(path);
  const ontic::WiredCircuit wired(ontic::load_circuit(path));
  ontic::Foliation f;
  if (strategy == "asap") {
    f = ontic::foliate(wired, ontic::FoliationStrategy::kAsap);
  } else if (strategy == "alap") {
    f = ontic::foliate(wired, ontic::FoliationStrategy::kAlap);
  } else if (strategy == "random") {
    auto rng = ontic::make_stream(opt.seed, 0);
    f = ontic::random_foliation(wired, rng);
  } else {
    throw CLI::ValidationError("--strategy", "unknown strategy '" + strategy + "'");
  }
  ontic::Json slices = ontic::Json::array();
  for (const auto& s : f.slices) {
    ontic::Json labels = ontic::Json::array();
    for (std::size_t n : s) labels.push_back(wired.node(n).label);
    slices.push_back(std::move(labels));
  }
  Sink sink(opt.out);
  sink.stream() << ontic::Json{{"strategy", strategy}, {"slices", slices}}.dump(2)
                << '\n';
  return kOk;
}

int cmd_tomography(const Common& opt, std::size_t dim, std::size_t shots,
                   const std::string& state_json) {
  auto rng = ontic::make_stream(opt.seed, 0);
  ontic::StateVector psi;
  if (state_json.empty()) {
    psi = ontic::random_state(rng, dim);
  } else {
    psi = ontic::vector_from_json(ontic::Json::parse(state_json));
    psi.normalize();
    dim = psi.size();
  }
  const ontic::SicPovm sic = ontic::build_sic(dim);
  const auto counts =
      ontic::simulate_measurement(sic.povm, ontic::projector(psi), shots, rng);
  const auto result = ontic::tomography_linear(sic.povm, counts);
  const ontic::Json doc{
      {"dim", dim},
      {"shots", shots},
      {"state", ontic::vector_to_json(psi)},
      {"histogram", ontic::histogram_to_json(counts)},
      {"estimate", ontic::matrix_to_json(result.estimate)},
      {"residual", result.residual},
      {"trace_distance",
       ontic::trace_distance(result.estimate, ontic::projector(psi))}};
  Sink sink(opt.out);
  sink.stream() << doc.dump(2) << '\n';
  return kOk;
}

int cmd_bench(const Common& opt, const std::vector<std::string>& strategies,
              const std::vector<std::size_t>& copies,
              const std::vector<std::size_t>& dims, std::size_t trials) {
  std::vector<ontic::RecallStrategy> parsed;
  for (const auto& s : strategies) parsed.push_back(ontic::recall_strategy_from_string(s));
  const auto rows = ontic::bench_sweep(parsed, copies, dims, trials, opt.seed, opt.threads);
  Sink sink(opt.out);
  auto& os = sink.stream();
  os << ontic::bench_csv_header() << '\n';
  for (const auto& r : rows) {
    if (!r.supported) {
      std::cerr << fmt::format("warning: {} does not support d={}, skipped\n",
                               ontic::to_string(r.strategy), r.dim);
    }
    os << ontic::bench_csv_row(r) << '\n';
  }
  return kOk;
}

int cmd_classify(const std::string& path, Common opt) {
  require_readable(path);
  const ontic::Program program = ontic::load_program(path);
  opt.store_states = true;
  const auto traj = ontic::run_trajectory(program, opt.seed, 0, engine_options(opt));
  const auto timeline = ontic::classify_timeline(traj);
  Sink sink(opt.out);
  sink.stream() << ontic::timeline_to_json(timeline).dump(2) << '\n';
  return kOk;
}

int cmd_patterns(Common opt, std::size_t max_n) {
  if (opt.format.empty()) opt.format = "json";
  require_format(opt.format, {"json", "csv"});
  Sink sink(opt.out);
  auto& os = sink.stream();
  if (opt.format == "csv") os << "n,partitions,patterns,growth_estimate\n";
  ontic::Json rows = ontic::Json::array();
  for (std::size_t n = 1; n <= max_n; ++n) {
    const std::string count = ontic::to_string(ontic::count_entanglement_patterns(n));
    const double estimate = ontic::pattern_growth_estimate(n);
    if (opt.format == "csv") {
      os << fmt::format("{},{},{},{:.17g}\n", n, ontic::integer_partitions(n), count,
                        estimate);
    } else {
      rows.push_back(ontic::Json{{"n", n},
                                 {"partitions", ontic::integer_partitions(n)},
                                 {"patterns", count},
                                 {"growth_estimate", estimate}});
    }
  }
  if (opt.format == "json") os << rows.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ontic circuits: validate, run and analyse quantum circuit models"};
  app.require_subcommand(1);
  Common opt;
  std::string path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
    sub->add_option("--format", opt.format, "Output format (json, jsonl, csv)");
    sub->add_option("--tolerance", opt.tolerance, "Numerical tolerance")
        ->capture_default_str();
    sub->add_option("--max-dim", opt.max_dim, "Largest operator dimension")
        ->capture_default_str();
    sub->add_option("--out", opt.out, "Write data to this file instead of stdout");
    sub->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
  };

  auto* validate = app.add_subcommand("validate", "Parse and validate a circuit");
  validate->add_option("file", path, "Circuit file")->required();
  validate->add_option("--tolerance", opt.tolerance, "Trace tolerance");

  auto* run = app.add_subcommand("run", "Sample ontic trajectories");
  run->add_option("file", path, "Circuit or program file")->required();
  add_common(run);
  run->add_option("--trajectories", opt.trajectories, "Number of trajectories")
      ->capture_default_str();
  run->add_flag("--store-states", opt.store_states, "Include final states");

  std::size_t cap = 1 << 20;
  auto* enumerate = app.add_subcommand("enumerate", "List every history");
  enumerate->add_option("file", path, "Circuit or program file")->required();
  add_common(enumerate);
  enumerate->add_option("--cap", cap, "Most histories to enumerate")->capture_default_str();

  std::string strategy = "asap";
  auto* foliate = app.add_subcommand("foliate", "Print a foliation of a circuit");
  foliate->add_option("file", path, "Circuit file")->required();
  add_common(foliate);
  foliate->add_option("--strategy", strategy, "asap, alap or random")->capture_default_str();

  std::size_t dim = 2;
  std::size_t shots = 100000;
  std::string state_json;
  auto* tomography = app.add_subcommand("tomography", "SIC tomography of a state");
  add_common(tomography);
  tomography->add_option("--dim", dim, "Dimension (2 or 3)")->capture_default_str();
  tomography->add_option("--shots", shots, "Measured copies")->capture_default_str();
  tomography->add_option("--state", state_json, "State as a JSON vector");

  std::vector<std::string> strategies{"optimal_covariant_qubit", "sic_estimate",
                                      "random_vn_repeat"};
  std::vector<std::size_t> copies{1, 2, 3};
  std::vector<std::size_t> dims{2};
  std::size_t trials = 100000;
  auto* bench = app.add_subcommand("bench-memory", "Store-and-recall fidelity benchmark");
  add_common(bench);
  bench->add_option("--strategies", strategies, "Strategies")->delimiter(',');
  bench->add_option("--copies", copies, "Copy counts M")->delimiter(',');
  bench->add_option("--dims", dims, "Dimensions d")->delimiter(',');
  bench->add_option("--trials", trials, "Haar states per row")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "Individuation timeline of one trajectory");
  classify->add_option("file", path, "Circuit or program file")->required();
  add_common(classify);
  classify->add_flag("--store-states", opt.store_states, "Accepted; states are always stored");

  std::size_t max_n = 10;
  auto* patterns = app.add_subcommand("patterns", "Entanglement pattern counts");
  add_common(patterns);
  patterns->add_option("--max-n", max_n, "Largest system count (<= 20)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(path, opt);
    if (*run) return cmd_run(path, opt);
    if (*enumerate) return cmd_enumerate(path, opt, cap);
    if (*foliate) return cmd_foliate(path, opt, strategy);
    if (*tomography) return cmd_tomography(opt, dim, shots, state_json);
    if (*bench) return cmd_bench(opt, strategies, copies, dims, trials);
    if (*classify) return cmd_classify(path, opt);
    if (*patterns) return cmd_patterns(opt, max_n);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ontic::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  }
  return kUsage;
}
