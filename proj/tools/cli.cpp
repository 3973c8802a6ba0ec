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

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "setcard/setcard.hpp"

namespace setcard::cli {

namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string input;
  bool get_model = false;
  bool stats = false;
  bool stats_json = false;
  std::string dump_graph;
  std::string guess_empty_set = "on";
  std::string guess_lower_bound = "off";
  std::uint32_t oracle_check = 0;
  std::uint64_t decision_limit = 0;
  std::uint64_t time_limit = 0;
  std::string bench;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SolverOptions solver_options(const Flags& f) {
  SolverOptions o;
  o.guess_empty_set = f.guess_empty_set == "on";
  o.guess_lower_bound = f.guess_lower_bound == "on";
  o.decision_limit = f.decision_limit;
  o.time_limit_ms = f.time_limit;
  o.keep_peak_graph = !f.dump_graph.empty();
  return o;
}

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path.empty() || path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open '" + path + "'");
  ss << file.rdbuf();
  return ss.str();
}

struct Run {
  Script script;
  FlatProblem flat;
  Verdict verdict;
};

Run solve_text(const std::string& text, const SolverOptions& options) {
  Run r;
  r.script = parse(text);
  r.flat = flatten(r.script.assertions);
  r.verdict = solve(r.flat, options);
  if (r.verdict.model) {
    const auto v = validate_model(r.flat.all(), *r.verdict.model);
    if (!v.ok) throw InternalInvariantViolation("model does not validate: " + v.message);
  }
  return r;
}

nlohmann::json stats_json(const Verdict& v) {
  nlohmann::json rules = nlohmann::json::object();
  for (std::size_t i = 0; i < kRuleTagCount; ++i) {
    if (v.stats.rule_counts[i] != 0) rules[std::string(to_string(static_cast<RuleTag>(i)))] = v.stats.rule_counts[i];
  }
  return {{"verdict", std::string(to_string(v.outcome))},
          {"timeMs", v.stats.elapsed_ms},
          {"decisions", v.stats.decisions},
          {"maxVertices", v.stats.max_vertices},
          {"maxLeaves", v.stats.max_leaves},
          {"ruleCounts", rules}};
}

void print_stats(const Verdict& v, std::ostream& out) {
  out << "; time-ms: " << std::fixed << std::setprecision(3) << v.stats.elapsed_ms << '\n';
  out << "; decisions: " << v.stats.decisions << '\n';
  out << "; rule-applications: " << v.stats.applications() << '\n';
  out << "; max-vertices: " << v.stats.max_vertices << '\n';
  out << "; max-leaves: " << v.stats.max_leaves << '\n';
  out << "; max-literals: " << v.stats.max_branch_literals << '\n';
  out << "; lia-checks: " << v.stats.lia_checks << '\n';
  for (std::size_t i = 0; i < kRuleTagCount; ++i) {
    if (v.stats.rule_counts[i] != 0) {
      out << ";   " << to_string(static_cast<RuleTag>(i)) << ": " << v.stats.rule_counts[i] << '\n';
    }
  }
  if (!v.reason.empty()) out << "; reason: " << v.reason << '\n';
}

int run_single(const Flags& flags, std::istream& in, std::ostream& out, std::ostream& err) {
  const std::string label = flags.input.empty() || flags.input == "-" ? "<stdin>" : flags.input;
  Run r;
  try {
    r = solve_text(read_input(flags.input, in), solver_options(flags));
  } catch (const ParseError& e) {
    err << label << ":" << e.what() << '\n';
    return kExitInputError;
  } catch (const InputError& e) {
    err << e.what() << '\n';
    return kExitInputError;
  }
  const Verdict& v = r.verdict;
  out << to_string(v.outcome) << '\n';
  if (v.outcome == Outcome::Sat && (flags.get_model || r.script.get_model)) out << print_model(r.script, *v.model);
  if (flags.stats) print_stats(v, out);
  if (flags.stats_json) out << stats_json(v).dump() << '\n';
  if (!flags.dump_graph.empty()) {
    std::ofstream dot_file(flags.dump_graph);
    if (!dot_file) {
      err << "cannot write '" << flags.dump_graph << "'\n";
      return kExitInputError;
    }
    dot_file << (v.stats.peak_graph_dot.empty() ? "digraph G {\n}\n" : v.stats.peak_graph_dot);
  }
  if (flags.oracle_check > 0) {
    if (v.outcome == Outcome::Unsat) {
      const auto o = enumerate(r.flat.all(), OracleBound{flags.oracle_check, 2});
      if (o.found) {
        out << "oracle: DISAGREE (model with " << o.universe << " elements)\n";
        err << "unsat verdict contradicted by a model of size " << o.universe << '\n';
        return kExitInternalError;
      }
      out << "oracle: agree (no model ≤ " << flags.oracle_check << ")\n";
    } else if (v.outcome == Outcome::Sat) {
      out << "oracle: agree (model validates)\n";
    } else {
      out << "oracle: skipped\n";
    }
  }
  return kExitVerdict;
}

int run_bench(const Flags& flags, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(flags.bench, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".smt2") files.push_back(entry.path());
  }
  if (ec) {
    err << "cannot read directory '" << flags.bench << "': " << ec.message() << '\n';
    return kExitInputError;
  }
  std::sort(files.begin(), files.end());
  const SolverOptions options = solver_options(flags);
  out << std::left << std::setw(32) << "file" << std::setw(10) << "output" << std::right << std::setw(12) << "time"
      << std::setw(12) << "#vertices" << std::setw(10) << "#leaves" << '\n';
  int status = kExitVerdict;
  for (const auto& path : files) {
    std::string output;
    double ms = 0;
    std::size_t vertices = 0;
    std::size_t leaves = 0;
    try {
      std::ifstream file(path);
      std::ostringstream ss;
      ss << file.rdbuf();
      Run r = solve_text(ss.str(), options);
      output = std::string(to_string(r.verdict.outcome));
      ms = r.verdict.stats.elapsed_ms;
      vertices = r.verdict.stats.max_vertices;
      leaves = r.verdict.stats.max_leaves;
    } catch (const ParseError& e) {
      output = "error";
      err << path.string() << ":" << e.what() << '\n';
      status = std::max(status, kExitInputError);
    } catch (const std::logic_error& e) {
      output = "internal";
      err << path.string() << ": " << e.what() << '\n';
      status = kExitInternalError;
    }
    std::ostringstream time;
    time << std::fixed << std::setprecision(3) << ms / 1000.0 << 's';
    out << std::left << std::setw(32) << path.filename().string() << std::setw(10) << output << std::right
        << std::setw(12) << time.str() << std::setw(12) << vertices << std::setw(10) << leaves << '\n';
  }
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Flags flags;
  CLI::App app{"Decision procedure for finite sets with cardinality constraints", "setcard"};
  app.add_option("input", flags.input, "Input file (stdin if omitted or '-')");
  app.add_flag("--get-model", flags.get_model, "Print a model after sat");
  app.add_flag("--stats", flags.stats, "Print statistics");
  app.add_flag("--stats-json", flags.stats_json, "Print statistics as one JSON line");
  app.add_option("--dump-graph", flags.dump_graph, "Write the largest graph in DOT format");
  app.add_option("--guess-empty-set", flags.guess_empty_set, "Guess Empty Set rule")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--guess-lower-bound", flags.guess_lower_bound, "Guess Lower Bound rule")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--oracle-check", flags.oracle_check, "Cross-check unsat with enumeration up to N elements")
      ->check(CLI::Range(1, 8));
  app.add_option("--decision-limit", flags.decision_limit, "Give up after N decisions");
  app.add_option("--time-limit", flags.time_limit, "Give up after MS milliseconds");
  app.add_option("--bench", flags.bench, "Run every .smt2 file in DIR and print a table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitVerdict : kExitInputError;
  }
  try {
    if (!flags.bench.empty()) return run_bench(flags, out, err);
    return run_single(flags, in, out, err);
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
}

}  // namespace setcard::cli
