// Copyright 2026 The Authors.
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

// Command-line driver: exact solving, heuristics, evaluation and the wizard
// service. Exit codes: 0 success, 2 input error, 3 guard exceeded,
// 4 time limit reached (a lower bound is still reported).

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lqct/error.h"
#include "lqct/evaluation.h"
#include "lqct/exact_solver.h"
#include "lqct/graph_io.h"
#include "lqct/heuristics.h"
#include "lqct/http_api.h"
#include "lqct/ip.h"
#include "lqct/policy.h"
#include "lqct/wizard.h"

namespace lqct {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;
constexpr int kExitTimeout = 4;

struct InstanceFlags {
  std::string graph;
  std::string source;
  std::string target;
  int budget = 0;
  double p = 0.5;
  uint64_t seed = 0;
};

struct CommonFlags {
  InstanceFlags instance;
  double time_limit = 0.0;  // Seconds; 0 means the 72 h default.
  std::string backend = "tree-search";
  std::string out;
  int initial_layers = 4;  // 1 starts from a lone root.
};

void AddInstanceFlags(CLI::App* cmd, InstanceFlags& f, bool needs_budget) {
  cmd->add_option("--graph", f.graph, "Graph file")->required();
  cmd->add_option("--source", f.source,
                  "Source node (default: drawn with --seed)");
  cmd->add_option("--target", f.target,
                  "Target node (default: drawn with --seed)");
  auto* b = cmd->add_option("--budget", f.budget, "Query limit B");
  if (needs_budget) b->required();
  cmd->add_option("--prob", f.p, "Probability that an edge is On")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Seed for endpoints and sampling")
      ->capture_default_str();
}

void AddCommonFlags(CLI::App* cmd, CommonFlags& f, bool needs_budget = true) {
  AddInstanceFlags(cmd, f.instance, needs_budget);
  cmd->add_option("--time-limit", f.time_limit, "Wall-clock limit in seconds");
  cmd->add_option("--backend", f.backend,
                  "IP backend: tree-search or branch-and-bound")
      ->capture_default_str();
  cmd->add_option("--out", f.out, "Write a JSON result document here");
}

void AddLayerFlag(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--initial-layers", f.initial_layers,
                  "Layers of the starting complete tree (1: root only)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

Instance Load(const InstanceFlags& f) {
  auto graph = std::make_shared<const Graph>(LoadGraphFile(f.graph));
  if (f.source.empty() != f.target.empty()) {
    Fail(ErrorCode::kInvalidInput, "give both --source and --target or neither");
  }
  if (f.source.empty()) {
    auto [s, t] = PickEndpoints(*graph, f.seed);
    return MakeInstance(graph, s, t, f.p, f.budget);
  }
  return MakeNamedInstance(graph, f.source, f.target, f.p, f.budget);
}

json InstanceJson(const Instance& instance, const InstanceFlags& f) {
  return {{"graph", f.graph},
          {"source", instance.graph->node_name(instance.source)},
          {"target", instance.graph->node_name(instance.target)},
          {"budget", instance.budget},
          {"p", instance.p},
          {"edges", instance.num_edges()}};
}

void WriteOut(const std::string& path, const json& doc) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kInvalidInput, "cannot write " + path);
  out << doc.dump(2) << "\n";
}

std::string Number(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

ExactConfig MakeExactConfig(const CommonFlags& f,
                            const SolverBackend& backend) {
  ExactConfig config;
  config.backend = &backend;
  config.initial_layers = f.initial_layers;
  if (f.time_limit > 0) {
    config.time_budget = std::chrono::milliseconds(
        static_cast<int64_t>(f.time_limit * 1000.0));
  }
  return config;
}

json ReportsJson(const std::vector<IterationReport>& reports) {
  json out = json::array();
  for (const IterationReport& r : reports) {
    out.push_back({{"iteration", r.iteration},
                   {"cost", r.cost},
                   {"paths", r.num_paths},
                   {"cuts", r.num_cuts},
                   {"structure", r.structure_size},
                   {"ms", r.elapsed_ms},
                   {"paths_added", r.paths_added},
                   {"cuts_added", r.cuts_added},
                   {"nodes_expanded", r.nodes_expanded}});
  }
  return out;
}

// exact / lower-bound
int RunExact(const CommonFlags& f, bool log_iterations) {
  Instance instance = Load(f.instance);
  auto backend = MakeBackend(f.backend);
  ExactConfig config = MakeExactConfig(f, *backend);
  if (log_iterations) {
    std::cout << "iter,cost,paths,cuts,structure,ms\n";
    config.on_iteration = [](const IterationReport& r) {
      std::cout << r.ToCsvLine() << std::endl;
    };
  }
  ExactResult result = SolveExact(instance, config);
  const bool optimal = result.status == SolveStatus::kOptimal;
  std::cout << "status: " << SolveStatusName(result.status) << "\n"
            << (optimal ? "cost: " : "lower bound: ") << Number(result.cost)
            << "\n";
  json doc = {{"command", log_iterations ? "lower-bound" : "exact"},
              {"instance", InstanceJson(instance, f.instance)},
              {"status", SolveStatusName(result.status)},
              {"cost", result.cost},
              {"iterations", ReportsJson(result.reports)}};
  if (optimal) {
    std::string tree = SerializeTree(Pruned(*result.tree), *instance.graph);
    std::cout << "tree: " << tree << "\n";
    doc["tree"] = tree;
  }
  WriteOut(f.out, doc);
  return optimal ? kExitOk : kExitTimeout;
}

// heuristic: play one episode, reading answers from --answers or stdin.
int RunHeuristic(const CommonFlags& f, const std::string& spec_text,
                 const std::string& answers_text) {
  Instance instance = Load(f.instance);
  auto backend = MakeBackend(f.backend);
  HeuristicOptions options;
  options.backend = backend.get();
  auto policy =
      MakeHeuristicPolicy(instance, ParseHeuristicSpec(spec_text), options);
  std::vector<std::string> scripted;
  const bool interactive = answers_text.empty();
  for (std::string_view rest = answers_text; !rest.empty();) {
    size_t comma = rest.find(',');
    scripted.emplace_back(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? "" : rest.substr(comma + 1);
  }
  const Graph& g = *instance.graph;
  Belief belief(instance.num_edges());
  json steps = json::array();
  int used = 0;
  while (used < instance.budget &&
         GetCertificateStatus(instance, belief).kind == Connectivity::kOpen) {
    Decision d = policy->Next(belief, instance.budget - used);
    CheckProposal(d, belief, policy->name());
    std::cout << "query " << used + 1 << ": " << g.edge_name(*d.edge)
              << (d.note.empty() ? "" : "  [" + d.note + "]") << "\n";
    std::string answer;
    if (interactive) {
      std::cout << "answer (on/off)? " << std::flush;
      if (!(std::cin >> answer)) Fail(ErrorCode::kInvalidInput, "no answer");
    } else if (used < static_cast<int>(scripted.size())) {
      answer = scripted[used];
    } else {
      Fail(ErrorCode::kInvalidInput, "--answers ran out");
    }
    if (answer != "on" && answer != "off") {
      Fail(ErrorCode::kInvalidInput, "answers must be 'on' or 'off'");
    }
    belief.Reveal(*d.edge, answer == "on" ? EdgeState::kOn : EdgeState::kOff);
    steps.push_back({{"edge", g.edge_name(*d.edge)},
                     {"answer", answer},
                     {"note", d.note}});
    ++used;
  }
  CertificateStatus status = GetCertificateStatus(instance, belief);
  std::string outcome = status.kind == Connectivity::kOpen
                            ? "budget_exhausted"
                            : std::string(ConnectivityName(status.kind));
  std::cout << "outcome: " << outcome;
  json certificate = nullptr;
  if (status.certificate) {
    std::vector<std::string> names;
    for (EdgeId e : status.certificate->edges) names.push_back(g.edge_name(e));
    certificate = names;
    std::cout << " (" << (names.empty() ? "" : names.front());
    for (size_t k = 1; k < names.size(); ++k) std::cout << "," << names[k];
    std::cout << ")";
  }
  std::cout << " after " << used << " queries\n";
  WriteOut(f.out, {{"command", "heuristic"},
                   {"heuristic", policy->name()},
                   {"instance", InstanceJson(instance, f.instance)},
                   {"transcript", steps},
                   {"outcome", outcome},
                   {"certificate", certificate}});
  return kExitOk;
}

std::unique_ptr<Policy> PolicyFor(const std::string& what,
                                  const Instance& instance,
                                  const SolverBackend& backend) {
  if (std::filesystem::is_regular_file(what)) {
    std::ifstream in(what);
    std::stringstream text;
    text << in.rdbuf();
    return std::make_unique<TreePolicy>(
        ParseTree(text.str(), *instance.graph, instance.p));
  }
  HeuristicOptions options;
  options.backend = &backend;
  return MakeHeuristicPolicy(instance, ParseHeuristicSpec(what), options);
}

json EvaluationJson(const EvaluationResult& r) {
  return {{"expected_queries", r.expected_queries},
          {"method", r.method == EvaluationMethod::kExhaustive ? "exhaustive"
                                                               : "sampled"},
          {"vectors", r.num_vectors},
          {"seed", r.seed},
          {"outcomes",
           {{"path", r.path},
            {"cut", r.cut},
            {"limit", r.limit},
            {"unresolved", r.unresolved}}},
          {"histogram", r.histogram}};
}

// eval / hist
int RunEval(const CommonFlags& f, const std::string& what, bool sampled,
            bool histogram_only) {
  Instance instance = Load(f.instance);
  auto backend = MakeBackend(f.backend);
  auto policy = PolicyFor(what, instance, *backend);
  const bool use_sampling =
      sampled || instance.budget > kExhaustiveBudgetLimit;
  EvaluationResult r = use_sampling
                           ? EvaluateSampled(*policy, instance, f.instance.seed)
                           : EvaluateExhaustive(*policy, instance);
  if (histogram_only) {
    std::cout << HistogramCsv(r);
  } else {
    std::cout << "policy: " << policy->name() << "\n"
              << "method: "
              << (r.method == EvaluationMethod::kExhaustive ? "exhaustive"
                                                            : "sampled")
              << " (" << r.num_vectors << " vectors)\n"
              << "expected queries: " << Number(r.expected_queries) << "\n"
              << "outcomes: path " << r.path << ", cut " << r.cut
              << ", limit " << r.limit << "\n";
  }
  json doc = {{"command", histogram_only ? "hist" : "eval"},
              {"policy", policy->name()},
              {"instance", InstanceJson(instance, f.instance)},
              {"result", EvaluationJson(r)}};
  WriteOut(f.out, doc);
  return kExitOk;
}

int RunOracle(const CommonFlags& f) {
  Instance instance = Load(f.instance);
  double value = DpOracle(instance);
  std::cout << "optimal expected queries: " << Number(value) << "\n";
  WriteOut(f.out, {{"command", "oracle"},
                   {"instance", InstanceJson(instance, f.instance)},
                   {"cost", value}});
  return kExitOk;
}

int RunEndpoints(const CommonFlags& f, bool median) {
  auto graph = std::make_shared<const Graph>(LoadGraphFile(f.instance.graph));
  json doc = {{"command", "endpoints"}, {"graph", f.instance.graph}};
  if (median) {
    int budget = f.instance.budget > 0 ? f.instance.budget : 10;
    MedianSeedResult m = SelectMedianSeed(graph, f.instance.p, budget);
    std::cout << "median seed: " << m.seed << "\n"
              << "source: " << graph->node_name(m.source) << "\n"
              << "target: " << graph->node_name(m.target) << "\n"
              << "h1 cost: " << Number(m.cost) << "\n";
    doc["seed"] = m.seed;
    doc["source"] = graph->node_name(m.source);
    doc["target"] = graph->node_name(m.target);
    doc["h1_costs"] = m.costs;
  } else {
    auto [s, t] = PickEndpoints(*graph, f.instance.seed);
    std::cout << "source: " << graph->node_name(s) << "\n"
              << "target: " << graph->node_name(t) << "\n";
    doc["seed"] = f.instance.seed;
    doc["source"] = graph->node_name(s);
    doc["target"] = graph->node_name(t);
  }
  WriteOut(f.out, doc);
  return kExitOk;
}

std::atomic<WizardHttpServer*> g_server{nullptr};

void StopServer(int) {
  if (WizardHttpServer* s = g_server.load()) s->Stop();
}

int RunServe(const std::string& host, int port, const std::string& db,
             int guard_ms) {
  std::shared_ptr<SessionStore> store;
  if (db.empty()) {
    store = std::make_shared<MemorySessionStore>();
  } else {
    store = std::make_shared<SqliteSessionStore>(db);
  }
  WizardOptions options;
  options.tree_time_guard = std::chrono::milliseconds(guard_ms);
  Wizard wizard(store, options);
  WizardHttpServer server(wizard);
  int bound = port;
  if (port == 0) {
    bound = server.BindToAnyPort(host);
  } else if (!server.Bind(host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    Fail(ErrorCode::kInvalidInput,
         "cannot listen on " + host + ":" + std::to_string(port));
  }
  std::cout << "listening on http://" << host << ":" << bound << std::endl;
  g_server = &server;
  std::signal(SIGINT, StopServer);
  std::signal(SIGTERM, StopServer);
  server.Listen();
  g_server = nullptr;
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Limited-query s-t connectivity testing"};
  app.require_subcommand(1);
  CommonFlags f;

  auto* exact = app.add_subcommand("exact", "Solve for the optimal policy");
  AddCommonFlags(exact, f);
  AddLayerFlag(exact, f);
  auto* lower = app.add_subcommand(
      "lower-bound", "Run the exact solver and print its iteration log");
  AddCommonFlags(lower, f);
  AddLayerFlag(lower, f);

  std::string spec;
  std::string answers;
  auto* heuristic =
      app.add_subcommand("heuristic", "Play one episode with a heuristic");
  heuristic->add_option("spec", spec, "Heuristic, e.g. h1 or tree:5")
      ->required();
  heuristic->add_option("--answers", answers,
                        "Comma-separated on/off answers (default: stdin)");
  AddCommonFlags(heuristic, f);

  std::string what;
  bool sampled = false;
  auto* eval = app.add_subcommand(
      "eval", "Expected query count of a heuristic or a saved policy tree");
  eval->add_option("policy", what, "Heuristic spec or policy-tree file")
      ->required();
  eval->add_flag("--sampled", sampled, "Force the sampled evaluator");
  AddCommonFlags(eval, f);

  auto* hist = app.add_subcommand("hist", "Query-count histogram as CSV");
  hist->add_option("policy", what, "Heuristic spec or policy-tree file")
      ->required();
  hist->add_flag("--sampled", sampled, "Force the sampled evaluator");
  AddCommonFlags(hist, f);

  auto* oracle =
      app.add_subcommand("oracle", "Dynamic-programming optimum (m <= 14)");
  AddCommonFlags(oracle, f);

  bool median = false;
  auto* endpoints = app.add_subcommand("endpoints", "Draw s and t");
  AddCommonFlags(endpoints, f, /*needs_budget=*/false);
  endpoints->add_flag("--median", median,
                      "Pick the median-cost seed among seeds 0..10");

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string db;
  int guard_ms = 5000;
  auto* serve = app.add_subcommand("serve", "Run the wizard HTTP service");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port, "0 picks a free port")
      ->capture_default_str();
  serve->add_option("--db", db, "SQLite file for sessions (default: memory)");
  serve->add_option("--tree-guard-ms", guard_ms,
                    "Per-step time guard for tree:<B'> proposals")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*exact) return RunExact(f, false);
    if (*lower) return RunExact(f, true);
    if (*heuristic) return RunHeuristic(f, spec, answers);
    if (*eval) return RunEval(f, what, sampled, false);
    if (*hist) return RunEval(f, what, sampled, true);
    if (*oracle) return RunOracle(f);
    if (*endpoints) return RunEndpoints(f, median);
    if (*serve) return RunServe(host, port, db, guard_ms);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kGuardExceeded:
        return kExitGuard;
      case ErrorCode::kTimeout:
        return kExitTimeout;
      case ErrorCode::kInvalidInput:
      case ErrorCode::kNotFound:
        return kExitInput;
      default:
        return 1;
    }
  }
  return kExitInput;
}

}  // namespace
}  // namespace lqct

int main(int argc, char** argv) { return lqct::Main(argc, argv); }
