// Copyright 2026 The Stranger Authentication Simulator Authors
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

// stranger: command-line front end.
//
//   stranger generate       write a random graph as an edge list
//   stranger stats          read an edge list and print structure
//   stranger analyze        closed-form parameter estimates
//   stranger simulate       Monte Carlo estimate for one configuration
//   stranger sweep          Monte Carlo over a grid of configurations
//   stranger protocol-demo  one full key exchange on a generated graph

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stranger/adversary.hpp"
#include "stranger/analytics.hpp"
#include "stranger/graph.hpp"
#include "stranger/graphgen.hpp"
#include "stranger/harness.hpp"
#include "stranger/pathselect.hpp"
#include "stranger/protocol.hpp"
#include "stranger/report.hpp"
#include "stranger/rng.hpp"

namespace {

using namespace stranger;

struct CommonOpts {
  std::string topology = "uniform";
  std::size_t nodes = 1024;
  double honest = 0.8;
  double delta = 0.01;
  double epsilon = -1.0;  // negative: delta / 10
  double delta_nc = 0.002;
  std::uint64_t seed = 1;
};

void add_network_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--nodes,-n", o.nodes, "Node count N")->check(CLI::PositiveNumber);
  cmd->add_option("--honest,-t", o.honest, "Honest fraction t in (0, 1]");
  cmd->add_option("--delta", o.delta, "Per-pair compromise target");
  cmd->add_option("--epsilon", o.epsilon, "All-pairs compromise target (default delta/10)");
  cmd->add_option("--delta-nc", o.delta_nc, "Neighbour-blockade target");
}

double epsilon_of(const CommonOpts& o) { return o.epsilon > 0 ? o.epsilon : o.delta / 10.0; }

harness::ExperimentConfig to_config(const CommonOpts& o) {
  harness::ExperimentConfig cfg;
  cfg.topology = harness::parse_topology(o.topology);
  cfg.n = o.nodes;
  cfg.t = o.honest;
  cfg.delta = o.delta;
  if (o.epsilon > 0) cfg.epsilon = o.epsilon;
  cfg.delta_nc = o.delta_nc;
  cfg.master_seed = o.seed;
  return cfg;
}

/// Writes to `path`, or stdout for "" or "-".
template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  fn(out);
}

void print_histogram(std::ostream& os, const DegreeHistogram& h) {
  os << "degree_histogram:";
  for (const auto& [k, nk] : h.counts) os << ' ' << k << ':' << nk;
  os << '\n';
}

std::string join_path(const Path& path) {
  std::ostringstream os;
  for (std::size_t i = 0; i < path.size(); ++i) os << (i ? " " : "") << path[i];
  return os.str();
}

/// Expands `--config PATH` (or `--config=PATH`) into the equivalent flags,
/// placed right after the subcommand so that flags given on the command
/// line, which come later and win, override the file.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    std::size_t drop = 0;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      drop = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      drop = 1;
    } else {
      continue;
    }
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + drop));
    std::vector<std::string> flags;
    for (const auto& item : CLI::ConfigINI().from_file(path)) {
      if (item.name == "++" || item.name == "--") continue;  // section markers
      if (item.inputs.size() == 1 && item.inputs[0] == "true") {
        flags.push_back("--" + item.name);
      } else if (!(item.inputs.size() == 1 && item.inputs[0] == "false")) {
        flags.push_back("--" + item.name);
        flags.insert(flags.end(), item.inputs.begin(), item.inputs.end());
      }
    }
    args.insert(args.begin() + (args.empty() ? 0 : 1), flags.begin(), flags.end());
    break;
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multipath key establishment between strangers: analysis and simulation"};
  app.require_subcommand(1);
  // Later occurrences win, so command-line flags override config entries.
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;  // consumed by expand_config; declared for --help

  // generate ---------------------------------------------------------------
  CommonOpts gen_opts;
  std::int64_t gen_edges = -1;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a random graph and write it as an edge list");
  gen_cmd->add_option("--topology", gen_opts.topology, "uniform or powerlaw")
      ->check(CLI::IsMember({"uniform", "powerlaw"}));
  add_network_flags(gen_cmd, gen_opts);
  gen_cmd->add_option("--edges,-e", gen_edges, "Edge count (default: edge budget for N, t, epsilon)");
  gen_cmd->add_option("--seed", gen_opts.seed, "RNG seed");
  gen_cmd->add_option("--out,-o", gen_out, "Output path (default stdout)");

  // stats ------------------------------------------------------------------
  std::string stats_in;
  auto* stats_cmd = app.add_subcommand("stats", "Read an edge list and print its structure");
  stats_cmd->add_option("--in,-i", stats_in, "Edge-list path ('-' for stdin)")->required();

  // analyze ----------------------------------------------------------------
  CommonOpts an_opts;
  bool an_json = false;
  auto* an_cmd = app.add_subcommand("analyze", "Closed-form estimates for one parameter set");
  add_network_flags(an_cmd, an_opts);
  an_cmd->add_flag("--json", an_json, "Emit a JSON record");

  // simulate ---------------------------------------------------------------
  CommonOpts sim_opts;
  std::size_t sim_trials = 1000;
  std::string sim_adversary = "random", sim_out, sim_format = "csv";
  bool sim_dump = false, sim_timing = false;
  unsigned sim_threads = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of delta for one configuration");
  sim_cmd->add_option("--config", config_path, "Flat key=value file mirroring these flags; flags override it");
  sim_cmd->add_option("--topology", sim_opts.topology, "uniform or powerlaw")
      ->check(CLI::IsMember({"uniform", "powerlaw"}));
  add_network_flags(sim_cmd, sim_opts);
  sim_cmd->add_option("--trials", sim_trials, "Trial count")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim_opts.seed, "Master seed");
  sim_cmd->add_option("--adversary", sim_adversary, "random or targeted")
      ->check(CLI::IsMember({"random", "targeted"}));
  sim_cmd->add_option("--out,-o", sim_out, "Output path (default stdout)");
  sim_cmd->add_option("--format", sim_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sim_cmd->add_flag("--dump-trials", sim_dump, "Include per-trial records (json)");
  sim_cmd->add_flag("--timing", sim_timing, "Include wall time (json)");
  sim_cmd->add_option("--threads", sim_threads, "Worker threads (0 = all cores)");

  // sweep ------------------------------------------------------------------
  CommonOpts sw_opts;
  std::size_t sw_trials = 1000, sw_min = 128, sw_max = 32768;
  std::string sw_adversary = "random", sw_out, sw_format = "csv";
  unsigned sw_threads = 0;
  auto* sw_cmd = app.add_subcommand("sweep", "Monte Carlo over N in {128..max} x t in {0.8,0.6,0.4} x both topologies");
  sw_cmd->add_option("--config", config_path, "Flat key=value file mirroring these flags; flags override it");
  sw_cmd->add_option("--delta", sw_opts.delta, "Per-pair compromise target");
  sw_cmd->add_option("--epsilon", sw_opts.epsilon, "All-pairs compromise target (default delta/10)");
  sw_cmd->add_option("--delta-nc", sw_opts.delta_nc, "Neighbour-blockade target");
  sw_cmd->add_option("--min-nodes", sw_min, "Smallest N");
  sw_cmd->add_option("--max-nodes", sw_max, "Largest N");
  sw_cmd->add_option("--trials", sw_trials, "Trials per cell")->check(CLI::PositiveNumber);
  sw_cmd->add_option("--seed", sw_opts.seed, "Master seed shared by all cells");
  sw_cmd->add_option("--adversary", sw_adversary, "random or targeted")
      ->check(CLI::IsMember({"random", "targeted"}));
  sw_cmd->add_option("--out,-o", sw_out, "Output path (default stdout)");
  sw_cmd->add_option("--format", sw_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sw_cmd->add_option("--threads", sw_threads, "Worker threads (0 = all cores)");

  // protocol-demo ----------------------------------------------------------
  CommonOpts demo_opts;
  demo_opts.nodes = 256;
  std::string demo_policy = "passive";
  std::size_t demo_paths = 0;
  bool demo_two_round = false;
  auto* demo_cmd = app.add_subcommand("protocol-demo", "Run one key exchange over a generated graph");
  demo_cmd->add_option("--topology", demo_opts.topology, "uniform or powerlaw")
      ->check(CLI::IsMember({"uniform", "powerlaw"}));
  add_network_flags(demo_cmd, demo_opts);
  demo_cmd->add_option("--seed", demo_opts.seed, "RNG seed");
  demo_cmd->add_option("--paths", demo_paths, "Path count (default: path budget)");
  demo_cmd->add_option("--policy", demo_policy, "Compromised relays: passive or modify")
      ->check(CLI::IsMember({"passive", "modify"}));
  demo_cmd->add_flag("--two-round", demo_two_round, "Also run the responder-initiated round and combine keys");

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*gen_cmd) {
      auto cfg = to_config(gen_opts);
      auto plan = harness::make_plan(cfg);
      Rng rng(gen_opts.seed);
      Graph g;
      if (cfg.topology == harness::Topology::kPowerLaw) {
        auto out = gen_powerlaw(plan.powerlaw->plan, rng);
        std::cerr << "powerlaw: gamma=" << plan.powerlaw->plan.gamma << " k_min=" << plan.powerlaw->plan.k_min
                  << " planned_edges=" << plan.powerlaw->plan.planned_edges()
                  << " dropped_stubs=" << out.dropped_stubs << '\n';
        g = std::move(out.graph);
      } else {
        auto edges = gen_edges >= 0 ? static_cast<std::uint64_t>(gen_edges) : plan.edges;
        g = gen_uniform(cfg.n, edges, rng);
      }
      with_output(gen_out, [&](std::ostream& os) { write_edge_list(os, g); });
    } else if (*stats_cmd) {
      Graph g;
      if (stats_in == "-") {
        g = read_edge_list(std::cin);
      } else {
        std::ifstream in(stats_in);
        if (!in) throw std::runtime_error("cannot open " + stats_in);
        g = read_edge_list(in);
      }
      std::cout << "nodes: " << g.node_count() << "\nedges: " << g.edge_count()
                << "\nconnected: " << (is_connected(g) ? "true" : "false") << '\n';
      print_histogram(std::cout, degree_histogram(g));
    } else if (*an_cmd) {
      analytics::NetworkParams params{an_opts.nodes, an_opts.honest, epsilon_of(an_opts), an_opts.delta,
                                      an_opts.delta_nc};
      if (!analytics::edges_required_in_regime(static_cast<double>(params.n), params.t, params.epsilon)) {
        std::cerr << "warning: epsilon outside the regime where the edge estimate applies\n";
      }
      auto a = analytics::analyze(params);
      if (a.gamma.saturated) std::cerr << "warning: gamma saturated at the upper bracket\n";
      if (!a.budget.converged) std::cerr << "warning: path budget iteration did not converge\n";
      auto j = report::analysis_json(a);
      if (an_json) {
        std::cout << j.dump(2) << '\n';
      } else {
        for (const auto& [key, value] : j.items()) std::cout << std::left << std::setw(12) << key << value << '\n';
      }
    } else if (*sim_cmd) {
      auto cfg = to_config(sim_opts);
      cfg.trials = sim_trials;
      cfg.adversary = parse_adversary(sim_adversary);
      cfg.threads = sim_threads;
      std::vector<harness::SweepRow> rows{{cfg, harness::run_experiment(cfg), {}}};
      with_output(sim_out, [&](std::ostream& os) {
        if (sim_format == "csv") {
          report::write_csv(os, rows);
        } else {
          report::write_json(os, rows, {sim_dump, sim_timing});
        }
      });
      std::cerr << "wall_time: " << rows.front().summary->wall_time << " s\n";
    } else if (*sw_cmd) {
      auto base = to_config(sw_opts);
      base.trials = sw_trials;
      base.adversary = parse_adversary(sw_adversary);
      base.threads = sw_threads;
      auto grid = harness::default_grid(base, sw_max, sw_min);
      auto rows = harness::sweep(grid, [](const harness::SweepRow& row) {
        std::cerr << to_string(row.config.topology) << " n=" << row.config.n << " t=" << row.config.t;
        if (row.summary) {
          std::cerr << " delta_hat=" << row.summary->delta_hat << " p99=" << row.summary->p99_longest_path
                    << " (" << row.summary->wall_time << " s)\n";
        } else {
          std::cerr << " error: " << row.error << '\n';
        }
      });
      with_output(sw_out, [&](std::ostream& os) {
        if (sw_format == "csv") {
          report::write_csv(os, rows);
        } else {
          report::write_json(os, rows);
        }
      });
    } else if (*demo_cmd) {
      auto cfg = to_config(demo_opts);
      auto plan = harness::make_plan(cfg);
      Rng rng(demo_opts.seed);
      Graph g = harness::build_graph(plan, rng);
      CompromiseMask mask = compromise_random(cfg.n, cfg.t, rng);
      auto ends = harness::sample_endpoints(g, mask, rng);
      if (!ends) throw std::runtime_error("no honest non-adjacent pair in this graph");
      std::size_t p = demo_paths ? demo_paths : plan.budget.p;
      auto policy = demo_policy == "modify" ? protocol::TamperPolicy::modify() : protocol::TamperPolicy::passive();
      protocol::Lengths len;
      protocol::Fnv1aDigest digest(len.h_len);

      auto print_round = [&](const char* label, const protocol::RoundResult& round) {
        std::cout << label << ": " << round.paths.size() << " paths, " << round.attempts << " attempt(s)\n";
        for (const auto& pr : round.paths) {
          std::cout << join_path(pr.path) << "  learned=" << (pr.learned ? "yes" : "no") << '\n';
        }
        std::cout << "adversary_knows_secret: " << (round.adversary_knows_secret ? "yes" : "no") << '\n';
        std::cout << "outcome: " << protocol::to_string(round.transcript.outcome) << '\n';
        if (round.transcript.derived_key) std::cout << "key: " << round.transcript.derived_key->to_hex() << '\n';
      };

      std::cout << "graph: " << to_string(cfg.topology) << " N=" << g.node_count() << " E=" << g.edge_count()
                << " compromised=" << mask.count() << '\n';
      std::cout << "alice: " << ends->first << "  bob: " << ends->second << "  requested_paths: " << p << '\n';
      if (demo_two_round) {
        auto res = protocol::run_two_rounds(g, mask, ends->first, ends->second, p, len, policy, digest, rng);
        print_round("round 1 (alice -> bob)", res.first);
        print_round("round 2 (bob -> alice)", res.second);
        if (res.key) std::cout << "combined_key: " << res.key->to_hex() << '\n';
      } else {
        auto res = protocol::run_round(g, mask, ends->first, ends->second, p, len, policy, digest, rng);
        print_round("round", res);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
