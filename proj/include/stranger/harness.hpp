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

// Monte Carlo estimation of the silent-failure probability delta.
//
// Each trial draws a fresh graph, a fresh compromised set and a fresh honest,
// non-adjacent initiator/responder pair, picks p paths with the cost-raising
// search, and records whether every path crosses a compromised relay. Trial
// i uses its own generator seeded with SplitMix64(SplitMix64(master_seed) ^ i), so the
// outcome of a run does not depend on how trials are spread over threads.

#ifndef STRANGER_HARNESS_HPP
#define STRANGER_HARNESS_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "stranger/adversary.hpp"
#include "stranger/analytics.hpp"
#include "stranger/graph.hpp"
#include "stranger/graphgen.hpp"
#include "stranger/pathselect.hpp"
#include "stranger/rng.hpp"

namespace stranger::harness {

enum class Topology { kUniform, kPowerLaw };

inline std::string_view to_string(Topology t) { return t == Topology::kUniform ? "uniform" : "powerlaw"; }

inline Topology parse_topology(std::string_view name) {
  if (name == "uniform") return Topology::kUniform;
  if (name == "powerlaw") return Topology::kPowerLaw;
  throw std::invalid_argument("unknown topology '" + std::string(name) + "'");
}

struct ExperimentConfig {
  Topology topology = Topology::kUniform;
  std::size_t n = 1024;
  double t = 0.8;
  double delta = 0.01;
  std::optional<double> epsilon;  // defaults to delta / 10
  double delta_nc = 0.002;
  std::size_t trials = 1000;
  std::uint64_t master_seed = 1;
  AdversaryKind adversary = AdversaryKind::kRandom;
  unsigned threads = 0;  // 0: one per hardware thread

  double effective_epsilon() const { return epsilon.value_or(delta / 10.0); }

  void validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    analytics::NetworkParams{n, t, effective_epsilon(), delta, delta_nc}.validate();
    if (n * t <= effective_epsilon()) throw std::invalid_argument("N*t must exceed epsilon");
  }
};

/// Quantities shared by every trial of one configuration.
struct ExperimentPlan {
  ExperimentConfig config;
  std::uint64_t edges = 0;  // uniform edge budget
  double mean_degree = 0.0;
  analytics::PathBudget budget;
  std::uint64_t k_min = 0;
  std::optional<PowerLawFit> powerlaw;

  /// Edge count targeted by the graph generator for this topology.
  std::uint64_t planned_edges() const { return powerlaw ? powerlaw->plan.planned_edges() : edges; }
};

inline ExperimentPlan make_plan(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentPlan plan;
  plan.config = cfg;
  const auto n = static_cast<double>(cfg.n);
  plan.edges = std::min(analytics::edges_required(n, cfg.t, cfg.effective_epsilon()), max_edges(cfg.n));
  plan.mean_degree = analytics::mean_degree(n, static_cast<double>(plan.edges));
  plan.budget = analytics::paths_required(n, cfg.t, plan.mean_degree, cfg.delta);
  plan.k_min = cfg.t < 1.0 ? analytics::min_degree(cfg.t, cfg.delta_nc) : 1;
  if (cfg.topology == Topology::kPowerLaw) {
    std::uint64_t k_min = std::min<std::uint64_t>(plan.k_min, cfg.n - 1);
    plan.powerlaw = fit_powerlaw_plan(cfg.n, k_min, std::max(plan.edges, (cfg.n * k_min + 1) / 2));
  }
  return plan;
}

struct TrialRecord {
  std::size_t trial_index = 0;
  bool compromised = false;   // no selected path is honest
  bool disconnected = false;  // no honest non-adjacent pair, or no path between it
  std::size_t longest_path_len = 0;
  std::size_t paths_found = 0;
  std::size_t shortfall = 0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// compromised is true iff no path is honest; an empty set counts as
/// compromised.
inline bool all_paths_compromised(const PathSet& paths, const CompromiseMask& mask) {
  return std::none_of(paths.paths.begin(), paths.paths.end(),
                      [&](const Path& path) { return path_is_honest(path, mask); });
}

/// Scores one already-drawn instance.
inline TrialRecord score_instance(const Graph& g, const CompromiseMask& mask, NodeId a, NodeId b,
                                  std::size_t path_count, std::size_t trial_index = 0) {
  TrialRecord rec;
  rec.trial_index = trial_index;
  PathSet set = select_paths(g, a, b, path_count);
  rec.paths_found = set.size();
  rec.shortfall = set.shortfall;
  rec.longest_path_len = set.longest_hops();
  rec.disconnected = set.empty();
  rec.compromised = all_paths_compromised(set, mask);
  return rec;
}

/// Uniform honest, distinct, non-adjacent pair; up to 1000 draws.
template <class Generator>
std::optional<std::pair<NodeId, NodeId>> sample_endpoints(const Graph& g, const CompromiseMask& mask,
                                                          Generator& gen) {
  std::vector<NodeId> honest;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!mask[v]) honest.push_back(v);
  }
  if (honest.size() < 2) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, honest.size() - 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    NodeId a = honest[pick(gen)];
    NodeId b = honest[pick(gen)];
    if (a != b && !g.has_edge(a, b)) return std::make_pair(a, b);
  }
  return std::nullopt;
}

template <class Generator>
Graph build_graph(const ExperimentPlan& plan, Generator& gen) {
  if (plan.powerlaw) return gen_powerlaw(plan.powerlaw->plan, gen).graph;
  return gen_uniform(plan.config.n, plan.edges, gen);
}

namespace detail {

struct TrialOutput {
  TrialRecord record;
  std::optional<DegreeHistogram> histogram;
};

inline TrialOutput run_trial_impl(const ExperimentPlan& plan, std::size_t trial_index, bool want_histogram) {
  const ExperimentConfig& cfg = plan.config;
  Rng gen = trial_rng(cfg.master_seed, trial_index);
  Graph g = build_graph(plan, gen);
  CompromiseMask mask = cfg.adversary == AdversaryKind::kRandom
                            ? compromise_random(cfg.n, cfg.t, gen)
                            : compromise_targeted(g, compromised_count(cfg.n, cfg.t));
  TrialOutput out;
  if (want_histogram) out.histogram = degree_histogram(g);
  auto ends = sample_endpoints(g, mask, gen);
  if (!ends) {
    out.record.trial_index = trial_index;
    out.record.compromised = true;
    out.record.disconnected = true;
    out.record.shortfall = plan.budget.p;
    return out;
  }
  out.record = score_instance(g, mask, ends->first, ends->second, plan.budget.p, trial_index);
  return out;
}

}  // namespace detail

inline TrialRecord run_trial(const ExperimentPlan& plan, std::size_t trial_index) {
  return detail::run_trial_impl(plan, trial_index, false).record;
}

inline TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t trial_index) {
  return run_trial(make_plan(cfg), trial_index);
}

struct ExperimentSummary {
  ExperimentConfig config;
  std::uint64_t edges = 0;
  std::uint64_t paths = 0;
  std::uint64_t k_min = 0;
  std::optional<double> gamma;
  double delta_hat = 0.0;
  std::size_t p99_longest_path = 0;
  double mean_paths = 0.0;
  double shortfall_rate = 0.0;
  double disconnected_rate = 0.0;
  DegreeHistogram degree_histogram;  // graph of trial 0
  double wall_time = 0.0;            // seconds
  std::vector<TrialRecord> trials;
};

/// ceil(q * n)-th smallest value (1-based); 0 for an empty list.
inline std::size_t nearest_rank_percentile(std::vector<std::size_t> values, double q) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size()) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

inline ExperimentSummary summarize(const ExperimentPlan& plan, std::vector<TrialRecord> trials) {
  ExperimentSummary s;
  s.config = plan.config;
  s.edges = plan.planned_edges();
  s.paths = plan.budget.p;
  s.k_min = plan.k_min;
  if (plan.powerlaw) s.gamma = plan.powerlaw->plan.gamma;
  std::size_t compromised = 0, short_trials = 0, disconnected = 0, path_total = 0;
  std::vector<std::size_t> longest;
  longest.reserve(trials.size());
  for (const auto& r : trials) {
    compromised += r.compromised;
    short_trials += r.shortfall > 0;
    disconnected += r.disconnected;
    path_total += r.paths_found;
    longest.push_back(r.longest_path_len);
  }
  const auto count = static_cast<double>(trials.size());
  s.delta_hat = static_cast<double>(compromised) / count;
  s.shortfall_rate = static_cast<double>(short_trials) / count;
  s.disconnected_rate = static_cast<double>(disconnected) / count;
  s.mean_paths = static_cast<double>(path_total) / count;
  s.p99_longest_path = nearest_rank_percentile(std::move(longest), 0.99);
  s.trials = std::move(trials);
  return s;
}

/// Runs all trials, spread over worker threads, and aggregates after the
/// join. Results are identical for any thread count.
inline ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  const ExperimentPlan plan = make_plan(cfg);
  std::vector<TrialRecord> records(cfg.trials);
  std::optional<DegreeHistogram> histogram;

  unsigned workers = cfg.threads ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.trials));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = next++; i < cfg.trials; i = next++) {
        auto out = detail::run_trial_impl(plan, i, i == 0);
        records[i] = out.record;
        if (out.histogram) histogram = std::move(out.histogram);
      }
    } catch (...) {
      errors[w] = std::current_exception();
      next = cfg.trials;
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ExperimentSummary s = summarize(plan, std::move(records));
  if (histogram) s.degree_histogram = std::move(*histogram);
  s.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

struct SweepRow {
  ExperimentConfig config;
  std::optional<ExperimentSummary> summary;
  std::string error;  // set when the cell failed
};

/// Doubling node counts from 128 up to `max_n`, t in {0.8, 0.6, 0.4}, both
/// topologies; every other setting copied from `base`.
inline std::vector<ExperimentConfig> default_grid(const ExperimentConfig& base, std::size_t max_n = 32768,
                                                  std::size_t min_n = 128) {
  std::vector<ExperimentConfig> grid;
  for (Topology topo : {Topology::kUniform, Topology::kPowerLaw}) {
    for (std::size_t n = min_n; n <= max_n; n *= 2) {
      for (double t : {0.8, 0.6, 0.4}) {
        ExperimentConfig cfg = base;
        cfg.topology = topo;
        cfg.n = n;
        cfg.t = t;
        grid.push_back(cfg);
      }
    }
  }
  return grid;
}

/// Runs every cell; a failing cell is recorded and the sweep moves on.
template <class OnRow = void (*)(const SweepRow&)>
std::vector<SweepRow> sweep(const std::vector<ExperimentConfig>& grid, OnRow on_row = [](const SweepRow&) {}) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const auto& cfg : grid) {
    SweepRow row{cfg, std::nullopt, {}};
    try {
      row.summary = run_experiment(cfg);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    on_row(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace stranger::harness

#endif  // STRANGER_HARNESS_HPP
