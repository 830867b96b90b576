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


#include <cmath>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "oracles.hpp"
#include "properties.hpp"
#include "stranger/harness.hpp"
#include "stranger/report.hpp"

namespace stranger::harness {
namespace {

ExperimentConfig cell(Topology topo, std::size_t n, double t, std::size_t trials = 1000) {
  ExperimentConfig cfg;
  cfg.topology = topo;
  cfg.n = n;
  cfg.t = t;
  cfg.trials = trials;
  cfg.master_seed = 1;
  return cfg;
}

TEST(Config, Validation) {
  auto cfg = cell(Topology::kUniform, 128, 0.8);
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_DOUBLE_EQ(cfg.effective_epsilon(), 0.001);
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = cell(Topology::kUniform, 128, 0.0);
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = cell(Topology::kUniform, 1, 0.8);
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_THROW(run_experiment(cell(Topology::kUniform, 128, 1.5)), std::invalid_argument);
}

TEST(Config, TopologyNames) {
  EXPECT_EQ(parse_topology("uniform"), Topology::kUniform);
  EXPECT_EQ(parse_topology(to_string(Topology::kPowerLaw)), Topology::kPowerLaw);
  EXPECT_THROW(parse_topology("ring"), std::invalid_argument);
}

TEST(Plan, UsesAnalyticBudgets) {
  auto plan = make_plan(cell(Topology::kPowerLaw, 1024, 0.6));
  EXPECT_EQ(plan.edges, analytics::edges_required(1024, 0.6, 0.001));
  EXPECT_EQ(plan.k_min, 7u);
  ASSERT_TRUE(plan.powerlaw.has_value());
  EXPECT_EQ(plan.powerlaw->plan.k_min, 7u);
  EXPECT_LE(plan.planned_edges(), plan.edges);
  EXPECT_GE(static_cast<double>(plan.planned_edges()), 0.95 * static_cast<double>(plan.edges));
}

TEST(NearestRank, Percentiles) {
  EXPECT_EQ(nearest_rank_percentile({}, 0.99), 0u);
  EXPECT_EQ(nearest_rank_percentile({5}, 0.99), 5u);
  std::vector<std::size_t> v(100);
  for (std::size_t i = 0; i < 100; ++i) v[i] = 100 - i;  // 1..100 shuffled order
  EXPECT_EQ(nearest_rank_percentile(v, 0.99), 99u);
  EXPECT_EQ(nearest_rank_percentile(v, 0.5), 50u);
  std::vector<std::size_t> w(1000, 3);
  for (std::size_t i = 0; i < 10; ++i) w[i] = 9;  // exactly 1% above
  EXPECT_EQ(nearest_rank_percentile(w, 0.99), 3u);
  w[10] = 9;
  EXPECT_EQ(nearest_rank_percentile(w, 0.99), 9u);
}

TEST(RunTrial, NoAdversaryNeverCompromised) {
  auto plan = make_plan(cell(Topology::kUniform, 128, 1.0));
  EXPECT_EQ(plan.budget.p, 1u);
  for (std::size_t i = 0; i < 100; ++i) EXPECT_FALSE(run_trial(plan, i).compromised);
}

TEST(RunTrial, Deterministic) {
  for (auto topo : {Topology::kUniform, Topology::kPowerLaw}) {
    auto cfg = cell(topo, 256, 0.6);
    for (std::size_t i : {0u, 7u, 999u}) EXPECT_EQ(run_trial(cfg, i), run_trial(cfg, i));
  }
}

TEST(RunTrial, RecordInvariants) {
  auto plan = make_plan(cell(Topology::kPowerLaw, 256, 0.4));
  for (std::size_t i = 0; i < 100; ++i) {
    auto r = run_trial(plan, i);
    EXPECT_EQ(r.trial_index, i);
    EXPECT_EQ(r.paths_found + r.shortfall, plan.budget.p);
    if (r.paths_found == 0) {
      EXPECT_TRUE(r.compromised || r.disconnected);
    }
    if (r.disconnected) {
      EXPECT_TRUE(r.compromised);
    }
    EXPECT_LE(r.longest_path_len, 255u);
  }
}

// Nodes 0-2 reach 4-7 only through node 3.
TEST(ScoreInstance, CompromisedCutVertex) {
  Graph g(8, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {1, 3}, {3, 4}, {3, 5}, {4, 5}, {5, 6}, {6, 7}, {4, 7}});
  CompromiseMask mask(8);
  mask.set(3);
  auto rec = score_instance(g, mask, 0, 7, 3);
  EXPECT_TRUE(rec.compromised);
  EXPECT_FALSE(rec.disconnected);
  auto all = oracle::all_simple_paths(g, 0, 7);
  ASSERT_FALSE(all.empty());
  for (const auto& p : all) EXPECT_FALSE(path_is_honest(p, mask));
  CompromiseMask none(8);
  EXPECT_FALSE(score_instance(g, none, 0, 7, 3).compromised);
}

TEST(ScoreInstance, DisconnectedPairScoresCompromised) {
  auto rec = score_instance(Graph(4, {{0, 1}, {2, 3}}), CompromiseMask(4), 0, 3, 2);
  EXPECT_TRUE(rec.disconnected);
  EXPECT_TRUE(rec.compromised);
  EXPECT_EQ(rec.paths_found, 0u);
}

TEST(ScoreInstance, MatchesExhaustiveOracle) {
  auto cmp = properties::small_instance_comparison(500, 77);
  EXPECT_EQ(cmp.graphs, 500u);
  EXPECT_EQ(cmp.mismatches, 0u);
  EXPECT_GT(cmp.compromised, 0u);
}

TEST(SampleEndpoints, HonestAndNonAdjacent) {
  Rng rng(3);
  Graph g = gen_uniform(50, 200, rng);
  auto mask = compromise_random(50, 0.6, rng);
  for (int i = 0; i < 200; ++i) {
    auto ends = sample_endpoints(g, mask, rng);
    ASSERT_TRUE(ends);
    EXPECT_NE(ends->first, ends->second);
    EXPECT_FALSE(mask[ends->first] || mask[ends->second]);
    EXPECT_FALSE(g.has_edge(ends->first, ends->second));
  }
  // Complete graph: every honest pair is adjacent.
  Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  EXPECT_FALSE(sample_endpoints(k4, CompromiseMask(4), rng));
}

TEST(RunExperiment, ThreadCountDoesNotChangeResults) {
  auto cfg = cell(Topology::kPowerLaw, 256, 0.6, 200);
  cfg.threads = 1;
  auto a = run_experiment(cfg);
  cfg.threads = 4;
  auto b = run_experiment(cfg);
  EXPECT_EQ(a.trials, b.trials);
  EXPECT_EQ(a.delta_hat, b.delta_hat);
  EXPECT_EQ(a.degree_histogram.counts, b.degree_histogram.counts);
}

TEST(RunExperiment, SummaryAggregates) {
  auto s = run_experiment(cell(Topology::kUniform, 256, 0.8));
  EXPECT_GE(s.delta_hat, 0.0);
  EXPECT_LE(s.delta_hat, 1.0);
  EXPECT_NEAR(static_cast<double>(s.p99_longest_path), 4.0, 1.0);
  EXPECT_EQ(s.degree_histogram.node_total(), 256u);
  std::size_t compromised = 0;
  for (const auto& r : s.trials) compromised += r.compromised;
  EXPECT_DOUBLE_EQ(s.delta_hat, compromised / 1000.0);
}

TEST(RunExperiment, UniformDeltaNearTarget) {
  auto s = run_experiment(cell(Topology::kUniform, 1024, 0.8));
  EXPECT_LE(s.delta_hat, 0.03);
  EXPECT_LT(s.shortfall_rate, 0.01);
  // Mean realised paths is the budget minus shortfall.
  double expected = 0;
  for (const auto& r : s.trials) expected += static_cast<double>(s.paths - r.shortfall);
  EXPECT_DOUBLE_EQ(s.mean_paths, expected / 1000.0);
  EXPECT_GT(s.mean_paths, 0.99 * static_cast<double>(s.paths));
}

TEST(RunExperiment, TargetedAdversaryHurtsPowerLawMore) {
  auto random_cfg = cell(Topology::kPowerLaw, 4096, 0.8);
  auto targeted_cfg = random_cfg;
  targeted_cfg.adversary = AdversaryKind::kTargeted;
  auto random_run = run_experiment(random_cfg);
  auto targeted_run = run_experiment(targeted_cfg);
  EXPECT_GT(targeted_run.delta_hat, random_run.delta_hat);
}

TEST(Sweep, DefaultGridShape) {
  auto grid = default_grid(ExperimentConfig{});
  EXPECT_EQ(grid.size(), 54u);
  EXPECT_EQ(grid.front().n, 128u);
  EXPECT_EQ(grid.back().n, 32768u);
  EXPECT_EQ(grid.back().topology, Topology::kPowerLaw);
  EXPECT_EQ(default_grid(ExperimentConfig{}, 1024).size(), 24u);
}

TEST(Sweep, SingleCellMatchesRunExperiment) {
  auto cfg = cell(Topology::kPowerLaw, 128, 0.6, 300);
  auto rows = sweep({cfg});
  ASSERT_EQ(rows.size(), 1u);
  ASSERT_TRUE(rows[0].summary);
  auto direct = run_experiment(cfg);
  EXPECT_EQ(rows[0].summary->trials, direct.trials);
  std::ostringstream a, b;
  report::write_csv(a, rows);
  report::write_csv(b, {SweepRow{cfg, direct, {}}});
  EXPECT_EQ(a.str(), b.str());
}

TEST(Sweep, SmallestUniformCellsHaveShortPaths) {
  auto rows = sweep(default_grid(cell(Topology::kUniform, 128, 0.8), 128));
  std::vector<double> delta;
  for (const auto& row : rows) {
    if (row.config.topology != Topology::kUniform) continue;
    ASSERT_TRUE(row.summary);
    EXPECT_EQ(row.summary->p99_longest_path, 3u) << row.config.t;
    delta.push_back(row.summary->delta_hat);
  }
  ASSERT_EQ(delta.size(), 3u);  // t = 0.8, 0.6, 0.4
  // delta_hat does not fall as t drops, within 2 binomial sigma.
  for (std::size_t i = 0; i + 1 < delta.size(); ++i) {
    double sigma = std::sqrt((delta[i] * (1 - delta[i]) + delta[i + 1] * (1 - delta[i + 1])) / 1000.0);
    EXPECT_LE(delta[i], delta[i + 1] + 2 * sigma + 1e-12);
  }
}

TEST(Sweep, FailedCellIsRecordedAndSweepContinues) {
  auto bad = cell(Topology::kUniform, 128, 0.8, 10);
  bad.delta = 2.0;
  auto good = cell(Topology::kUniform, 128, 0.8, 10);
  int seen = 0;
  auto rows = sweep({bad, good}, [&](const SweepRow&) { ++seen; });
  EXPECT_EQ(seen, 2);
  EXPECT_FALSE(rows[0].summary);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_TRUE(rows[1].summary);
  std::ostringstream csv;
  report::write_csv_row(csv, rows[0]);
  EXPECT_EQ(csv.str(), "uniform,128,0.8,10,,,,,,,,,1\n");
}

// --- serialisation ---------------------------------------------------------------

TEST(Report, CsvLayout) {
  std::ostringstream os;
  report::write_csv_header(os);
  EXPECT_EQ(os.str(),
            "topology,n,t,trials,edges,paths,k_min,gamma,delta_hat,p99_longest_path,mean_paths,shortfall_rate,seed\n");
  auto rows = sweep({cell(Topology::kUniform, 128, 0.8, 20), cell(Topology::kPowerLaw, 128, 0.8, 20)});
  std::ostringstream u, p;
  report::write_csv_row(u, rows[0]);
  report::write_csv_row(p, rows[1]);
  const std::string uniform_row = u.str(), powerlaw_row = p.str();
  EXPECT_NE(uniform_row.find(",,,"), std::string::npos);  // uniform rows leave k_min and gamma empty
  EXPECT_EQ(powerlaw_row.find(",,"), std::string::npos);
  EXPECT_EQ(std::count(powerlaw_row.begin(), powerlaw_row.end(), ','), 12);
}

TEST(Report, JsonFieldsAndTrialDump) {
  auto rows = sweep({cell(Topology::kPowerLaw, 128, 0.6, 5)});
  std::ostringstream os;
  report::write_json(os, rows, {.dump_trials = true, .timing = false});
  auto j = nlohmann::json::parse(os.str());
  ASSERT_EQ(j.size(), 1u);
  for (const auto& key : report::csv_columns()) EXPECT_TRUE(j[0].contains(key)) << key;
  EXPECT_FALSE(j[0].contains("wall_time"));
  ASSERT_EQ(j[0]["trials_detail"].size(), 5u);
  for (const char* key : {"trial_index", "compromised", "disconnected", "longest_path_len", "paths_found", "shortfall"}) {
    EXPECT_TRUE(j[0]["trials_detail"][0].contains(key)) << key;
  }
}

TEST(Report, IdenticalRunsGiveIdenticalBytes) {
  auto grid = default_grid(cell(Topology::kUniform, 128, 0.8, 50), 256);
  std::ostringstream a, b, ja, jb;
  auto rows_a = sweep(grid), rows_b = sweep(grid);
  report::write_csv(a, rows_a);
  report::write_csv(b, rows_b);
  report::write_json(ja, rows_a);
  report::write_json(jb, rows_b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(ja.str(), jb.str());
}

TEST(Report, AnalysisJsonKeys) {
  auto j = report::analysis_json(analytics::analyze({16384, 0.8, 0.001, 0.01, 0.002}));
  EXPECT_EQ(j["edges"], 167821);
  EXPECT_EQ(j["paths"], 7);
  EXPECT_EQ(j["k_min"], 4);
}

}  // namespace
}  // namespace stranger::harness
