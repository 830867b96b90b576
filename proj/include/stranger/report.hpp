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

#ifndef STRANGER_REPORT_HPP
#define STRANGER_REPORT_HPP

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stranger/harness.hpp"

namespace stranger::report {

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> kColumns = {
      "topology", "n",     "t",         "trials",           "edges",      "paths",          "k_min",
      "gamma",    "delta_hat", "p99_longest_path", "mean_paths", "shortfall_rate", "seed"};
  return kColumns;
}

inline std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string format_general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline void write_csv_header(std::ostream& os) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
}

/// One row; metric fields stay empty for a failed cell. gamma and k_min are
/// only filled for power-law cells.
inline void write_csv_row(std::ostream& os, const harness::SweepRow& row) {
  const auto& c = row.config;
  const bool powerlaw = c.topology == harness::Topology::kPowerLaw;
  os << harness::to_string(c.topology) << ',' << c.n << ',' << format_general(c.t) << ',' << c.trials << ',';
  if (const auto& s = row.summary) {
    os << s->edges << ',' << s->paths << ',';
    os << (powerlaw ? std::to_string(s->k_min) : "") << ',';
    os << (s->gamma ? format_fixed(*s->gamma, 6) : "") << ',';
    os << format_fixed(s->delta_hat, 6) << ',' << s->p99_longest_path << ',' << format_fixed(s->mean_paths, 4)
       << ',' << format_fixed(s->shortfall_rate, 6) << ',';
  } else {
    os << ",,,,,,,,";
  }
  os << c.master_seed << '\n';
}

inline void write_csv(std::ostream& os, const std::vector<harness::SweepRow>& rows) {
  write_csv_header(os);
  for (const auto& row : rows) write_csv_row(os, row);
}

inline nlohmann::ordered_json trial_json(const harness::TrialRecord& r) {
  return {{"trial_index", r.trial_index},        {"compromised", r.compromised},
          {"disconnected", r.disconnected},      {"longest_path_len", r.longest_path_len},
          {"paths_found", r.paths_found},        {"shortfall", r.shortfall}};
}

struct JsonOptions {
  bool dump_trials = false;
  bool timing = false;  // wall_time breaks byte-for-byte reproducibility
};

inline nlohmann::ordered_json summary_json(const harness::SweepRow& row, const JsonOptions& opt = {}) {
  const auto& c = row.config;
  nlohmann::ordered_json j;
  j["topology"] = harness::to_string(c.topology);
  j["n"] = c.n;
  j["t"] = c.t;
  j["trials"] = c.trials;
  if (const auto& s = row.summary) {
    j["edges"] = s->edges;
    j["paths"] = s->paths;
    j["k_min"] = s->k_min;
    j["gamma"] = s->gamma ? nlohmann::ordered_json(*s->gamma) : nlohmann::ordered_json(nullptr);
    j["delta_hat"] = s->delta_hat;
    j["p99_longest_path"] = s->p99_longest_path;
    j["mean_paths"] = s->mean_paths;
    j["shortfall_rate"] = s->shortfall_rate;
  }
  j["seed"] = c.master_seed;
  j["delta"] = c.delta;
  j["epsilon"] = c.effective_epsilon();
  j["delta_nc"] = c.delta_nc;
  j["adversary"] = to_string(c.adversary);
  if (const auto& s = row.summary) {
    j["disconnected_rate"] = s->disconnected_rate;
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [k, nk] : s->degree_histogram.counts) hist[std::to_string(k)] = nk;
    j["degree_histogram"] = hist;
    if (opt.timing) j["wall_time"] = s->wall_time;
    if (opt.dump_trials) {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& r : s->trials) arr.push_back(trial_json(r));
      j["trials_detail"] = arr;
    }
  } else {
    j["error"] = row.error;
  }
  return j;
}

inline void write_json(std::ostream& os, const std::vector<harness::SweepRow>& rows, const JsonOptions& opt = {}) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) arr.push_back(summary_json(row, opt));
  os << arr.dump(2) << '\n';
}

/// `analyze --json` record.
inline nlohmann::ordered_json analysis_json(const analytics::Analysis& a) {
  return {{"n", a.params.n},
          {"t", a.params.t},
          {"epsilon", a.params.epsilon},
          {"delta", a.params.delta},
          {"delta_nc", a.params.delta_nc},
          {"edges", a.edges},
          {"mean_degree", a.mean_degree},
          {"diameter", a.diameter},
          {"paths", a.budget.p},
          {"ell_p", a.budget.ell_p},
          {"k_min", a.k_min},
          {"gamma", a.gamma.gamma},
          {"relay_load", a.relay_load}};
}

}  // namespace stranger::report

#endif  // STRANGER_REPORT_HPP
