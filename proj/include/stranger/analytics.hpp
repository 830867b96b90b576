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

// Closed-form estimators for sizing a multipath key-establishment network:
// edge budgets from random-graph connectivity asymptotics, path budgets,
// minimum-degree cut-offs and power-law exponents. All logarithms are natural.

#ifndef STRANGER_ANALYTICS_HPP
#define STRANGER_ANALYTICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stranger::analytics {

/// Parameters shared by the estimators.
struct NetworkParams {
  std::uint64_t n = 0;
  double t = 1.0;          // honest fraction
  double epsilon = 0.001;  // all-pairs compromise budget
  double delta = 0.01;     // per-pair compromise budget
  double delta_nc = 0.002; // neighbour-blockade budget

  void validate() const {
    if (n < 2) throw std::invalid_argument("node count must be at least 2");
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("honest fraction t must lie in (0, 1]");
    auto open_unit = [](double x) { return x > 0.0 && x < 1.0; };
    if (!open_unit(epsilon)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    if (!open_unit(delta)) throw std::invalid_argument("delta must lie in (0, 1)");
    if (!open_unit(delta_nc)) throw std::invalid_argument("delta_nc must lie in (0, 1)");
  }
};

/// Asymptotic probability that a uniform random graph is connected once the
/// compromised fraction 1-t of its N nodes has been removed:
/// exp(-exp(-2c)) with c = E t / N - ln(t N) / 2.
inline double connectivity_probability(double n, double t, double edges) {
  if (!(t * n > 0.0)) throw std::invalid_argument("connectivity_probability: t*N must be positive");
  double c = edges * t / n - 0.5 * std::log(t * n);
  return std::exp(-std::exp(-2.0 * c));
}

/// Whether (N, t, eps) lies in the regime 1 >> eps >> tN exp(-t(N-1)) where
/// edges_required is a reasonable approximation.
inline bool edges_required_in_regime(double n, double t, double epsilon) {
  double floor_eps = t * n * std::exp(-t * (n - 1.0));
  return epsilon < 0.1 && epsilon > 10.0 * floor_eps;
}

/// Edge count that keeps the honest subgraph connected with probability
/// 1 - eps: ceil(N/(2t) * ln(N t / eps)).
inline std::uint64_t edges_required(double n, double t, double epsilon) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("edges_required: t must lie in (0, 1]");
  if (!(epsilon > 0.0)) throw std::invalid_argument("edges_required: epsilon must be positive");
  if (n * t < epsilon) throw std::invalid_argument("edges_required: epsilon must not exceed N*t");
  double e = 0.5 * (n / t) * std::log(n * t / epsilon);
  return static_cast<std::uint64_t>(std::ceil(e));
}

inline double mean_degree(double n, double edges) { return 2.0 * edges / n; }

/// ln N / ln <k>.
inline double diameter_estimate(double n, double mean_degree) {
  if (!(mean_degree > 1.0)) throw std::invalid_argument("diameter_estimate: mean degree must exceed 1");
  return std::log(n) / std::log(mean_degree);
}

/// Length of the longest of the p shortest paths: ln(N p) / ln <k>.
inline double longest_selected_path_estimate(double n, double p, double mean_degree) {
  if (!(p >= 1.0)) throw std::invalid_argument("longest_selected_path_estimate: p must be >= 1");
  if (!(mean_degree > 1.0)) {
    throw std::invalid_argument("longest_selected_path_estimate: mean degree must exceed 1");
  }
  return std::log(n * p) / std::log(mean_degree);
}

/// Independent paths of length ell needed so that all of them are
/// compromised with probability delta. A direct edge (ell <= 1) needs one.
inline double paths_for_length(double t, double ell, double delta) {
  if (t >= 1.0 || ell <= 1.0) return 1.0;
  return std::log(delta) / std::log1p(-std::pow(t, ell - 1.0));
}

struct PathBudget {
  std::uint64_t p = 1;
  double ell_p = 1.0;
  double mean_degree = 0.0;
  bool converged = true;
  int iterations = 0;
};

/// Solves p = ln(delta) / ln(1 - t^(ell_p - 1)) together with
/// ell_p = ln(N p) / ln <k> by plain fixed-point iteration from p = 1.
/// Stops when |dp| < 0.01 or after 100 iterations (converged = false), then
/// takes the ceiling.
inline PathBudget paths_required(double n, double t, double mean_degree, double delta) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("paths_required: t must lie in (0, 1]");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("paths_required: delta must lie in (0, 1)");
  if (!(mean_degree > 1.0)) throw std::invalid_argument("paths_required: mean degree must exceed 1");

  PathBudget out;
  out.mean_degree = mean_degree;
  if (t == 1.0) {
    out.ell_p = longest_selected_path_estimate(n, 1.0, mean_degree);
    return out;
  }
  double p = 1.0;
  out.converged = false;
  for (int it = 1; it <= 100; ++it) {
    double ell = longest_selected_path_estimate(n, p, mean_degree);
    double next = paths_for_length(t, ell, delta);
    out.iterations = it;
    bool done = std::abs(next - p) < 0.01;
    p = next;
    if (done) {
      out.converged = true;
      break;
    }
  }
  out.p = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(p - 1e-9)));
  out.ell_p = longest_selected_path_estimate(n, std::max(p, 1.0), mean_degree);
  return out;
}

/// (1-t)^k: chance that all k neighbours of a node are compromised.
inline double neighbour_compromise_prob(std::uint64_t k, double t) {
  return std::pow(1.0 - t, static_cast<double>(k));
}

/// Smallest k with (1-t)^k <= delta_nc.
inline std::uint64_t min_degree(double t, double delta_nc) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("min_degree: t must lie in (0, 1)");
  if (!(delta_nc > 0.0 && delta_nc < 1.0)) throw std::invalid_argument("min_degree: delta_nc must lie in (0, 1)");
  auto k = static_cast<std::uint64_t>(std::ceil(std::log(delta_nc) / std::log(1.0 - t)));
  // Guard the ceiling against rounding in the logarithm ratio.
  while (k > 0 && neighbour_compromise_prob(k - 1, t) <= delta_nc) --k;
  while (neighbour_compromise_prob(k, t) > delta_nc) ++k;
  return k;
}

/// Expected edge count of a truncated power-law graph,
/// sum_{k=k_min}^{N-1} N C k^(1-gamma) / 2 with C normalising the node
/// counts to N.
inline double powerlaw_edge_estimate(std::uint64_t n, std::uint64_t k_min, double gamma) {
  double norm = 0.0, degree_sum = 0.0;
  for (std::uint64_t k = k_min; k + 1 <= n; ++k) {
    double w = std::pow(static_cast<double>(k), -gamma);
    norm += w;
    degree_sum += w * static_cast<double>(k);
  }
  if (norm == 0.0) return 0.0;
  return 0.5 * static_cast<double>(n) * degree_sum / norm;
}

struct GammaFit {
  double gamma = 0.0;
  bool saturated = false;  // goal not reached below the upper bracket
};

inline constexpr double kGammaLow = 0.01;
inline constexpr double kGammaHigh = 10.0;
inline constexpr double kGammaTolerance = 1e-6;

/// Boundary exponent at which the expected power-law edge count meets
/// `edge_goal` from below. The edge count falls as gamma grows, so the
/// returned gamma is the upper end of the final bisection bracket.
inline GammaFit powerlaw_gamma(std::uint64_t n, std::uint64_t k_min, double edge_goal) {
  if (k_min < 1 || k_min + 1 > n) throw std::invalid_argument("powerlaw_gamma: need 1 <= k_min <= N-1");
  if (edge_goal < 0.5 * static_cast<double>(n * k_min)) {
    throw std::invalid_argument("powerlaw_gamma: edge goal below N*k_min/2");
  }
  double lo = kGammaLow, hi = kGammaHigh;
  if (powerlaw_edge_estimate(n, k_min, hi) > edge_goal) return {hi, true};
  if (powerlaw_edge_estimate(n, k_min, lo) < edge_goal) {
    throw std::domain_error("powerlaw_gamma: edge goal " + std::to_string(edge_goal) +
                            " unattainable for gamma >= " + std::to_string(kGammaLow));
  }
  while (hi - lo > kGammaTolerance) {
    double mid = 0.5 * (lo + hi);
    if (powerlaw_edge_estimate(n, k_min, mid) > edge_goal) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {hi, false};
}

/// Intermediate-node slots consumed by one protocol run: (ell - 1) * p.
inline double relay_load(double ell, double p) {
  if (!(ell >= 1.0) || !(p >= 1.0)) throw std::invalid_argument("relay_load: need ell >= 1 and p >= 1");
  return (ell - 1.0) * p;
}

/// Every estimate for one parameter set, as reported by `analyze`.
struct Analysis {
  NetworkParams params;
  std::uint64_t edges = 0;
  double mean_degree = 0.0;
  double diameter = 0.0;
  PathBudget budget;
  std::uint64_t k_min = 1;
  GammaFit gamma;
  double relay_load = 0.0;
};

inline Analysis analyze(const NetworkParams& params) {
  params.validate();
  Analysis a;
  a.params = params;
  const auto n = static_cast<double>(params.n);
  a.edges = edges_required(n, params.t, params.epsilon);
  a.mean_degree = mean_degree(n, static_cast<double>(a.edges));
  a.diameter = diameter_estimate(n, a.mean_degree);
  a.budget = paths_required(n, params.t, a.mean_degree, params.delta);
  // Without an adversary any positive degree keeps a node reachable.
  a.k_min = params.t < 1.0 ? std::min<std::uint64_t>(min_degree(params.t, params.delta_nc), params.n - 1) : 1;
  a.gamma = powerlaw_gamma(params.n, a.k_min,
                           std::max(static_cast<double>(a.edges), 0.5 * static_cast<double>(params.n * a.k_min)));
  a.relay_load = relay_load(std::max(a.budget.ell_p, 1.0), static_cast<double>(a.budget.p));
  return a;
}

}  // namespace stranger::analytics

#endif  // STRANGER_ANALYTICS_HPP
