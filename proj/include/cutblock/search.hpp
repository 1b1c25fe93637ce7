#pragma once
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "cutblock/cutcheck.hpp"

namespace cutblock {

// Per-trial deterministic randomness: the master seed and the trial counter
// pick a stream via splitmix64, which seeds a (standardized) mt19937_64.
// Bounded draws use rejection sampling, so results are identical across
// platforms and standard libraries.
u64 split_seed(u64 master, u64 counter);
std::mt19937_64 trial_rng(u64 master, u64 trial);
u64 uniform_u64(std::mt19937_64& rng, u64 n);  // uniform on 0..n-1

Point random_point(const Geometry& g, std::mt19937_64& rng);
// two uniform points, both redrawn on collision: uniform over lines since
// every line carries (q+1)q ordered pairs
Subspace random_line(const Geometry& g, std::mt19937_64& rng);
// d+1 uniform points, all redrawn unless they span a d-space: uniform over
// d-subspaces; d = 1 consumes the exact same stream as random_line
Subspace random_subspace(const Geometry& g, int d, std::mt19937_64& rng);

enum class TargetKind { kPointSet, kLineSet, kSubspaceSet };
enum class Strategy { kPureRandom, kRandomWithRepair };

struct SearchConfig {
  int N = 2;
  unsigned q = 2;
  TargetKind kind = TargetKind::kLineSet;
  int size = 3;          // points drawn, or lines/subspaces drawn
  int subspace_dim = 1;  // only for kSubspaceSet
  int t = 1;             // verify the union as a cutting t-blocking set
  u64 budget = 100000;   // max trials
  u64 seed = 0;
  Strategy strategy = Strategy::kPureRandom;
  bool distinct = false;  // sample distinct lines/subspaces instead of a multiset
};

struct SearchReport {
  SearchConfig config;
  bool success = false;
  u64 trials = 0;  // trials consumed (index of success + 1, or budget)
  std::optional<PointSet> points;  // the found set for kPointSet, else the union
  std::optional<LineSet> lines;    // the found lines/subspaces
  std::size_t union_size = 0;
  bool reverified = false;  // success confirmed by the witnessed checker
};

// Repeated independent trials; point sets are drawn distinct, line/subspace
// multisets allow repetition unless cfg.distinct.  Any success is re-verified
// with the witnessed checker before being reported.
SearchReport monte_carlo_search(const SearchConfig& cfg);

// t-fold strong blocking from m random subspaces of dimension N-t+1; the
// union is verified as a cutting (N-t+1)-blocking set.  t = N coincides with
// the line search (same stream, same verdicts).
SearchReport hp_subspace_search(int N, unsigned q, int t, int m, u64 budget, u64 seed);

struct MinimumCertificate {
  std::size_t size = 0;  // exact minimum
  std::optional<PointSet> points;
  std::optional<LineSet> lines;
};
// exact minima by exhaustion over all subsets of each smaller size
MinimumCertificate exhaustive_minimum_cutting(GeometryPtr g, u64 cap = kDefaultEnumCap);
MinimumCertificate exhaustive_minimum_hp_lines(GeometryPtr g, u64 cap = kDefaultEnumCap);

// empirical success frequency of the m-line multiset model over `trials`
// trials (no early stop; the per-trial streams match monte_carlo_search)
struct ProbabilityEstimate {
  double p_hat = 0.0;
  double stderr_ = 0.0;
  u64 successes = 0;
  u64 trials = 0;
};
ProbabilityEstimate estimate_success_probability(int N, unsigned q, int m, u64 trials, u64 seed);

// exact success probability of the same model, by enumerating all (#lines)^m
// ordered draws; reduced fraction
struct ExactProbability {
  u64 numer = 0;
  u64 denom = 1;
};
ExactProbability exact_success_probability(int N, unsigned q, int m, u64 cap = kDefaultEnumCap);

}  // namespace cutblock
