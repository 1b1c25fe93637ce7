#include "cutblock/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace cutblock {

u64 split_seed(u64 master, u64 counter) {
  u64 z = master + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 trial_rng(u64 master, u64 trial) {
  return std::mt19937_64(split_seed(master, trial));
}

u64 uniform_u64(std::mt19937_64& rng, u64 n) {
  if (n == 0) throw Error("uniform_u64 over empty range");
  const u64 lim = (0 - n) % n;  // 2^64 mod n
  u64 r = rng();
  while (r < lim) r = rng();
  return r % n;
}

Point random_point(const Geometry& g, std::mt19937_64& rng) {
  return g.point_at(uniform_u64(rng, g.num_points()));
}

namespace {

// id pair of a random line; both points redrawn on collision
std::pair<std::uint32_t, std::uint32_t> draw_line_ids(const Geometry& g, std::mt19937_64& rng) {
  const u64 n = g.num_points();
  for (;;) {
    const u64 a = uniform_u64(rng, n);
    const u64 b = uniform_u64(rng, n);
    if (a != b) return {std::uint32_t(a), std::uint32_t(b)};
  }
}

std::vector<Point> points_of_ids(const Geometry& g, const std::vector<std::uint32_t>& ids) {
  std::vector<Point> pts;
  pts.reserve(ids.size());
  for (auto id : ids) pts.push_back(g.point_at(id));
  return pts;
}

void sort_unique(std::vector<std::uint32_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Subspace random_line(const Geometry& g, std::mt19937_64& rng) {
  const auto [a, b] = draw_line_ids(g, rng);
  return g.line_through(g.point_at(a), g.point_at(b));
}

Subspace random_subspace(const Geometry& g, int d, std::mt19937_64& rng) {
  if (d < 0 || d > g.N()) throw DimensionMismatch("random_subspace dimension out of range");
  if (d == 0) return g.span({random_point(g, rng)});
  if (d == 1) return random_line(g, rng);
  const u64 n = g.num_points();
  for (;;) {
    std::vector<Point> pts;
    for (int i = 0; i <= d; ++i) pts.push_back(g.point_at(uniform_u64(rng, n)));
    const Subspace s = g.span(pts);
    if (s.dim() == d) return s;
  }
}

namespace {

struct TrialObject {
  std::vector<std::uint32_t> union_ids;                        // sorted unique
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // line generators
  std::vector<Subspace> subs;                                  // d >= 2 subspaces
};

// draws one trial object; ctx is used for fast line expansion
TrialObject draw_trial(const SearchConfig& cfg, const Geometry& g, CuttingContext& ctx,
                       std::mt19937_64& rng) {
  TrialObject obj;
  std::vector<std::uint32_t> scratch;
  switch (cfg.kind) {
    case TargetKind::kPointSet: {
      if (u64(cfg.size) > g.num_points())
        throw DimensionMismatch("point set larger than the space");
      std::set<std::uint32_t> ids;
      while (int(ids.size()) < cfg.size)
        ids.insert(std::uint32_t(uniform_u64(rng, g.num_points())));
      obj.union_ids.assign(ids.begin(), ids.end());
      return obj;
    }
    case TargetKind::kLineSet:
    case TargetKind::kSubspaceSet: {
      const int d = cfg.kind == TargetKind::kLineSet ? 1 : cfg.subspace_dim;
      std::set<std::vector<std::uint32_t>> seen;  // distinct mode keys
      for (int i = 0; i < cfg.size; ++i) {
        for (;;) {
          std::vector<std::uint32_t> ids;
          std::pair<std::uint32_t, std::uint32_t> pr{0, 0};
          Subspace sub;
          if (d == 1) {
            pr = draw_line_ids(g, rng);
            ctx.line_point_ids(pr.first, pr.second, scratch);
            ids = scratch;
          } else {
            sub = random_subspace(g, d, rng);
            for (const auto& p : g.subspace_points(sub)) ids.push_back(std::uint32_t(g.point_index(p)));
          }
          std::sort(ids.begin(), ids.end());
          if (cfg.distinct && !seen.insert(ids).second) continue;  // redraw duplicates
          obj.union_ids.insert(obj.union_ids.end(), ids.begin(), ids.end());
          if (d == 1)
            obj.pairs.push_back(pr);
          else
            obj.subs.push_back(std::move(sub));
          break;
        }
      }
      sort_unique(obj.union_ids);
      return obj;
    }
  }
  throw Error("unreachable target kind");
}

LineSet lines_of(const SearchConfig& cfg, GeometryPtr g, const TrialObject& obj) {
  LineSet L{g, {}};
  if (!obj.pairs.empty()) {
    for (const auto& [a, b] : obj.pairs)
      L.lines.push_back(g->line_through(g->point_at(a), g->point_at(b)));
  } else {
    L.lines = obj.subs;
  }
  (void)cfg;
  return L;
}

}  // namespace

SearchReport monte_carlo_search(const SearchConfig& cfg) {
  if (cfg.size < 1) throw DimensionMismatch("target size must be positive");
  if (cfg.budget < 1) throw DimensionMismatch("budget must be positive");
  auto g = make_geometry(cfg.N, cfg.q);
  if (cfg.t < 1 || cfg.t > cfg.N) throw DimensionMismatch("cutting parameter t out of range");
  if (cfg.kind == TargetKind::kSubspaceSet &&
      (cfg.subspace_dim < 1 || cfg.subspace_dim > cfg.N - 1))
    throw DimensionMismatch("subspace dimension out of range");

  CuttingContext ctx(g);
  SearchReport rep;
  rep.config = cfg;

  for (u64 trial = 0; trial < cfg.budget; ++trial) {
    auto rng = trial_rng(cfg.seed, trial);
    TrialObject obj = draw_trial(cfg, *g, ctx, rng);

    bool ok;
    if (cfg.t == 1) {
      ok = ctx.cutting_verdict(obj.union_ids);
    } else {
      ok = is_cutting_t_blocking(PointSet::of(g, points_of_ids(*g, obj.union_ids)), cfg.t).ok;
    }

    if (!ok && cfg.strategy == Strategy::kRandomWithRepair && cfg.t == 1 &&
        cfg.kind == TargetKind::kLineSet) {
      // local repair: swap out the line with the least private coverage for a
      // line through the witness difference H \ Hp; each step costs a trial
      const int max_steps = 3 * cfg.size;
      for (int step = 0; step < max_steps && trial + 1 < cfg.budget && !ok; ++step) {
        auto S = PointSet::of(g, points_of_ids(*g, obj.union_ids));
        const auto res = is_cutting_t_blocking(S, 1);
        if (res.ok) break;  // fast path will re-confirm below
        ++trial;
        // target id inside H \ Hp (first in index order)
        std::uint32_t anchor = 0;
        bool found = false;
        std::vector<std::uint32_t> diff;
        for (const auto& p : g->subspace_points(*res.witness->H)) {
          if (!g->contains(*res.witness->Hp, p)) diff.push_back(std::uint32_t(g->point_index(p)));
        }
        std::sort(diff.begin(), diff.end());
        if (!diff.empty()) {
          anchor = diff.front();
          found = true;
        }
        if (!found) break;
        // least private coverage: points covered by exactly one line
        std::vector<std::vector<std::uint32_t>> per_line(obj.pairs.size());
        std::vector<int> cover(g->num_points(), 0);
        std::vector<std::uint32_t> scratch;
        for (std::size_t i = 0; i < obj.pairs.size(); ++i) {
          ctx.line_point_ids(obj.pairs[i].first, obj.pairs[i].second, scratch);
          per_line[i] = scratch;
          for (auto id : scratch) ++cover[id];
        }
        std::size_t victim = 0;
        int best_private = int(g->num_points()) + 1;
        for (std::size_t i = 0; i < per_line.size(); ++i) {
          int priv = 0;
          for (auto id : per_line[i])
            if (cover[id] == 1) ++priv;
          if (priv < best_private) {
            best_private = priv;
            victim = i;
          }
        }
        // replacement line through the anchor
        u64 b = uniform_u64(rng, g->num_points());
        while (b == anchor) b = uniform_u64(rng, g->num_points());
        obj.pairs[victim] = {anchor, std::uint32_t(b)};
        obj.union_ids.clear();
        for (const auto& [pa, pb] : obj.pairs) {
          ctx.line_point_ids(pa, pb, scratch);
          obj.union_ids.insert(obj.union_ids.end(), scratch.begin(), scratch.end());
        }
        sort_unique(obj.union_ids);
        ok = ctx.cutting_verdict(obj.union_ids);
      }
    }

    if (ok) {
      auto S = PointSet::of(g, points_of_ids(*g, obj.union_ids));
      const auto res = is_cutting_t_blocking(S, cfg.t);
      if (!res.ok) throw Error("fast verdict disagrees with the witnessed checker");
      rep.success = true;
      rep.trials = trial + 1;
      rep.points = S;
      if (cfg.kind != TargetKind::kPointSet) rep.lines = lines_of(cfg, g, obj);
      rep.union_size = S.size();
      rep.reverified = true;
      return rep;
    }
  }
  rep.success = false;
  rep.trials = cfg.budget;
  return rep;
}

SearchReport hp_subspace_search(int N, unsigned q, int t, int m, u64 budget, u64 seed) {
  if (t < 2 || t > N) throw DimensionMismatch("multiplicity t must satisfy 2 <= t <= N");
  SearchConfig cfg;
  cfg.N = N;
  cfg.q = q;
  cfg.kind = t == N ? TargetKind::kLineSet : TargetKind::kSubspaceSet;
  cfg.subspace_dim = N - t + 1;
  cfg.t = N - t + 1;  // union must cut every (t-1)-dim subspace
  cfg.size = m;
  cfg.budget = budget;
  cfg.seed = seed;
  return monte_carlo_search(cfg);
}

namespace {

u64 binom_capped(u64 n, u64 k, u64 cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (u64 i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > cap) return cap + 1;
  }
  return u64(r);
}

// lexicographic k-subset iteration, calling f with the index vector
template <typename F>
bool for_subsets(u64 n, int k, F&& f) {
  std::vector<u64> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    if (f(idx)) return true;
    int i = k - 1;
    while (i >= 0 && idx[std::size_t(i)] == n - u64(k) + u64(i)) --i;
    if (i < 0) return false;
    ++idx[std::size_t(i)];
    for (int j = i + 1; j < k; ++j) idx[std::size_t(j)] = idx[std::size_t(j - 1)] + 1;
  }
}

}  // namespace

MinimumCertificate exhaustive_minimum_cutting(GeometryPtr g, u64 cap) {
  CuttingContext ctx(g);
  const u64 n = g->num_points();
  MinimumCertificate cert;
  for (int k = 1; k <= int(n); ++k) {
    if (binom_capped(n, u64(k), cap) > cap)
      throw EnumerationTooLarge("too many " + std::to_string(k) + "-subsets");
    std::vector<std::uint32_t> ids(static_cast<std::size_t>(k));
    const bool found = for_subsets(n, k, [&](const std::vector<u64>& idx) {
      for (int i = 0; i < k; ++i) ids[std::size_t(i)] = std::uint32_t(idx[std::size_t(i)]);
      if (!ctx.cutting_verdict(ids)) return false;
      auto S = PointSet::of(g, points_of_ids(*g, ids));
      if (!is_cutting_t_blocking(S, 1).ok)
        throw Error("fast verdict disagrees with the witnessed checker");
      cert.size = std::size_t(k);
      cert.points = std::move(S);
      return true;
    });
    if (found) return cert;
  }
  throw Error("no cutting set found, even the full space");
}

MinimumCertificate exhaustive_minimum_hp_lines(GeometryPtr g, u64 cap) {
  CuttingContext ctx(g);
  const auto lines = g->enumerate_subspaces(1, cap);
  // precompute point ids per line
  std::vector<std::vector<std::uint32_t>> lpts(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (const auto& p : g->subspace_points(lines[i]))
      lpts[i].push_back(std::uint32_t(g->point_index(p)));
  MinimumCertificate cert;
  for (int m = 1; m <= int(lines.size()); ++m) {
    if (binom_capped(lines.size(), u64(m), cap) > cap)
      throw EnumerationTooLarge("too many " + std::to_string(m) + "-subsets of lines");
    std::vector<std::uint32_t> ids;
    const bool found = for_subsets(lines.size(), m, [&](const std::vector<u64>& idx) {
      ids.clear();
      for (u64 i : idx) ids.insert(ids.end(), lpts[std::size_t(i)].begin(), lpts[std::size_t(i)].end());
      sort_unique(ids);
      if (!ctx.cutting_verdict(ids)) return false;
      LineSet L{g, {}};
      for (u64 i : idx) L.lines.push_back(lines[std::size_t(i)]);
      if (!is_higgledy_piggledy(L).ok)
        throw Error("fast verdict disagrees with the witnessed checker");
      cert.size = std::size_t(m);
      cert.lines = std::move(L);
      cert.points = line_set_union(*cert.lines);
      return true;
    });
    if (found) return cert;
  }
  throw Error("no higgledy-piggledy set found, even all lines");
}

ProbabilityEstimate estimate_success_probability(int N, unsigned q, int m, u64 trials, u64 seed) {
  if (trials < 1) throw DimensionMismatch("need at least one trial");
  auto g = make_geometry(N, q);
  CuttingContext ctx(g);
  SearchConfig cfg;
  cfg.N = N;
  cfg.q = q;
  cfg.kind = TargetKind::kLineSet;
  cfg.size = m;
  cfg.seed = seed;
  ProbabilityEstimate est;
  est.trials = trials;
  for (u64 trial = 0; trial < trials; ++trial) {
    auto rng = trial_rng(seed, trial);
    TrialObject obj = draw_trial(cfg, *g, ctx, rng);
    if (ctx.cutting_verdict(obj.union_ids)) ++est.successes;
  }
  est.p_hat = double(est.successes) / double(trials);
  est.stderr_ = std::sqrt(est.p_hat * (1.0 - est.p_hat) / double(trials));
  return est;
}

ExactProbability exact_success_probability(int N, unsigned q, int m, u64 cap) {
  auto g = make_geometry(N, q);
  CuttingContext ctx(g);
  const auto lines = g->enumerate_subspaces(1, cap);
  const u64 L = lines.size();
  unsigned __int128 total = 1;
  for (int i = 0; i < m; ++i) {
    total *= L;
    if (total > cap) throw EnumerationTooLarge("line tuple space exceeds the cap");
  }
  std::vector<std::vector<std::uint32_t>> lpts(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (const auto& p : g->subspace_points(lines[i]))
      lpts[i].push_back(std::uint32_t(g->point_index(p)));

  u64 successes = 0;
  std::vector<u64> tup(std::size_t(m), 0);
  std::vector<std::uint32_t> ids;
  for (;;) {
    ids.clear();
    for (u64 i : tup) ids.insert(ids.end(), lpts[std::size_t(i)].begin(), lpts[std::size_t(i)].end());
    sort_unique(ids);
    if (ctx.cutting_verdict(ids)) ++successes;
    // odometer
    std::size_t pos = tup.size();
    while (pos > 0) {
      if (++tup[pos - 1] < L) break;
      tup[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  const u64 denom = u64(total);
  const u64 d = std::gcd(successes, denom);
  return {successes / d, denom / d};
}

}  // namespace cutblock
