#include "cutblock/codes.hpp"

#include <algorithm>
#include <string>

namespace cutblock {

GeneratorMatrix::GeneratorMatrix(FieldPtr f, std::vector<Vec> rows) : f_(std::move(f)) {
  if (rows.empty() || rows[0].empty()) throw RankDeficient("empty generator matrix");
  k_ = unsigned(rows.size());
  n_ = unsigned(rows[0].size());
  for (const auto& r : rows)
    if (r.size() != n_) throw DimensionMismatch("ragged generator matrix");
  if (rank_of_rows(rows, *f_) != int(k_))
    throw RankDeficient("generator matrix has rank < k");
  rows_ = std::move(rows);
}

GeometryPtr GeneratorMatrix::geometry() const { return make_geometry(int(k_) - 1, f_->q()); }

bool GeneratorMatrix::is_nondegenerate() const {
  for (unsigned j = 0; j < n_; ++j) {
    bool zero = true;
    for (unsigned i = 0; i < k_; ++i)
      if (rows_[i][j]) {
        zero = false;
        break;
      }
    if (zero) return false;
  }
  return true;
}

std::vector<Point> GeneratorMatrix::column_points() const {
  auto g = geometry();
  std::vector<Point> out;
  out.reserve(n_);
  for (unsigned j = 0; j < n_; ++j) {
    Vec col(k_);
    for (unsigned i = 0; i < k_; ++i) col[i] = rows_[i][j];
    out.push_back(g->normalize(std::move(col)));  // ZeroVector on a zero column
  }
  return out;
}

bool GeneratorMatrix::is_projective() const {
  auto pts = column_points();
  std::sort(pts.begin(), pts.end());
  return std::adjacent_find(pts.begin(), pts.end()) == pts.end();
}

PointSet GeneratorMatrix::column_set() const { return PointSet::of(geometry(), column_points()); }

Vec GeneratorMatrix::encode(const Vec& u) const {
  if (u.size() != k_) throw DimensionMismatch("message length != k");
  Vec c(n_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    if (!u[i]) continue;
    const Elt* mr = f_->mul_row(u[i]);
    for (unsigned j = 0; j < n_; ++j) c[j] = f_->add(c[j], mr[rows_[i][j]]);
  }
  return c;
}

GeneratorMatrix code_from_pointset(const PointSet& S) {
  const Geometry& g = *S.g;
  const unsigned k = unsigned(g.N()) + 1;
  if (S.size() < k) throw RankDeficient("point set spans a proper subspace");
  std::vector<Vec> rows(k, Vec(S.size()));
  for (std::size_t j = 0; j < S.size(); ++j)
    for (unsigned i = 0; i < k; ++i) rows[i][j] = S.pts[j].coords[i];
  return GeneratorMatrix(g.field_ptr(), std::move(rows));  // RankDeficient if not spanning
}

PointSet pointset_from_generator(const GeneratorMatrix& G) { return G.column_set(); }

namespace {

std::vector<char> support_of(const Vec& c) {
  std::vector<char> s(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) s[j] = c[j] != 0;
  return s;
}

bool subset_support(const std::vector<char>& a, const std::vector<char>& b) {
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] && !b[j]) return false;
  return true;
}

}  // namespace

bool codeword_test(const GeneratorMatrix& G, const Vec& u, CodewordProperty which,
                   Method method) {
  bool all_zero = true;
  for (auto x : u)
    if (x) all_zero = false;
  if (all_zero) throw ZeroVector("codeword test needs u != 0");

  auto g = G.geometry();
  if (method == Method::kGeometric) {
    const Point du = g->normalize(u);
    const Subspace lam = g->hyperplane(du);
    const PointSet S = G.column_set();
    if (which == CodewordProperty::kMinimal) {
      std::vector<Point> inside;
      for (const auto& p : S.pts)
        if (g->contains(lam, p)) inside.push_back(p);
      return g->span(inside).dim() == lam.dim();
    }
    return is_affine_blocking_complement(S, lam);
  }

  // brute force: compare supports against every other projective codeword class
  const std::vector<char> su = support_of(G.encode(g->normalize(u).coords));
  const Point cu = g->normalize(u);
  for (u64 i = 0; i < g->num_points(); ++i) {
    const Point up = g->point_at(i);
    if (up == cu) continue;
    const std::vector<char> so = support_of(G.encode(up.coords));
    if (which == CodewordProperty::kMinimal) {
      if (subset_support(so, su)) return false;
    } else {
      if (subset_support(su, so)) return false;
    }
  }
  return true;
}

MinimalCodeResult is_minimal_code(const GeneratorMatrix& G, Method method) {
  auto g = G.geometry();
  if (method == Method::kGeometric) {
    const auto res = is_cutting_t_blocking(G.column_set(), 1);
    if (res.ok) return {true, std::nullopt};
    // the witness hyperplane's dual is a non-minimal codeword class
    const Point du = g->hyperplane_dual(*res.witness->H);
    return {false, du.coords};
  }
  for (u64 i = 0; i < g->num_points(); ++i) {
    const Point u = g->point_at(i);
    if (!codeword_test(G, u.coords, CodewordProperty::kMinimal, Method::kBruteForce))
      return {false, u.coords};
  }
  return {true, std::nullopt};
}

unsigned min_weight(const GeneratorMatrix& G) {
  auto g = G.geometry();
  unsigned best = G.n() + 1;
  for (u64 i = 0; i < g->num_points(); ++i) {
    const Vec c = G.encode(g->point_at(i).coords);
    unsigned w = 0;
    for (auto x : c)
      if (x) ++w;
    best = std::min(best, w);
  }
  return best;
}

BoundCheckRecord check_bounds(const GeneratorMatrix& G) {
  if (!is_minimal_code(G, Method::kGeometric).ok)
    throw NotMinimalCode("bound checks apply to minimal codes only");
  BoundCheckRecord r;
  r.n = G.n();
  r.k = G.k();
  r.q = G.field().q();
  r.minweight = min_weight(G);
  r.minweight_ok = r.minweight >= (r.k - 1) * (r.q - 1) + 1;
  r.length_q_ok = r.n >= r.q * (r.k - 1) + 1;
  r.length_q1_ok = r.n >= (r.q + 1) * (r.k - 1);
  r.all_ok = r.minweight_ok && r.length_q_ok && r.length_q1_ok;
  return r;
}

int covering_radius(const Field& f, const std::vector<Vec>& hrows, u64 cap) {
  if (hrows.empty() || hrows[0].empty()) throw DimensionMismatch("empty parity-check matrix");
  const unsigned r = unsigned(hrows.size());
  const unsigned n = unsigned(hrows[0].size());
  for (const auto& row : hrows)
    if (row.size() != n) throw DimensionMismatch("ragged parity-check matrix");
  const unsigned q = f.q();
  u64 total = 1;
  for (unsigned i = 0; i < r; ++i) {
    total *= q;
    if (total > cap)
      throw EnumerationTooLarge("syndrome space q^r exceeds the cap");
  }

  // syndrome -> index, base-q digits
  std::vector<u64> qpow(r + 1, 1);
  for (unsigned i = 0; i < r; ++i) qpow[i + 1] = qpow[i] * q;

  // column syndromes
  std::vector<Vec> cols(n, Vec(r));
  for (unsigned j = 0; j < n; ++j)
    for (unsigned i = 0; i < r; ++i) cols[j][i] = hrows[i][j];

  std::vector<int> dist(std::size_t(total), -1);
  dist[0] = 0;
  std::vector<u64> frontier = {0};
  u64 seen = 1;
  int radius = 0;
  Vec s(r), t(r);
  auto decode = [&](u64 idx, Vec& out) {
    for (unsigned i = 0; i < r; ++i) {
      out[i] = Elt(idx % q);
      idx /= q;
    }
  };
  auto encode = [&](const Vec& v) {
    u64 idx = 0;
    for (unsigned i = 0; i < r; ++i) idx += qpow[i] * v[i];
    return idx;
  };
  while (seen < total) {
    if (frontier.empty())
      throw RankDeficient("parity-check columns do not span the syndrome space");
    ++radius;
    std::vector<u64> next;
    for (u64 idx : frontier) {
      decode(idx, s);
      for (unsigned j = 0; j < n; ++j)
        for (unsigned lam = 1; lam < q; ++lam) {
          const Elt* mr = f.mul_row(Elt(lam));
          for (unsigned i = 0; i < r; ++i) t[i] = f.add(s[i], mr[cols[j][i]]);
          const u64 ti = encode(t);
          if (dist[ti] < 0) {
            dist[ti] = radius;
            next.push_back(ti);
            ++seen;
          }
        }
    }
    frontier = std::move(next);
  }
  return radius;
}

}  // namespace cutblock
