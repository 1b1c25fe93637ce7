#include "cutblock/cutcheck.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <string>

namespace cutblock {

namespace {

// incremental echelon basis over a general field; rows keep their pivot
// normalized to 1 and the pivot columns of previously stored rows cleared
struct Echelon {
  const Field* f = nullptr;
  std::vector<Vec> rows;
  std::vector<int> piv;
  int rank = 0;

  void reset(const Field& fld, std::size_t ncols, std::size_t capacity) {
    f = &fld;
    if (rows.size() < capacity) {
      rows.resize(capacity, Vec(ncols, 0));
      piv.resize(capacity, -1);
    }
    for (auto& r : rows)
      if (r.size() != ncols) r.assign(ncols, 0);
    rank = 0;
  }

  // returns true if v enlarged the span
  bool insert(const Vec& v) {
    Vec& buf = rows[rank];
    buf = v;
    const std::size_t n = buf.size();
    for (int j = 0; j < rank; ++j) {
      const Elt c = buf[std::size_t(piv[j])];
      if (c == 0) continue;
      const Vec& rj = rows[std::size_t(j)];
      const Elt* mr = f->mul_row(c);
      for (std::size_t t = 0; t < n; ++t)
        if (rj[t]) buf[t] = f->sub(buf[t], mr[rj[t]]);
    }
    std::size_t c = 0;
    while (c < n && buf[c] == 0) ++c;
    if (c == n) return false;
    if (buf[c] != 1) {
      const Elt* mr = f->mul_row(f->inv(buf[c]));
      for (std::size_t t = c; t < n; ++t) buf[t] = mr[buf[t]];
    }
    piv[std::size_t(rank)] = int(c);
    ++rank;
    return true;
  }
};

bool parity_incident(u64 point_word, u64 dual_word) {
  return (__builtin_popcountll(point_word & dual_word) & 1) == 0;
}

}  // namespace

// ---- PointSet / LineSet ----

PointSet PointSet::of(GeometryPtr g, std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return PointSet{std::move(g), std::move(pts)};
}

bool PointSet::contains(const Point& p) const {
  return std::binary_search(pts.begin(), pts.end(), p);
}

PointSet line_set_union(const LineSet& L) {
  std::vector<Point> all;
  for (const auto& ell : L.lines) {
    auto pts = L.g->subspace_points(ell);
    all.insert(all.end(), pts.begin(), pts.end());
  }
  return PointSet::of(L.g, std::move(all));
}

// ---- witnessed checks ----

static Witness hyperplane_pair_witness(const Geometry& g, const PointSet& S, u64 dual_id) {
  const Point dual = g.point_at(dual_id);
  const Subspace H = g.hyperplane(dual);
  std::vector<Point> members;
  for (const auto& p : S.pts)
    if (g.incident(p, dual)) members.push_back(p);
  const Subspace R = g.span(members);
  const Subspace Hp = g.extend_within(R, H, g.N() - 2);
  return Witness{WitnessKind::kHyperplanePair, H, Hp, std::nullopt};
}

CheckResult is_cutting_t_blocking(const PointSet& S, int t, u64 cap) {
  const Geometry& g = *S.g;
  const int N = g.N();
  if (t < 1 || t > N) throw DimensionMismatch("cutting parameter t must satisfy 1 <= t <= N");

  if (t == 1) {
    // hyperplanes via their dual points, ascending id; incremental rank with
    // early abort once the hyperplane is spanned
    const u64 n = g.num_points();
    if (g.q() == 2) {
      std::vector<u64> sw;
      sw.reserve(S.size());
      for (const auto& p : S.pts) sw.push_back(pack_gf2(p));
      for (u64 h = 0; h < n; ++h) {
        const u64 uw = pack_gf2(g.point_at(h));
        u64 basis[64] = {0};
        int rank = 0;
        for (u64 w : sw) {
          if (!parity_incident(w, uw)) continue;
          while (w) {
            const int b = 63 - __builtin_clzll(w);
            if (basis[b]) {
              w ^= basis[b];
            } else {
              basis[b] = w;
              ++rank;
              break;
            }
          }
          if (rank == N) break;
        }
        if (rank < N)
          return CheckResult{false, hyperplane_pair_witness(g, S, h)};
      }
      return CheckResult{true, std::nullopt};
    }
    Echelon ech;
    for (u64 h = 0; h < n; ++h) {
      const Point dual = g.point_at(h);
      ech.reset(g.field(), std::size_t(N + 1), std::size_t(N + 1));
      for (const auto& p : S.pts) {
        if (g.dot(p.coords, dual.coords) != 0) continue;
        ech.insert(p.coords);
        if (ech.rank == N) break;
      }
      if (ech.rank < N)
        return CheckResult{false, hyperplane_pair_witness(g, S, h)};
    }
    return CheckResult{true, std::nullopt};
  }

  // general t: scan all subspaces of dimension N-t
  const auto subspaces = g.enumerate_subspaces(N - t, cap);
  for (const auto& lam : subspaces) {
    std::vector<Point> members;
    for (const auto& p : S.pts)
      if (g.contains(lam, p)) members.push_back(p);
    const Subspace sp = g.span(members);
    if (sp.dim() < lam.dim())
      return CheckResult{false,
                         Witness{WitnessKind::kLowDimTransversal, lam, sp, std::nullopt}};
  }
  return CheckResult{true, std::nullopt};
}

CheckResult is_t_fold_r_blocking(const PointSet& S, int t, int r, u64 cap) {
  const Geometry& g = *S.g;
  const int N = g.N();
  if (r < 1 || r > N) throw DimensionMismatch("blocking codimension r must satisfy 1 <= r <= N");
  if (t < 1) throw DimensionMismatch("multiplicity t must be positive");

  if (r == 1) {
    const u64 n = g.num_points();
    for (u64 h = 0; h < n; ++h) {
      const Point dual = g.point_at(h);
      int cnt = 0;
      for (const auto& p : S.pts) {
        if (g.incident(p, dual) && ++cnt >= t) break;
      }
      if (cnt < t)
        return CheckResult{
            false, Witness{WitnessKind::kThinSubspace, g.hyperplane(dual), std::nullopt,
                           std::nullopt}};
    }
    return CheckResult{true, std::nullopt};
  }

  const auto subspaces = g.enumerate_subspaces(N - r, cap);
  for (const auto& lam : subspaces) {
    int cnt = 0;
    for (const auto& p : S.pts) {
      if (g.contains(lam, p) && ++cnt >= t) break;
    }
    if (cnt < t)
      return CheckResult{false,
                         Witness{WitnessKind::kThinSubspace, lam, std::nullopt, std::nullopt}};
  }
  return CheckResult{true, std::nullopt};
}

// ---- fast verdict context ----

CuttingContext::CuttingContext(GeometryPtr g) : g_(std::move(g)) {
  const u64 n = g_->num_points();
  if (n > (u64(1) << 22))
    throw EnumerationTooLarge("geometry too large for indexed cutting verdicts");
  order_.resize(std::size_t(n));
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = std::uint32_t(i);
  if (g_->q() == 2) {
    gf2_ = true;
    words_.reserve(std::size_t(n));
    for (u64 i = 0; i < n; ++i) words_.push_back(pack_gf2(g_->point_at(i)));
  } else {
    inc_ = g_->incidence_cache();
    if (!inc_) {
      const auto* cc = g_->coords_cache();
      if (cc == nullptr) {
        own_coords_.reserve(std::size_t(n));
        for (u64 i = 0; i < n; ++i) own_coords_.push_back(g_->point_at(i).coords);
      }
    }
  }
}

const Vec& CuttingContext::coords_of(std::uint32_t id) const {
  if (inc_) return inc_->coords[id];
  const auto* cc = g_->coords_cache();
  if (cc) return (*cc)[id];
  return own_coords_[id];
}

bool CuttingContext::cutting_verdict(const std::vector<std::uint32_t>& ids) {
  const int N = g_->N();
  const std::size_t n = order_.size();

  if (gf2_) {
    u64 basis[64] = {0};
    int used[64];
    // small local copy of the packed set
    static thread_local std::vector<u64> sw;
    sw.clear();
    for (auto id : ids) sw.push_back(words_[id]);
    for (std::size_t pos = 0; pos < n; ++pos) {
      const std::uint32_t h = order_[pos];
      const u64 uw = words_[h];
      int rank = 0;
      for (u64 w : sw) {
        if (!parity_incident(w, uw)) continue;
        while (w) {
          const int b = 63 - __builtin_clzll(w);
          if (basis[b]) {
            w ^= basis[b];
          } else {
            basis[b] = w;
            used[rank++] = b;
            break;
          }
        }
        if (rank == N) break;
      }
      if (rank < N) {
        // move-to-front so adversarial hyperplanes are probed early
        std::rotate(order_.begin(), order_.begin() + pos, order_.begin() + pos + 1);
        return false;
      }
      for (int s = 0; s < rank; ++s) basis[used[s]] = 0;
    }
    return true;
  }

  Echelon ech;
  ech.f = &g_->field();
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::uint32_t h = order_[pos];
    ech.reset(g_->field(), std::size_t(N + 1), std::size_t(N + 1));
    if (inc_) {
      for (auto id : ids) {
        if (!inc_->incident(id, h)) continue;
        ech.insert(inc_->coords[id]);
        if (ech.rank == N) break;
      }
    } else {
      const Vec& dual = coords_of(h);
      for (auto id : ids) {
        const Vec& pc = coords_of(id);
        if (g_->dot(pc, dual) != 0) continue;
        ech.insert(pc);
        if (ech.rank == N) break;
      }
    }
    if (ech.rank < N) {
      std::rotate(order_.begin(), order_.begin() + pos, order_.begin() + pos + 1);
      return false;
    }
  }
  return true;
}

void CuttingContext::line_point_ids(std::uint32_t a, std::uint32_t b,
                                    std::vector<std::uint32_t>& out) const {
  if (a == b) throw DegenerateLine("line through two equal points");
  out.clear();
  const int N = g_->N();
  if (gf2_) {
    const u64 wa = words_[a], wb = words_[b];
    const u64 wc = wa ^ wb;
    // id of a packed word: block of the lowest set bit, then the higher
    // coordinates as digits (most significant at the low coordinate side)
    auto id_of = [&](u64 w) -> std::uint32_t {
      int i = __builtin_ctzll(w);
      u64 idx = 0;
      for (int j = 0; j < i; ++j) idx += u64(1) << (N - j);
      u64 off = 0;
      for (int k = i + 1; k <= N; ++k) off = (off << 1) | ((w >> k) & 1);
      return std::uint32_t(idx + off);
    };
    out.push_back(a);
    out.push_back(b);
    out.push_back(id_of(wc));
    return;
  }
  const Vec& ca = coords_of(a);
  const Vec& cb = coords_of(b);
  out.push_back(a);
  const Field& f = g_->field();
  Vec v(std::size_t(N + 1));
  for (unsigned lam = 0; lam < f.q(); ++lam) {
    const Elt* mr = f.mul_row(Elt(lam));
    for (int i = 0; i <= N; ++i) v[std::size_t(i)] = f.add(cb[std::size_t(i)], mr[ca[std::size_t(i)]]);
    out.push_back(std::uint32_t(g_->point_index(g_->normalize(v))));
  }
}

// ---- affine / higgledy-piggledy ----

bool is_affine_blocking_complement(const PointSet& S, const Subspace& H) {
  const Geometry& g = *S.g;
  if (H.dim() != g.N() - 1) throw DimensionMismatch("H must be a hyperplane");
  std::vector<Point> aff;
  for (const auto& p : S.pts)
    if (!g.contains(H, p)) aff.push_back(p);
  const Point dual_h = g.hyperplane_dual(H);
  const u64 n = g.num_points();
  for (u64 h = 0; h < n; ++h) {
    const Point dual = g.point_at(h);
    if (dual == dual_h) continue;
    bool hit = false;
    for (const auto& p : aff)
      if (g.incident(p, dual)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

CheckResult is_higgledy_piggledy(const LineSet& L) {
  for (const auto& ell : L.lines)
    if (ell.dim() != 1) throw DimensionMismatch("line set contains a non-line");
  return is_cutting_t_blocking(line_set_union(L), 1);
}

LineSet reduce_to_minimal_hp(const LineSet& L) {
  if (!is_higgledy_piggledy(L).ok)
    throw NotHiggledyPiggledy("input line set is not higgledy-piggledy");
  LineSet cur = L;
  bool removed = true;
  while (removed) {
    removed = false;
    for (std::size_t i = 0; i < cur.lines.size(); ++i) {
      LineSet cand{cur.g, {}};
      cand.lines.reserve(cur.lines.size() - 1);
      for (std::size_t k = 0; k < cur.lines.size(); ++k)
        if (k != i) cand.lines.push_back(cur.lines[k]);
      if (is_higgledy_piggledy(cand).ok) {
        cur = std::move(cand);
        removed = true;
        break;
      }
    }
  }
  return cur;
}

Codim2Transversal find_codim2_transversal(const LineSet& L, std::size_t j) {
  if (j >= L.lines.size()) throw DimensionMismatch("line index out of range");
  LineSet rest{L.g, {}};
  for (std::size_t k = 0; k < L.lines.size(); ++k)
    if (k != j) rest.lines.push_back(L.lines[k]);
  const CheckResult res = is_higgledy_piggledy(rest);
  if (res.ok)
    throw NotMinimal("line set stays higgledy-piggledy without line " + std::to_string(j));
  assert(res.witness && res.witness->kind == WitnessKind::kHyperplanePair);
  // the union of the remaining lines meets the witness hyperplane H only
  // inside Hp, so Hp meets every remaining line and H confines them to Hp
  return Codim2Transversal{*res.witness->Hp, *res.witness->H};
}

LineSet tetrahedron_lines(GeometryPtr g) {
  const int N = g->N();
  if (N < 1) throw DimensionMismatch("need N >= 1");
  std::vector<Point> frame;
  for (int i = 0; i <= N; ++i) {
    Vec v(std::size_t(N + 1), 0);
    v[std::size_t(i)] = 1;
    frame.push_back(Point{std::move(v)});
  }
  LineSet out{g, {}};
  for (int i = 0; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) out.lines.push_back(g->line_through(frame[i], frame[j]));
  return out;
}

// ---- saturation ----

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

// marks every point covered by the span of some s-subset of S; returns the
// first uncovered point id, or -1 when covered
long long first_uncovered(const PointSet& S, int s, u64 cap) {
  const Geometry& g = *S.g;
  const u64 n = g.num_points();
  if (n > cap) throw EnumerationTooLarge("too many points to saturate-check");
  if (s <= 0 || S.size() == 0) return n == 0 ? -1 : 0;
  const int m = int(S.size());
  const int ss = std::min(s, m);
  if (binom_capped(u64(m), u64(ss), cap) > cap)
    throw EnumerationTooLarge("too many subsets to saturate-check");
  std::vector<char> covered(std::size_t(n), 0);
  u64 left = n;
  std::vector<int> idx(static_cast<std::size_t>(ss));
  for (int i = 0; i < ss; ++i) idx[std::size_t(i)] = i;
  std::vector<Point> tuple(static_cast<std::size_t>(ss));
  for (;;) {
    for (int i = 0; i < ss; ++i) tuple[std::size_t(i)] = S.pts[std::size_t(idx[std::size_t(i)])];
    const Subspace sp = g.span(tuple);
    for (const auto& p : g.subspace_points(sp, cap)) {
      char& c = covered[std::size_t(g.point_index(p))];
      if (!c) {
        c = 1;
        if (--left == 0) return -1;
      }
    }
    // next combination
    int i = ss - 1;
    while (i >= 0 && idx[std::size_t(i)] == m - ss + i) --i;
    if (i < 0) break;
    ++idx[std::size_t(i)];
    for (int j = i + 1; j < ss; ++j) idx[std::size_t(j)] = idx[std::size_t(j - 1)] + 1;
  }
  for (u64 t = 0; t < n; ++t)
    if (!covered[std::size_t(t)]) return (long long)t;
  return -1;
}

}  // namespace

SaturatingResult is_rho_saturating(const PointSet& S, int rho, u64 cap) {
  const Geometry& g = *S.g;
  if (rho < 0 || rho > g.N()) throw DimensionMismatch("rho out of range");
  SaturatingResult out;
  const long long miss = first_uncovered(S, rho + 1, cap);
  out.covered = (miss < 0);
  if (!out.covered)
    out.witness = Witness{WitnessKind::kUnsaturatedPoint, std::nullopt, std::nullopt,
                          g.point_at(u64(miss))};
  if (rho == 0) {
    out.minimal = g.num_points() > 0;
  } else {
    out.minimal = first_uncovered(S, rho, cap) >= 0;
  }
  out.ok = out.covered && out.minimal;
  return out;
}

PointSet lift_to_extension(const PointSet& S, int rho) {
  if (rho < 0) throw DimensionMismatch("rho must be nonnegative");
  const Geometry& g = *S.g;
  u64 big_q = 1;
  for (int i = 0; i <= rho; ++i) {
    big_q *= g.q();
    if (big_q > kMaxFieldOrder)
      throw FieldTooLarge("extension order " + std::to_string(big_q) + " exceeds the cap");
  }
  GeometryPtr big = make_geometry(g.N(), unsigned(big_q));
  const Field& from = g.field();
  const Field& to = big->field();
  std::vector<Point> lifted;
  lifted.reserve(S.size());
  for (const auto& p : S.pts) {
    Vec v(p.coords.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = embed_subfield(from, to, p.coords[i]);
    lifted.push_back(big->normalize(std::move(v)));
  }
  return PointSet::of(big, std::move(lifted));
}

// ---- audits ----

bool affine_complement_bound_holds(const PointSet& S) {
  const Geometry& g = *S.g;
  const u64 n = g.num_points();
  const long long need = (long long)g.N() * (g.q() - 1) + 1;
  for (u64 h = 0; h < n; ++h) {
    const Point dual = g.point_at(h);
    long long cnt = 0;
    for (const auto& p : S.pts)
      if (!g.incident(p, dual)) ++cnt;
    if (cnt < need) return false;
  }
  return true;
}

HpHyperplaneAudit hp_hyperplane_bound_audit(const LineSet& L) {
  const Geometry& g = *L.g;
  const u64 n = g.num_points();
  const long long slack = (long long)(g.N() - 1) / g.q();
  HpHyperplaneAudit out;
  for (u64 h = 0; h < n; ++h) {
    const Point dual = g.point_at(h);
    int t = 0;
    for (const auto& ell : L.lines) {
      bool inside = true;
      for (const auto& row : ell.basis())
        if (g.dot(row, dual.coords) != 0) {
          inside = false;
          break;
        }
      if (inside) ++t;
    }
    if (t > out.worst_t) {
      out.worst_t = t;
      out.worst_hyperplane = h;
    }
    if (t >= 1 && (long long)L.size() < (long long)g.N() + t - slack) out.ok = false;
  }
  return out;
}

}  // namespace cutblock
