#include "cutblock/pg.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <string>

namespace cutblock {

namespace {
using u128 = unsigned __int128;

u64 checked_u64(u128 v, const char* what) {
  if (v > u128(~u64(0))) throw Error(std::string(what) + ": value exceeds 64 bits");
  return u64(v);
}
}  // namespace

u64 theta(int n, unsigned q) {
  if (n < 0) return 0;
  u128 acc = 0, pw = 1;
  for (int i = 0; i <= n; ++i) {
    acc += pw;
    pw *= q;
    if (acc > u128(~u64(0))) throw Error("theta: value exceeds 64 bits");
  }
  return u64(acc);
}

u64 gaussian_binomial(int n, int k, unsigned q) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  // iterate [n 1], [n 2], ..., [n k] via [n j] = [n j-1]*(q^(n-j+1)-1)/(q^j-1)
  u128 cur = 1;
  u128 qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;  // q^n; may be huge but fine up to 128 bits
  u128 qj = 1;
  u128 qtop = qn;  // q^(n-j+1) on step j
  for (int j = 1; j <= k; ++j) {
    qj *= q;
    u128 num = cur * (qtop - 1);
    if (cur != 0 && num / cur != (qtop - 1)) throw Error("gaussian_binomial: overflow");
    u128 den = qj - 1;
    if (num % den != 0) throw Error("gaussian_binomial: non-exact division (bug)");
    cur = num / den;
    qtop /= q;
  }
  return checked_u64(cur, "gaussian_binomial");
}

u64 count_superspaces(int n, int k, int m, unsigned q) {
  if (!(-1 <= k && k <= m && m <= n))
    throw DimensionMismatch("count_superspaces: need -1 <= k <= m <= n");
  return gaussian_binomial(n - k, n - m, q);
}

// ---- row matrix helpers ----

int rref_in_place(std::vector<Vec>& rows, const Field& f) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    if (rows[r][col] != 1) {
      const Elt s = f.inv(rows[r][col]);
      for (std::size_t j = col; j < ncols; ++j) rows[r][j] = f.mul(s, rows[r][j]);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const Elt c = rows[i][col];
      for (std::size_t j = col; j < ncols; ++j)
        rows[i][j] = f.sub(rows[i][j], f.mul(c, rows[r][j]));
    }
    ++r;
  }
  rows.resize(r);
  return int(r);
}

int rank_of_rows(std::vector<Vec> rows, const Field& f) { return rref_in_place(rows, f); }

std::vector<Vec> kernel_basis(const std::vector<Vec>& rows_in, unsigned ncols, const Field& f) {
  std::vector<Vec> rows = rows_in;
  rref_in_place(rows, f);
  std::vector<int> pivot_col(rows.size());
  std::vector<char> is_pivot(ncols, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    int c = 0;
    while (rows[i][c] == 0) ++c;
    pivot_col[i] = c;
    is_pivot[c] = 1;
  }
  std::vector<Vec> ker;
  for (unsigned fr = 0; fr < ncols; ++fr) {
    if (is_pivot[fr]) continue;
    Vec x(ncols, 0);
    x[fr] = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) x[pivot_col[i]] = f.neg(rows[i][fr]);
    ker.push_back(std::move(x));
  }
  rref_in_place(ker, f);  // canonical form
  return ker;
}

// ---- Geometry ----

Geometry::Geometry(int N, FieldPtr f) : N_(N), f_(std::move(f)) {
  if (N < 0) throw DimensionMismatch("projective dimension must be >= 0");
  qpow_.resize(N_ + 2);
  qpow_[0] = 1;
  for (int i = 1; i <= N_ + 1; ++i) {
    u128 v = u128(qpow_[i - 1]) * f_->q();
    qpow_[i] = checked_u64(v, "q^i");
  }
  npts_ = theta(N_, f_->q());
}

Point Geometry::normalize(Vec v) const {
  if (v.size() != std::size_t(N_ + 1))
    throw DimensionMismatch("coordinate vector has wrong length");
  std::size_t i = 0;
  while (i < v.size() && v[i] == 0) ++i;
  if (i == v.size()) throw ZeroVector("cannot normalize the zero vector");
  if (v[i] != 1) {
    const Elt s = f_->inv(v[i]);
    for (std::size_t j = i; j < v.size(); ++j) v[j] = f_->mul(s, v[j]);
  }
  return Point{std::move(v)};
}

Point Geometry::point_at(u64 idx) const {
  if (idx >= npts_) throw Error("point index out of range");
  // block i holds the points whose first nonzero coordinate sits at position i
  int i = 0;
  while (idx >= qpow_[N_ - i]) {
    idx -= qpow_[N_ - i];
    ++i;
  }
  Vec v(N_ + 1, 0);
  v[i] = 1;
  for (int k = N_; k > i; --k) {  // digits, least significant at coordinate N
    v[k] = Elt(idx % f_->q());
    idx /= f_->q();
  }
  return Point{std::move(v)};
}

u64 Geometry::point_index(const Point& pt) const {
  const Vec& v = pt.coords;
  if (v.size() != std::size_t(N_ + 1)) throw DimensionMismatch("point has wrong length");
  int i = 0;
  while (i <= N_ && v[i] == 0) ++i;
  if (i > N_) throw ZeroVector("zero vector is not a point");
  assert(v[i] == 1 && "point must be normalized");
  u64 idx = 0;
  for (int j = 0; j < i; ++j) idx += qpow_[N_ - j];
  u64 off = 0;
  for (int k = i + 1; k <= N_; ++k) off = off * f_->q() + v[k];
  return idx + off;
}

Elt Geometry::dot(const Vec& a, const Vec& b) const {
  Elt acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = f_->add(acc, f_->mul(a[i], b[i]));
  return acc;
}

Subspace Geometry::full_space() const {
  std::vector<Vec> rows(N_ + 1, Vec(N_ + 1, 0));
  for (int i = 0; i <= N_; ++i) rows[i][i] = 1;
  return Subspace(N_ + 1, std::move(rows));
}

Subspace Geometry::span(const std::vector<Point>& pts) const {
  std::vector<Vec> rows;
  rows.reserve(pts.size());
  for (const auto& p : pts) rows.push_back(p.coords);
  return span_rows(std::move(rows));
}

Subspace Geometry::span_rows(std::vector<Vec> rows) const {
  rref_in_place(rows, *f_);
  return Subspace(N_ + 1, std::move(rows));
}

Subspace Geometry::line_through(const Point& a, const Point& b) const {
  if (a == b) throw DegenerateLine("line through two equal points");
  return span({a, b});
}

std::vector<Point> Geometry::line_points(const Point& a, const Point& b) const {
  if (a == b) throw DegenerateLine("line through two equal points");
  std::vector<Point> out;
  out.reserve(f_->q() + 1);
  out.push_back(a);
  Vec v(N_ + 1);
  for (unsigned lam = 0; lam < f_->q(); ++lam) {
    for (int i = 0; i <= N_; ++i) v[i] = f_->add(b.coords[i], f_->mul(Elt(lam), a.coords[i]));
    out.push_back(normalize(v));
  }
  return out;
}

Subspace Geometry::hyperplane(const Point& dual) const {
  return Subspace(N_ + 1, kernel_basis({dual.coords}, N_ + 1, *f_));
}

Point Geometry::hyperplane_dual(const Subspace& h) const {
  if (h.dim() != N_ - 1) throw DimensionMismatch("not a hyperplane");
  auto ker = kernel_basis(h.basis(), N_ + 1, *f_);
  assert(ker.size() == 1);
  return normalize(ker[0]);
}

bool Geometry::contains(const Subspace& s, const Point& pt) const {
  // reduce pt against the RREF rows; contained iff the remainder vanishes
  Vec v = pt.coords;
  for (const Vec& row : s.basis()) {
    int c = 0;
    while (row[c] == 0) ++c;
    if (v[c] != 0) {
      const Elt s0 = v[c];
      for (int j = c; j <= N_; ++j) v[j] = f_->sub(v[j], f_->mul(s0, row[j]));
    }
  }
  return std::all_of(v.begin(), v.end(), [](Elt x) { return x == 0; });
}

bool Geometry::subspace_leq(const Subspace& a, const Subspace& b) const {
  if (a.dim() > b.dim()) return false;
  for (const Vec& row : a.basis())
    if (!contains(b, Point{row})) return false;
  return true;
}

Subspace Geometry::intersect(const Subspace& a, const Subspace& b) const {
  if (a.dim() < 0 || b.dim() < 0) return empty_subspace();
  const std::size_t ra = a.basis().size(), rb = b.basis().size();
  // solve c*A = d*B: kernel of the (N+1) x (ra+rb) system [A^T | -B^T]
  std::vector<Vec> sys(N_ + 1, Vec(ra + rb, 0));
  for (std::size_t j = 0; j < ra; ++j)
    for (int i = 0; i <= N_; ++i) sys[i][j] = a.basis()[j][i];
  for (std::size_t j = 0; j < rb; ++j)
    for (int i = 0; i <= N_; ++i) sys[i][ra + j] = f_->neg(b.basis()[j][i]);
  auto ker = kernel_basis(sys, unsigned(ra + rb), *f_);
  std::vector<Vec> rows;
  for (const Vec& cd : ker) {
    Vec y(N_ + 1, 0);
    for (std::size_t j = 0; j < ra; ++j)
      if (cd[j])
        for (int i = 0; i <= N_; ++i) y[i] = f_->add(y[i], f_->mul(cd[j], a.basis()[j][i]));
    rows.push_back(std::move(y));
  }
  rref_in_place(rows, *f_);
  return Subspace(N_ + 1, std::move(rows));
}

Subspace Geometry::extend_within(const Subspace& base, const Subspace& within,
                                 int target_dim) const {
  if (!subspace_leq(base, within) || target_dim > within.dim() || target_dim < base.dim())
    throw DimensionMismatch("extend_within: need base <= within and base.dim <= target <= within.dim");
  std::vector<Vec> rows = base.basis();
  int rank = int(rows.size());
  for (const Vec& cand : within.basis()) {
    if (rank == target_dim + 1) break;
    std::vector<Vec> probe = rows;
    probe.push_back(cand);
    if (rref_in_place(probe, *f_) > rank) {
      rows = std::move(probe);
      ++rank;
    }
  }
  assert(rank == target_dim + 1);
  return Subspace(N_ + 1, std::move(rows));
}

std::vector<Point> Geometry::subspace_points(const Subspace& s, u64 cap) const {
  const int d = s.dim();
  if (d < 0) return {};
  const u64 n = theta(d, f_->q());
  if (n > cap) throw EnumerationTooLarge("subspace has " + std::to_string(n) + " points");
  // run through the projective combinations of the basis rows; reuse the
  // block decomposition of point_at in the d+1 coordinates
  Geometry small(d, f_);
  std::vector<Point> out;
  out.reserve(n);
  Vec v(N_ + 1);
  for (u64 t = 0; t < n; ++t) {
    const Point c = small.point_at(t);
    std::fill(v.begin(), v.end(), 0);
    for (int j = 0; j <= d; ++j)
      if (c.coords[j])
        for (int i = 0; i <= N_; ++i)
          v[i] = f_->add(v[i], f_->mul(c.coords[j], s.basis()[j][i]));
    out.push_back(normalize(v));
  }
  return out;
}

std::vector<Point> Geometry::enumerate_points(u64 cap) const {
  if (npts_ > cap)
    throw EnumerationTooLarge("PG(" + std::to_string(N_) + "," + std::to_string(f_->q()) +
                              ") has " + std::to_string(npts_) + " points, cap " +
                              std::to_string(cap));
  std::vector<Point> out;
  out.reserve(npts_);
  for (u64 i = 0; i < npts_; ++i) out.push_back(point_at(i));
  return out;
}

std::vector<Subspace> Geometry::enumerate_subspaces(int d, u64 cap) const {
  if (d < -1 || d > N_) throw DimensionMismatch("subspace dimension out of range");
  if (d == -1) return {empty_subspace()};
  const u64 total = count_subspaces(d);
  if (total > cap)
    throw EnumerationTooLarge(std::to_string(total) + " subspaces of dimension " +
                              std::to_string(d) + ", cap " + std::to_string(cap));
  const int k = d + 1, n = N_ + 1;
  std::vector<Subspace> out;
  out.reserve(total);
  // all RREF shapes: pivot columns ascending, free entries right of the pivot
  // and outside pivot columns
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  const unsigned q = f_->q();
  for (;;) {
    std::vector<char> is_piv(n, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<std::pair<int, int>> free_pos;  // (row, col), row-major order
    for (int i = 0; i < k; ++i)
      for (int j = piv[i] + 1; j < n; ++j)
        if (!is_piv[j]) free_pos.emplace_back(i, j);
    std::vector<Elt> vals(free_pos.size(), 0);
    for (;;) {
      std::vector<Vec> rows(k, Vec(n, 0));
      for (int i = 0; i < k; ++i) rows[i][piv[i]] = 1;
      for (std::size_t t = 0; t < free_pos.size(); ++t)
        rows[free_pos[t].first][free_pos[t].second] = vals[t];
      out.emplace_back(n, std::move(rows));
      // odometer over the free entries, last position fastest
      std::size_t t = vals.size();
      while (t > 0) {
        if (++vals[t - 1] < q) break;
        vals[t - 1] = 0;
        --t;
      }
      if (t == 0) break;
    }
    // next pivot combination in lex order
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  assert(out.size() == total);
  return out;
}

const std::vector<Vec>* Geometry::coords_cache() const {
  constexpr u64 kCoordsCap = 65536;
  if (npts_ > kCoordsCap) return nullptr;
  std::call_once(coords_once_, [this] {
    std::vector<Vec> c;
    c.reserve(npts_);
    for (u64 i = 0; i < npts_; ++i) c.push_back(point_at(i).coords);
    coords_ = std::move(c);
  });
  return &*coords_;
}

const IncidenceCache* Geometry::incidence_cache() const {
  constexpr u64 kIncCap = 4096;
  if (npts_ > kIncCap) return nullptr;
  std::call_once(inc_once_, [this] {
    IncidenceCache ic;
    ic.n = npts_;
    ic.words_per_row = std::size_t((npts_ + 63) / 64);
    ic.coords.reserve(npts_);
    for (u64 i = 0; i < npts_; ++i) ic.coords.push_back(point_at(i).coords);
    ic.bits.assign(std::size_t(npts_) * ic.words_per_row, 0);
    for (u64 pt = 0; pt < npts_; ++pt)
      for (u64 h = 0; h < npts_; ++h)
        if (dot(ic.coords[pt], ic.coords[h]) == 0)
          ic.bits[pt * ic.words_per_row + h / 64] |= (u64(1) << (h % 64));
    inc_ = std::move(ic);
  });
  return &*inc_;
}

GeometryPtr make_geometry(int N, unsigned q) {
  static std::mutex mu;
  static std::map<std::pair<int, unsigned>, GeometryPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(N, q);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  GeometryPtr g = std::make_shared<Geometry>(N, make_field(q));
  cache.emplace(key, g);
  return g;
}

// ---- GF(2) packed helpers ----

u64 pack_gf2(const Point& pt) {
  u64 w = 0;
  for (std::size_t i = 0; i < pt.coords.size(); ++i)
    if (pt.coords[i]) w |= u64(1) << i;
  return w;
}

Point unpack_gf2(u64 word, int N) {
  Vec v(N + 1, 0);
  for (int i = 0; i <= N; ++i) v[i] = Elt((word >> i) & 1);
  return Point{std::move(v)};
}

int rank_gf2(std::vector<u64> words) {
  u64 basis[64] = {0};  // basis[b] has highest set bit b
  int rank = 0;
  for (u64 w : words) {
    while (w) {
      const int b = 63 - __builtin_clzll(w);
      if (basis[b] == 0) {
        basis[b] = w;
        ++rank;
        break;
      }
      w ^= basis[b];
    }
  }
  return rank;
}

}  // namespace cutblock
