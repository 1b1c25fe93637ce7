#pragma once
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "cutblock/gf.hpp"

namespace cutblock {

using Vec = std::vector<Elt>;
using u64 = std::uint64_t;

// default ceiling on the size of any explicit enumeration
inline constexpr u64 kDefaultEnumCap = 10'000'000;

// theta(n, q) = |PG(n, q)| = q^n + ... + q + 1; theta(-1) = 0 by convention.
u64 theta(int n, unsigned q);

// Gaussian binomial coefficient [n k]_q; zero when k < 0 or k > n.
// Overflow beyond 64 bits raises Error.
u64 gaussian_binomial(int n, int k, unsigned q);

// Number of m-dimensional subspaces of PG(n, q) through a fixed k-dimensional
// subspace: gaussian_binomial(n-k, n-m, q).  Requires -1 <= k <= m <= n.
u64 count_superspaces(int n, int k, int m, unsigned q);

// ---- generic row-matrix helpers (rows over a field) ----

// Reduce rows to canonical reduced row echelon form in place (pivots 1,
// pivot columns cleared, rows ordered by pivot, zero rows dropped).
// Returns the rank.
int rref_in_place(std::vector<Vec>& rows, const Field& f);

int rank_of_rows(std::vector<Vec> rows, const Field& f);

// Basis (canonical RREF) of { x : rows * x = 0 }, x of length ncols.
std::vector<Vec> kernel_basis(const std::vector<Vec>& rows, unsigned ncols, const Field& f);

// A projective point: normalized homogeneous coordinates (first nonzero
// coordinate equals 1).
struct Point {
  Vec coords;
  bool operator==(const Point&) const = default;
  auto operator<=>(const Point&) const = default;
};

// A projective subspace held as its canonical RREF basis.  dim() is the
// projective dimension: -1 for the empty subspace, 0 for points, ...
class Subspace {
 public:
  Subspace() = default;
  Subspace(unsigned ambient, std::vector<Vec> rref_rows)
      : ambient_(ambient), rows_(std::move(rref_rows)) {}
  int dim() const { return int(rows_.size()) - 1; }
  unsigned ambient() const { return ambient_; }  // N+1 coordinates
  const std::vector<Vec>& basis() const { return rows_; }
  bool operator==(const Subspace&) const = default;
  auto operator<=>(const Subspace&) const = default;

 private:
  unsigned ambient_ = 0;
  std::vector<Vec> rows_;
};

// Optional per-geometry caches for the verification inner loops.
struct IncidenceCache {
  u64 n = 0;                         // number of points == number of hyperplanes
  std::size_t words_per_row = 0;
  std::vector<Vec> coords;           // coords[id] = coordinates of point id
  std::vector<u64> bits;             // bit (pt, h): point pt lies on hyperplane h
  bool incident(u64 pt, u64 h) const {
    return (bits[pt * words_per_row + h / 64] >> (h % 64)) & 1u;
  }
};

class Geometry;
using GeometryPtr = std::shared_ptr<const Geometry>;

// PG(N, q).  Immutable and shared; obtain via make_geometry.
class Geometry {
 public:
  int N() const { return N_; }
  unsigned q() const { return f_->q(); }
  const Field& field() const { return *f_; }
  FieldPtr field_ptr() const { return f_; }
  u64 num_points() const { return npts_; }

  // ---- points ----
  Point normalize(Vec v) const;                      // throws ZeroVector
  Point point_at(u64 idx) const;                     // bijection with 0..theta(N)-1
  u64 point_index(const Point& pt) const;
  Elt dot(const Vec& a, const Vec& b) const;
  bool incident(const Point& x, const Point& dual) const { return dot(x.coords, dual.coords) == 0; }

  // ---- subspaces ----
  Subspace empty_subspace() const { return Subspace(N_ + 1, {}); }
  Subspace full_space() const;
  Subspace span(const std::vector<Point>& pts) const;
  Subspace span_rows(std::vector<Vec> rows) const;
  Subspace line_through(const Point& a, const Point& b) const;  // throws DegenerateLine
  std::vector<Point> line_points(const Point& a, const Point& b) const;
  Subspace hyperplane(const Point& dual) const;      // kernel of the dual vector
  Point hyperplane_dual(const Subspace& h) const;    // inverse of the above
  bool contains(const Subspace& s, const Point& pt) const;
  bool subspace_leq(const Subspace& a, const Subspace& b) const;
  Subspace intersect(const Subspace& a, const Subspace& b) const;
  // deterministic completion: smallest subspace chain base <= result <= within
  // of projective dimension target_dim (greedy over within's basis rows)
  Subspace extend_within(const Subspace& base, const Subspace& within, int target_dim) const;
  std::vector<Point> subspace_points(const Subspace& s, u64 cap = kDefaultEnumCap) const;

  // ---- enumeration (deterministic order) ----
  std::vector<Point> enumerate_points(u64 cap = kDefaultEnumCap) const;
  u64 count_subspaces(int d) const { return gaussian_binomial(N_ + 1, d + 1, f_->q()); }
  std::vector<Subspace> enumerate_subspaces(int d, u64 cap = kDefaultEnumCap) const;

  // ---- caches (lazily built; null when the space is too large) ----
  const IncidenceCache* incidence_cache() const;
  const std::vector<Vec>* coords_cache() const;

  explicit Geometry(int N, FieldPtr f);

 private:
  int N_;
  FieldPtr f_;
  u64 npts_;
  std::vector<u64> qpow_;  // q^0 .. q^(N+1)

  mutable std::once_flag coords_once_, inc_once_;
  mutable std::optional<std::vector<Vec>> coords_;
  mutable std::optional<IncidenceCache> inc_;
};

GeometryPtr make_geometry(int N, unsigned q);

// ---- GF(2) bit-packed helpers (hot paths) ----
u64 pack_gf2(const Point& pt);
Point unpack_gf2(u64 word, int N);
// word-parallel elimination; returns rank
int rank_gf2(std::vector<u64> words);

}  // namespace cutblock
