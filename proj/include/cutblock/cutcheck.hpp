#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "cutblock/pg.hpp"

namespace cutblock {

// Duplicate-free point set, stored sorted (lexicographic coordinates) so the
// representation is canonical.
struct PointSet {
  GeometryPtr g;
  std::vector<Point> pts;

  static PointSet of(GeometryPtr g, std::vector<Point> pts);
  std::size_t size() const { return pts.size(); }
  bool contains(const Point& p) const;
};

// Multiset of lines (or higher subspaces), kept in insertion order; duplicates
// are allowed and preserved.
struct LineSet {
  GeometryPtr g;
  std::vector<Subspace> lines;
  std::size_t size() const { return lines.size(); }
};

PointSet line_set_union(const LineSet& L);

enum class WitnessKind {
  kHyperplanePair,     // (H, Hp): S∩H ⊆ Hp ⊂ H, i.e. S misses H \ Hp
  kThinSubspace,       // subspace carrying fewer than t points of S
  kLowDimTransversal,  // subspace whose points of S fail to span it
  kUnsaturatedPoint,   // point outside every (rho+1)-subset span
};

struct Witness {
  WitnessKind kind;
  std::optional<Subspace> H;   // offending subspace
  std::optional<Subspace> Hp;  // secondary subspace (pair kinds)
  std::optional<Point> pt;
};

struct CheckResult {
  bool ok = false;
  std::optional<Witness> witness;  // first failure in enumeration order
  explicit operator bool() const { return ok; }
};

// every subspace of dimension N-r carries at least t points of S
CheckResult is_t_fold_r_blocking(const PointSet& S, int t, int r, u64 cap = kDefaultEnumCap);

// cutting t-blocking: span(S ∩ Λ) = Λ for every subspace Λ of dimension N-t;
// equivalently S is an (N-t+1)-fold strong blocking set
CheckResult is_cutting_t_blocking(const PointSet& S, int t, u64 cap = kDefaultEnumCap);

// ---- verdict-only fast path for search inner loops (t = 1) ----
// Holds per-geometry lookup data, reusable scratch, and a move-to-front
// hyperplane order (recently failing hyperplanes are probed first; the
// verdict itself is order-independent).
class CuttingContext {
 public:
  explicit CuttingContext(GeometryPtr g);
  const Geometry& geometry() const { return *g_; }
  GeometryPtr geometry_ptr() const { return g_; }
  // S as sorted unique point indices
  bool cutting_verdict(const std::vector<std::uint32_t>& ids);
  // point ids of the line through two distinct points
  void line_point_ids(std::uint32_t a, std::uint32_t b, std::vector<std::uint32_t>& out) const;
  const Vec& coords_of(std::uint32_t id) const;

 private:
  GeometryPtr g_;
  bool gf2_ = false;
  std::vector<u64> words_;            // q = 2: packed coordinates per point id
  const IncidenceCache* inc_ = nullptr;
  std::vector<Vec> own_coords_;       // fallback when no cache applies
  std::vector<std::uint32_t> order_;  // hyperplane probe order (MTF)
  // elimination scratch
  std::vector<Vec> erows_;
  std::vector<int> epiv_;
};

// S \ H blocks every hyperplane of the affine space PG \ H
bool is_affine_blocking_complement(const PointSet& S, const Subspace& H);

CheckResult is_higgledy_piggledy(const LineSet& L);

// greedily drop lines (ascending index, repeated passes) while the remainder
// stays higgledy-piggledy; throws NotHiggledyPiggledy if L itself is not
LineSet reduce_to_minimal_hp(const LineSet& L);

// For minimal higgledy-piggledy L and an index j: a codimension-2 subspace
// meeting every line of L except possibly the j-th, together with a
// hyperplane H ⊇ Λ such that any line of L \ {ℓ_j} inside H lies inside Λ.
// Throws NotMinimal when L \ {ℓ_j} is still higgledy-piggledy.
struct Codim2Transversal {
  Subspace lambda;
  Subspace H;
};
Codim2Transversal find_codim2_transversal(const LineSet& L, std::size_t j);

// the C(N+1,2) lines joining the standard frame points e_0, ..., e_N
LineSet tetrahedron_lines(GeometryPtr g);

// rho-saturating check; `covered` and `minimal` split the two halves of the
// property (spans of (rho+1)-subsets cover everything; rho-1 does not suffice)
struct SaturatingResult {
  bool covered = false;
  bool minimal = false;
  bool ok = false;  // covered && minimal
  std::optional<Witness> witness;
};
SaturatingResult is_rho_saturating(const PointSet& S, int rho, u64 cap = kDefaultEnumCap);

// re-encode S over GF(q^(rho+1)) via the canonical subfield embedding
PointSet lift_to_extension(const PointSet& S, int rho);

// audit: |S \ H| >= N(q-1)+1 for every hyperplane H (affine blocking size)
bool affine_complement_bound_holds(const PointSet& S);

// audit: every hyperplane containing t >= 1 lines of L satisfies
// |L| >= N + t - floor((N-1)/q)
struct HpHyperplaneAudit {
  bool ok = true;
  int worst_t = 0;          // largest line count seen in any hyperplane
  u64 worst_hyperplane = 0; // id of a hyperplane attaining worst_t
};
HpHyperplaneAudit hp_hyperplane_bound_audit(const LineSet& L);

}  // namespace cutblock
