#pragma once
#include <optional>
#include <vector>

#include "cutblock/cutcheck.hpp"

namespace cutblock {

// Full-rank k x n generator matrix over GF(q).  The geometric view S(G) is
// the multiset of column points in PG(k-1, q).
class GeneratorMatrix {
 public:
  // rows: k rows of length n; throws RankDeficient unless rank == k
  GeneratorMatrix(FieldPtr f, std::vector<Vec> rows);

  unsigned k() const { return k_; }
  unsigned n() const { return n_; }
  const Field& field() const { return *f_; }
  FieldPtr field_ptr() const { return f_; }
  const std::vector<Vec>& rows() const { return rows_; }
  GeometryPtr geometry() const;  // PG(k-1, q)

  bool is_nondegenerate() const;  // no zero column
  bool is_projective() const;     // no column a scalar multiple of another

  // columns as points, in column order (multiset); throws ZeroVector on a
  // zero column
  std::vector<Point> column_points() const;
  // deduplicated underlying set S(G)
  PointSet column_set() const;

  Vec encode(const Vec& u) const;  // u * G, u of length k

 private:
  FieldPtr f_;
  unsigned k_, n_;
  std::vector<Vec> rows_;
};

// columns = the points of S in canonical order; throws RankDeficient when S
// does not span PG(k-1, q)
GeneratorMatrix code_from_pointset(const PointSet& S);
PointSet pointset_from_generator(const GeneratorMatrix& G);

enum class Method { kGeometric, kBruteForce };
enum class CodewordProperty { kMinimal, kMaximal };

// minimal: no other codeword's support sits strictly inside supp(uG)
// (scalar multiples excepted); maximal: dually, no support strictly above.
// Geometric forms: minimal <=> span(S ∩ Λ_u) = Λ_u with Λ_u the hyperplane
// dual to u; maximal <=> S \ Λ_u blocks every other hyperplane.
bool codeword_test(const GeneratorMatrix& G, const Vec& u, CodewordProperty which, Method method);

struct MinimalCodeResult {
  bool ok = false;
  std::optional<Vec> failing_u;  // a non-minimal codeword class when !ok
  explicit operator bool() const { return ok; }
};
MinimalCodeResult is_minimal_code(const GeneratorMatrix& G, Method method);

unsigned min_weight(const GeneratorMatrix& G);

struct BoundCheckRecord {
  unsigned n = 0, k = 0, q = 0;
  unsigned minweight = 0;
  bool minweight_ok = false;  // minweight >= (k-1)(q-1)+1
  bool length_q_ok = false;   // n >= q(k-1)+1
  bool length_q1_ok = false;  // n >= (q+1)(k-1)
  bool all_ok = false;
};
// throws NotMinimalCode when G is not a (verified) minimal code
BoundCheckRecord check_bounds(const GeneratorMatrix& G);

// Smallest R such that every syndrome in GF(q)^r is a combination of at most
// R columns of H (r x n).  Breadth-first closure over the q^r syndromes;
// throws EnumerationTooLarge when q^r > cap and RankDeficient when the
// columns do not span GF(q)^r.
int covering_radius(const Field& f, const std::vector<Vec>& hrows, u64 cap = kDefaultEnumCap);

}  // namespace cutblock
