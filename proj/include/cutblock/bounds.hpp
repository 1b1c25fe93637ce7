#pragma once
#include <mpfr.h>

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

#include "cutblock/pg.hpp"

namespace cutblock {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline constexpr long kDefaultPrec = 192;  // bits of working precision

// overflow-free counterparts of theta() and gaussian_binomial()
BigInt theta_z(int n, unsigned q);
BigInt gauss_z(int n, int k, unsigned q);

// Interval arithmetic with directed rounding on MPFR: the lower endpoint
// always rounds down and the upper endpoint up, so the represented real is
// enclosed throughout a computation.  A bound evaluated this way can be
// reported conservatively (upper bounds from hi(), lower bounds from lo())
// and never overclaims because of rounding.
class Interval {
 public:
  explicit Interval(long prec = kDefaultPrec);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(Interval o);
  ~Interval();

  static Interval of(long v, long prec = kDefaultPrec);
  static Interval of(const BigInt& v, long prec = kDefaultPrec);
  static Interval of(const Rational& v, long prec = kDefaultPrec);

  long prec() const { return prec_; }
  double lo() const;  // rounded toward -inf
  double hi() const;  // rounded toward +inf

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;

  Interval ln() const;        // requires a strictly positive interval
  Interval exp() const;
  Interval pow(long e) const;  // integer exponent; base must be positive

  BigInt ceil_exact() const;   // throws Error if the endpoints disagree
  BigInt floor_exact() const;

  bool certainly_less(const Rational& r) const;     // hi < r
  bool certainly_greater(const Rational& r) const;  // lo > r
  bool certainly_positive() const;                  // lo > 0

 private:
  mpfr_t lo_, hi_;
  long prec_;
  friend class IntervalTestPeek;
};

enum class Side { kLower, kUpper, kExact };

struct BoundReport {
  std::string name;
  std::string inputs;
  Side side = Side::kUpper;
  bool exact = false;     // value_q is the exact rational value
  Rational value_q = 0;   // set when exact
  double value = 0;       // rounded toward the safe side (up for upper, down for lower)
  bool has_integer = false;
  BigInt value_z = 0;     // integer form of the bound when one is derivable
  bool applicable = true;  // false when a hypothesis (e.g. q > N+1) fails
  std::string citation;
};

// Bounds on m(k,q), the minimum length of a minimal [n,k]_q code: the
// tangent-counting lower bound (k-1)(q+1), the intersecting-code upper
// bound 2k ln q / ln(q^2/(q^2-q+1)), the random line-union upper bound
// (with its q=2 point-pair counterpart) and the quadratic existential
// bound c k^2 q whose constant the source only pins to c >= 2/9.
std::vector<BoundReport> m_bounds(unsigned k, unsigned q, const Rational& c = Rational(2, 9),
                                  long prec = kDefaultPrec);

// size of a binary cutting blocking set from the random point-set argument
BigInt binary_cutting_upper(int N, long prec = kDefaultPrec);

// minimum size of a higgledy-piggledy line set: N + floor(N/2) - floor((N-1)/q)
long hp_line_lower(int N, unsigned q);

struct LineMeetProbability {
  Rational exact;  // P(uniform line meets a fixed d-subspace of PG(N,q))
  Rational upper;  // q^{d-N+1} + q^{d-N} - q^{2d-2N+1}, strictly larger
};
LineMeetProbability prob_line_meets(int d, int N, unsigned q);

// Lower bound on the probability that m uniform random lines of PG(N,q)
// form a higgledy-piggledy set.  Valid for m >= 1.8N when q >= 3 and for
// m >= 1.95N when q = 2; outside those regimes the derivation breaks down
// and RegimeViolation is thrown.
struct SuccessProbability {
  double lower = 0;     // the bound itself, rounded down
  double p_small = 0;   // failure term from subspaces of dim < N-2, rounded up
  double p_codim2 = 0;  // failure term from subspaces of dim N-2, rounded up
  Rational eta_exact = 0;  // P(line inside Lambda | line meets Lambda), dim Lambda = N-2
  Rational eta_bound = 0;  // 1/(q^3+q^2-q), strictly larger for N >= 3
};
SuccessProbability success_prob_lower(int N, unsigned q, long m, long prec = kDefaultPrec);

// constants of the random subspace-union construction
struct SubspaceConstants {
  double c1 = 0;          // rounded up
  double c2 = 0;          // rounded up
  double meet_bound = 0;  // P(random (N-t+1)-space meets a fixed (t-2)-space) bound
};
SubspaceConstants subspace_constants(unsigned q, long prec = kDefaultPrec);
// ceil((N-t+2)(t-1) c1(q) + c2(q)): higgledy-piggledy (N-t+1)-spaces that suffice
BigInt subspace_count(int N, int t, unsigned q, long prec = kDefaultPrec);

// bounds on s_{q^{rho+1}}(N, rho), the minimum rho-saturating set of
// PG(N, q^{rho+1}) obtained from constructions over the subfield GF(q)
std::vector<BoundReport> saturating_bounds(int N, int rho, unsigned q, long prec = kDefaultPrec);

// Verifies the Gaussian-binomial estimates and the theta identities on an
// exhaustive grid; violations come back as strings (none are expected).
struct AuditReport {
  u64 checks = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
AuditReport gaussian_bound_audit(int n_max, const std::vector<unsigned>& q_set,
                                 long prec = kDefaultPrec);

}  // namespace cutblock
