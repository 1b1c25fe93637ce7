#include "cutblock/bounds.hpp"

#include <utility>

#include "cutblock/errors.hpp"

namespace cutblock {

namespace {

BigInt qpow(unsigned q, long e) {
  return boost::multiprecision::pow(BigInt(q), unsigned(e));
}

// q^e for possibly negative e
Rational qpow_signed(unsigned q, long e) {
  if (e >= 0) return Rational(qpow(q, e));
  return Rational(1) / Rational(qpow(q, -e));
}

std::string fmt_inputs(std::initializer_list<std::pair<const char*, long>> kv) {
  std::string s;
  for (auto& [k, v] : kv) {
    if (!s.empty()) s += ' ';
    s += k;
    s += '=';
    s += std::to_string(v);
  }
  return s;
}

}  // namespace

BigInt theta_z(int n, unsigned q) {
  if (n < 0) return 0;
  return (qpow(q, n + 1) - 1) / (q - 1);
}

BigInt gauss_z(int n, int k, unsigned q) {
  if (k < 0 || k > n) return 0;
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= qpow(q, n - i) - 1;
    den *= qpow(q, i + 1) - 1;
  }
  return num / den;  // exact: Gaussian binomials are integers
}

// ---------------------------------------------------------------------------
// Interval

Interval::Interval(long prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(Interval o) {
  std::swap(prec_, o.prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::of(long v, long prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::of(const BigInt& v, long prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_, v.backend().data(), MPFR_RNDD);
  mpfr_set_z(r.hi_, v.backend().data(), MPFR_RNDU);
  return r;
}

Interval Interval::of(const Rational& v, long prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, v.backend().data(), MPFR_RNDD);
  mpfr_set_q(r.hi_, v.backend().data(), MPFR_RNDU);
  return r;
}

double Interval::lo() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi() const { return mpfr_get_d(hi_, MPFR_RNDU); }

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  const mpfr_srcptr as[2] = {a.lo_, a.hi_};
  const mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : as)
    for (auto y : bs) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
    throw Error("interval division by an interval containing zero");
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  const mpfr_srcptr as[2] = {a.lo_, a.hi_};
  const mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : as)
    for (auto y : bs) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval Interval::operator-() const {
  Interval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::ln() const {
  if (mpfr_sgn(lo_) <= 0) throw Error("ln of a non-positive interval");
  Interval r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow(long e) const {
  if (mpfr_sgn(lo_) <= 0) throw Error("pow of a non-positive interval");
  Interval r(prec_);
  if (e >= 0) {  // increasing in the base
    mpfr_pow_si(r.lo_, lo_, e, MPFR_RNDD);
    mpfr_pow_si(r.hi_, hi_, e, MPFR_RNDU);
  } else {  // decreasing in the base
    mpfr_pow_si(r.lo_, hi_, e, MPFR_RNDD);
    mpfr_pow_si(r.hi_, lo_, e, MPFR_RNDU);
  }
  return r;
}

namespace {
BigInt bigint_from(mpfr_srcptr x) {
  BigInt r;
  mpfr_get_z(r.backend().data(), x, MPFR_RNDN);  // x is integer-valued here
  return r;
}
}  // namespace

BigInt Interval::ceil_exact() const {
  mpfr_t a, b;
  mpfr_init2(a, prec_);
  mpfr_init2(b, prec_);
  mpfr_ceil(a, lo_);
  mpfr_ceil(b, hi_);
  const bool same = mpfr_cmp(a, b) == 0;
  BigInt r = bigint_from(a);
  mpfr_clear(a);
  mpfr_clear(b);
  if (!same) throw Error("interval straddles an integer; raise the working precision");
  return r;
}

BigInt Interval::floor_exact() const {
  mpfr_t a, b;
  mpfr_init2(a, prec_);
  mpfr_init2(b, prec_);
  mpfr_floor(a, lo_);
  mpfr_floor(b, hi_);
  const bool same = mpfr_cmp(a, b) == 0;
  BigInt r = bigint_from(a);
  mpfr_clear(a);
  mpfr_clear(b);
  if (!same) throw Error("interval straddles an integer; raise the working precision");
  return r;
}

bool Interval::certainly_less(const Rational& r) const {
  return mpfr_cmp_q(hi_, r.backend().data()) < 0;
}

bool Interval::certainly_greater(const Rational& r) const {
  return mpfr_cmp_q(lo_, r.backend().data()) > 0;
}

bool Interval::certainly_positive() const { return mpfr_sgn(lo_) > 0; }

// ---------------------------------------------------------------------------
// bounds on m(k,q)

std::vector<BoundReport> m_bounds(unsigned k, unsigned q, const Rational& c, long prec) {
  if (k < 2) throw DimensionMismatch("m(k,q) requires k >= 2");
  std::vector<BoundReport> out;
  const std::string in = fmt_inputs({{"k", long(k)}, {"q", long(q)}});

  {
    BoundReport r;
    r.name = "tangent_lower";
    r.inputs = in;
    r.side = Side::kLower;
    r.exact = true;
    r.value_q = Rational(long(k - 1) * long(q + 1));
    r.value = double(long(k - 1) * long(q + 1));
    r.has_integer = true;
    r.value_z = BigInt(long(k - 1) * long(q + 1));
    r.citation = "tangent-counting lower bound (k-1)(q+1)";
    out.push_back(std::move(r));
  }

  {
    // 2k ln q / ln(q^2 / (q^2 - q + 1))
    const Rational ratio = Rational(long(q) * q) / Rational(long(q) * q - q + 1);
    Interval v = Interval::of(2L * k, prec) * Interval::of(long(q), prec).ln() /
                 Interval::of(ratio, prec).ln();
    BoundReport r;
    r.name = "intersecting_upper";
    r.inputs = in;
    r.side = Side::kUpper;
    r.value = v.hi();
    r.has_integer = true;
    r.value_z = v.floor_exact();
    r.citation = "intersecting-code upper bound 2k ln(q)/ln(q^2/(q^2-q+1))";
    out.push_back(std::move(r));
  }

  {
    BoundReport r;
    r.name = "random_lines_upper";
    r.inputs = in;
    r.side = Side::kUpper;
    if (q > 2) {
      // ceil(2(k-1) / (1 + 1/((q+1)^2 ln q))) * (q+1) points on random lines
      Interval den = Interval::of(1, prec) + Interval::of(1, prec) /
                                                 (Interval::of(long(q + 1) * (q + 1), prec) *
                                                  Interval::of(long(q), prec).ln());
      Interval m = Interval::of(2L * (k - 1), prec) / den;
      const BigInt mm = m.ceil_exact();
      r.value_z = mm * (q + 1);
      r.has_integer = true;
      r.exact = true;
      r.value_q = Rational(r.value_z);
      r.value = double(r.value_z);
      r.citation = "random line-union upper bound ceil(2(k-1)/(1+1/((q+1)^2 ln q)))(q+1)";
    } else {
      // (2k-1)/log2(4/3); the random-pair argument yields the ceiling
      Interval v = Interval::of(2L * k - 1, prec) * Interval::of(2, prec).ln() /
                   Interval::of(Rational(4, 3), prec).ln();
      r.value = v.hi();
      r.has_integer = true;
      r.value_z = v.ceil_exact();
      r.citation = "random point-pair upper bound ceil((2k-1)/log2(4/3))";
    }
    out.push_back(std::move(r));
  }

  {
    BoundReport r;
    r.name = "quadratic_upper";
    r.inputs = in;
    r.side = Side::kUpper;
    r.exact = true;
    r.value_q = c * long(k) * long(k) * long(q);
    r.value = double(r.value_q);
    r.citation = "quadratic existential bound c k^2 q; the constant is only known to be >= 2/9";
    out.push_back(std::move(r));
  }

  return out;
}

BigInt binary_cutting_upper(int N, long prec) {
  if (N < 2) throw DimensionMismatch("binary cutting bound requires N >= 2");
  Interval v = Interval::of(2L * N + 1, prec) * Interval::of(2, prec).ln() /
               Interval::of(Rational(4, 3), prec).ln();
  return v.ceil_exact();
}

long hp_line_lower(int N, unsigned q) {
  if (N < 2) throw DimensionMismatch("higgledy-piggledy lower bound requires N >= 2");
  return N + N / 2 - (N - 1) / long(q);
}

LineMeetProbability prob_line_meets(int d, int N, unsigned q) {
  if (d < 0 || d > N - 2) throw DimensionMismatch("need 0 <= d <= N-2");
  const Rational td = Rational(theta_z(d, q));
  const Rational tN = Rational(theta_z(N, q));
  // lines inside the d-space, plus lines through one of its points and one
  // of the theta_N - theta_d outside points (each such line counted by its
  // q outside points)
  const Rational hits = Rational(gauss_z(d + 1, 2, q)) + td * (tN - td) / long(q);
  LineMeetProbability r;
  r.exact = hits / Rational(gauss_z(N + 1, 2, q));
  r.upper = qpow_signed(q, d - N + 1) + qpow_signed(q, d - N) - qpow_signed(q, 2 * d - 2 * N + 1);
  return r;
}

SuccessProbability success_prob_lower(int N, unsigned q, long m, long prec) {
  if (N < 2) throw DimensionMismatch("success probability bound requires N >= 2");
  if (q >= 3) {
    if (5 * m < 9 * long(N)) throw RegimeViolation("the q >= 3 bound requires m >= 1.8N");
  } else {
    if (20 * m < 39 * long(N)) throw RegimeViolation("the q = 2 bound requires m >= 1.95N");
  }

  Interval p_small(prec), p_codim2(prec);
  if (q > 2) {
    // q^{-6} e^{1/(q-2)}  and  (q^{2N-m+1}/(q-1)^2) (1 - 1/(q+1)^2)^m
    p_small = Interval::of(Rational(1, qpow(q, 6)), prec) *
              Interval::of(Rational(1, long(q) - 2), prec).exp();
    const Rational lead = qpow_signed(q, 2 * N - m + 1) / Rational(long(q - 1) * (q - 1));
    const Rational base = Rational(long(q + 1) * (q + 1) - 1, long(q + 1) * (q + 1));
    p_codim2 = Interval::of(lead, prec) * Interval::of(base, prec).pow(m);
  } else {
    // 2^{-5} e^{2/3}  and  2^{2N-m+1} (7/8)^m; the sharper per-line factor
    // (1/10 + (9/10)(2/3)) = 7/10 merges with (1/2)(5/4) to give 7/16 = (1/2)(7/8)
    p_small = Interval::of(Rational(1, 32), prec) * Interval::of(Rational(2, 3), prec).exp();
    p_codim2 = Interval::of(qpow_signed(2, 2 * N - m + 1), prec) *
               Interval::of(Rational(7, 8), prec).pow(m);
  }

  SuccessProbability r;
  r.lower = (Interval::of(1, prec) - p_small - p_codim2).lo();
  r.p_small = p_small.hi();
  r.p_codim2 = p_codim2.hi();
  const BigInt inside = gauss_z(N - 1, 2, q);
  const BigInt crossing = (qpow(q, N - 1) + qpow(q, N - 2)) * gauss_z(N - 1, 1, q);
  r.eta_exact = Rational(inside) / Rational(inside + crossing);
  r.eta_bound = Rational(1, long(q) * q * q + long(q) * q - q);
  return r;
}

namespace {

struct SubspaceIv {
  Interval c1, c2, meet;
};

SubspaceIv subspace_constants_iv(unsigned q, long prec) {
  SubspaceIv r{Interval(prec), Interval(prec), Interval(prec)};
  if (q > 2) {
    // meet = 1 - e^{-1/(q-2)}; c1 = -ln q / ln(meet); c2 = -1/((q-2) ln(meet))
    Interval x = Interval::of(Rational(-1, long(q) - 2), prec).exp();
    r.meet = Interval::of(1, prec) - x;
    Interval mden = -r.meet.ln();  // positive
    r.c1 = Interval::of(long(q), prec).ln() / mden;
    r.c2 = Interval::of(Rational(1, long(q) - 2), prec) / mden;
  } else {
    // meet = 1 - (1/2) e^{-2/3}; c1 = -ln 2 / ln(meet); c2 = -ln(2 e^{2/3}) / ln(meet)
    Interval x = Interval::of(Rational(-2, 3), prec).exp();
    r.meet = Interval::of(1, prec) - Interval::of(Rational(1, 2), prec) * x;
    Interval mden = -r.meet.ln();
    r.c1 = Interval::of(2, prec).ln() / mden;
    r.c2 = (Interval::of(2, prec).ln() + Interval::of(Rational(2, 3), prec)) / mden;
  }
  return r;
}

}  // namespace

SubspaceConstants subspace_constants(unsigned q, long prec) {
  auto iv = subspace_constants_iv(q, prec);
  SubspaceConstants r;
  r.c1 = iv.c1.hi();
  r.c2 = iv.c2.hi();
  r.meet_bound = iv.meet.hi();
  return r;
}

BigInt subspace_count(int N, int t, unsigned q, long prec) {
  if (t < 2 || t > N) throw DimensionMismatch("subspace count requires 2 <= t <= N");
  auto iv = subspace_constants_iv(q, prec);
  Interval m = Interval::of(long(N - t + 2) * (t - 1), prec) * iv.c1 + iv.c2;
  return m.ceil_exact();
}

std::vector<BoundReport> saturating_bounds(int N, int rho, unsigned q, long prec) {
  if (rho < 1 || rho > N - 1) throw DimensionMismatch("need 1 <= rho <= N-1");
  std::vector<BoundReport> out;
  const std::string in = fmt_inputs({{"N", N}, {"rho", rho}, {"q", long(q)}});
  const BigInt qp = qpow(q, N - rho);
  const BigInt th = theta_z(N - rho, q);  // (q^{N-rho+1}-1)/(q-1)

  {
    // (rho+1)/e * q^{N-rho}
    Interval v = Interval::of(long(rho) + 1, prec) / Interval::of(1, prec).exp() *
                 Interval::of(qp, prec);
    BoundReport r;
    r.name = "denaux_lower";
    r.inputs = in;
    r.side = Side::kLower;
    r.value = v.lo();
    r.citation = "Denaux lower bound (rho+1)/e q^(N-rho)";
    out.push_back(std::move(r));
  }

  {
    // (rho+1)(rho+2)/2 (q^{N-rho} + (2rho/(rho+2)) (q^{N-rho}-1)/(q-1))
    const Rational v = Rational(long(rho + 1) * (rho + 2)) / 2 *
                       (Rational(qp) + Rational(2L * rho, rho + 2) *
                                           (Rational(qp) - 1) / Rational(long(q) - 1));
    BoundReport r;
    r.name = "denaux_upper";
    r.inputs = in;
    r.side = Side::kUpper;
    r.exact = true;
    r.value_q = v;
    r.value = double(v);
    r.has_integer = true;
    r.value_z = boost::multiprecision::numerator(v) / boost::multiprecision::denominator(v);
    r.citation = "Denaux upper bound (rho+1)(rho+2)/2 (q^(N-rho) + 2rho/(rho+2) theta_(N-rho-1))";
    out.push_back(std::move(r));
  }

  {
    BoundReport r;
    r.name = "lifted_subspaces_upper";
    r.inputs = in;
    r.side = Side::kUpper;
    r.exact = true;
    r.has_integer = true;
    r.value_z = subspace_count(N, rho + 1, q, prec) * th;
    r.value_q = Rational(r.value_z);
    r.value = double(r.value_z);
    r.citation = "lifted higgledy-piggledy subspace bound ceil(c1 (N-rho+1) rho + c2) theta_(N-rho)";
    out.push_back(std::move(r));
  }

  {
    BoundReport r;
    r.name = "subspace_tetrahedron_upper";
    r.inputs = in;
    r.side = Side::kUpper;
    r.exact = true;
    r.has_integer = true;
    r.value_z = BigInt(long(N - rho + 1) * rho + 1) * th;
    r.value_q = Rational(r.value_z);
    r.value = double(r.value_z);
    r.applicable = long(q) > long(N) + 1;
    r.citation =
        "Fancsali-Sziklai subspace construction ((N-rho+1)rho+1) theta_(N-rho); needs q > N+1";
    out.push_back(std::move(r));
  }

  if (rho == N - 1) {
    BoundReport r;
    r.name = "random_lines_upper";
    r.inputs = in;
    r.side = Side::kUpper;
    r.exact = true;
    r.has_integer = true;
    BigInt m;
    if (q > 2) {
      Interval den = Interval::of(1, prec) + Interval::of(1, prec) /
                                                 (Interval::of(long(q + 1) * (q + 1), prec) *
                                                  Interval::of(long(q), prec).ln());
      m = (Interval::of(2L * N, prec) / den).ceil_exact();
    } else {
      m = (39L * N + 19) / 20;  // ceil(1.95 N)
    }
    r.value_z = m * (q + 1);
    r.value_q = Rational(r.value_z);
    r.value = double(r.value_z);
    r.citation = "lifted random line-union bound m(q+1), m lines in higgledy-piggledy position";
    out.push_back(std::move(r));
  }

  return out;
}

AuditReport gaussian_bound_audit(int n_max, const std::vector<unsigned>& q_set, long prec) {
  AuditReport rep;
  auto fail = [&rep](const std::string& s) { rep.violations.push_back(s); };

  for (unsigned q : q_set) {
    Interval egamma(prec);  // e^{1/(q-2)} or, for q = 2, e^{2/3}
    if (q > 2)
      egamma = Interval::of(Rational(1, long(q) - 2), prec).exp();
    else
      egamma = Interval::of(Rational(2, 3), prec).exp();

    for (int n = 1; n <= n_max; ++n) {
      for (int k = 1; k <= n; ++k) {
        const Rational ex = Rational(gauss_z(n, k, q));
        Interval bound(prec);
        if (q > 2)
          bound = Interval::of(qpow(q, long(n - k) * k), prec) * egamma;
        else
          bound = Interval::of(qpow(2, long(n - k) * k + 1), prec) * egamma;
        ++rep.checks;
        if (!bound.certainly_greater(ex))
          fail("gaussian bound fails at n=" + std::to_string(n) + " k=" + std::to_string(k) +
               " q=" + std::to_string(q));
        if (k == n - 2) {
          // exact rational special case: q^{2(n-2)} q/(q-1) q^2/(q^2-1)
          const Rational rb = Rational(qpow(q, 2L * (n - 2))) * Rational(long(q), long(q) - 1) *
                              Rational(long(q) * q, long(q) * q - 1);
          ++rep.checks;
          if (!(ex < rb))
            fail("codimension-2 gaussian bound fails at n=" + std::to_string(n) +
                 " q=" + std::to_string(q));
        }
      }
    }

    // theta estimates, exact rational throughout
    for (int a = 0; a <= n_max; ++a) {
      for (int b = a + 1; b <= n_max; ++b) {
        const Rational ta = Rational(theta_z(a, q)), tb = Rational(theta_z(b, q));
        const Rational qq = qpow_signed(q, a - b);
        ++rep.checks;
        if (!((ta + Rational(1, long(q))) / tb <= qq && qq < (ta + 1) / tb))
          fail("theta ratio sandwich fails at a=" + std::to_string(a) + " b=" + std::to_string(b) +
               " q=" + std::to_string(q));
        if (b - a >= 2) {
          ++rep.checks;
          if (!((ta + tb) / long(q) > 2 * ta + 1))
            fail("theta sum bound fails at a=" + std::to_string(a) + " b=" + std::to_string(b) +
                 " q=" + std::to_string(q));
        }
      }
    }
    for (int k = 1; k <= n_max; ++k) {
      ++rep.checks;
      if (Rational(gauss_z(k + 1, 2, q)) !=
          Rational(theta_z(k, q)) * Rational(theta_z(k - 1, q)) / Rational(long(q) + 1))
        fail("line-count identity fails at k=" + std::to_string(k) + " q=" + std::to_string(q));
    }
  }
  return rep;
}

}  // namespace cutblock
