#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "cutblock/bounds.hpp"
#include "cutblock/search.hpp"

using namespace cutblock;

namespace {
const BoundReport& by_name(const std::vector<BoundReport>& v, const std::string& n) {
  for (auto& r : v)
    if (r.name == n) return r;
  REQUIRE(false);
  return v.front();
}
}  // namespace

TEST_CASE("exact theta and gaussian binomials") {
  CHECK(theta_z(-1, 2) == 0);
  CHECK(theta_z(0, 5) == 1);
  CHECK(theta_z(2, 2) == 7);
  CHECK(theta_z(3, 3) == 40);
  CHECK(gauss_z(4, 2, 2) == 35);
  CHECK(gauss_z(4, 2, 3) == 130);
  CHECK(gauss_z(6, 3, 2) == 1395);
  CHECK(gauss_z(2, 5, 2) == 0);
  // no overflow: the u64 version refuses this one
  CHECK(gauss_z(80, 40, 3) > BigInt(1) << 1000);
  // agreement with the machine-word evaluator where both exist
  for (int k = 0; k <= 5; ++k)
    CHECK(gauss_z(5, k, 3) == BigInt(gaussian_binomial(5, k, 3)));
  for (int n = 0; n <= 8; ++n) CHECK(theta_z(n, 2) == BigInt(theta(n, 2)));
}

TEST_CASE("interval arithmetic encloses and rounds outward") {
  auto third = Interval::of(Rational(1, 3));
  CHECK(third.lo() < third.hi());
  CHECK(third.lo() <= 1.0 / 3.0);
  CHECK(third.hi() >= 1.0 / 3.0);

  auto one = Interval::of(1);
  auto sum = third + third + third;
  CHECK(sum.lo() <= 1.0);
  CHECK(sum.hi() >= 1.0);

  auto e = one.exp();
  CHECK(e.lo() > 2.71828182845904);
  CHECK(e.hi() < 2.71828182845905);
  CHECK(e.ln().lo() <= 1.0);
  CHECK(e.ln().hi() >= 1.0);

  auto p = Interval::of(Rational(3, 2)).pow(2);
  CHECK(p.lo() <= 2.25);
  CHECK(p.hi() >= 2.25);
  auto pn = Interval::of(2).pow(-3);
  CHECK(pn.lo() <= 0.125);
  CHECK(pn.hi() >= 0.125);

  CHECK(Interval::of(Rational(7, 2)).ceil_exact() == 4);
  CHECK(Interval::of(Rational(7, 2)).floor_exact() == 3);
  CHECK((-Interval::of(Rational(7, 2))).ceil_exact() == -3);
  CHECK(Interval::of(Rational(1, 3)).certainly_less(Rational(1, 2)));
  CHECK(Interval::of(Rational(1, 3)).certainly_greater(Rational(1, 4)));
  CHECK_THROWS_AS(Interval::of(-1).ln(), Error);
  CHECK_THROWS_AS(one / (third - third), Error);
  // a rounding-width interval around an integer refuses to commit
  CHECK_THROWS_AS((third * Interval::of(3)).ceil_exact(), Error);
}

TEST_CASE("bounds on m(k,q)") {
  auto b32 = m_bounds(3, 2);
  CHECK(by_name(b32, "tangent_lower").value_z == 6);
  CHECK(by_name(b32, "tangent_lower").side == Side::kLower);
  CHECK(by_name(b32, "intersecting_upper").value == doctest::Approx(14.4565).epsilon(1e-4));
  CHECK(by_name(b32, "random_lines_upper").value_z == 13);  // matches the point-set bound

  auto b113 = m_bounds(11, 3);
  CHECK(by_name(b113, "random_lines_upper").value_z == 76);
  CHECK(by_name(b113, "tangent_lower").value_z == 40);

  auto b102 = m_bounds(10, 2);
  CHECK(by_name(b102, "intersecting_upper").value == doctest::Approx(48.1884).epsilon(1e-4));
  CHECK(by_name(b102, "intersecting_upper").value_z == 48);

  // quadratic existential bound is parameterized in c
  CHECK(by_name(m_bounds(11, 3, Rational(1, 3)), "quadratic_upper").value_q ==
        Rational(121));
  CHECK(by_name(b113, "quadratic_upper").value_q == Rational(2, 9) * 121 * 3);

  // the exact minimum for PG(2,2) sits between the lower and upper bounds
  auto cert = exhaustive_minimum_cutting(make_geometry(2, 2));
  CHECK(BigInt(long(cert.size)) >= by_name(b32, "tangent_lower").value_z);
  CHECK(BigInt(long(cert.size)) <= by_name(b32, "random_lines_upper").value_z);

  CHECK_THROWS_AS(m_bounds(1, 2), DimensionMismatch);
}

TEST_CASE("binary cutting upper bound") {
  CHECK(binary_cutting_upper(2) == 13);
  CHECK(binary_cutting_upper(10) == 51);
  for (int N = 2; N <= 100; ++N)
    CHECK(binary_cutting_upper(N) >= BigInt(3L * N));  // never below the tangent bound
  CHECK_THROWS_AS(binary_cutting_upper(1), DimensionMismatch);
}

TEST_CASE("higgledy-piggledy line lower bound") {
  CHECK(hp_line_lower(4, 2) == 5);
  CHECK(hp_line_lower(10, 2) == 11);
  CHECK(hp_line_lower(3, 2) == 3);
  CHECK(hp_line_lower(2, 2) == 3);
  CHECK(hp_line_lower(6, 9) == 9);
  for (int N = 2; N <= 12; ++N)
    for (unsigned q : {2u, 3u, 4u, 5u, 9u, 16u}) {
      if (q >= unsigned(N)) CHECK(hp_line_lower(N, q) == N + N / 2);
      CHECK(hp_line_lower(N, q) <= N + N / 2);
    }
  // the exhaustive minima are never below the bound
  CHECK(long(exhaustive_minimum_hp_lines(make_geometry(2, 2)).size) >= hp_line_lower(2, 2));
  CHECK(long(exhaustive_minimum_hp_lines(make_geometry(3, 2)).size) >= hp_line_lower(3, 2));
}

TEST_CASE("line-meeting probability, exact and bounded") {
  auto p = prob_line_meets(0, 2, 2);
  CHECK(p.exact == Rational(3, 7));
  CHECK(p.upper == Rational(5, 8));

  // exhaustive cross-check: count lines meeting a fixed d-subspace
  for (int N = 2; N <= 4; ++N)
    for (unsigned q : {2u, 3u}) {
      auto g = make_geometry(N, q);
      auto lines = g->enumerate_subspaces(1);
      for (int d = 0; d <= N - 2; ++d) {
        // a canonical d-subspace spanned by the first d+1 frame points
        std::vector<Point> pts;
        for (int i = 0; i <= d; ++i) {
          Vec v(unsigned(N) + 1, 0);
          v[unsigned(i)] = 1;
          pts.push_back(Point{v});
        }
        auto lam = g->span(pts);
        REQUIRE(lam.dim() == d);
        long hit = 0;
        for (auto& L : lines)
          if (g->intersect(L, lam).dim() >= 0) ++hit;
        auto pr = prob_line_meets(d, N, q);
        CHECK(pr.exact == Rational(hit) / Rational(long(lines.size())));
        CHECK(pr.exact < pr.upper);  // strictly
      }
    }

  // strictness across a wider grid
  for (unsigned q : {2u, 3u, 4u, 5u})
    for (int N = 2; N <= 10; ++N)
      for (int d = 0; d <= N - 2; ++d) {
        auto pr = prob_line_meets(d, N, q);
        CHECK(pr.exact < pr.upper);
        CHECK(pr.exact > 0);
      }

  CHECK_THROWS_AS(prob_line_meets(1, 2, 2), DimensionMismatch);
  CHECK_THROWS_AS(prob_line_meets(-1, 2, 2), DimensionMismatch);
}

TEST_CASE("success probability lower bound") {
  auto sp = success_prob_lower(6, 3, 12);
  CHECK(sp.lower == doctest::Approx(0.6505575).epsilon(1e-6));
  CHECK(sp.p_small == doctest::Approx(std::exp(1.0) / 729.0).epsilon(1e-9));
  CHECK(sp.p_codim2 == doctest::Approx(0.3457137).epsilon(1e-6));
  CHECK(sp.eta_exact == Rational(5, 167));
  CHECK(sp.eta_bound == Rational(1, 33));
  CHECK(sp.eta_exact < sp.eta_bound);

  // regime gates
  CHECK_THROWS_AS(success_prob_lower(6, 3, 10), RegimeViolation);   // 10 < 1.8*6
  CHECK_THROWS_AS(success_prob_lower(6, 2, 11), RegimeViolation);   // 11 < 1.95*6
  CHECK_NOTHROW(success_prob_lower(6, 2, 12));
  CHECK_THROWS_AS(success_prob_lower(1, 3, 10), DimensionMismatch);

  // monotone nondecreasing in m on a grid (vacuous near the regime edge is fine)
  for (unsigned q : {2u, 3u, 5u, 9u})
    for (int N : {3, 6, 10}) {
      double prev = -std::numeric_limits<double>::infinity();
      const long m0 = q == 2 ? (39L * N + 19) / 20 : (9L * N + 4) / 5;
      for (long m = m0; m <= m0 + 25; ++m) {
        auto s = success_prob_lower(N, q, m);
        CHECK(s.lower >= prev);
        prev = s.lower;
      }
    }

  // positivity at the guaranteed line count m(N,q), across the full grid
  for (unsigned q : {3u, 4u, 5u, 7u, 8u, 9u})
    for (int N = 2; N <= 50; ++N) {
      Interval den = Interval::of(1) + Interval::of(1) / (Interval::of(long(q + 1) * (q + 1)) *
                                                          Interval::of(long(q)).ln());
      const long m = long(( Interval::of(2L * N) / den).ceil_exact());
      CHECK(success_prob_lower(N, q, m).lower > 0);
    }
  for (int N = 3; N <= 50; ++N) {
    const long m = (39L * N + 19) / 20;  // ceil(1.95 N)
    CHECK(success_prob_lower(N, 2, m).lower > 0);
  }

  // eta for all small cases is strictly below the closed-form bound
  for (unsigned q : {2u, 3u, 4u, 5u})
    for (int N = 3; N <= 12; ++N) {
      auto s = success_prob_lower(N, q, 2 * N);
      CHECK(s.eta_exact < s.eta_bound);
    }
}

TEST_CASE("subspace constants and counts") {
  auto s2 = subspace_constants(2);
  CHECK(s2.c1 == doctest::Approx(2.336448).epsilon(1e-5));
  CHECK(s2.c2 == doctest::Approx(4.583636).epsilon(1e-5));
  CHECK(s2.meet_bound == doctest::Approx(0.743291).epsilon(1e-5));
  auto s3 = subspace_constants(3);
  CHECK(s3.c2 == doctest::Approx(2.180192).epsilon(1e-5));
  for (unsigned q : {4u, 5u, 7u, 8u, 9u, 16u}) CHECK(subspace_constants(q).c2 < 1.0);
  // for q >= 3 the constant c1 decreases toward 1 (q = 2 has its own formula)
  CHECK(s3.c1 > subspace_constants(4).c1);
  CHECK(subspace_constants(1024).c1 > 1.0);
  CHECK(subspace_constants(1024).c1 < 1.2);

  CHECK(subspace_count(3, 2, 2) == 12);
  CHECK(subspace_count(3, 3, 2) == 14);
  CHECK(subspace_count(2, 2, 2) == 10);
  CHECK_THROWS_AS(subspace_count(3, 1, 2), DimensionMismatch);
  CHECK_THROWS_AS(subspace_count(3, 4, 2), DimensionMismatch);
}

TEST_CASE("saturating set bounds") {
  auto s = saturating_bounds(3, 2, 2);
  CHECK(by_name(s, "denaux_lower").value == doctest::Approx(2.2073).epsilon(1e-4));
  CHECK(by_name(s, "denaux_lower").side == Side::kLower);
  CHECK(by_name(s, "denaux_upper").value_q == Rational(18));
  CHECK(by_name(s, "lifted_subspaces_upper").value_z == 42);
  CHECK(by_name(s, "subspace_tetrahedron_upper").value_z == 15);
  CHECK_FALSE(by_name(s, "subspace_tetrahedron_upper").applicable);  // needs q > N+1
  CHECK(by_name(s, "random_lines_upper").value_z == 18);

  auto s2 = saturating_bounds(2, 1, 2);
  CHECK(by_name(s2, "denaux_upper").value_q == Rational(8));
  CHECK(by_name(s2, "random_lines_upper").value_z == 12);

  // the verified lifted construction respects every upper bound's claim:
  // a 1-saturating 6-point set of PG(2,4) exists, and 6 <= each upper bound
  auto cert = exhaustive_minimum_cutting(make_geometry(2, 2));
  auto lifted = lift_to_extension(*cert.points, 1);
  REQUIRE(is_rho_saturating(lifted, 1).ok);
  CHECK(BigInt(6) <= by_name(s2, "denaux_upper").value_z);
  CHECK(BigInt(6) <= by_name(s2, "lifted_subspaces_upper").value_z);
  // and the Denaux lower bound is below the construction's size
  CHECK(by_name(s2, "denaux_lower").value < 6.0);

  // FS bound applicable at large q
  auto s3 = saturating_bounds(3, 2, 8);
  CHECK(by_name(s3, "subspace_tetrahedron_upper").applicable);

  CHECK_THROWS_AS(saturating_bounds(3, 0, 2), DimensionMismatch);
  CHECK_THROWS_AS(saturating_bounds(3, 3, 2), DimensionMismatch);
}

TEST_CASE("gaussian bound audit is clean") {
  auto rep = gaussian_bound_audit(12, {2, 3, 4, 5, 7, 8, 9});
  CHECK(rep.checks == 1708);
  CHECK(rep.ok());
  for (auto& v : rep.violations) {
    CAPTURE(v);
    CHECK(false);
  }
}

TEST_CASE("two working precisions give identical rounded outputs") {
  CHECK(binary_cutting_upper(10, 96) == binary_cutting_upper(10, 192));
  CHECK(by_name(m_bounds(11, 3, Rational(2, 9), 96), "random_lines_upper").value_z ==
        by_name(m_bounds(11, 3, Rational(2, 9), 192), "random_lines_upper").value_z);
  for (int N = 2; N <= 40; ++N) CHECK(binary_cutting_upper(N, 96) == binary_cutting_upper(N, 192));
  CHECK(subspace_count(3, 2, 2, 96) == subspace_count(3, 2, 2, 192));
  CHECK(subspace_count(9, 4, 3, 96) == subspace_count(9, 4, 3, 192));
  auto a = success_prob_lower(6, 3, 12, 96);
  auto b = success_prob_lower(6, 3, 12, 192);
  CHECK(a.lower == doctest::Approx(b.lower).epsilon(1e-12));
}
