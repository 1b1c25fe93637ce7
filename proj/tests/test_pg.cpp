#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "cutblock/pg.hpp"

using namespace cutblock;

namespace {

Point random_point(const Geometry& g, std::mt19937& rng) {
  std::uniform_int_distribution<u64> d(0, g.num_points() - 1);
  return g.point_at(d(rng));
}

Subspace random_subspace(const Geometry& g, int npts, std::mt19937& rng) {
  std::vector<Point> pts;
  for (int i = 0; i < npts; ++i) pts.push_back(random_point(g, rng));
  return g.span(pts);
}

}  // namespace

TEST_CASE("theta") {
  CHECK(theta(-1, 2) == 0);
  CHECK(theta(0, 5) == 1);
  CHECK(theta(1, 4) == 5);
  CHECK(theta(2, 2) == 7);
  CHECK(theta(2, 3) == 13);
  CHECK(theta(2, 4) == 21);
  CHECK(theta(3, 2) == 15);
  CHECK(theta(4, 3) == 121);
  CHECK(theta(5, 2) == 63);
  CHECK(theta(10, 2) == 2047);
  CHECK(theta(2, 1021) == 1021u * 1021 + 1021 + 1);
}

TEST_CASE("gaussian binomials") {
  CHECK(gaussian_binomial(4, 2, 2) == 35);
  CHECK(gaussian_binomial(5, 2, 2) == 155);
  CHECK(gaussian_binomial(4, 2, 3) == 130);
  CHECK(gaussian_binomial(3, 1, 5) == 31);
  CHECK(gaussian_binomial(6, 3, 2) == 1395);
  for (int n = 0; n <= 8; ++n) {
    CHECK(gaussian_binomial(n, 0, 3) == 1);
    CHECK(gaussian_binomial(n, n, 3) == 1);
    CHECK(gaussian_binomial(n, -1, 3) == 0);
    CHECK(gaussian_binomial(n, n + 1, 3) == 0);
  }
  for (unsigned q : {2u, 3u, 4u})
    for (int n = 1; n <= 7; ++n)
      for (int k = 0; k <= n; ++k) {
        CHECK(gaussian_binomial(n, k, q) == gaussian_binomial(n, n - k, q));
        if (k >= 1) {
          u64 qk = 1;
          for (int i = 0; i < k; ++i) qk *= q;
          CHECK(gaussian_binomial(n, k, q) ==
                qk * gaussian_binomial(n - 1, k, q) + gaussian_binomial(n - 1, k - 1, q));
        }
      }
  CHECK(gaussian_binomial(1, 1, 2) == 1);
  CHECK_THROWS_AS(gaussian_binomial(80, 40, 3), Error);
}

TEST_CASE("count_superspaces") {
  // lines of PG(3,2) through a fixed point: theta(2,2) = 7
  CHECK(count_superspaces(4, 1, 2, 2) == 7);
  // hyperplanes of PG(3,3) through a fixed line
  CHECK(count_superspaces(4, 2, 3, 3) == gaussian_binomial(2, 1, 3));
  CHECK(count_superspaces(5, 0, 5, 2) == 1);
  CHECK_THROWS_AS(count_superspaces(3, 2, 1, 2), DimensionMismatch);
}

TEST_CASE("point_at / point_index bijection") {
  for (auto [N, q] : std::vector<std::pair<int, unsigned>>{
           {2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}, {2, 4}, {2, 5}, {1, 9}, {5, 2}}) {
    auto g = make_geometry(N, q);
    CHECK(g->num_points() == theta(N, q));
    std::set<Point> seen;
    for (u64 i = 0; i < g->num_points(); ++i) {
      const Point p = g->point_at(i);
      // normalized: first nonzero coordinate is 1
      std::size_t j = 0;
      while (j < p.coords.size() && p.coords[j] == 0) ++j;
      REQUIRE(j < p.coords.size());
      CHECK(p.coords[j] == 1);
      CHECK(g->point_index(p) == i);
      seen.insert(p);
    }
    CHECK(seen.size() == g->num_points());
  }
}

TEST_CASE("normalize is projective") {
  auto g = make_geometry(3, 9);
  const Field& f = g->field();
  std::mt19937 rng(7);
  std::uniform_int_distribution<unsigned> d(0, 8);
  for (int t = 0; t < 200; ++t) {
    Vec v(4);
    bool zero = true;
    for (auto& x : v) {
      x = Elt(d(rng));
      if (x) zero = false;
    }
    if (zero) v[2] = 1;
    const Point p = g->normalize(v);
    for (unsigned lam = 1; lam < 9; ++lam) {
      Vec w(4);
      for (int i = 0; i < 4; ++i) w[i] = f.mul(Elt(lam), v[i]);
      CHECK(g->normalize(w) == p);
    }
  }
  CHECK_THROWS_AS(g->normalize(Vec(4, 0)), ZeroVector);
}

TEST_CASE("lines") {
  for (auto [N, q] : std::vector<std::pair<int, unsigned>>{{2, 2}, {3, 3}, {2, 7}, {4, 4}}) {
    auto g = make_geometry(N, q);
    std::mt19937 rng(11);
    for (int t = 0; t < 50; ++t) {
      const Point a = random_point(*g, rng);
      Point b = random_point(*g, rng);
      while (b == a) b = random_point(*g, rng);
      const Subspace ell = g->line_through(a, b);
      CHECK(ell.dim() == 1);
      auto pts = g->line_points(a, b);
      CHECK(pts.size() == q + 1);
      CHECK(std::set<Point>(pts.begin(), pts.end()).size() == q + 1);
      for (const auto& p : pts) CHECK(g->contains(ell, p));
      // any two points of the line span it back
      CHECK(g->line_through(pts[1], pts[q]) == ell);
      auto listed = g->subspace_points(ell);
      CHECK(std::set<Point>(listed.begin(), listed.end()) ==
            std::set<Point>(pts.begin(), pts.end()));
      CHECK_THROWS_AS(g->line_through(a, a), DegenerateLine);
    }
  }
}

TEST_CASE("hyperplane duality") {
  for (auto [N, q] : std::vector<std::pair<int, unsigned>>{{2, 2}, {3, 3}, {4, 2}, {2, 8}}) {
    auto g = make_geometry(N, q);
    for (u64 h = 0; h < g->num_points(); ++h) {
      const Point dual = g->point_at(h);
      const Subspace H = g->hyperplane(dual);
      CHECK(H.dim() == N - 1);
      CHECK(g->hyperplane_dual(H) == dual);
      // H consists exactly of the points orthogonal to the dual
      u64 on = 0;
      for (u64 i = 0; i < g->num_points(); ++i)
        if (g->incident(g->point_at(i), dual)) {
          ++on;
          CHECK(g->contains(H, g->point_at(i)));
        }
      CHECK(on == theta(N - 1, q));
    }
  }
}

TEST_CASE("span, intersect, Grassmann identity") {
  std::mt19937 rng(23);
  for (auto [N, q] : std::vector<std::pair<int, unsigned>>{{4, 2}, {3, 3}, {2, 5}, {5, 2}}) {
    auto g = make_geometry(N, q);
    for (int t = 0; t < 60; ++t) {
      const Subspace A = random_subspace(*g, 1 + int(rng() % 4), rng);
      const Subspace B = random_subspace(*g, 1 + int(rng() % 4), rng);
      const Subspace I = g->intersect(A, B);
      std::vector<Vec> all;
      for (const auto& r : A.basis()) all.push_back(r);
      for (const auto& r : B.basis()) all.push_back(r);
      const Subspace U = g->span_rows(all);
      CHECK(I.dim() + U.dim() == A.dim() + B.dim());
      CHECK(g->subspace_leq(I, A));
      CHECK(g->subspace_leq(I, B));
      CHECK(g->subspace_leq(A, U));
      // every point of A and of B is in U, every point of I is in both
      for (const auto& p : g->subspace_points(I)) {
        CHECK(g->contains(A, p));
        CHECK(g->contains(B, p));
      }
    }
  }
}

TEST_CASE("span of listed points recovers the subspace") {
  auto g = make_geometry(3, 2);
  for (int d = 0; d <= 3; ++d)
    for (const auto& s : g->enumerate_subspaces(d)) {
      CHECK(g->span(g->subspace_points(s)) == s);
      CHECK(u64(g->subspace_points(s).size()) == theta(d, 2));
    }
}

TEST_CASE("extend_within") {
  std::mt19937 rng(31);
  auto g = make_geometry(4, 2);
  for (int t = 0; t < 40; ++t) {
    const Point dual = random_point(*g, rng);
    const Subspace H = g->hyperplane(dual);
    const Point inside = g->subspace_points(H)[rng() % theta(3, 2)];
    const Subspace base = g->span({inside});
    for (int target = 0; target <= 3; ++target) {
      const Subspace E = g->extend_within(base, H, target);
      CHECK(E.dim() == target);
      CHECK(g->subspace_leq(base, E));
      CHECK(g->subspace_leq(E, H));
    }
    CHECK(g->extend_within(g->empty_subspace(), H, 3) == H);
  }
}

TEST_CASE("subspace enumeration") {
  for (auto [N, q, d] : std::vector<std::tuple<int, unsigned, int>>{
           {3, 2, 1}, {2, 3, 1}, {4, 2, 2}, {3, 3, 1}, {3, 2, 2}, {2, 4, 0}}) {
    auto g = make_geometry(N, q);
    const auto subs = g->enumerate_subspaces(d);
    CHECK(u64(subs.size()) == gaussian_binomial(N + 1, d + 1, q));
    std::set<Subspace> dedup(subs.begin(), subs.end());
    CHECK(dedup.size() == subs.size());
    for (const auto& s : subs) {
      CHECK(s.dim() == d);
      // canonical: re-spanning the rows reproduces the object
      auto rows = s.basis();
      CHECK(g->span_rows(rows) == s);
    }
  }
  CHECK(u64(make_geometry(3, 2)->enumerate_subspaces(1).size()) == 35);
  CHECK(make_geometry(2, 2)->enumerate_subspaces(-1).size() == 1);
  CHECK_THROWS_AS(make_geometry(4, 3)->enumerate_subspaces(2, 100), EnumerationTooLarge);
}

TEST_CASE("enumerate_points matches point_at order") {
  auto g = make_geometry(2, 4);
  auto pts = g->enumerate_points();
  REQUIRE(u64(pts.size()) == g->num_points());
  for (u64 i = 0; i < g->num_points(); ++i) CHECK(pts[i] == g->point_at(i));
  CHECK_THROWS_AS(g->enumerate_points(5), EnumerationTooLarge);
}

TEST_CASE("rref and kernel") {
  auto f = make_field(5);
  std::mt19937 rng(41);
  std::uniform_int_distribution<unsigned> d(0, 4);
  for (int t = 0; t < 100; ++t) {
    const int rows = 1 + int(rng() % 5), cols = 2 + int(rng() % 5);
    std::vector<Vec> m(rows, Vec(cols));
    for (auto& r : m)
      for (auto& x : r) x = Elt(d(rng));
    std::vector<Vec> r1 = m;
    const int rank = rref_in_place(r1, *f);
    CHECK(rank == int(r1.size()));
    std::vector<Vec> r2 = r1;
    rref_in_place(r2, *f);
    CHECK(r2 == r1);  // idempotent
    CHECK(rank == rank_of_rows(m, *f));
    const auto ker = kernel_basis(m, unsigned(cols), *f);
    CHECK(int(ker.size()) == cols - rank);
    for (const auto& v : ker)
      for (const auto& row : m) {
        Elt acc = 0;
        for (int i = 0; i < cols; ++i) acc = f->add(acc, f->mul(row[i], v[i]));
        CHECK(acc == 0);
      }
  }
}

TEST_CASE("gf2 packing and rank") {
  auto g = make_geometry(5, 2);
  std::mt19937 rng(53);
  for (int t = 0; t < 200; ++t) {
    std::vector<Point> pts;
    std::vector<u64> words;
    for (int i = 0; i < 1 + int(rng() % 8); ++i) {
      pts.push_back(random_point(*g, rng));
      words.push_back(pack_gf2(pts.back()));
      CHECK(unpack_gf2(words.back(), 5) == pts.back());
    }
    std::vector<Vec> rows;
    for (const auto& p : pts) rows.push_back(p.coords);
    CHECK(rank_gf2(words) == rank_of_rows(rows, g->field()));
  }
}

TEST_CASE("caches") {
  auto g = make_geometry(2, 3);
  const auto* ic = g->incidence_cache();
  REQUIRE(ic != nullptr);
  CHECK(ic->n == 13);
  for (u64 pt = 0; pt < 13; ++pt)
    for (u64 h = 0; h < 13; ++h)
      CHECK(ic->incident(pt, h) == g->incident(g->point_at(pt), g->point_at(h)));
  const auto* cc = g->coords_cache();
  REQUIRE(cc != nullptr);
  CHECK(cc->size() == 13);
  for (u64 i = 0; i < 13; ++i) CHECK((*cc)[i] == g->point_at(i).coords);
  // too large for the incidence bitset, still fine for coords
  auto big = make_geometry(6, 4);
  CHECK(big->incidence_cache() == nullptr);
  CHECK(big->coords_cache() != nullptr);
}

TEST_CASE("full space and empty subspace") {
  auto g = make_geometry(3, 4);
  CHECK(g->full_space().dim() == 3);
  CHECK(g->empty_subspace().dim() == -1);
  CHECK(g->subspace_leq(g->empty_subspace(), g->full_space()));
  for (u64 i = 0; i < 20; ++i) CHECK(g->contains(g->full_space(), g->point_at(i)));
  CHECK(g->subspace_points(g->empty_subspace()).empty());
}
