#include <doctest.h>

#include "algchar/dualforms.hpp"
#include "algchar/errors.hpp"
#include "algchar/grouporbit.hpp"

using namespace algchar;

TEST_SUITE("dualforms") {
  TEST_CASE("functional parsing round-trips in e*(i,j) notation") {
    Algebra u = make_ut(4, Field::prime(3));
    Vec lam = parse_functional(u, "e*(1,3)+2e*(2,4)", 4);
    CHECK(lam[ut_index(4, 1, 3)] == 1);
    CHECK(lam[ut_index(4, 2, 4)] == 2);
    CHECK(parse_functional(u, format_functional(lam, 4), 4) == lam);
    CHECK(parse_functional(u, "[0,1,0,0,2,0]") == Vec{0, 1, 0, 0, 2, 0});
    CHECK_THROWS(parse_functional(u, "e*(3,1)", 4));
    CHECK_THROWS(parse_functional(u, "[1,2]"));
  }

  TEST_CASE("left stabilizer and s for the top functional of u_3") {
    Algebra u = make_ut(3, Field::prime(2));
    Vec lam = unit_vector(3, ut_index(3, 1, 3));
    Subspace l = left_stabilizer_algebra(u, lam);
    // lambda(X Y) = x12 y23, so l = {x12 = 0}
    CHECK(l.dim() == 2);
    CHECK(l.contains(unit_vector(3, ut_index(3, 2, 3))));
    // lambda(X Y) with Y in l only sees x12 y23 again, so s = l: chi_lambda is irreducible
    CHECK(s_algebra(u, lam) == l);
    ChainResult c = chain(u, lam);
    CHECK(c.l_bar() == l);
    CHECK(c.s_bar() == l);
  }

  TEST_CASE("the chain stabilizes with l-bar inside s-bar") {
    Algebra u = make_ut(4, Field::prime(2));
    for (std::uint64_t k = 0; k < 64; ++k) {
      Vec lam = unpack_key(k, 6, 2);
      ChainResult c = chain(u, lam);
      CHECK(c.s_bar().contains(c.l_bar()));
      CHECK(c.l_chain.size() == c.depth + 1);
      for (std::size_t i = 1; i < c.l_chain.size(); ++i) {
        CHECK(c.l_chain[i].contains(c.l_chain[i - 1]));
        CHECK(c.s_chain[i - 1].contains(c.s_chain[i]));
      }
    }
  }

  TEST_CASE("affine orbit descriptions agree with generator orbits") {
    Algebra u = make_ut(4, Field::prime(3));
    Group g(u);
    for (std::uint64_t k = 0; k < 729; k += 37) {
      Vec lam = unpack_key(k, 6, 3);
      AffineSet left = left_orbit_affine(u, lam), right = right_orbit_affine(u, lam);
      CHECK(left.size() == orbit(g, lam, OrbitKind::left, false).size);
      CHECK(orbit_points(u.field(), lam, g.generator_matrices(Action::right)).size() == right.size());
      CHECK(left.size() == right.size());
    }
  }

  TEST_CASE("restriction and lifting are inverse on a subspace") {
    Field f = Field::prime(3);
    Subspace h = Subspace::span(f, 4, {{1, 1, 0, 0}, {0, 0, 1, 2}});
    Vec lam{2, 1, 0, 1};
    Vec kappa = restrict_functional(h, lam);
    AffineSet lifts = lift_functional(h, kappa);
    CHECK(lifts.contains(lam));
    CHECK(lifts.size() == 9);
    lifts.for_each([&](const Vec& nu) { CHECK(restrict_functional(h, nu) == kappa); });
  }

  TEST_CASE("affine sets index their points in lexicographic order") {
    Field f = Field::prime(2);
    AffineSet s(Vec{1, 0, 1, 0}, Subspace::span(f, 4, {{0, 1, 0, 0}, {0, 0, 1, 1}}));
    Vec prev;
    for (std::uint64_t i = 0; i < s.size(); ++i) {
      Vec v = s.point_at(i);
      CHECK(s.index_of(v) == i);
      if (i) CHECK(prev < v);
      prev = v;
    }
  }
}
