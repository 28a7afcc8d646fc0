#include <doctest.h>

#include <map>
#include <set>

#include "algchar/errors.hpp"
#include "algchar/experiments.hpp"
#include "algchar/nilalg.hpp"

using namespace algchar;

namespace {

bool closed(const Algebra& alg, const Subspace& s) {
  for (const auto& a : s.basis_vectors())
    for (const auto& b : s.basis_vectors())
      if (!s.contains(alg.mul(a, b))) return false;
  return true;
}

}  // namespace

TEST_SUITE("nilalg") {
  TEST_CASE("u_n has the expected dimension, products and nilpotency index") {
    Algebra u = make_ut(4, Field::prime(3));
    CHECK(u.dim() == 6);
    CHECK(u.nilpotency_index() == 4);
    // e12 e23 = e13, e23 e12 = 0
    CHECK(u.basis_product(ut_index(4, 1, 2), ut_index(4, 2, 3)) == unit_vector(6, ut_index(4, 1, 3)));
    CHECK(vec_is_zero(u.basis_product(ut_index(4, 2, 3), ut_index(4, 1, 2))));
    for (std::size_t i = 0; i < 6; ++i) {
      auto [r, c] = ut_position(4, i);
      CHECK(ut_index(4, r, c) == i);
    }
  }

  TEST_CASE("non-associative or non-nilpotent constants are rejected") {
    Field f = Field::prime(2);
    // b0 b0 = b0 is not nilpotent
    CHECK_THROWS_AS(Algebra::from_constants(f, {"a"}, {{0, 0, {1}}}), ValidationError);
    // (b0 b0) b1 = b1 b1 = b2 but b0 (b0 b1) = 0
    CHECK_THROWS_AS(Algebra::from_constants(f, {"a", "b", "c"}, {{0, 0, {0, 1, 0}}, {1, 1, {0, 0, 1}}}), ValidationError);
  }

  TEST_CASE("subalgebra enumeration agrees with a brute-force scan of all spans on u_3(2)") {
    Algebra u = make_ut(3, Field::prime(2));
    std::set<std::vector<Elem>> seen;
    std::size_t closed_count = 0;
    for (unsigned mask = 0; mask < 256; ++mask) {
      std::vector<Vec> gens;
      for (unsigned k = 0; k < 8; ++k)
        if (mask >> k & 1) gens.push_back(unpack_key(k, 3, 2));
      Subspace s = Subspace::span(u.field(), 3, gens);
      if (seen.insert(s.basis().data()).second && closed(u, s)) ++closed_count;
    }
    CHECK(seen.size() == 16);
    CHECK(enumerate_subalgebras(u).size() == closed_count);
  }

  TEST_CASE("dimension-1 algebra has exactly two subalgebras") {
    Algebra a = Algebra::from_constants(Field::prime(2), {"x"}, {});
    CHECK(enumerate_subalgebras(a).size() == 2);
  }

  TEST_CASE("the hyperplane descent visits the same subalgebras as the full enumeration") {
    for (const char* name : {"u4(2)", "q8", "u3(3)"}) {
      CAPTURE(name);
      Algebra alg = algebra_by_name(name);
      std::map<std::size_t, std::size_t> by_codim_enum, by_codim_walk;
      for (const auto& s : enumerate_subalgebras(alg)) ++by_codim_enum[alg.dim() - s.dim()];
      std::set<std::vector<Elem>> distinct;
      for_each_subalgebra_by_codim(alg, alg.dim(), [&](const Subspace& h) {
        CHECK(closed(alg, h));
        CHECK(distinct.insert(h.basis().data()).second);
        ++by_codim_walk[alg.dim() - h.dim()];
        return true;
      });
      CHECK(by_codim_enum == by_codim_walk);
    }
  }

  TEST_CASE("enumeration refuses large algebras instead of truncating") {
    CHECK_THROWS_AS(enumerate_subalgebras(make_ut(5, Field::prime(2))), CapacityError);
  }

  TEST_CASE("quotients") {
    Algebra u = make_ut(4, Field::prime(2));
    Quotient q3 = quotient(u, power_ideal(u, 3));
    CHECK(q3.algebra.dim() == 5);
    // the projection respects multiplication on every basis pair
    for (std::size_t i = 0; i < u.dim(); ++i)
      for (std::size_t j = 0; j < u.dim(); ++j) {
        Vec lhs = q3.project(u.basis_product(i, j));
        Vec rhs = q3.algebra.mul(q3.project(unit_vector(6, i)), q3.project(unit_vector(6, j)));
        CHECK(lhs == rhs);
      }
    Quotient q2 = quotient(u, power_ideal(u, 2));
    CHECK(q2.algebra.dim() == 3);
    CHECK(q2.algebra.has_zero_multiplication());
    Quotient q0 = quotient(u, zero_subalgebra(u));
    CHECK(q0.algebra == u);
    Subalgebra not_ideal = subalgebra_generated(u, {unit_vector(6, ut_index(4, 1, 2))});
    CHECK_THROWS_AS(quotient(u, not_ideal), DomainError);
  }

  TEST_CASE("centers and constrained subalgebras") {
    CHECK(center(make_ut(4, Field::prime(2))).dim() == 1);
    CHECK(center(q8_algebra()).dim() == 1);
    CHECK(ut6_constrained().dim() == 14);
    Ut5Example ex = ut5_example(3);
    CHECK(ex.n.dim() == 8);
    CHECK(ex.h.dim() == 7);
    CHECK_THROWS_AS(ut5_example(2), DomainError);
    Matrix bad = Matrix::from_rows({unit_vector(3, ut_index(3, 1, 3))}, 3);
    CHECK_THROWS_AS(subalgebra_from_equations(make_ut(3, Field::prime(2)), bad), ValidationError);
  }

  TEST_CASE("the quaternion fixture multiplies as stated") {
    Algebra a = q8_algebra();
    const Vec A{1, 0, 0}, B{0, 1, 0}, C{0, 0, 1};
    CHECK(a.mul(A, A) == C);
    CHECK(a.mul(A, B) == C);
    CHECK(a.mul(B, B) == C);
    CHECK(vec_is_zero(a.mul(B, A)));
  }
}
