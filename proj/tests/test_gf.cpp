#include <doctest.h>

#include <random>
#include <set>

#include "algchar/errors.hpp"
#include "algchar/gf.hpp"

using namespace algchar;

TEST_SUITE("gf") {
  TEST_CASE("field axioms hold exhaustively for small orders") {
    for (unsigned q : {2u, 3u, 4u, 5u, 8u, 9u, 16u, 25u, 27u}) {
      Field f = Field::of_order(q);
      CAPTURE(q);
      for (unsigned a = 0; a < q; ++a) {
        CHECK(f.add(a, f.neg(a)) == 0);
        if (a) CHECK(f.mul(a, f.inv(a)) == 1);
        for (unsigned b = 0; b < q; ++b) {
          CHECK(f.add(a, b) == f.add(b, a));
          CHECK(f.mul(a, b) == f.mul(b, a));
          for (unsigned c = 0; c < q; c += 3) CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }

  TEST_CASE("inverse of zero and reducible moduli are rejected") {
    Field f = Field::of_order(4);
    CHECK_THROWS_AS(f.inv(0), DomainError);
    CHECK_THROWS(Field::with_modulus(2, {1, 0, 1}));  // x^2 + 1 = (x+1)^2
    CHECK_THROWS(Field::of_order(6));
  }

  TEST_CASE("trace lands in the prime field and is additive") {
    Field f = Field::of_order(9);
    std::vector<int> hits(3, 0);
    for (unsigned a = 0; a < 9; ++a) {
      CHECK(f.trace(a) < 3);
      ++hits[f.trace(a)];
      for (unsigned b = 0; b < 9; ++b) CHECK(f.trace(f.add(a, b)) == (f.trace(a) + f.trace(b)) % 3);
    }
    CHECK(hits == std::vector<int>{3, 3, 3});
  }

  TEST_CASE("rank of random matrices matches a determinant-free recount") {
    Field f = Field::prime(2);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      Matrix m(6, 6);
      for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t c = 0; c < 6; ++c) m(r, c) = rng() & 1;
      const std::size_t rank = rref(f, m).rank;
      // |row space| = 2^rank, counted by enumerating all row combinations
      std::set<Vec> span;
      for (unsigned mask = 0; mask < 64; ++mask) {
        Vec v(6, 0);
        for (std::size_t r = 0; r < 6; ++r)
          if (mask >> r & 1) v = vec_add(f, v, m.row_vec(r));
        span.insert(v);
      }
      CHECK(span.size() == (std::size_t(1) << rank));
    }
  }

  TEST_CASE("null space is the kernel") {
    Field f = Field::prime(3);
    Matrix m = Matrix::from_rows({{1, 2, 0, 1}, {0, 1, 1, 2}}, 4);
    Matrix k = null_space(f, m);
    CHECK(k.rows() == 2);
    for (std::size_t r = 0; r < k.rows(); ++r) CHECK(vec_is_zero(mat_vec(f, m, k.row_vec(r))));
  }

  TEST_CASE("subspace operations") {
    Field f = Field::prime(2);
    Subspace a = Subspace::span(f, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    Subspace b = Subspace::span(f, 4, {{0, 1, 0, 0}, {0, 0, 1, 0}});
    CHECK(a.sum(b).dim() == 3);
    CHECK(a.intersect(b).dim() == 1);
    CHECK(a.intersect(b).contains(Vec{0, 1, 0, 0}));
    CHECK(a.annihilator().dim() == 2);
    CHECK(a.annihilator().annihilator() == a);
    CHECK(a.coordinates(Vec{1, 1, 0, 0}) == Vec{1, 1});
    CHECK_THROWS_AS(a.coordinates(Vec{0, 0, 1, 0}), DomainError);
    std::size_t count = 0;
    a.sum(b).for_each_vector([&](const Vec&) { ++count; });
    CHECK(count == 8);
  }

  TEST_CASE("packed keys round-trip and order lexicographically") {
    for (std::uint64_t k = 0; k < 81; ++k) CHECK(pack_key(unpack_key(k, 4, 3), 3) == k);
    CHECK(pack_key(Vec{1, 0, 0}, 2) > pack_key(Vec{0, 1, 1}, 2));
    CHECK_THROWS_AS(checked_pow(2, 64), CapacityError);
    CHECK(checked_pow(3, 4) == 81);
  }
}
