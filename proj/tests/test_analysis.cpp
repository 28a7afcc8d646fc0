#include <doctest.h>

#include "algchar/analysis.hpp"
#include "algchar/errors.hpp"
#include "algchar/experiments.hpp"

using namespace algchar;

TEST_SUITE("analysis") {
  TEST_CASE("sizes of the top functional on u_4") {
    Algebra u = make_ut(4, Field::prime(2));
    LambdaSizes z = lambda_sizes(u, unit_vector(6, ut_index(4, 1, 4)));
    CHECK(z.dim == 6);
    CHECK(z.coadjoint == 4);
    CHECK(z.chi_degree == 2);
    CHECK(z.left == 2);
    CHECK(z.right == 2);
    CHECK(z.intersection + z.dim_l == z.dim_s);
    // s = l here, so chi is irreducible and equals psi
    CHECK(z.intersection == 0);
    CHECK_FALSE(is_fully_ramified(u, unit_vector(6, ut_index(4, 1, 4))));
    CHECK(is_fully_ramified(u, u.zero()));
  }

  TEST_CASE("sizes obey the orbit identities for every lambda") {
    Algebra u = make_ut(4, Field::prime(2));
    Group g(u);
    for (std::uint64_t k = 0; k < 64; ++k) {
      Vec lam = unpack_key(k, 6, 2);
      LambdaSizes z = lambda_sizes(u, lam);
      CHECK(z.left == z.dim - z.dim_l);
      CHECK(z.chi_degree == z.dim - z.dim_l);
      CHECK(z.xi_degree == z.dim - z.dim_l_bar);
      CHECK(z.xi_set == 2 * z.dim - z.dim_l_bar - z.dim_s_bar);
      CHECK(z.coadjoint == orbit(g, lam, OrbitKind::coadjoint, false).exponent);
      CHECK(z.two_sided == orbit(g, lam, OrbitKind::two_sided, false).exponent);
    }
  }

  TEST_CASE("constituent counts agree with the oracle") {
    Group g(make_ut(3, Field::prime(3)));
    IrrSet irr = all_irreducibles(g);
    for (std::uint64_t k = 0; k < 27; ++k) {
      Vec lam = unpack_key(k, 3, 3);
      CAPTURE(k);
      std::size_t super_true = decompose(supercharacter(g, lam), irr).constituents().size();
      std::size_t xi_true = decompose(xi_character(g, lam), irr).constituents().size();
      CHECK(count_constituents_super(g, lam).total == super_true);
      CHECK(count_constituents_xi(g, lam).total == xi_true);
      ConstituentCount byd = count_by_degree(g, lam);
      REQUIRE(byd.by_degree.has_value());
      std::uint64_t s = 0;
      for (auto [d, c] : *byd.by_degree) s += c;
      CHECK(s == super_true);
    }
  }

  TEST_CASE("well-induced characters in the odd-q example") {
    Ut5Example ex = ut5_example(3);
    Group g(ex.n);
    CHECK(ex.n.dim() == 8);
    CHECK(ex.h.dim() == 7);
    WellInduced w = well_induced(g, ex.h, restrict_functional(ex.h, ex.lambda));
    CHECK(w.norm.is_rational());
    CHECK(w.character.degree() == Cyclo::rational(3, 3));
  }

  TEST_CASE("well_induced rejects a functional that does not kill h^2") {
    Algebra u = make_ut(3, Field::prime(2));
    Group g(u);
    Subspace full = Subspace::full(u.field(), 3);
    CHECK_THROWS_AS(well_induced(g, full, unit_vector(3, ut_index(3, 1, 3))), DomainError);
  }

  TEST_CASE("Xi-cells partition the dual") {
    Group g(make_ut(4, Field::prime(2)));
    std::vector<XiCell> cells = xi_partition(g);
    std::uint64_t total = 0;
    for (const auto& c : cells) total += c.set.keys.size();
    CHECK(total == 64);
  }

  TEST_CASE("inflation is compatible on u_4(2) modulo n^3") {
    Group g(make_ut(4, Field::prime(2)));
    Quotient q = quotient(g.algebra(), power_ideal(g.algebra(), 3));
    for (std::uint64_t k = 0; k < checked_pow(2, q.algebra.dim()); ++k)
      CHECK(inflation_check(g, q, unpack_key(k, q.algebra.dim(), 2)).ok());
  }
}
