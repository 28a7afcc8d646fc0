#include <doctest.h>

#include "algchar/charfun.hpp"
#include "algchar/errors.hpp"
#include "algchar/experiments.hpp"

using namespace algchar;

namespace {
Cyclo rat(const Algebra& a, long n, long d = 1) { return Cyclo::rational(a.field().p(), mpq_class(n, d)); }
}  // namespace

TEST_SUITE("charfun") {
  TEST_CASE("theta functions are orthonormal and take root-of-unity values") {
    Algebra u = make_ut(3, Field::prime(3));
    for (std::uint64_t a = 0; a < 27; a += 4) {
      ClassFunction ta = theta_fun(u, unpack_key(a, 3, 3));
      for (std::uint64_t b = 0; b < 27; b += 3) CHECK(inner(ta, theta_fun(u, unpack_key(b, 3, 3))) == rat(u, a == b));
      // theta_lambda(1+X) = zeta^lambda(X)
      Vec x{1, 2, 0};
      CHECK(evaluate(ta, x) == Cyclo::root_power(3, vec_dot(u.field(), unpack_key(a, 3, 3), x)));
    }
  }

  TEST_CASE("pointwise tables invert the coefficient transform") {
    Group g(make_ut(4, Field::prime(2)));
    ClassFunction psi = kirillov(g, unit_vector(6, ut_index(4, 1, 4)));
    std::vector<Cyclo> table = pointwise_table(psi);
    CHECK(from_pointwise_table(g.algebra(), table) == psi);
    CHECK(table[0] == psi.degree());
  }

  TEST_CASE("supercharacters are induced from the left stabilizer") {
    Group g(make_ut(4, Field::prime(2)));
    for (std::uint64_t k = 0; k < 64; k += 5) {
      Vec lam = unpack_key(k, 6, 2);
      Subalgebra l(g.algebra(), left_stabilizer_algebra(g.algebra(), lam));
      ClassFunction induced = induce(theta_fun(l.algebra(), restrict_functional(l.space(), lam)), l, g);
      CHECK(induced == supercharacter(g, lam));
      CHECK(induce_pointwise(theta_fun(l.algebra(), restrict_functional(l.space(), lam)), l, g) == induced);
    }
  }

  TEST_CASE("Kirillov functions have norm one and degree sqrt of the orbit size") {
    Group g(make_ut(4, Field::prime(3)));
    for (std::uint64_t k = 0; k < 729; k += 29) {
      Vec lam = unpack_key(k, 6, 3);
      ClassFunction psi = kirillov(g, lam);
      CHECK(inner(psi, psi) == rat(g.algebra(), 1));
      OrbitReport o = orbit(g, lam, OrbitKind::coadjoint, false);
      CHECK(psi.degree() == rat(g.algebra(), static_cast<long>(checked_pow(3, o.exponent / 2))));
      CHECK(is_class_function(psi, g));
    }
  }

  TEST_CASE("tensor products multiply pointwise") {
    Group g(make_ut(3, Field::prime(3)));
    ClassFunction a = kirillov(g, Vec{0, 1, 0}), b = supercharacter(g, Vec{1, 0, 2});
    std::vector<Cyclo> ta = pointwise_table(a), tb = pointwise_table(b), tab = pointwise_table(tensor(a, b));
    for (std::size_t i = 0; i < ta.size(); ++i) CHECK(tab[i] == ta[i] * tb[i]);
  }

  TEST_CASE("restriction followed by Frobenius reciprocity") {
    Group g(make_ut(4, Field::prime(2)));
    Subalgebra h = power_ideal(g.algebra(), 2);
    Group gh(h.algebra());
    ClassFunction chi = supercharacter(g, unit_vector(6, ut_index(4, 1, 3)));
    for (std::uint64_t k = 0; k < 8; ++k) {
      ClassFunction t = theta_fun(h.algebra(), unpack_key(k, 3, 2));
      CHECK(inner(restrict_to(chi, h), t) == inner(chi, induce(t, h, g)));
    }
  }

  TEST_CASE("polynomial bijections: identity twist is trivial and Exp has inverse") {
    Algebra u = make_ut(4, Field::prime(3));
    Group g(u);
    PolyBijection e = exp_map(u);
    for (std::uint64_t k = 0; k < 729; k += 13) {
      Vec x = unpack_key(k, 6, 3);
      CHECK(e.inverse(u, e.forward(u, x)) == x);
    }
    ClassFunction psi = kirillov(g, unit_vector(6, ut_index(4, 1, 3)));
    CHECK(twist(psi, identity_map(u)) == psi);
    CHECK_THROWS(poly_bijection_checked(u.field(), {1, 2, 1}, u.nilpotency_index()));
  }

  TEST_CASE("xi lies between psi and chi") {
    Algebra u = make_ut(4, Field::prime(2));
    Group g(u);
    for (std::uint64_t k = 0; k < 64; ++k) {
      Vec lam = unpack_key(k, 6, 2);
      ClassFunction xi = xi_character(g, lam), chi = supercharacter(g, lam), psi = kirillov(g, lam);
      CHECK(inner(xi, psi).is_rational());
      CHECK(*inner(xi, psi).to_rational() > 0);
      CHECK(*inner(chi, xi).to_rational() >= *inner(xi, xi).to_rational());
    }
  }

  TEST_CASE("inflation from a quotient") {
    Algebra u = make_ut(4, Field::prime(2));
    Quotient q = quotient(u, power_ideal(u, 3));
    Group gq(q.algebra);
    ClassFunction r = inflate(regular_character(q.algebra), q, u);
    CHECK(r.degree() == rat(u, 32));
    CHECK_THROWS_AS(inflate(regular_character(u), q, u), DomainError);
  }
}
