#include <doctest.h>

#include <cmath>

#include "algchar/cyclo.hpp"
#include "algchar/errors.hpp"

using namespace algchar;

TEST_SUITE("cyclo") {
  TEST_CASE("roots of unity sum to zero and multiply by adding exponents") {
    for (unsigned p : {2u, 3u, 5u, 7u}) {
      CAPTURE(p);
      Cyclo sum(p);
      for (unsigned k = 0; k < p; ++k) sum += Cyclo::root_power(p, k);
      CHECK(sum.is_zero());
      for (long long a = -3; a < 9; ++a)
        for (long long b = 0; b < 5; ++b) CHECK(Cyclo::root_power(p, a) * Cyclo::root_power(p, b) == Cyclo::root_power(p, a + b));
      CHECK(Cyclo::root_power(p, 1).conj() == Cyclo::root_power(p, p - 1));
    }
  }

  TEST_CASE("rationals are stored canonically") {
    Cyclo a = Cyclo::rational(3, mpq_class(2, 4));
    Cyclo b = Cyclo::rational(3, mpq_class(1, 2));
    CHECK(a == b);
    CHECK(a.to_rational() == mpq_class(1, 2));
    CHECK(Cyclo::rational(5, 1) * mpq_class(4, 2) == Cyclo::rational(5, 2));
    CHECK_FALSE(Cyclo::root_power(3, 1).is_rational());
  }

  TEST_CASE("z times its conjugate is real and the approximation matches") {
    Cyclo z = Cyclo::root_power(5, 1) + Cyclo::rational(5, 2);
    Cyclo n = z * z.conj();
    CHECK(n == n.conj());
    CHECK_FALSE(n.is_rational());
    CHECK(n.approx().first == doctest::Approx(5 + 4 * std::cos(2 * M_PI / 5)));
    auto [re, im] = z.approx();
    const double t = 2 * M_PI / 5;
    CHECK(re == doctest::Approx(2 + std::cos(t)));
    CHECK(im == doctest::Approx(std::sin(t)));
  }

  TEST_CASE("different conductors do not mix") {
    CHECK_THROWS_AS(Cyclo(3) + Cyclo(5), DomainError);
    CHECK_THROWS_AS(Cyclo::from_power_basis(3, {1, 2}), DomainError);
  }

  TEST_CASE("string form") {
    CHECK(Cyclo::rational(3, mpq_class(3, 2)).to_string() == "3/2");
    CHECK(Cyclo(7).to_string() == "0");
  }
}
