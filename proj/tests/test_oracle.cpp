#include <doctest.h>

#include <set>

#include "algchar/chartable.hpp"
#include "algchar/errors.hpp"
#include "algchar/experiments.hpp"
#include "algchar/oracle.hpp"

using namespace algchar;

namespace {

std::set<std::string> keys_of(const std::vector<ClassFunction>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) out.insert(class_function_to_json(f).dump());
  return out;
}

std::set<std::string> keys_of(const IrrSet& irr) {
  std::vector<ClassFunction> fs;
  for (const auto& c : irr.chars) fs.push_back(c.chi);
  return keys_of(fs);
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("zero multiplication gives q^d linear characters") {
    Algebra z = Algebra::from_constants(Field::prime(3), {"a", "b"}, {});
    IrrSet irr = all_irreducibles(Group(z));
    CHECK(irr.size() == 9);
    CHECK(irr.degree_histogram() == std::map<std::uint64_t, std::uint64_t>{{1, 9}});
  }

  TEST_CASE("u_3 and u_4 over small fields") {
    struct Row { std::size_t n; unsigned q; std::size_t count; };
    for (Row r : {Row{3, 2, 5}, Row{3, 3, 11}, Row{4, 2, 16}}) {
      CAPTURE(r.n);
      CAPTURE(r.q);
      IrrSet irr = all_irreducibles(Group(make_ut(r.n, Field::of_order(r.q))));
      CHECK(irr.size() == r.count);
      CHECK(irr.class_count == r.count);
      for (const auto& c : irr.chars) CHECK(inner(c.chi, c.chi).to_rational() == mpq_class(1));
    }
  }

  TEST_CASE("quaternion group: one character is not induced from any theta") {
    Group g(q8_algebra());
    IrrSet irr = all_irreducibles(g);
    REQUIRE(irr.size() == 5);
    CHECK(irr.degree_histogram() == std::map<std::uint64_t, std::uint64_t>{{1, 4}, {2, 1}});
    const IrrCharacter& big = irr.chars.back();
    CHECK(big.degree == 2);
    CHECK_FALSE(big.induced);
    // psi at the top functional has degree 2 and is the faithful character
    ClassFunction psi = kirillov(g, Vec{0, 0, 1});
    CHECK(irr.find(psi) == static_cast<long>(irr.size() - 1));
  }

  TEST_CASE("the class-algebra table agrees with the induction scan") {
    for (const char* name : {"u4(2)", "u3(3)", "q8"}) {
      CAPTURE(name);
      Group g(algebra_by_name(name));
      IrrSet irr = all_irreducibles(g);
      ClassAlgebraTable t = class_algebra_table(g);
      CHECK(t.class_count == irr.class_count);
      CHECK((t.prime - 1) % t.exponent == 0);
      CHECK(keys_of(t.characters) == keys_of(irr));
    }
  }

  TEST_CASE("decomposition of the regular character and non-characters") {
    Group g(make_ut(4, Field::prime(2)));
    IrrSet irr = all_irreducibles(g);
    Decomposition d = decompose(regular_character(g.algebra()), irr);
    CHECK(d.in_span);
    REQUIRE(d.multiplicities.size() == irr.size());
    for (std::size_t i = 0; i < irr.size(); ++i)
      CHECK(d.multiplicities[i].to_rational() == mpq_class(static_cast<long>(irr.chars[i].degree)));
    CHECK(is_character(regular_character(g.algebra()), irr));
    ClassFunction triv = theta_fun(g.algebra(), g.algebra().zero());
    CHECK(is_irreducible(triv, irr));
    CHECK_FALSE(is_character(triv.scaled(mpq_class(-1)), irr));
    CHECK_FALSE(is_character(triv.scaled(mpq_class(1, 2)), irr));
    CHECK_FALSE(is_character(ClassFunction(g.algebra()), irr));
  }

  TEST_CASE("the subalgebra budget is enforced") {
    OracleOptions opts;
    opts.max_subalgebras = 3;
    CHECK_THROWS_AS(all_irreducibles(Group(make_ut(4, Field::prime(2))), opts), CapacityError);
  }
}
