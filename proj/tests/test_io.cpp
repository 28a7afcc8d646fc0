#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "algchar/errors.hpp"
#include "algchar/experiments.hpp"
#include "algchar/io.hpp"

using namespace algchar;

TEST_SUITE("io") {
  TEST_CASE("algebras survive a JSON round trip") {
    for (const char* name : {"u4(2)", "u3(4)", "q8", "ut6c"}) {
      CAPTURE(name);
      Algebra a = algebra_by_name(name);
      Json j = algebra_to_json(a);
      CHECK(j.at("schema") == kAlgebraSchema);
      Algebra b = algebra_from_json(j);
      CHECK(b == a);
      CHECK(algebra_fingerprint(b) == algebra_fingerprint(a));
    }
  }

  TEST_CASE("malformed algebras name the offending pointer") {
    Json j = algebra_to_json(make_ut(3, Field::prime(2)));
    j["field"]["p"] = 4;
    try {
      algebra_from_json(j);
      FAIL("accepted a non-prime characteristic");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("/field") != std::string::npos);
    }
    Json k = algebra_to_json(make_ut(3, Field::prime(2)));
    k["constants"][0][2][1] = 5;
    try {
      algebra_from_json(k);
      FAIL("accepted an out-of-range field element");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("/constants/0/2/1") != std::string::npos);
    }
  }

  TEST_CASE("cyclotomic numbers and class functions round trip") {
    Cyclo z = Cyclo::root_power(5, 2) * mpq_class(-3, 7) + Cyclo::rational(5, 1);
    CHECK(cyclo_from_json(cyclo_to_json(z)) == z);
    CHECK(cyclo_to_json(Cyclo::rational(3, mpq_class(1, 2))).dump() == R"([3,["1/2","0"]])");
    Group g(make_ut(4, Field::prime(3)));
    ClassFunction chi = supercharacter(g, unit_vector(6, ut_index(4, 1, 3)));
    CHECK(class_function_from_json(g.algebra(), class_function_to_json(chi)) == chi);
    CHECK_THROWS_AS(cyclo_from_json(Json::parse(R"([3,["1"]])")), ValidationError);
  }

  TEST_CASE("powers are exact decimal strings") {
    CHECK(power_string(2, 64) == "18446744073709551616");
    CHECK(power_string(3, 0) == "1");
  }

  TEST_CASE("cache store, load and erase") {
    auto root = std::filesystem::temp_directory_path() / "algchar-cache-test";
    std::filesystem::remove_all(root);
    Cache cache(root);
    CHECK_FALSE(cache.load("count", "abc").has_value());
    cache.store("count", "abc", Json{{"total", 7}});
    auto back = cache.load("count", "abc");
    REQUIRE(back.has_value());
    CHECK(back->at("total") == 7);
    cache.erase("count", "abc");
    CHECK_FALSE(cache.load("count", "abc").has_value());
    std::filesystem::remove_all(root);
  }

  TEST_CASE("checkpoints round trip") {
    PartitionCheckpoint c;
    c.next_index = 17;
    c.visited = {0xffu, 3u};
    c.representatives = {0, 5};
    c.sizes = {4, 2};
    PartitionCheckpoint d = checkpoint_from_json(checkpoint_to_json(c));
    CHECK(d.next_index == 17);
    CHECK(d.visited == c.visited);
    CHECK(d.representatives == c.representatives);
    CHECK(d.sizes == c.sizes);
  }
}

TEST_SUITE("experiments") {
  TEST_CASE("fixtures by name") {
    CHECK(algebra_by_name("u5(2)").dim() == 10);
    CHECK(algebra_by_name("ut5(3)").dim() == 8);
    CHECK(algebra_by_name("ut6c").dim() == 14);
    CHECK_THROWS_AS(algebra_by_name("nonsense"), ValidationError);
  }

  TEST_CASE("rational ratio detects scalar multiples only") {
    Group g(make_ut(3, Field::prime(2)));
    ClassFunction psi = kirillov(g, Vec{0, 0, 1});
    CHECK(rational_ratio(psi.scaled(mpq_class(2)), psi) == mpq_class(2));
    CHECK_FALSE(rational_ratio(psi, theta_fun(g.algebra(), Vec{1, 0, 0})).has_value());
  }

  TEST_CASE("parallel_for visits every index once and rethrows") {
    std::vector<int> hits(100, 0);
    parallel_for(100, 4, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw DomainError("x"); }), DomainError);
  }
}

TEST_SUITE("io") {
  TEST_CASE("checked-in fixtures match the built-in constructions") {
    const std::filesystem::path dir = ALGCHAR_FIXTURE_DIR;
    CHECK(load_algebra(dir / "q8.json") == q8_algebra());
    CHECK(load_algebra(dir / "ut5_q3.json") == ut5_example(3).n);
    CHECK(load_algebra(dir / "ut6c.json") == ut6_constrained());
    CHECK(load_algebra(dir / "u4_q2.json") == make_ut(4, Field::prime(2)));
    CHECK_THROWS_AS(load_algebra(dir / "missing.json"), ValidationError);
  }
}
