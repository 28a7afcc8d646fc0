#include <doctest.h>

#include "algchar/errors.hpp"
#include "algchar/experiments.hpp"
#include "algchar/grouporbit.hpp"

using namespace algchar;

TEST_SUITE("grouporbit") {
  TEST_CASE("group law, inverses and associativity") {
    Group g(make_ut(4, Field::prime(3)));
    for (std::uint64_t a = 0; a < 729; a += 17) {
      Vec x = unpack_key(a, 6, 3);
      CHECK(vec_is_zero(g.mul(x, g.inv(x))));
      CHECK(vec_is_zero(g.mul(g.inv(x), x)));
      for (std::uint64_t b = 5; b < 729; b += 101) {
        Vec y = unpack_key(b, 6, 3), z = unpack_key((a * b) % 729, 6, 3);
        CHECK(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
      }
    }
  }

  TEST_CASE("class numbers of small unitriangular groups") {
    CHECK(conjugacy_classes(Group(make_ut(3, Field::prime(2)))).count() == 5);
    CHECK(conjugacy_classes(Group(make_ut(4, Field::prime(2)))).count() == 16);
    CHECK(conjugacy_classes(Group(make_ut(3, Field::prime(3)))).count() == 11);
    CHECK(conjugacy_classes(Group(make_ut(4, Field::prime(3)))).count() == 57);
    CHECK(conjugacy_classes(Group(q8_algebra())).count() == 5);
  }

  TEST_CASE("coadjoint orbits count classes and two-sided orbits count superclasses") {
    for (const char* name : {"u3(2)", "u4(2)", "u3(3)", "q8"}) {
      CAPTURE(name);
      Group g(algebra_by_name(name));
      CHECK(coadjoint_partition(g).count() == conjugacy_classes(g).count());
      CHECK(two_sided_partition(g).count() == superclasses(g).count());
      std::uint64_t total = 0;
      for (auto s : coadjoint_partition(g).sizes) total += s;
      CHECK(total == g.order());
    }
    // over F_2 superclasses of u_n correspond to set partitions of {1..n}
    CHECK(superclasses(Group(make_ut(4, Field::prime(2)))).count() == 15);
  }

  TEST_CASE("orbit sizes are powers of q and match the radical") {
    Group g(make_ut(4, Field::prime(3)));
    for (std::uint64_t k = 0; k < 729; k += 11) {
      Vec lam = unpack_key(k, 6, 3);
      OrbitReport o = orbit(g, lam, OrbitKind::coadjoint, true);
      CHECK(o.size == checked_pow(3, o.exponent));
      CHECK(o.exponent == 6 - radical_alternating(g.algebra(), lam).dim());
      CHECK(o.elements.size() == o.size);
    }
  }

  TEST_CASE("orbit guards raise instead of truncating") {
    Group g(make_ut(4, Field::prime(2)));
    Vec lam = unit_vector(6, ut_index(4, 1, 4));
    CHECK_THROWS_AS(orbit_points(g.field(), lam, g.generator_matrices(Action::coadjoint), 2), CapacityError);
    PartitionOptions tiny;
    tiny.guard_bytes = 1;
    CHECK_THROWS_AS(coadjoint_partition(g, tiny), CapacityError);
  }

  TEST_CASE("checkpointed partitions resume to the same result") {
    Group g(make_ut(4, Field::prime(3)));
    AffineSet all = AffineSet::whole(g.field(), 6);
    PartitionOptions o;
    o.keep_membership = false;
    OrbitPartition cold = partition_orbits(all, g.generator_matrices(Action::coadjoint), o);
    std::vector<PartitionCheckpoint> saved;
    o.checkpoint_every = 10;
    o.on_checkpoint = [&](const PartitionCheckpoint& c) { saved.push_back(c); };
    partition_orbits(all, g.generator_matrices(Action::coadjoint), o);
    REQUIRE(saved.size() >= 2);
    PartitionOptions r;
    r.keep_membership = false;
    r.resume = &saved[saved.size() / 2];
    OrbitPartition warm = partition_orbits(all, g.generator_matrices(Action::coadjoint), r);
    CHECK(warm.representatives == cold.representatives);
    CHECK(warm.sizes == cold.sizes);
  }

  TEST_CASE("generators of an algebra subgroup generate it") {
    Group g(make_ut(4, Field::prime(2)));
    CHECK(generated_subgroup_order(g, Subspace::full(g.field(), 6)) == 64);
    CHECK(generated_subgroup_order(g, power_ideal(g.algebra(), 2).space()) == 8);
    for (const char* name : {"u4(2)", "u3(3)", "q8"}) {
      Group h(algebra_by_name(name));
      for (const Subalgebra& s : enumerate_subalgebras(h.algebra()))
        CHECK(generated_subgroup_order(h, s.space()) == checked_pow(h.field().q(), s.dim()));
    }
  }
}
