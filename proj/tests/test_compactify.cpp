#include <doctest.h>

#include "defdyn/compactify.hpp"
#include "defdyn/error.hpp"

using namespace defdyn;

namespace {
  auto const zz = GroupContext::integers();

  GroupElement z(std::int64_t v) {
    return GroupElement::integer(v);
  }
}  // namespace

TEST_CASE("logic_quotient") {
  auto const q6 = logic_quotient(BoundedEquivalence::congruence(6));
  CHECK(q6.size() == 6);
  CHECK(q6.discrete);
  for (std::int64_t r = 0; r < 6; ++r) {
    CHECK(q6.fibers[static_cast<std::size_t>(r)] == residue_class(r, 6));
  }
  for (std::int64_t g = -20; g <= 20; ++g) {
    CHECK(q6.fibers[q6.project(z(g))].contains(z(g)));
  }

  auto const c3 = GroupContext::cyclic(3);
  auto const qe = logic_quotient(BoundedEquivalence::equality(c3));
  CHECK(qe.size() == 3);
  REQUIRE(qe.quotient_group.has_value());
  CHECK(qe.quotient_group->order() == 3);

  CHECK(logic_quotient(BoundedEquivalence::congruence(1)).size() == 1);

  CHECK_THROWS_AS(logic_quotient(BoundedEquivalence::partition(c3, {{0, 1}})), InvalidArgument);
  CHECK_THROWS_AS(logic_quotient(BoundedEquivalence::partition(c3, {{0, 1}, {1, 2}})), InvalidArgument);

  // a partition that is not a coset decomposition gives no group quotient
  auto const plain = logic_quotient(BoundedEquivalence::partition(c3, {{0, 1}, {2}}));
  CHECK(plain.size() == 2);
  CHECK(!plain.quotient_group.has_value());

  auto const s3   = bundled_group("S3");
  auto const a3   = logic_quotient(BoundedEquivalence::cosets(s3, {GroupElement::finite(0), GroupElement::finite(1), GroupElement::finite(2)}));
  CHECK(a3.quotient_group.has_value());
  // cosets of a non-normal subgroup: no group structure
  auto const c2 = logic_quotient(BoundedEquivalence::cosets(s3, {GroupElement::finite(0), GroupElement::finite(3)}));
  CHECK(c2.size() == 3);
  CHECK(!c2.quotient_group.has_value());
}

TEST_CASE("g00_at_level") {
  CHECK(g00_at_level(zz, 12) == SubgroupDescriptor::multiples_of(12));
  auto const s3 = bundled_group("S3");
  CHECK(g00_at_level(s3, 5) == SubgroupDescriptor::of_elements({s3.identity()}));
  CHECK(subgroup_contains(zz, g00_at_level(zz, 6), g00_at_level(zz, 12)));
  CHECK(!subgroup_contains(zz, g00_at_level(zz, 12), g00_at_level(zz, 6)));
}

TEST_CASE("universal_compactification") {
  auto const u = universal_compactification(
      zz, 6, {CompactificationTarget::cyclic(2), CompactificationTarget::cyclic(3)});
  CHECK(u.certified());
  CHECK(u.quotient.size() == 6);
  REQUIRE(u.maps.size() == 2);
  CHECK(u.maps[0].table == std::vector<std::size_t>{0, 1, 0, 1, 0, 1});
  CHECK(u.maps[1].table == std::vector<std::size_t>{0, 1, 2, 0, 1, 2});
  // commuting triangles, elementwise
  for (std::int64_t g = -30; g <= 30; ++g) {
    auto const c = u.quotient.project(z(g));
    CHECK(u.maps[0].table[c] == mod_floor(g, 2));
    CHECK(u.maps[1].table[c] == mod_floor(g, 3));
  }

  auto const s3 = bundled_group("S3");
  auto const v  = universal_compactification(
      s3, 1, {CompactificationTarget::homomorphism(s3, {0, 1, 2, 3, 4, 5})});
  CHECK(v.certified());
  CHECK(v.quotient.size() == 6);

  CHECK_THROWS_AS(universal_compactification(zz, 6, {CompactificationTarget::cyclic(4)}),
                  LevelTooCoarse);
  CHECK_THROWS_AS(universal_compactification(
                      s3, 1, {CompactificationTarget::homomorphism(GroupContext::cyclic(3), {0, 1, 2, 0, 1, 2})}),
                  InvalidArgument);
}

TEST_CASE("definable_homomorphism_check") {
  auto const mod4 = DefinableMap::integer_map({4, {0, 1, 2, 3}, {0, 1, 2, 3}, 0, {}}, 4);
  auto const v    = definable_homomorphism_check(mod4, GroupContext::cyclic(4));
  CHECK(v.valid());
  CHECK(v.fiber_modulus == 4);
  // factors through Z/12 at level 12
  auto const u = universal_compactification(zz, 12, {CompactificationTarget::cyclic(v.fiber_modulus)});
  CHECK(u.certified());
  for (std::size_t c = 0; c < 12; ++c) {
    CHECK(u.maps[0].table[c] == mod4(z(static_cast<std::int64_t>(c))));
  }

  auto const zero = DefinableMap::integer_map({1, {0}, {0}, 0, {}}, 2);
  auto const w    = definable_homomorphism_check(zero, GroupContext::cyclic(2));
  CHECK(!w.valid());
  CHECK(w.homomorphism);
  CHECK(!w.surjective);
  CHECK(w.failure.find("image") != std::string::npos);

  auto const c6 = GroupContext::cyclic(6);
  auto const c3 = GroupContext::cyclic(3);
  auto const r  = definable_homomorphism_check(DefinableMap::finite_map(c6, {0, 1, 2, 0, 1, 2}, 3), c3);
  CHECK(r.valid());

  auto const bump = DefinableMap::integer_map({2, {0, 1}, {0, 1}, 0, {1}}, 2);
  auto const x    = definable_homomorphism_check(bump, GroupContext::cyclic(2));
  CHECK(!x.homomorphism);
  CHECK(x.failure.find("not a homomorphism") != std::string::npos);
}

TEST_CASE("inverse system coherence") {
  auto const u = universal_compactification(
      zz, 24, {CompactificationTarget::cyclic(12), CompactificationTarget::cyclic(4)});
  for (std::size_t c = 0; c < 24; ++c) {
    CHECK(u.maps[0].table[c] % 4 == u.maps[1].table[c]);
  }
}
