#include <doctest.h>

#include <set>

#include "defdyn/amenability.hpp"
#include "defdyn/ellis.hpp"
#include "defdyn/error.hpp"
#include "defdyn/oracle.hpp"
#include "support.hpp"

using namespace defdyn;

namespace {
  auto const zz = GroupContext::integers();

  // Average of the point mass at (+,0) and (-,0) over the Z/n orbit: an
  // independent construction of the canonical level-n measure.
  std::vector<Rational> orbit_average(std::uint64_t n) {
    std::vector<Rational> w(2 * n, Rational(0));
    for (std::uint64_t g = 0; g < n; ++g) {
      w[g] += Rational(1, 2 * n);
      w[n + g] += Rational(1, 2 * n);
    }
    return w;
  }
}  // namespace

TEST_CASE("canonical measures") {
  auto const s4 = LevelTypeSpace(zz, Level{4});
  auto const mu = invariant_measure(s4);
  REQUIRE(orbit_average(4) == std::vector<Rational>(8, Rational(1, 8)));
  CHECK(mu.weights == orbit_average(4));
  CHECK(mu.level == Level{4});
  CHECK(mu.cylinder(s4, evens()) == Rational(1, 2));
  CHECK(mu.cylinder(s4, at_least(0)) == Rational(1, 2));

  auto const rot = invariant_measure(FiniteFlowPresentation::rotation(6));
  CHECK(rot.weights == std::vector<Rational>(6, Rational(1, 6)));

  auto const trivial = FiniteFlowPresentation::trivial(GroupContext::cyclic(1), 2);
  CHECK(invariant_measure(trivial).weights == std::vector<Rational>(2, Rational(1, 2)));
  // a point mass is also invariant for the trivial action
  CHECK(is_invariant({Rational(1), Rational(0)}, check_definable_flow(trivial).action));
}

TEST_CASE("invariance, exhaustive over level subsets") {
  for (std::uint64_t n = 1; n <= 8; ++n) {
    auto const s  = LevelTypeSpace(zz, Level{n});
    auto const mu = invariant_measure(s);
    CHECK(is_invariant(mu.weights, s.generator_permutations()));
    auto const pi = s.generator_permutations().front();
    for (std::size_t mask = 0; mask < (std::size_t{1} << s.size()); mask += (n > 6 ? 7 : 1)) {
      std::vector<std::size_t> a, ga;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (mask >> i & 1U) {
          a.push_back(i);
          ga.push_back(pi[i]);
        }
      }
      CHECK(mu.of(a) == mu.of(ga));
    }
  }
}

TEST_CASE("level coherence under pushforward") {
  for (std::uint64_t n = 1; n <= 12; ++n) {
    auto const sn = LevelTypeSpace(zz, Level{n});
    for (auto m : divisors(n)) {
      auto const sm = LevelTypeSpace(zz, Level{m});
      CHECK(pushforward(invariant_measure(sn), sn, sm) == invariant_measure(sm));
    }
  }
  CHECK_THROWS_AS(pushforward(invariant_measure(LevelTypeSpace(zz, Level{4})),
                              LevelTypeSpace(zz, Level{4}), LevelTypeSpace(zz, Level{3})),
                  LevelError);
}

TEST_CASE("LP measure agrees with invariance") {
  auto const w = invariant_measure_lp(3, {{1, 2, 0}});
  REQUIRE(w.has_value());
  CHECK(*w == std::vector<Rational>(3, Rational(1, 3)));
  // a non-bijective map: all mass must sit on the fixed point 0
  auto const v = invariant_measure_lp(3, {{0, 0, 1}});
  REQUIRE(v.has_value());
  CHECK(*v == std::vector<Rational>{1, 0, 0});
}

TEST_CASE("fixed points") {
  auto const f1 = fixed_points(LevelTypeSpace(zz, Level{1}));
  CHECK(f1 == std::vector<std::size_t>{0, 1});
  for (std::uint64_t n = 2; n <= 12; ++n) {
    CHECK(fixed_points(LevelTypeSpace(zz, Level{n})).empty());
  }
  CHECK(fixed_points(FiniteFlowPresentation::regular(GroupContext::cyclic(3))).empty());
  CHECK(fixed_points(FiniteFlowPresentation::trivial(GroupContext::cyclic(3), 2)).size() == 2);
}

TEST_CASE("generated families") {
  FamilyBounds b;
  b.max_modulus = 2;
  auto const fam = generate_family(zz, b);
  // 16 up/down pattern pairs of period <= 2, each with 0 toggled or not
  CHECK(fam.size() == 32);
  std::set<DefinableSet> distinct(fam.begin(), fam.end());
  CHECK(distinct.size() == fam.size());

  auto const c3 = generate_family(GroupContext::cyclic(3), FamilyBounds{});
  CHECK(c3.size() == 7);
  CHECK(c3.front() == element_set(GroupContext::cyclic(3), {GroupElement::finite(0)}));

  FamilyBounds big;
  big.max_modulus = 11;
  CHECK_THROWS_AS(generate_family(zz, big), GuardExceeded);
}

TEST_CASE("pestov_check") {
  FamilyBounds b;
  b.max_modulus = 4;
  auto const r  = pestov_check(zz, b);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->y == evens());
  CHECK(r.certificate->cover == std::vector<GroupElement>{GroupElement::integer(0), GroupElement::integer(1)});
  CHECK(r.certificate->difference == evens());

  for (auto const& g : bundled_groups()) {
    auto const c = pestov_check(g, FamilyBounds{});
    if (g.order() == 1) {
      CHECK(!c.certificate.has_value());
      CHECK(c.note.find("not a proof") != std::string::npos);
    } else {
      REQUIRE(c.certificate.has_value());
      CHECK(c.certificate->y == element_set(g, {g.identity()}));
      CHECK(c.certificate->difference == element_set(g, {g.identity()}));
    }
  }
}

TEST_CASE("kernel_intersection") {
  FamilyBounds b;
  b.max_modulus = 4;
  auto const k  = kernel_intersection(zz, b);
  CHECK(k.subgroup == SubgroupDescriptor::multiples_of(12));
  CHECK(k.level == 12);
  CHECK(k.matches());

  auto const c3 = kernel_intersection(GroupContext::cyclic(3), FamilyBounds{});
  CHECK(c3.subgroup == SubgroupDescriptor::of_elements({GroupElement::finite(0)}));
  CHECK(c3.generic_sets == 7);
  CHECK(c3.matches());

  auto const c1 = kernel_intersection(GroupContext::cyclic(1), FamilyBounds{});
  CHECK(c1.subgroup == SubgroupDescriptor::of_elements({GroupElement::finite(0)}));
  CHECK(c1.matches());
}

TEST_CASE("singleton minimal criterion") {
  FamilyBounds b;
  b.max_modulus = 4;
  auto const r  = singleton_minimal_criterion(LevelTypeSpace(zz, Level{4}), b);
  CHECK(!r.all_minimal_singletons);
  CHECK(!r.meeting_sets_full);
  CHECK(r.agree());
  REQUIRE(r.large_subflow.has_value());
  CHECK(r.large_subflow->points.size() == 4);

  auto const t = singleton_minimal_criterion(LevelTypeSpace(GroupContext::cyclic(1), Level{1}), b);
  CHECK(t.all_minimal_singletons);
  CHECK(t.meeting_sets_full);

  auto const c2 = GroupContext::cyclic(2);
  auto const u  = singleton_minimal_criterion(LevelTypeSpace(c2, Level{1}), b);
  CHECK(!u.all_minimal_singletons);
  CHECK(!u.meeting_sets_full);
  REQUIRE(u.witness_set.has_value());
  CHECK(difference_set(*u.witness_set) != whole_group(c2));

  // at level 1 the limit points are fixed: both sides true
  auto const l1 = singleton_minimal_criterion(LevelTypeSpace(zz, Level{1}), b);
  CHECK(l1.all_minimal_singletons);
  CHECK(l1.meeting_sets_full);
}

TEST_CASE("measure definability diagnostic") {
  auto const s4 = LevelTypeSpace(zz, Level{4});
  auto const mu = invariant_measure(s4);
  // mu(gY) for Y = evens is 1/2 for every g
  for (std::int64_t g = -8; g <= 8; ++g) {
    CHECK(mu.cylinder(s4, translate(GroupElement::integer(g), evens())) == Rational(1, 2));
  }
  FamilyBounds b;
  b.max_modulus = 4;
  auto const r  = measure_definability_check(mu, s4, b);
  CHECK(r.passed);
  CHECK(r.sets_checked > 0);

  auto const s1    = LevelTypeSpace(zz, Level{1});
  auto       point = InvariantMeasure{Level{1}, {Rational(1), Rational(0)}};
  CHECK(measure_definability_check(point, s1, b).passed);

  auto const s3 = LevelTypeSpace(bundled_group("S3"), Level{1});
  CHECK(measure_definability_check(invariant_measure(s3), s3, FamilyBounds{}).passed);
}

TEST_CASE("pestov consistency") {
  FamilyBounds b;
  b.max_modulus = 4;
  auto const r  = pestov_consistency(zz, b);
  CHECK(r.levels == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(r.certificate_found);
  CHECK(!r.fixed_points_everywhere);
  CHECK(r.consistent());
  auto const t = pestov_consistency(GroupContext::cyclic(1), b);
  CHECK(!t.certificate_found);
  CHECK(t.fixed_points_everywhere);
  CHECK(t.consistent());
}
