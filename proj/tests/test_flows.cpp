#include <doctest.h>

#include <algorithm>
#include <set>

#include "defdyn/ellis.hpp"
#include "defdyn/error.hpp"
#include "defdyn/flows.hpp"
#include "defdyn/oracle.hpp"
#include "support.hpp"

using namespace defdyn;
using defdyn::testing::lim;
using defdyn::testing::real;

namespace {
  auto const zz = GroupContext::integers();

  GroupElement z(std::int64_t v) {
    return GroupElement::integer(v);
  }

  std::vector<std::vector<std::size_t>> points_of(std::vector<SubflowDescriptor> const& fl) {
    std::vector<std::vector<std::size_t>> out;
    for (auto const& f : fl) {
      out.push_back(f.points);
    }
    return out;
  }
}  // namespace

TEST_CASE("check_definable_flow") {
  auto const c = check_definable_flow(FiniteFlowPresentation::rotation(6));
  CHECK(c.is_ambit);
  CHECK(c.orbit_period == std::vector<std::uint64_t>(6, 6));

  auto const two_cycle = FiniteFlowPresentation::integer_flow({1, 0, 2}, 2);
  auto const d         = check_definable_flow(two_cycle);
  CHECK(!d.is_ambit);
  CHECK(d.orbits == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});

  // C3 with a generator acting as a transposition: g^3 != id
  auto const c3  = GroupContext::cyclic(3);
  auto const bad = FiniteFlowPresentation::finite_flow(c3, 2, {{GroupElement::finite(1), {1, 0}}});
  CHECK_THROWS_AS(check_definable_flow(bad), InvalidFlow);

  CHECK_THROWS_AS(check_definable_flow(FiniteFlowPresentation::integer_flow({0, 0})), InvalidFlow);
  auto const s3 = bundled_group("S3");
  CHECK(check_definable_flow(FiniteFlowPresentation::regular(s3)).is_ambit);
}

TEST_CASE("universal_ambit_morphism") {
  auto const s6 = LevelTypeSpace(zz, Level{6});
  auto const f  = FiniteFlowPresentation::rotation(6);
  auto const h  = universal_ambit_morphism(s6, f);
  CHECK(h.certified());
  // limit of pi^{a_k}(0) along a_k = 4, 10, 16, ...
  auto const pi = f.generators.front().second;
  auto const lw = limit_of(Sign::plus, 4, 6);
  for (std::uint64_t k = 0; k < 4; ++k) {
    std::size_t x = 0;
    for (std::int64_t i = 0; i < lw.witness.at(k); ++i) {
      x = pi[x];
    }
    CHECK(x == 4);
  }
  CHECK(h(lim('+', 4, 6)) == 4);
  CHECK(h(real(-1)) == 5);

  auto const s4 = LevelTypeSpace(zz, Level{4});
  CHECK_THROWS_AS(universal_ambit_morphism(s4, f), LevelTooCoarse);
  try {
    universal_ambit_morphism(s4, f);
  } catch (LevelTooCoarse const& e) {
    CHECK(std::string(e.what()).find("level too coarse") != std::string::npos);
  }

  auto const t = universal_ambit_morphism(s4, FiniteFlowPresentation::trivial(zz, 1));
  CHECK(t.limit_image == std::vector<std::size_t>(8, 0));

  CHECK_THROWS_AS(universal_ambit_morphism(s4, FiniteFlowPresentation::integer_flow({1, 0, 2}, 2)),
                  InvalidFlow);
}

TEST_CASE("minimal_subflows") {
  auto const s4 = LevelTypeSpace(zz, Level{4});
  auto const fl = minimal_subflows(s4);
  REQUIRE(oracle::minimal_subflows(4)
          == std::vector<std::vector<std::size_t>>{{0, 1, 2, 3}, {4, 5, 6, 7}});
  CHECK(points_of(fl) == oracle::minimal_subflows(4));

  CHECK(points_of(minimal_subflows(FiniteFlowPresentation::rotation(6)))
        == std::vector<std::vector<std::size_t>>{{0, 1, 2, 3, 4, 5}});
  CHECK(points_of(minimal_subflows(LevelTypeSpace(zz, Level{1})))
        == std::vector<std::vector<std::size_t>>{{0}, {1}});
  for (std::uint64_t n = 1; n <= 8; ++n) {
    CHECK(points_of(minimal_subflows(LevelTypeSpace(zz, Level{n}))) == oracle::minimal_subflows(n));
  }
}

TEST_CASE("left ideals are exactly the closed invariant subsets") {
  CHECK(is_left_ideal(LevelTypeSpace(zz, Level{4}), {0, 1, 2, 3}));
  CHECK(!is_left_ideal(LevelTypeSpace(zz, Level{4}), {0}));
  CHECK(is_left_ideal(LevelTypeSpace(zz, Level{4}), {0, 1, 2, 3, 4, 5, 6, 7}));
  for (std::uint64_t n = 1; n <= 4; ++n) {
    auto const s = LevelTypeSpace(zz, Level{n});
    for (std::size_t mask = 1; mask < (std::size_t{1} << s.size()); ++mask) {
      std::vector<std::size_t> sub;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (mask >> i & 1U) {
          sub.push_back(i);
        }
      }
      CHECK(is_left_ideal(s, sub) == is_subflow(s, sub));
    }
  }
}

TEST_CASE("universal minimal flow and its uniqueness isomorphism") {
  auto const s4  = LevelTypeSpace(zz, Level{4});
  auto const umf = universal_minimal_flow(s4);
  CHECK(umf.flow.points == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(umf.idempotent == lim('+', 0, 4));
  auto const fl  = minimal_subflows(s4);
  auto const iso = flow_isomorphism(s4, fl[0], fl[1]);
  CHECK(iso.certified());

  // the oracle's equivariant bijections {+}xZ/4 -> {-}xZ/4: exactly 4, all
  // translations
  auto const ga = oracle::rotation_on(fl[0].points, 4);
  auto const gb = oracle::rotation_on(fl[1].points, 4);
  auto const all = oracle::equivariant_maps({ga}, {gb}, 4, 4, true);
  REQUIRE(all.size() == 4);
  for (auto const& m : all) {
    for (std::size_t a = 0; a < 4; ++a) {
      CHECK(m[a] == (a + m[0]) % 4);
    }
  }
  std::vector<std::size_t> local;
  for (auto i : iso.map) {
    local.push_back(i - 4);
  }
  CHECK(std::find(all.begin(), all.end(), local) != all.end());

  auto const s1 = LevelTypeSpace(zz, Level{1});
  auto const f1 = minimal_subflows(s1);
  auto const i1 = flow_isomorphism(s1, f1[0], f1[1]);
  CHECK(i1.certified());
  CHECK(i1.map == std::vector<std::size_t>{1});

  CHECK_THROWS_AS(flow_isomorphism(s4, SubflowDescriptor{{0, 1}}, fl[1]), InvalidArgument);
}

TEST_CASE("equivariant self-maps of a minimal subflow are right translations") {
  for (std::uint64_t n = 1; n <= 8; ++n) {
    auto const s  = LevelTypeSpace(zz, Level{n});
    auto const fl = minimal_subflows(s);
    for (auto const& f : fl) {
      auto const gen  = oracle::rotation_on(f.points, n);
      auto const maps = oracle::equivariant_maps({gen}, {gen}, f.points.size(), f.points.size(), false);
      CHECK(maps.size() == n);
      for (auto const& m : maps) {
        std::set<std::size_t> img(m.begin(), m.end());
        CHECK(img.size() == m.size());
        // p -> p*t with t the image of the idempotent
        auto const t = s.point(f.points[m[0]]);
        for (std::size_t a = 0; a < m.size(); ++a) {
          CHECK(star(zz, s.point(f.points[a]), t) == s.point(f.points[m[a]]));
        }
      }
    }
  }
}

TEST_CASE("restriction coherence of minimal subflows") {
  auto const s12 = LevelTypeSpace(zz, Level{12});
  for (std::uint64_t m : {1, 2, 3, 4, 6}) {
    auto const sm = LevelTypeSpace(zz, Level{m});
    std::set<std::vector<std::size_t>> expected;
    for (auto const& f : minimal_subflows(sm)) {
      expected.insert(f.points);
    }
    for (auto const& f : minimal_subflows(s12)) {
      std::set<std::size_t> img;
      for (auto i : f.points) {
        img.insert(sm.index_of(restrict(s12.point(i), Level{m})));
      }
      CHECK(expected.count(std::vector<std::size_t>(img.begin(), img.end())) == 1);
    }
  }
}

TEST_CASE("extend_definable_map") {
  auto const parity = DefinableMap::integer_map({2, {0, 1}, {0, 1}, 0, {}}, 2);
  auto const e2     = extend_definable_map(LevelTypeSpace(zz, Level{2}), parity);
  CHECK(e2(lim('+', 1, 2)) == 1);
  CHECK(e2(real(7)) == 1);
  CHECK(e2.singleton_certified);

  auto const constant = DefinableMap::integer_map({1, {3}, {3}, 0, {}}, 4);
  auto const ec       = extend_definable_map(LevelTypeSpace(zz, Level{5}), constant);
  CHECK(ec.values == std::vector<std::size_t>(10, 3));

  // exception f(0) = 9 inside the window
  auto const bumped = DefinableMap::integer_map({2, {0, 1}, {0, 1}, 0, {9}}, 10);
  CHECK(bumped(GroupElement::integer(0)) == 9);
  auto const eb = extend_definable_map(LevelTypeSpace(zz, Level{4}), bumped);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(eb.values[i] == i % 2);
    // the witness sequence from k = 1 avoids the window
    auto const p  = LevelTypeSpace(zz, Level{4}).point(i);
    auto const lw = limit_of(p.sign(), static_cast<std::int64_t>(p.residue()), 4);
    CHECK(bumped(z(lw.witness.at(1))) == eb.values[i]);
  }

  auto const mod3 = DefinableMap::integer_map({3, {0, 1, 2}, {0, 1, 2}, 0, {}}, 3);
  CHECK_THROWS_AS(extend_definable_map(LevelTypeSpace(zz, Level{4}), mod3), LevelError);
}

TEST_CASE("kernel_of_action") {
  CHECK(kernel_of_action(LevelTypeSpace(zz, Level{6})) == SubgroupDescriptor::multiples_of(6));
  auto const s3 = bundled_group("S3");
  CHECK(kernel_of_action(FiniteFlowPresentation::regular(s3))
        == SubgroupDescriptor::of_elements({s3.identity()}));
  CHECK(kernel_of_action(FiniteFlowPresentation::trivial(s3, 2))
        == SubgroupDescriptor::of_elements(s3.elements()));
  CHECK(kernel_of_action(FiniteFlowPresentation::trivial(zz, 3)) == SubgroupDescriptor::multiples_of(1));
  CHECK(kernel_of_action(FiniteFlowPresentation::rotation(4)) == SubgroupDescriptor::multiples_of(4));
}
