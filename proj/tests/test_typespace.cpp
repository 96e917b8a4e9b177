#include <doctest.h>

#include <set>

#include "defdyn/amenability.hpp"
#include "defdyn/error.hpp"
#include "defdyn/typespace.hpp"
#include "support.hpp"

using namespace defdyn;
using defdyn::testing::lim;
using defdyn::testing::limit_part;
using defdyn::testing::real;

namespace {
  GroupElement z(std::int64_t v) {
    return GroupElement::integer(v);
  }
}  // namespace

TEST_CASE("contains") {
  CHECK(!contains(lim('+', 1, 2), evens()));
  CHECK(!contains(lim('-', 0, 2), at_least(0)));
  CHECK(contains(real(6), evens()));
  CHECK(contains(lim('+', 0, 1), at_least(-5)));
  CHECK_THROWS_AS(contains(lim('+', 0, 2), residue_class(0, 3)), LevelError);
}

TEST_CASE("restrict") {
  CHECK(restrict(lim('+', 5, 6), Level{3}) == lim('+', 2, 3));
  CHECK(restrict(lim('-', 5, 6), Level{6}) == lim('-', 5, 6));
  CHECK(restrict(real(7), Level{5}) == real(7));
  CHECK_THROWS_AS(restrict(lim('+', 1, 4), Level{3}), LevelError);
}

TEST_CASE("apply_group") {
  auto const zz = GroupContext::integers();
  CHECK(apply_group(zz, z(1), lim('+', 0, 2)) == lim('+', 1, 2));
  CHECK(apply_group(zz, z(3), lim('-', 1, 4)) == lim('-', 0, 4));
  for (auto const& p : limit_part(5)) {
    CHECK(apply_group(zz, z(0), p) == p);
  }
  CHECK(apply_group(zz, z(2), real(5)) == real(7));
}

TEST_CASE("apply_group is a bijection commuting with restrict") {
  auto const zz = GroupContext::integers();
  for (std::uint64_t n = 1; n <= 12; ++n) {
    for (std::int64_t g = -13; g <= 13; ++g) {
      std::set<TypePoint> image;
      for (auto const& p : limit_part(n)) {
        auto const q = apply_group(zz, z(g), p);
        image.insert(q);
        CHECK(level_of(q) == n);
        for (std::uint64_t m = 1; m <= n; ++m) {
          if (n % m == 0) {
            CHECK(restrict(q, Level{m}) == apply_group(zz, z(g), restrict(p, Level{m})));
          }
        }
      }
      CHECK(image.size() == 2 * n);
    }
  }
}

TEST_CASE("acting_set") {
  auto const zz = GroupContext::integers();
  auto const y  = residue_class(1, 3);
  auto const a  = acting_set(zz, lim('+', 0, 3), y);
  CHECK(a == residue_class(1, 3));
  // sampled membership: g in a iff Y in g·p
  for (std::int64_t g = -30; g <= 30; ++g) {
    CHECK(a.contains(z(g)) == contains(apply_group(zz, z(g), lim('+', 0, 3)), y));
  }
  auto const s = at_least(2);
  CHECK(acting_set(zz, real(0), s) == s);
  CHECK(acting_set(zz, lim('-', 0, 2), at_least(0)).empty());
  CHECK(acting_set(zz, lim('+', 1, 2), at_least(0)) == whole_group(zz));
}

TEST_CASE("limit_of") {
  auto const lw = limit_of(Sign::plus, 1, 4);
  CHECK(lw.point == lim('+', 1, 4));
  CHECK(lw.witness.at(0) == 1);
  CHECK(lw.witness.at(1) == 5);
  CHECK(lw.witness.at(2) == 9);
  CHECK(limit_of(Sign::minus, 0, 1).point == lim('-', 0, 1));
  CHECK(restrict(limit_of(Sign::plus, 5, 6).point, Level{2}) == limit_of(Sign::plus, 1, 2).point);
  CHECK(limit_of(Sign::minus, -1, 5).point == lim('-', 4, 5));
  CHECK_THROWS_AS(limit_of(Sign::plus, 0, 0), InvalidArgument);
}

TEST_CASE("ultrafilter laws over a generated family") {
  for (std::uint64_t n = 1; n <= 12; ++n) {
    FamilyBounds b;
    b.max_modulus    = 6;
    b.window         = 1;
    b.period_divides = n;
    auto const fam   = generate_family(GroupContext::integers(), b);
    CAPTURE(n);
    for (auto const& p : limit_part(n)) {
      for (std::size_t i = 0; i < fam.size(); i += 3) {
        auto const& a = fam[i];
        CHECK(contains(p, set_complement(a)) == !contains(p, a));
        auto const& c = fam[(i * 7 + 1) % fam.size()];
        CHECK(contains(p, set_union(a, c)) == (contains(p, a) || contains(p, c)));
      }
    }
  }
}

TEST_CASE("witness sequences converge") {
  FamilyBounds b;
  b.max_modulus    = 4;
  b.window         = 2;
  b.period_divides = 12;
  auto const fam   = generate_family(GroupContext::integers(), b);
  for (auto const& p : limit_part(12)) {
    auto const lw = limit_of(p.sign(), static_cast<std::int64_t>(p.residue()), 12);
    for (auto const& y : fam) {
      // the window lies in [-2, 2]; the tail from k = 2 is beyond it
      for (std::uint64_t k = 2; k < 7; ++k) {
        CHECK(contains(real(lw.witness.at(k)), y) == contains(p, y));
      }
    }
  }
}

TEST_CASE("level type space") {
  auto const s = LevelTypeSpace(GroupContext::integers(), Level{3});
  CHECK(s.size() == 6);
  CHECK(s.point(0) == lim('+', 0, 3));
  CHECK(s.point(5) == lim('-', 2, 3));
  CHECK(s.index_of(lim('-', 1, 3)) == 4);
  CHECK_THROWS_AS(s.index_of(real(1)), InvalidArgument);
  CHECK_THROWS_AS(LevelTypeSpace(GroupContext::integers(), Level{0}), LevelError);

  auto const c3 = LevelTypeSpace(GroupContext::cyclic(3), Level{1});
  CHECK(c3.size() == 3);
  CHECK(LevelTypeSpace(GroupContext::cyclic(3), Level{2}).level() == Level{1});
  auto const zz = GroupContext::integers();
  CHECK_THROWS_AS(LevelTypeSpace(GroupContext::product(zz, zz), Level{1}), Unsupported);
}

TEST_CASE("pair points") {
  auto const zz = GroupContext::integers();
  auto const c2 = GroupContext::cyclic(2);
  auto const p  = GroupContext::product(zz, c2);
  auto const pt = TypePoint::pair(lim('+', 1, 2), TypePoint::realized(GroupElement::finite(1)));
  CHECK(pt.is_pair());
  CHECK(contains(pt, rectangle(p, odds(), whole_group(c2))));
  CHECK(!contains(pt, rectangle(p, odds(), element_set(c2, {GroupElement::finite(0)}))));
  auto const moved = apply_group(p, GroupElement::pair(z(1), GroupElement::finite(1)), pt);
  CHECK(moved == TypePoint::pair(lim('+', 0, 2), TypePoint::realized(GroupElement::finite(0))));
  auto const collapsed = TypePoint::pair(real(3), TypePoint::realized(GroupElement::finite(1)));
  CHECK(collapsed.is_realized());
}

TEST_CASE("pick_point and translate_into") {
  auto const zz = GroupContext::integers();
  auto const p  = pick_point(residue_class(1, 4), 4);
  REQUIRE(p.has_value());
  CHECK(contains(*p, residue_class(1, 4)));
  CHECK(!p->is_realized());
  CHECK(!pick_point(empty_set(zz), 4).has_value());
  auto const g = translate_into(zz, lim('+', 0, 4), residue_class(3, 4));
  REQUIRE(g.has_value());
  CHECK(contains(apply_group(zz, invert_element(zz, *g), lim('+', 0, 4)), residue_class(3, 4)));
  CHECK(!translate_into(zz, lim('-', 0, 2), at_least(0)).has_value());
}
