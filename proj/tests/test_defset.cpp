#include <doctest.h>

#include <random>

#include "defdyn/defset.hpp"
#include "defdyn/error.hpp"
#include "defdyn/oracle.hpp"
#include "support.hpp"

using namespace defdyn;
using defdyn::testing::random_presburger;

namespace {
  GroupElement z(std::int64_t v) {
    return GroupElement::integer(v);
  }
  GroupElement f(std::size_t i) {
    return GroupElement::finite(i);
  }

  bool same_on(DefinableSet const& a, std::vector<std::int64_t> const& members,
               std::int64_t lo, std::int64_t hi) {
    for (std::int64_t x = lo; x <= hi; ++x) {
      bool const want = std::find(members.begin(), members.end(), x) != members.end();
      if (a.contains(z(x)) != want) {
        return false;
      }
    }
    return true;
  }
}  // namespace

TEST_CASE("boolean operations") {
  CHECK(set_union(evens(), odds()) == whole_group(GroupContext::integers()));

  auto const nonneg_evens = set_intersection(residue_class(0, 2), at_least(0));
  auto const& ps          = nonneg_evens.presburger();
  CHECK(ps.period() == 2);
  CHECK(ps.up() == std::vector<bool>{true, false});
  CHECK(ps.down_empty());
  CHECK(!ps.has_window());
  CHECK(nonneg_evens.contains(z(0)));
  CHECK(!nonneg_evens.contains(z(-2)));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto const a = random_presburger(rng);
    CHECK(set_complement(set_complement(a)) == a);
  }
  CHECK_THROWS_AS(boolean_op(BoolOp::union_op, evens()), InvalidArgument);
  CHECK_THROWS_AS(set_union(evens(), whole_group(GroupContext::cyclic(2))), ContextMismatch);
}

TEST_CASE("canonical form is unique") {
  // evens written with period 4 and a redundant window
  auto const redundant = presburger(PresburgerSet::make(
      4, {true, false, true, false}, {true, false, true, false}, -3, 3,
      {false, true, false, true, false, true, false}));
  CHECK(redundant == evens());
  CHECK(evens().presburger().lo() == 0);
  CHECK(evens().presburger().hi() == -1);

  auto const ray = at_least(5);
  CHECK(ray.presburger().period() == 1);
  CHECK(!ray.presburger().has_window());
  CHECK(ray.presburger().lo() == 5);
  CHECK(ray.to_string() == "{mod 1, up [0], down [], split 5}");

  CHECK(interval(3, 1).empty());
  CHECK(interval(-1, 1).to_string() == "{mod 1, up [], down [], window [-1,1] 111}");
}

TEST_CASE("translate") {
  CHECK(translate(z(1), evens()) == odds());
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    auto const y = random_presburger(rng);
    CHECK(translate(z(0), y) == y);
    CHECK(translate(z(-3), translate(z(3), y)) == y);
  }
  auto const c3 = GroupContext::cyclic(3);
  CHECK(translate(f(1), element_set(c3, {f(0)})) == element_set(c3, {f(1)}));
}

TEST_CASE("left and right translates differ in a nonabelian group") {
  auto const s3 = bundled_group("S3");
  bool       differ = false;
  for (auto const& g : s3.elements()) {
    auto const y = element_set(s3, {f(1)});
    differ       = differ || translate(g, y) != right_translate(y, g);
  }
  CHECK(differ);
}

TEST_CASE("difference_set") {
  CHECK(difference_set(evens()) == evens());

  // {2k : k >= 0}: the oracle over [-200, 200] gives the evens in [-100, 100]
  auto const y      = set_intersection(evens(), at_least(0));
  auto const brute  = oracle::difference_set(y, {200});
  std::vector<std::int64_t> got;
  for (auto const& g : brute) {
    got.push_back(g.value());
  }
  std::vector<std::int64_t> evens_in_range;
  for (std::int64_t x = -100; x <= 100; x += 2) {
    evens_in_range.push_back(x);
  }
  REQUIRE(got == evens_in_range);
  CHECK(difference_set(y) == evens());

  auto const c3 = GroupContext::cyclic(3);
  CHECK(difference_set(element_set(c3, {f(1)})) == element_set(c3, {f(0)}));
  CHECK(difference_set(empty_set(c3)).empty());
  CHECK(difference_set(at_most(-4)) == whole_group(GroupContext::integers()));
  CHECK(difference_set(interval(0, 2)) == interval(-2, 2));
}

TEST_CASE("difference_set agrees with the window oracle") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 60; ++i) {
    auto const y = random_presburger(rng, 4, 6);
    auto const d = difference_set(y);
    auto const b = oracle::difference_set(y, {200});
    std::vector<std::int64_t> members;
    for (auto const& g : b) {
      members.push_back(g.value());
    }
    CAPTURE(y.to_string());
    CHECK(same_on(d, members, -100, 100));
  }
}

TEST_CASE("is_left_generic") {
  auto const zz = GroupContext::integers();
  auto const v  = is_left_generic(zz, evens());
  CHECK(v.generic);
  CHECK(v.translates == std::vector<GroupElement>{z(0), z(1)});

  // {x >= 0}: the oracle finds no cover with <= 4 shifts in [-50, 50]
  auto const ray = at_least(0);
  REQUIRE(!oracle::generic(ray, 4, 50, {200}).has_value());
  auto const w = is_left_generic(zz, ray);
  CHECK(!w.generic);
  CHECK(w.obstruction.find("downSet") != std::string::npos);

  for (auto const& g : bundled_groups()) {
    auto const y = element_set(g, {g.identity()});
    auto const r = is_left_generic(g, y);
    CHECK(r.generic);
    CHECK(r.translates.size() <= g.order());
    CHECK(!is_left_generic(g, empty_set(g)).generic);
  }
  CHECK(!is_left_generic(zz, empty_set(zz)).generic);
}

TEST_CASE("generic certificates cover the group") {
  auto const      zz = GroupContext::integers();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto const y = random_presburger(rng);
    auto const v = is_left_generic(zz, y);
    if (!v.generic) {
      continue;
    }
    auto cover = empty_set(zz);
    for (auto const& t : v.translates) {
      cover = set_union(cover, translate(t, y));
    }
    CHECK(cover == whole_group(zz));
    // a generic set's difference set contains a full subgroup dZ
    auto const d = difference_set(y).presburger();
    CHECK(d.up_contains_residue(0));
    CHECK(d.down_contains_residue(0));
  }
}

TEST_CASE("product sets") {
  auto const zz = GroupContext::integers();
  auto const c2 = GroupContext::cyclic(2);
  auto const p  = GroupContext::product(zz, c2);
  auto const a  = rectangle(p, evens(), element_set(c2, {f(0)}));
  auto const b  = rectangle(p, odds(), element_set(c2, {f(0)}));
  CHECK(set_union(a, b) == rectangle(p, whole_group(zz), element_set(c2, {f(0)})));
  CHECK(set_complement(set_complement(a)) == a);
  CHECK(set_intersection(a, b).empty());
  CHECK(a.contains(GroupElement::pair(z(4), f(0))));
  CHECK(!a.contains(GroupElement::pair(z(4), f(1))));
  CHECK(difference_set(a) == rectangle(p, evens(), element_set(c2, {f(0)})));
  CHECK(!is_left_generic(p, rectangle(p, at_least(0), whole_group(c2))).generic);
  CHECK(is_left_generic(p, a).generic);
}

TEST_CASE("integer subgroups") {
  CHECK(as_integer_subgroup(residue_class(0, 6)) == std::optional<std::uint64_t>(6));
  CHECK(as_integer_subgroup(residue_class(1, 6)) == std::nullopt);
  CHECK(as_integer_subgroup(interval(0, 0)) == std::optional<std::uint64_t>(0));
}
