#include <doctest.h>

#include "defdyn/error.hpp"
#include "defdyn/oracle.hpp"
#include "support.hpp"

using namespace defdyn;
using defdyn::testing::lim;
using defdyn::testing::real;

namespace {
  auto const zz = GroupContext::integers();
}  // namespace

TEST_CASE("window sufficiency") {
  oracle::WindowUniverse u{20};
  CHECK_NOTHROW(u.require_sufficient(evens()));
  CHECK_THROWS_AS(u.require_sufficient(at_least(10)), InvalidArgument);
  CHECK_THROWS_AS(oracle::difference_set(residue_class(0, 7), {20}), InvalidArgument);
}

TEST_CASE("oracle difference sets") {
  auto const d = oracle::difference_set(evens(), {200});
  CHECK(d.size() == 101);
  CHECK(d.front() == GroupElement::integer(-100));
  CHECK(d.back() == GroupElement::integer(100));
  auto const c3 = GroupContext::cyclic(3);
  CHECK(oracle::difference_set(element_set(c3, {GroupElement::finite(1)}), {})
        == std::vector<GroupElement>{GroupElement::finite(0)});
}

TEST_CASE("oracle genericity") {
  auto const e = oracle::generic(evens(), 4, 50, {200});
  REQUIRE(e.has_value());
  CHECK(*e == std::vector<GroupElement>{GroupElement::integer(0), GroupElement::integer(1)});
  CHECK(!oracle::generic(at_least(0), 4, 50, {200}).has_value());
  auto const s3 = bundled_group("S3");
  auto const f  = oracle::generic(element_set(s3, {GroupElement::finite(1)}), 6, 0, {});
  REQUIRE(f.has_value());
  CHECK(f->size() == 6);
}

TEST_CASE("numeric star") {
  CHECK(oracle::star(zz, real(5), lim('+', 1, 4), 4) == lim('+', 2, 4));
  CHECK(oracle::star(zz, lim('-', 1, 4), lim('+', 2, 4), 4) == lim('+', 3, 4));
  CHECK(oracle::star(zz, real(2), real(3), 4) == real(5));
  // a large realized right factor
  CHECK(oracle::star(zz, lim('-', 0, 3), real(1000000), 3) == lim('-', 1, 3));
}

TEST_CASE("exhaustive enumerations") {
  CHECK(oracle::minimal_subflows(4).size() == 2);
  CHECK(oracle::idempotents(4).size() == 2);
  auto const sub = oracle::minimal_subflows(4);
  auto const ga  = oracle::rotation_on(sub[0], 4);
  auto const gb  = oracle::rotation_on(sub[1], 4);
  CHECK(ga == std::vector<std::size_t>{1, 2, 3, 0});
  CHECK(oracle::equivariant_maps({ga}, {gb}, 4, 4, true).size() == 4);
  CHECK(oracle::equivariant_maps({ga}, {{0}}, 4, 1, false).size() == 1);
  CHECK_THROWS_AS(oracle::minimal_subflows(9), InvalidArgument);
}
