#include <doctest.h>

#include <set>

#include "defdyn/ellis.hpp"
#include "defdyn/error.hpp"
#include "defdyn/flows.hpp"
#include "defdyn/oracle.hpp"
#include "support.hpp"

using namespace defdyn;
using defdyn::testing::lim;
using defdyn::testing::limit_part;
using defdyn::testing::real;

namespace {
  auto const zz = GroupContext::integers();

  GroupElement z(std::int64_t v) {
    return GroupElement::integer(v);
  }
}  // namespace

TEST_CASE("star examples, certified by the numeric oracle") {
  // realized 5 times Limit(+, 1 mod 4)
  auto const e1 = oracle::star(zz, real(5), lim('+', 1, 4), 4);
  REQUIRE(e1 == lim('+', 2, 4));
  CHECK(star(zz, real(5), lim('+', 1, 4)) == e1);

  auto const e2 = oracle::star(zz, lim('-', 1, 4), lim('+', 2, 4), 4);
  REQUIRE(e2 == lim('+', 3, 4));
  CHECK(star(zz, lim('-', 1, 4), lim('+', 2, 4)) == e2);

  CHECK(star(zz, real(3), real(-8)) == real(-5));
  auto const s3 = bundled_group("S3");
  for (auto const& g : s3.elements()) {
    for (auto const& h : s3.elements()) {
      CHECK(star(s3, TypePoint::realized(g), TypePoint::realized(h))
            == TypePoint::realized(compose(s3, g, h)));
    }
  }
}

TEST_CASE("star_via_schema") {
  for (auto const& [p, q] : std::vector<std::pair<TypePoint, TypePoint>>{
           {real(5), lim('+', 1, 4)}, {lim('-', 1, 4), lim('+', 2, 4)}, {real(2), real(9)}}) {
    CHECK(star_via_schema(zz, p, q) == star(zz, p, q));
  }
  CHECK(star_via_schema(zz, lim('+', 0, 2), lim('+', 0, 2)) == lim('+', 0, 2));
  CHECK(star_via_schema(zz, lim('+', 1, 3), real(0)) == lim('+', 1, 3));
}

TEST_CASE("mixed levels combine at the gcd") {
  auto const r = star(zz, lim('+', 1, 4), lim('-', 1, 6));
  CHECK(r == lim('-', 0, 2));
  CHECK(oracle::star(zz, lim('+', 1, 4), lim('-', 1, 6), 12) == r);
}

TEST_CASE("associativity, exhaustive for small levels") {
  for (std::uint64_t n = 1; n <= 6; ++n) {
    auto const pts = limit_part(n);
    for (auto const& p : pts) {
      for (auto const& q : pts) {
        for (auto const& r : pts) {
          REQUIRE(star(zz, star(zz, p, q), r) == star(zz, p, star(zz, q, r)));
        }
      }
    }
  }
}

TEST_CASE("star extends the action and is left continuous") {
  for (std::uint64_t n = 1; n <= 8; ++n) {
    for (auto const& q : limit_part(n)) {
      for (std::int64_t g = -9; g <= 9; ++g) {
        CHECK(star(zz, real(g), q) == apply_group(zz, z(g), q));
      }
      for (auto const& p : limit_part(n)) {
        auto const pq = star(zz, p, q);
        for (std::uint64_t m = 1; m <= n; ++m) {
          if (n % m == 0) {
            CHECK(restrict(pq, Level{m})
                  == star(zz, restrict(p, Level{m}), restrict(q, Level{m})));
          }
        }
        auto const lw = limit_of(p.sign(), static_cast<std::int64_t>(p.residue()), n);
        std::vector<TypePoint> tail;
        for (std::uint64_t k = 1; k <= 6; ++k) {
          tail.push_back(star(zz, real(lw.witness.at(k)), q));
        }
        CHECK(converges_to(tail, pq, n));
      }
    }
  }
}

TEST_CASE("right_translation") {
  auto const s  = LevelTypeSpace(zz, Level{2});
  auto const id = right_translation(s, real(0));
  CHECK(id.certified());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(id.image[i] == i);
  }

  auto const r = right_translation(s, lim('+', 0, 2));
  CHECK(r.certified());
  std::set<TypePoint> image;
  for (auto i : r.image) {
    image.insert(s.point(i));
  }
  for (std::int64_t g = -10; g <= 10; ++g) {
    image.insert(star(zz, real(g), lim('+', 0, 2)));
  }
  CHECK(image == std::set<TypePoint>{lim('+', 0, 2), lim('+', 1, 2)});

  CHECK_THROWS_AS(right_translation(LevelTypeSpace(zz, Level{4}), lim('+', 0, 2)), LevelError);
}

TEST_CASE("idempotents") {
  auto const s4  = LevelTypeSpace(zz, Level{4});
  auto const ids = find_idempotents(s4);
  std::vector<std::size_t> idx;
  for (auto const& p : ids) {
    idx.push_back(s4.index_of(p));
  }
  REQUIRE(oracle::idempotents(4) == std::vector<std::size_t>{0, 4});
  CHECK(idx == oracle::idempotents(4));
  CHECK(ids == std::vector<TypePoint>{lim('+', 0, 4), lim('-', 0, 4)});

  CHECK(find_idempotents(LevelTypeSpace(zz, Level{1}))
        == std::vector<TypePoint>{lim('+', 0, 1), lim('-', 0, 1)});

  for (std::uint64_t n = 1; n <= 12; ++n) {
    auto const s = LevelTypeSpace(zz, Level{n});
    for (auto const& p0 : find_idempotents(s)) {
      for (auto const& f : minimal_subflows(s)) {
        bool const owns = std::binary_search(f.points.begin(), f.points.end(), s.index_of(p0));
        if (!owns) {
          continue;
        }
        for (auto i : f.points) {
          CHECK(star(zz, s.point(i), p0) == s.point(i));
        }
      }
    }
  }
}

TEST_CASE("finite backend idempotent is the identity") {
  for (auto const& g : bundled_groups()) {
    auto const s = LevelTypeSpace(g, Level{1});
    CHECK(find_idempotents(s) == std::vector<TypePoint>{TypePoint::realized(g.identity())});
  }
}
