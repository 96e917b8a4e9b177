// Left genericity: a set is generic iff every orbit of types meets it. The
// search below covers the complement of the translates found so far one
// type at a time, preferring limit types so that the remainder shrinks to a
// finite set after finitely many steps.

#include <algorithm>

#include "defdyn/defset.hpp"
#include "defdyn/error.hpp"
#include "defdyn/typespace.hpp"

namespace defdyn {

  namespace {

    constexpr std::size_t kMaxSteps = 100'000;

    DefinableSet cover_of(std::vector<GroupElement> const& ts,
                          DefinableSet const&              y,
                          std::size_t                      skip) {
      auto u = empty_set(y.context());
      for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i != skip) {
          u = set_union(u, translate(ts[i], y));
        }
      }
      return u;
    }

    std::string describe_obstruction(TypePoint const& p) {
      if (p.is_limit()) {
        return std::string("sign direction ") + sign_char(p.sign())
               + ": eventual residue pattern toward "
               + (p.sign() == Sign::plus ? "+inf (upSet)" : "-inf (downSet)")
               + " is empty";
      }
      return "no translate of the set contains the type " + p.to_string();
    }

  }  // namespace

  GenericityVerdict is_left_generic(GroupContext const& ctx,
                                    DefinableSet const& y) {
    if (!(y.context() == ctx)) {
      throw ContextMismatch("is_left_generic: set does not belong to "
                            + ctx.name());
    }
    GenericityVerdict v;
    if (y.empty()) {
      v.obstruction = "the empty set has no covering translates";
      return v;
    }
    std::uint64_t const n = y.period();

    auto cover = empty_set(ctx);
    for (std::size_t step = 0;; ++step) {
      if (step > kMaxSteps) {
        throw GuardExceeded("genericity search did not terminate");
      }
      auto const rest = set_complement(cover);
      auto const p    = pick_point(rest, n);
      if (!p) {
        break;
      }
      auto const g = translate_into(ctx, *p, y);
      if (!g) {
        v.translates.clear();
        v.obstruction = describe_obstruction(*p);
        return v;
      }
      v.translates.push_back(*g);
      cover = set_union(cover, translate(*g, y));
    }

    auto const everything = whole_group(ctx);
    for (std::size_t i = v.translates.size(); i-- > 0;) {
      if (v.translates.size() > 1 && cover_of(v.translates, y, i) == everything) {
        v.translates.erase(v.translates.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    std::sort(v.translates.begin(), v.translates.end());
    v.generic = true;
    return v;
  }

}  // namespace defdyn
