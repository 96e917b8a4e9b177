#include "defdyn/ellis.hpp"

#include <cstdlib>
#include <functional>
#include <numeric>

#include "defdyn/arith.hpp"
#include "defdyn/error.hpp"

namespace defdyn {

  namespace {

    bool is_coordinate_point(TypePoint const& p) {
      return p.is_pair() || (p.is_realized() && p.element().is_pair());
    }

    std::int64_t magnitude(TypePoint const& p) {
      return p.is_realized() ? std::abs(p.element().value()) : 0;
    }

  }  // namespace

  TypePoint star(GroupContext const& ctx, TypePoint const& p, TypePoint const& q) {
    if (ctx.is_product()) {
      if (!is_coordinate_point(p) || !is_coordinate_point(q)) {
        throw ContextMismatch("star: points do not belong to " + ctx.name());
      }
      return TypePoint::pair(star(ctx.left(), p.left(), q.left()),
                             star(ctx.right(), p.right(), q.right()));
    }
    if (p.is_realized()) {
      return apply_group(ctx, p.element(), q);
    }
    if (!ctx.is_integers() || !p.is_limit() || q.is_pair()) {
      throw ContextMismatch("star: points do not belong to " + ctx.name());
    }
    if (q.is_realized()) {
      auto const n = p.modulus();
      return TypePoint::limit(
          p.sign(),
          static_cast<std::int64_t>((p.residue() + mod_floor(q.element().value(), n))
                                    % n),
          n);
    }
    auto const n = std::gcd(p.modulus(), q.modulus());
    return TypePoint::limit(
        q.sign(), static_cast<std::int64_t>((p.residue() + q.residue()) % n), n);
  }

  ////////////////////////////////////////////////////////////////////////
  // Schema route
  ////////////////////////////////////////////////////////////////////////

  namespace {

    using Membership = std::function<bool(DefinableSet const&)>;

    TypePoint decode(GroupContext const& ctx,
                     TypePoint const&    p,
                     TypePoint const&    q,
                     Membership const&   member) {
      if (ctx.is_product()) {
        auto const whole_l = whole_group(ctx.left());
        auto const whole_r = whole_group(ctx.right());
        auto l = decode(ctx.left(), p.left(), q.left(), [&](DefinableSet const& a) {
          return member(rectangle(ctx, a, whole_r));
        });
        auto r = decode(ctx.right(), p.right(), q.right(), [&](DefinableSet const& b) {
          return member(rectangle(ctx, whole_l, b));
        });
        return TypePoint::pair(std::move(l), std::move(r));
      }
      if (ctx.is_finite()) {
        std::optional<TypePoint> found;
        for (auto const& g : ctx.elements()) {
          if (member(element_set(ctx, {g}))) {
            if (found) {
              throw Error("schema decoding found two realized candidates");
            }
            found = TypePoint::realized(g);
          }
        }
        if (!found) {
          throw Error("schema decoding found no realized candidate");
        }
        return *found;
      }

      // Integers: realized results lie in [-bound, bound].
      std::int64_t const bound
          = checked_add(checked_add(magnitude(p), magnitude(q)), 1);
      std::optional<Sign> sign;
      if (member(at_least(bound + 1))) {
        sign = Sign::plus;
      } else if (member(at_most(-bound - 1))) {
        sign = Sign::minus;
      }
      if (!sign) {
        // Largest t with the type in [t, +inf).
        std::int64_t lo = -bound, hi = bound;
        if (!member(at_least(lo))) {
          throw Error("schema decoding: type below every ray");
        }
        while (lo < hi) {
          std::int64_t const mid = lo + (hi - lo + 1) / 2;
          if (member(at_least(mid))) {
            lo = mid;
          } else {
            hi = mid - 1;
          }
        }
        return TypePoint::realized(GroupElement::integer(lo));
      }
      std::uint64_t n = 0;
      for (auto const* t : {&p, &q}) {
        if (t->is_limit()) {
          n = std::gcd(n, t->modulus());
        }
      }
      if (n == 0) {
        throw Error("schema decoding: limit result from realized factors");
      }
      for (std::uint64_t r = 0; r < n; ++r) {
        if (member(residue_class(static_cast<std::int64_t>(r), n))) {
          return TypePoint::limit(*sign, static_cast<std::int64_t>(r), n);
        }
      }
      throw Error("schema decoding: no residue class accepted");
    }

  }  // namespace

  TypePoint star_via_schema(GroupContext const& ctx,
                            TypePoint const&    p,
                            TypePoint const&    q) {
    return decode(ctx, p, q, [&](DefinableSet const& y) {
      return contains(p, acting_set(ctx, q, y));
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // Right translations and idempotents
  ////////////////////////////////////////////////////////////////////////

  bool converges_to(std::vector<TypePoint> const& tail,
                    TypePoint const&              target,
                    std::uint64_t                 n) {
    if (target.is_realized()) {
      for (auto const& t : tail) {
        if (!(t == target)) {
          return false;
        }
      }
      return true;
    }
    if (!target.is_limit()) {
      throw Unsupported("converges_to: pair targets are not supported");
    }
    auto const want = restrict(target, Level{n});
    for (auto const& t : tail) {
      if (t.is_limit()) {
        if (!(restrict(t, Level{n}) == want)) {
          return false;
        }
        continue;
      }
      // Realized points must enter the basic neighbourhood
      // {a = residue mod n, sign·a > 0} and move outward.
      auto const a = t.element().value();
      if (mod_floor(a, n) != want.residue()) {
        return false;
      }
      if ((want.sign() == Sign::plus) != (a > 0)) {
        return false;
      }
    }
    for (std::size_t i = 1; i < tail.size(); ++i) {
      if (tail[i].is_realized() && tail[i - 1].is_realized()) {
        auto const a = tail[i - 1].element().value();
        auto const b = tail[i].element().value();
        if (want.sign() == Sign::plus ? b <= a : b >= a) {
          return false;
        }
      }
    }
    return true;
  }

  RightTranslation right_translation(LevelTypeSpace const& space,
                                     TypePoint const&      q) {
    auto const& ctx = space.context();
    if (!q.is_realized() && level_of(q) != space.level().modulus) {
      throw LevelError("right_translation: " + q.to_string()
                       + " is not a point of level "
                       + std::to_string(space.level().modulus));
    }
    RightTranslation r;
    r.q = q;
    for (auto const& p : space.points()) {
      r.image.push_back(space.index_of(star(ctx, p, q)));
    }

    r.maps_base_point
        = star(ctx, TypePoint::realized(ctx.identity()), q) == q;

    r.equivariant = true;
    auto const gens = space.generators();
    for (auto const& g : gens) {
      for (std::size_t i = 0; i < space.size(); ++i) {
        auto const gp  = apply_group(ctx, g, space.point(i));
        auto const lhs = star(ctx, gp, q);
        auto const rhs = apply_group(ctx, g, space.point(r.image[i]));
        r.equivariant  = r.equivariant && lhs == rhs;
      }
    }

    r.agrees_on_realized = true;
    auto reps            = space.realized_representatives();
    if (ctx.is_integers()) {
      for (std::int64_t g : {-7, -1, 13, 1000}) {
        reps.push_back(GroupElement::integer(g));
      }
    }
    for (auto const& g : reps) {
      r.agrees_on_realized = r.agrees_on_realized
                             && star(ctx, TypePoint::realized(g), q)
                                    == apply_group(ctx, g, q);
    }

    r.left_continuous = true;
    if (ctx.is_integers()) {
      auto const n = space.level().modulus;
      for (auto const& p : space.points()) {
        auto const lw = limit_of(p.sign(), static_cast<std::int64_t>(p.residue()), n);
        std::vector<TypePoint> tail;
        for (std::uint64_t k = 8; k < 24; ++k) {
          tail.push_back(
              star(ctx, TypePoint::realized(GroupElement::integer(lw.witness.at(k))), q));
        }
        r.left_continuous
            = r.left_continuous && converges_to(tail, star(ctx, p, q), n);
      }
    }
    return r;
  }

  std::vector<TypePoint> find_idempotents(LevelTypeSpace const& space) {
    std::vector<TypePoint> out;
    for (auto const& p : space.points()) {
      if (star(space.context(), p, p) == p) {
        out.push_back(p);
      }
    }
    return out;
  }

}  // namespace defdyn
