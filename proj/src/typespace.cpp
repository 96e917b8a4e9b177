#include "defdyn/typespace.hpp"

#include <algorithm>

#include "defdyn/arith.hpp"
#include "defdyn/error.hpp"

namespace defdyn {

  ////////////////////////////////////////////////////////////////////////
  // TypePoint
  ////////////////////////////////////////////////////////////////////////

  TypePoint TypePoint::realized(GroupElement g) {
    TypePoint p;
    p.kind_    = Kind::realized;
    p.element_ = std::move(g);
    return p;
  }

  TypePoint TypePoint::limit(Sign sign, std::int64_t residue, std::uint64_t modulus) {
    if (modulus == 0) {
      throw InvalidArgument("limit point modulus must be positive");
    }
    TypePoint p;
    p.kind_    = Kind::limit;
    p.sign_    = sign;
    p.modulus_ = modulus;
    p.residue_ = mod_floor(residue, modulus);
    return p;
  }

  TypePoint TypePoint::pair(TypePoint left, TypePoint right) {
    if (left.is_realized() && right.is_realized()) {
      return realized(GroupElement::pair(left.element(), right.element()));
    }
    TypePoint p;
    p.kind_ = Kind::pair;
    p.parts_
        = std::make_shared<std::pair<TypePoint, TypePoint> const>(std::move(left),
                                                                  std::move(right));
    return p;
  }

  GroupElement const& TypePoint::element() const {
    if (kind_ != Kind::realized) {
      throw InvalidArgument("type " + to_string() + " is not realized");
    }
    return element_;
  }

  Sign TypePoint::sign() const {
    if (kind_ != Kind::limit) {
      throw InvalidArgument("type " + to_string() + " is not a limit point");
    }
    return sign_;
  }

  std::uint64_t TypePoint::residue() const {
    if (kind_ != Kind::limit) {
      throw InvalidArgument("type " + to_string() + " is not a limit point");
    }
    return residue_;
  }

  std::uint64_t TypePoint::modulus() const {
    if (kind_ != Kind::limit) {
      throw InvalidArgument("type " + to_string() + " is not a limit point");
    }
    return modulus_;
  }

  TypePoint TypePoint::left() const {
    if (kind_ == Kind::pair) {
      return parts_->first;
    }
    if (kind_ == Kind::realized && element_.is_pair()) {
      return realized(element_.left());
    }
    throw ContextMismatch("type " + to_string() + " has no coordinates");
  }

  TypePoint TypePoint::right() const {
    if (kind_ == Kind::pair) {
      return parts_->second;
    }
    if (kind_ == Kind::realized && element_.is_pair()) {
      return realized(element_.right());
    }
    throw ContextMismatch("type " + to_string() + " has no coordinates");
  }

  std::string TypePoint::to_string() const {
    switch (kind_) {
      case Kind::realized:
        return "Realized(" + element_.to_string() + ")";
      case Kind::limit:
        return std::string("Limit(") + sign_char(sign_) + ","
               + std::to_string(residue_) + " mod " + std::to_string(modulus_)
               + ")";
      case Kind::pair:
        return "Pair(" + parts_->first.to_string() + ","
               + parts_->second.to_string() + ")";
    }
    return "?";
  }

  bool operator==(TypePoint const& a, TypePoint const& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  std::strong_ordering operator<=>(TypePoint const& a, TypePoint const& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) {
      return c;
    }
    switch (a.kind_) {
      case TypePoint::Kind::realized:
        return a.element_ <=> b.element_;
      case TypePoint::Kind::limit:
        // (+, *) sorts before (-, *)
        if (auto c = b.sign_ <=> a.sign_; c != 0) {
          return c;
        }
        if (auto c = a.modulus_ <=> b.modulus_; c != 0) {
          return c;
        }
        return a.residue_ <=> b.residue_;
      case TypePoint::Kind::pair:
        if (auto c = a.parts_->first <=> b.parts_->first; c != 0) {
          return c;
        }
        return a.parts_->second <=> b.parts_->second;
    }
    return std::strong_ordering::equal;
  }

  ////////////////////////////////////////////////////////////////////////
  // Operations
  ////////////////////////////////////////////////////////////////////////

  namespace {

    bool has_coordinates(TypePoint const& p) {
      return p.is_pair() || (p.is_realized() && p.element().is_pair());
    }

  }  // namespace

  bool contains(TypePoint const& p, DefinableSet const& y) {
    if (p.is_realized()) {
      return y.contains(p.element());
    }
    if (p.is_limit()) {
      if (!y.is_presburger()) {
        throw ContextMismatch("limit point " + p.to_string()
                              + " tested against a non-integer set");
      }
      auto const& s = y.presburger();
      if (p.modulus() % s.period() != 0) {
        throw LevelError("set period " + std::to_string(s.period())
                         + " does not divide the level "
                         + std::to_string(p.modulus()) + " of " + p.to_string());
      }
      return p.sign() == Sign::plus ? s.up_contains_residue(p.residue())
                                    : s.down_contains_residue(p.residue());
    }
    if (!y.is_product()) {
      throw ContextMismatch("pair point " + p.to_string()
                            + " tested against a non-product set");
    }
    auto const l = p.left();
    auto const r = p.right();
    for (auto const& rect : y.product().rects) {
      if (contains(l, rect.left) && contains(r, rect.right)) {
        return true;
      }
    }
    return false;
  }

  TypePoint restrict(TypePoint const& p, Level m) {
    if (m.modulus == 0) {
      throw LevelError("level must be positive");
    }
    if (p.is_realized()) {
      return p;
    }
    if (p.is_limit()) {
      if (p.modulus() % m.modulus != 0) {
        throw LevelError("cannot restrict " + p.to_string() + " to level "
                         + std::to_string(m.modulus) + ": not a divisor");
      }
      return TypePoint::limit(
          p.sign(), static_cast<std::int64_t>(p.residue() % m.modulus), m.modulus);
    }
    return TypePoint::pair(restrict(p.left(), m), restrict(p.right(), m));
  }

  TypePoint apply_group(GroupContext const& ctx,
                        GroupElement const& g,
                        TypePoint const&    p) {
    if (!ctx.owns(g)) {
      throw ContextMismatch("element " + g.to_string() + " does not belong to "
                            + ctx.name());
    }
    if (p.is_realized()) {
      return TypePoint::realized(compose(ctx, g, p.element()));
    }
    if (p.is_limit()) {
      if (!ctx.is_integers()) {
        throw ContextMismatch("limit points exist only for the integers");
      }
      auto const n = p.modulus();
      return TypePoint::limit(
          p.sign(),
          static_cast<std::int64_t>((p.residue() + mod_floor(g.value(), n)) % n),
          n);
    }
    if (!ctx.is_product()) {
      throw ContextMismatch("pair points exist only for product backends");
    }
    return TypePoint::pair(apply_group(ctx.left(), g.left(), p.left()),
                           apply_group(ctx.right(), g.right(), p.right()));
  }

  DefinableSet acting_set(GroupContext const& ctx,
                          TypePoint const&    p,
                          DefinableSet const& y) {
    if (!(y.context() == ctx)) {
      throw ContextMismatch("acting_set: set does not belong to " + ctx.name());
    }
    if (ctx.is_product() && has_coordinates(p)) {
      std::vector<Rectangle> rects;
      for (auto const& r : y.product().rects) {
        rects.push_back(Rectangle{acting_set(ctx.left(), p.left(), r.left),
                                  acting_set(ctx.right(), p.right(), r.right)});
      }
      return product_set(ctx, rects);
    }
    if (p.is_realized()) {
      // g·b in Y  <=>  g in Y b^{-1}
      return right_translate(y, invert_element(ctx, p.element()));
    }
    if (!p.is_limit() || !y.is_presburger()) {
      throw ContextMismatch("acting_set: point " + p.to_string()
                            + " incompatible with backend " + ctx.name());
    }
    auto const& s = y.presburger();
    auto const  N = s.period();
    if (p.modulus() % N != 0) {
      throw LevelError("set period " + std::to_string(N)
                       + " does not divide the level "
                       + std::to_string(p.modulus()));
    }
    auto const&       pattern = p.sign() == Sign::plus ? s.up() : s.down();
    std::vector<bool> res(N);
    for (std::uint64_t r = 0; r < N; ++r) {
      res[r] = pattern[(p.residue() + r) % N];
    }
    return presburger(PresburgerSet::make(N, res, res, 0, -1, {}));
  }

  std::int64_t WitnessSequence::at(std::uint64_t k) const {
    auto const delta
        = checked_mul(static_cast<std::int64_t>(k), static_cast<std::int64_t>(step));
    return sign == Sign::plus ? checked_add(offset, delta)
                              : checked_sub(offset, delta);
  }

  LimitWithWitness limit_of(Sign sign, std::int64_t residue, std::uint64_t n) {
    if (n == 0) {
      throw InvalidArgument("level must be positive");
    }
    auto const r = static_cast<std::int64_t>(mod_floor(residue, n));
    return {TypePoint::limit(sign, r, n), WitnessSequence{sign, r, n}};
  }

  std::uint64_t level_of(TypePoint const& p) {
    if (p.is_realized()) {
      return 1;
    }
    if (p.is_limit()) {
      return p.modulus();
    }
    return lcm_guarded(level_of(p.left()), level_of(p.right()));
  }

  ////////////////////////////////////////////////////////////////////////
  // LevelTypeSpace
  ////////////////////////////////////////////////////////////////////////

  LevelTypeSpace::LevelTypeSpace(GroupContext ctx, Level level)
      : ctx_(std::move(ctx)), level_(level) {
    if (level_.modulus == 0) {
      throw LevelError("level must be positive");
    }
    switch (ctx_.kind()) {
      case GroupContext::Kind::integers: {
        auto const n = static_cast<std::int64_t>(level_.modulus);
        for (auto s : {Sign::plus, Sign::minus}) {
          for (std::int64_t a = 0; a < n; ++a) {
            points_.push_back(TypePoint::limit(s, a, level_.modulus));
          }
        }
        break;
      }
      case GroupContext::Kind::finite:
        level_ = Level{1};
        for (auto const& g : ctx_.elements()) {
          points_.push_back(TypePoint::realized(g));
        }
        break;
      case GroupContext::Kind::product:
        throw Unsupported(
            "level type spaces of product backends are not finite; use the "
            "point operations instead");
    }
  }

  std::size_t LevelTypeSpace::index_of(TypePoint const& p) const {
    if (ctx_.is_integers()) {
      if (!p.is_limit() || p.modulus() != level_.modulus) {
        throw InvalidArgument(p.to_string() + " is not in the level-"
                              + std::to_string(level_.modulus) + " limit part");
      }
      return (p.sign() == Sign::plus ? 0 : level_.modulus) + p.residue();
    }
    if (!p.is_realized() || !ctx_.owns(p.element())) {
      throw InvalidArgument(p.to_string() + " is not a point of " + ctx_.name());
    }
    return p.element().index();
  }

  std::vector<GroupElement> LevelTypeSpace::generators() const {
    if (ctx_.is_integers()) {
      return {GroupElement::integer(1)};
    }
    return ctx_.elements();
  }

  std::vector<std::vector<std::size_t>>
  LevelTypeSpace::generator_permutations() const {
    std::vector<std::vector<std::size_t>> out;
    for (auto const& g : generators()) {
      std::vector<std::size_t> perm(points_.size());
      for (std::size_t i = 0; i < points_.size(); ++i) {
        perm[i] = index_of(apply_group(ctx_, g, points_[i]));
      }
      out.push_back(std::move(perm));
    }
    return out;
  }

  std::vector<GroupElement> LevelTypeSpace::realized_representatives() const {
    if (ctx_.is_integers()) {
      std::vector<GroupElement> out;
      for (std::uint64_t a = 0; a < level_.modulus; ++a) {
        out.push_back(GroupElement::integer(static_cast<std::int64_t>(a)));
      }
      return out;
    }
    return ctx_.elements();
  }

  ////////////////////////////////////////////////////////////////////////
  // Points of sets
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::size_t limit_count(TypePoint const& p) {
      if (p.is_realized()) {
        return 0;
      }
      if (p.is_limit()) {
        return 1;
      }
      return limit_count(p.left()) + limit_count(p.right());
    }

  }  // namespace

  std::optional<TypePoint> pick_point(DefinableSet const& y, std::uint64_t n) {
    if (y.empty()) {
      return std::nullopt;
    }
    if (y.is_presburger()) {
      auto const& s = y.presburger();
      if (n % s.period() != 0) {
        throw LevelError("pick_point: level " + std::to_string(n)
                         + " is not a multiple of the period");
      }
      for (auto sign : {Sign::plus, Sign::minus}) {
        for (std::uint64_t r = 0; r < n; ++r) {
          bool const in = sign == Sign::plus ? s.up_contains_residue(r)
                                             : s.down_contains_residue(r);
          if (in) {
            return TypePoint::limit(sign, static_cast<std::int64_t>(r), n);
          }
        }
      }
    }
    if (y.is_product()) {
      std::optional<TypePoint> best;
      for (auto const& r : y.product().rects) {
        auto cand = TypePoint::pair(*pick_point(r.left, n), *pick_point(r.right, n));
        if (!best || limit_count(cand) > limit_count(*best)) {
          best = std::move(cand);
        }
      }
      return best;
    }
    return TypePoint::realized(*some_element(y));
  }

  std::optional<GroupElement> translate_into(GroupContext const& ctx,
                                             TypePoint const&    p,
                                             DefinableSet const& y) {
    if (y.empty()) {
      return std::nullopt;
    }
    if (ctx.is_product()) {
      for (auto const& r : y.product().rects) {
        auto gl = translate_into(ctx.left(), p.left(), r.left);
        auto gr = translate_into(ctx.right(), p.right(), r.right);
        if (gl && gr) {
          return GroupElement::pair(*gl, *gr);
        }
      }
      return std::nullopt;
    }
    if (p.is_realized()) {
      // x = g·y0
      auto const y0 = *some_element(y);
      return compose(ctx, p.element(), invert_element(ctx, y0));
    }
    auto const& s       = y.presburger();
    auto const& pattern = p.sign() == Sign::plus ? s.up() : s.down();
    for (std::uint64_t r = 0; r < pattern.size(); ++r) {
      if (pattern[r]) {
        return GroupElement::integer(static_cast<std::int64_t>(p.residue())
                                     - static_cast<std::int64_t>(r));
      }
    }
    return std::nullopt;
  }

}  // namespace defdyn
