#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "defdyn/defset.hpp"
#include "defdyn/group.hpp"

namespace defdyn {

  // Truncation level: a modulus n >= 1 for the integers; finite backends only
  // have the trivial level 1.
  struct Level {
    std::uint64_t modulus = 1;

    friend bool operator==(Level, Level) = default;
  };

  enum class Sign : std::int8_t { minus = -1, plus = 1 };

  inline char sign_char(Sign s) {
    return s == Sign::plus ? '+' : '-';
  }

  // A complete type at a truncation level. Realized points are exact group
  // elements; limit points (integers only) are a sign direction together with
  // a residue class; pair points are types of the product group relative to
  // the rectangle algebra (at least one non-realized coordinate).
  class TypePoint {
   public:
    enum class Kind : std::uint8_t { realized, limit, pair };

    static TypePoint realized(GroupElement g);
    static TypePoint limit(Sign sign, std::int64_t residue, std::uint64_t modulus);
    // Collapses to a realized point when both coordinates are realized.
    static TypePoint pair(TypePoint left, TypePoint right);

    Kind kind() const noexcept {
      return kind_;
    }
    bool is_realized() const noexcept {
      return kind_ == Kind::realized;
    }
    bool is_limit() const noexcept {
      return kind_ == Kind::limit;
    }
    bool is_pair() const noexcept {
      return kind_ == Kind::pair;
    }

    GroupElement const& element() const;
    Sign                sign() const;
    std::uint64_t       residue() const;
    std::uint64_t       modulus() const;
    // Coordinates of a point of a product backend (also for realized pairs).
    TypePoint left() const;
    TypePoint right() const;

    std::string to_string() const;

    friend bool                 operator==(TypePoint const& a, TypePoint const& b);
    friend std::strong_ordering operator<=>(TypePoint const& a,
                                            TypePoint const& b);

   private:
    TypePoint() = default;

    Kind                                               kind_ = Kind::realized;
    GroupElement                                       element_;
    Sign                                               sign_    = Sign::plus;
    std::uint64_t                                      residue_ = 0;
    std::uint64_t                                      modulus_ = 1;
    std::shared_ptr<std::pair<TypePoint, TypePoint> const> parts_;
  };

  // Does the type decide Y positively? Throws LevelError when a limit
  // coordinate's level is not a multiple of the set's period.
  bool contains(TypePoint const& p, DefinableSet const& y);

  // Level restriction along m | n. Throws LevelError otherwise.
  TypePoint restrict(TypePoint const& p, Level m);

  // g·p
  TypePoint apply_group(GroupContext const& ctx,
                        GroupElement const& g,
                        TypePoint const&    p);

  // {g in G : Y in g·p}, always a canonical definable set.
  DefinableSet acting_set(GroupContext const& ctx,
                          TypePoint const&    p,
                          DefinableSet const& y);

  // a_k = sign·k·n + r (r the least nonnegative residue), converging to
  // Limit(sign, r mod n) in the level topology.
  struct WitnessSequence {
    Sign          sign;
    std::int64_t  offset;
    std::uint64_t step;

    std::int64_t at(std::uint64_t k) const;
  };

  struct LimitWithWitness {
    TypePoint       point;
    WitnessSequence witness;
  };

  LimitWithWitness limit_of(Sign sign, std::int64_t residue, std::uint64_t n);

  // The level of a point (lcm of its limit coordinates' moduli; 1 when
  // realized).
  std::uint64_t level_of(TypePoint const& p);

  // The finite part of the level-n type space: the 2n limit points for the
  // integers ((+,0..n-1) then (-,0..n-1)), the group itself for finite
  // backends. Realized integer points are handled symbolically.
  class LevelTypeSpace {
   public:
    // Throws Unsupported for product backends.
    LevelTypeSpace(GroupContext ctx, Level level);

    GroupContext const& context() const noexcept {
      return ctx_;
    }
    Level level() const noexcept {
      return level_;
    }
    std::size_t size() const noexcept {
      return points_.size();
    }
    std::vector<TypePoint> const& points() const noexcept {
      return points_;
    }
    TypePoint const& point(std::size_t i) const {
      return points_.at(i);
    }
    // Throws InvalidArgument if p is not in the finite part.
    std::size_t index_of(TypePoint const& p) const;

    // Elements whose action generates the action on the finite part (+1 for
    // the integers, every element for finite backends).
    std::vector<GroupElement> generators() const;
    // Action of each generator as a permutation of the finite part.
    std::vector<std::vector<std::size_t>> generator_permutations() const;
    // A complete set of representatives of the action of realized points on
    // the finite part (0..n-1 for the integers, all of G when finite).
    std::vector<GroupElement> realized_representatives() const;

   private:
    GroupContext           ctx_;
    Level                  level_;
    std::vector<TypePoint> points_;
  };

  // A point of Y at level n (n a multiple of Y's period) with as many
  // non-realized coordinates as possible; nullopt iff Y is empty.
  std::optional<TypePoint> pick_point(DefinableSet const& y, std::uint64_t n);

  // Some g with p in gY, or nullopt if the orbit of p misses Y.
  std::optional<GroupElement> translate_into(GroupContext const& ctx,
                                             TypePoint const&    p,
                                             DefinableSet const& y);

}  // namespace defdyn
