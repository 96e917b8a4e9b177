#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "defdyn/arith.hpp"
#include "defdyn/group.hpp"

namespace defdyn {

  // A one-variable definable subset of (Z, +, <, congruences) in normal
  // form: beyond the window the set follows the periodic patterns `up`
  // (toward +inf) and `down` (toward -inf); inside [lo, hi] the window bits
  // decide. Instances built through `make` are canonical: the period is
  // minimal, hi is the largest point disagreeing with `up`, lo the smallest
  // point disagreeing with `down`. When no window is needed the split point
  // is stored as lo = hi + 1 (0 for purely periodic sets).
  class PresburgerSet {
   public:
    static PresburgerSet make(std::uint64_t     period,
                              std::vector<bool> up,
                              std::vector<bool> down,
                              std::int64_t      lo,
                              std::int64_t      hi,
                              std::vector<bool> window);

    std::uint64_t period() const noexcept {
      return period_;
    }
    std::vector<bool> const& up() const noexcept {
      return up_;
    }
    std::vector<bool> const& down() const noexcept {
      return down_;
    }
    std::int64_t lo() const noexcept {
      return lo_;
    }
    std::int64_t hi() const noexcept {
      return hi_;
    }
    std::vector<bool> const& window() const noexcept {
      return window_;
    }
    bool has_window() const noexcept {
      return lo_ <= hi_;
    }

    bool contains(std::int64_t x) const;
    bool up_contains_residue(std::uint64_t r) const {
      return up_[r % period_];
    }
    bool down_contains_residue(std::uint64_t r) const {
      return down_[r % period_];
    }
    bool up_empty() const;
    bool down_empty() const;

    friend bool operator==(PresburgerSet const&, PresburgerSet const&) = default;
    friend std::strong_ordering operator<=>(PresburgerSet const& a,
                                            PresburgerSet const& b);

   private:
    PresburgerSet() = default;

    std::uint64_t     period_ = 1;
    std::vector<bool> up_;
    std::vector<bool> down_;
    std::int64_t      lo_ = 0;
    std::int64_t      hi_ = -1;
    std::vector<bool> window_;
  };

  struct FiniteSubset {
    std::vector<bool> members;

    friend bool operator==(FiniteSubset const&, FiniteSubset const&) = default;
  };

  struct Rectangle;

  // Finite union of rectangles A x B. Canonical form: the left sides are
  // pairwise disjoint and nonempty, the right sides are pairwise distinct and
  // nonempty, and rectangles are sorted by their right side.
  struct ProductSet {
    std::vector<Rectangle> rects;
  };

  class DefinableSet {
   public:
    using Rep = std::variant<FiniteSubset, PresburgerSet, ProductSet>;

    DefinableSet(GroupContext ctx, Rep rep);

    GroupContext const& context() const noexcept {
      return ctx_;
    }
    Rep const& rep() const noexcept {
      return rep_;
    }
    bool is_finite() const noexcept {
      return std::holds_alternative<FiniteSubset>(rep_);
    }
    bool is_presburger() const noexcept {
      return std::holds_alternative<PresburgerSet>(rep_);
    }
    bool is_product() const noexcept {
      return std::holds_alternative<ProductSet>(rep_);
    }
    FiniteSubset const&  finite() const;
    PresburgerSet const& presburger() const;
    ProductSet const&    product() const;

    bool contains(GroupElement const& g) const;
    bool empty() const;
    // Least common period of every Presburger component (1 if none).
    std::uint64_t period() const;

    std::string to_string() const;

    friend bool                 operator==(DefinableSet const& a,
                           DefinableSet const& b);
    friend std::strong_ordering operator<=>(DefinableSet const& a,
                                            DefinableSet const& b);

   private:
    GroupContext ctx_;
    Rep          rep_;
  };

  struct Rectangle {
    DefinableSet left;
    DefinableSet right;
  };

  ////////////////////////////////////////////////////////////////////////
  // Constructors
  ////////////////////////////////////////////////////////////////////////

  DefinableSet empty_set(GroupContext const& ctx);
  DefinableSet whole_group(GroupContext const& ctx);
  DefinableSet element_set(GroupContext const&              ctx,
                           std::vector<GroupElement> const& elements);
  DefinableSet rectangle(GroupContext const& ctx,
                         DefinableSet const& left,
                         DefinableSet const& right);
  // Unions of rectangles; result canonical.
  DefinableSet product_set(GroupContext const&           ctx,
                           std::vector<Rectangle> const& rects);

  // Integers backend helpers.
  DefinableSet presburger(PresburgerSet s);
  DefinableSet residue_class(std::int64_t r, std::uint64_t n);
  DefinableSet evens();
  DefinableSet odds();
  DefinableSet at_least(std::int64_t a);
  DefinableSet at_most(std::int64_t a);
  DefinableSet interval(std::int64_t lo, std::int64_t hi);
  // Set with period n whose up/down patterns are the given residues.
  DefinableSet periodic_pattern(std::uint64_t                     n,
                                std::vector<std::uint64_t> const& up,
                                std::vector<std::uint64_t> const& down);

  ////////////////////////////////////////////////////////////////////////
  // Operations
  ////////////////////////////////////////////////////////////////////////

  enum class BoolOp : std::uint8_t { union_op, intersection, complement };

  DefinableSet boolean_op(BoolOp                     kind,
                          DefinableSet const&        a,
                          std::optional<DefinableSet> b = std::nullopt);
  DefinableSet set_union(DefinableSet const& a, DefinableSet const& b);
  DefinableSet set_intersection(DefinableSet const& a, DefinableSet const& b);
  DefinableSet set_complement(DefinableSet const& a);
  DefinableSet set_difference(DefinableSet const& a, DefinableSet const& b);

  // gY
  DefinableSet translate(GroupElement const& g, DefinableSet const& y);
  // Yg
  DefinableSet right_translate(DefinableSet const& y, GroupElement const& g);
  // {a b^{-1} : a in A, b in B}
  DefinableSet quotient_set(DefinableSet const& a, DefinableSet const& b);
  // Y Y^{-1}; empty for empty Y.
  DefinableSet difference_set(DefinableSet const& y);

  // Some element of a nonempty set (the least in a fixed order); nullopt for
  // the empty set.
  std::optional<GroupElement> some_element(DefinableSet const& y);

  // If Y is a subgroup of the form mZ, returns m (0 stands for {0}).
  std::optional<std::uint64_t> as_integer_subgroup(DefinableSet const& y);

  ////////////////////////////////////////////////////////////////////////
  // Left genericity
  ////////////////////////////////////////////////////////////////////////

  struct GenericityVerdict {
    bool generic = false;
    // Translates g_1..g_k with g_1 Y u ... u g_k Y = G (when generic).
    std::vector<GroupElement> translates;
    // Description of the obstruction (when not generic), e.g. the sign
    // direction whose eventual residue pattern is empty.
    std::string obstruction;
  };

  GenericityVerdict is_left_generic(GroupContext const& ctx,
                                    DefinableSet const& y);

}  // namespace defdyn
