#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace defdyn {

  // An element of one of the supported group backends. Value type; product
  // elements share their (immutable) components.
  class GroupElement {
   public:
    enum class Kind : std::uint8_t { finite, integer, pair };

    GroupElement() : GroupElement(integer(0)) {}

    static GroupElement finite(std::size_t index);
    static GroupElement integer(std::int64_t value);
    static GroupElement pair(GroupElement left, GroupElement right);

    Kind kind() const noexcept {
      return kind_;
    }
    bool is_finite() const noexcept {
      return kind_ == Kind::finite;
    }
    bool is_integer() const noexcept {
      return kind_ == Kind::integer;
    }
    bool is_pair() const noexcept {
      return kind_ == Kind::pair;
    }

    std::size_t index() const;
    std::int64_t value() const;
    GroupElement const& left() const;
    GroupElement const& right() const;

    std::string to_string() const;

    friend bool operator==(GroupElement const& a, GroupElement const& b);
    friend std::strong_ordering operator<=>(GroupElement const& a,
                                            GroupElement const& b);

   private:
    GroupElement(Kind k, std::int64_t v) : kind_(k), value_(v) {}

    Kind                                                      kind_;
    std::int64_t                                              value_ = 0;
    std::shared_ptr<std::pair<GroupElement, GroupElement> const> parts_;
  };

  // Multiplication table of a finite group, validated on construction.
  struct FiniteTable {
    std::string                           name;
    std::size_t                           order = 0;
    std::vector<std::vector<std::size_t>> table;
    std::vector<std::size_t>              inverse;
    std::size_t                           identity = 0;
  };

  class GroupContext {
   public:
    enum class Kind : std::uint8_t { finite, integers, product };

    static GroupContext integers();
    // Throws InvalidGroup unless the table satisfies the group axioms.
    static GroupContext finite_table(std::vector<std::vector<std::size_t>> table,
                                     std::string name = "");
    static GroupContext cyclic(std::size_t n);
    static GroupContext product(GroupContext left, GroupContext right);

    Kind kind() const noexcept {
      return kind_;
    }
    bool is_finite() const noexcept {
      return kind_ == Kind::finite;
    }
    bool is_integers() const noexcept {
      return kind_ == Kind::integers;
    }
    bool is_product() const noexcept {
      return kind_ == Kind::product;
    }

    FiniteTable const&  table() const;
    std::size_t         order() const;
    GroupContext const& left() const;
    GroupContext const& right() const;
    // 0 for atomic backends.
    std::size_t depth() const noexcept;
    std::string name() const;

    GroupElement identity() const;
    bool         owns(GroupElement const& g) const;
    // All elements of a finite backend, by index.
    std::vector<GroupElement> elements() const;

    friend bool operator==(GroupContext const& a, GroupContext const& b);

   private:
    explicit GroupContext(Kind k) : kind_(k) {}

    Kind                                                      kind_;
    std::shared_ptr<FiniteTable const>                        table_;
    std::shared_ptr<std::pair<GroupContext, GroupContext> const> parts_;
  };

  inline constexpr std::size_t kMaxProductDepth = 2;

  // A subgroup reported by kernel and (G*)^00 computations: mZ for the
  // integers (m = 0 is the trivial subgroup), an element list for finite
  // backends, or a product of two descriptors.
  struct SubgroupDescriptor {
    enum class Kind : std::uint8_t { multiples, elements, product };

    Kind                              kind    = Kind::multiples;
    std::uint64_t                     modulus = 0;
    std::vector<GroupElement>         elements;
    std::vector<SubgroupDescriptor>   factors;

    static SubgroupDescriptor multiples_of(std::uint64_t m) {
      return {Kind::multiples, m, {}, {}};
    }
    static SubgroupDescriptor of_elements(std::vector<GroupElement> e) {
      return {Kind::elements, 0, std::move(e), {}};
    }
    static SubgroupDescriptor product_of(SubgroupDescriptor l,
                                         SubgroupDescriptor r) {
      return {Kind::product, 0, {}, {std::move(l), std::move(r)}};
    }

    std::string to_string() const;

    friend bool operator==(SubgroupDescriptor const&,
                           SubgroupDescriptor const&) = default;
  };

  // g·h. Throws ContextMismatch if g or h does not belong to ctx.
  GroupElement compose(GroupContext const& ctx,
                       GroupElement const& g,
                       GroupElement const& h);
  GroupElement invert_element(GroupContext const& ctx, GroupElement const& g);

  // Order of g in a finite backend.
  std::size_t element_order(GroupContext const& ctx, GroupElement const& g);

  // The bundled finite groups: every group of order 1 through 8 up to
  // isomorphism (C1, C2, C3, C4, C2xC2, C5, C6, S3, C7, C8, C4xC2,
  // C2xC2xC2, D4, Q8).
  std::vector<GroupContext> bundled_groups();
  // Throws InvalidArgument for an unknown name.
  GroupContext bundled_group(std::string const& name);

  GroupContext dihedral(std::size_t n);
  GroupContext quaternion();
  GroupContext direct_product_table(GroupContext const& a,
                                    GroupContext const& b);

}  // namespace defdyn
