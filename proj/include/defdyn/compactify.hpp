#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "defdyn/defset.hpp"
#include "defdyn/flows.hpp"
#include "defdyn/group.hpp"

namespace defdyn {

  // An equivalence relation on G with finitely many classes. Integers:
  // congruence modulo `modulus`. Finite backends: an explicit partition of
  // the element indices.
  struct BoundedEquivalence {
    GroupContext                          group = GroupContext::integers();
    std::uint64_t                         modulus = 0;
    std::vector<std::vector<std::size_t>> classes;

    static BoundedEquivalence congruence(std::uint64_t n);
    static BoundedEquivalence partition(GroupContext                          g,
                                        std::vector<std::vector<std::size_t>> classes);
    static BoundedEquivalence equality(GroupContext const& g);
    // Left cosets gN of a subgroup given by its elements.
    static BoundedEquivalence cosets(GroupContext const&              g,
                                     std::vector<GroupElement> const& subgroup);
  };

  // X/E with the logic topology. At finite index the topology is discrete.
  struct CompactQuotient {
    GroupContext              group = GroupContext::integers();
    std::vector<DefinableSet> fibers;  // canonical preimage of each class
    bool                      discrete = true;
    // Present when E is the coset equivalence of a normal subgroup: the
    // quotient group, with class k as element k.
    std::optional<GroupContext> quotient_group;
    // Integers: the modulus n of Z/n.
    std::uint64_t modulus = 0;

    std::size_t size() const noexcept {
      return fibers.size();
    }
    std::size_t project(GroupElement const& g) const;
  };

  // Throws InvalidArgument when the classes do not partition G.
  CompactQuotient logic_quotient(BoundedEquivalence const& e);

  // Level-n approximation of (G*)^00: nZ for the integers, {1} for finite
  // backends, coordinatewise for products.
  SubgroupDescriptor g00_at_level(GroupContext const& ctx, std::uint64_t n);

  // a contains b.
  bool subgroup_contains(GroupContext const& ctx, SubgroupDescriptor const& a,
                         SubgroupDescriptor const& b);

  // A definable compactification G -> C with C finite. Integers: reduction
  // Z -> Z/modulus. Finite backends: an explicit surjective homomorphism.
  struct CompactificationTarget {
    std::uint64_t               modulus = 0;
    std::optional<GroupContext> target;
    std::vector<std::size_t>    map;  // image of each element of G, by index

    static CompactificationTarget cyclic(std::uint64_t m);
    static CompactificationTarget homomorphism(GroupContext c, std::vector<std::size_t> map);
    std::string name() const;
  };

  struct ReductionMap {
    std::string              target;
    // Image of each quotient class.
    std::vector<std::size_t> table;
    bool                     homomorphism = false;
    bool                     commutes     = false;
    bool                     surjective   = false;
    // No other homomorphism from the quotient commutes with the projections.
    bool unique = false;

    bool certified() const noexcept {
      return homomorphism && commutes && surjective && unique;
    }
  };

  struct UniversalCompactification {
    CompactQuotient           quotient;
    std::vector<ReductionMap> maps;

    bool certified() const noexcept;
  };

  // Throws LevelTooCoarse when a target modulus does not divide the level,
  // InvalidArgument when a finite target map is not a surjective
  // homomorphism.
  UniversalCompactification universal_compactification(
      GroupContext const&                        ctx,
      std::uint64_t                              level,
      std::vector<CompactificationTarget> const& family);

  struct HomomorphismVerdict {
    bool homomorphism = false;
    bool surjective   = false;
    bool definable    = false;
    // Period of the fibers (integers) or 1.
    std::uint64_t fiber_modulus = 1;
    // The induced homomorphism on the universal compactification at the
    // fiber modulus (integers) or on G/ker f (finite).
    std::vector<std::size_t> induced;
    bool                     induced_homomorphism = false;
    // f*(p*q) = f*(p)·f*(q) on the type space at the fiber modulus.
    bool        closure_identity = false;
    std::string failure;

    bool valid() const noexcept {
      return homomorphism && surjective && definable && induced_homomorphism
             && closure_identity;
    }
  };

  HomomorphismVerdict definable_homomorphism_check(DefinableMap const& f,
                                                   GroupContext const& target);

}  // namespace defdyn
