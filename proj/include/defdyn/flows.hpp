#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "defdyn/group.hpp"
#include "defdyn/typespace.hpp"

namespace defdyn {

  using Permutation = std::vector<std::size_t>;

  // A finite G-flow. For the integers the action is given by the single
  // bijection pi (the action of 1); for finite backends by the images of a
  // generating set, extended to a homomorphism by check_definable_flow.
  struct FiniteFlowPresentation {
    GroupContext                                  group = GroupContext::integers();
    std::size_t                                   carrier = 0;
    std::vector<std::pair<GroupElement, Permutation>> generators;
    std::optional<std::size_t>                    base;

    static FiniteFlowPresentation integer_flow(Permutation                pi,
                                               std::optional<std::size_t> base = {});
    static FiniteFlowPresentation finite_flow(
        GroupContext                                      group,
        std::size_t                                       carrier,
        std::vector<std::pair<GroupElement, Permutation>> generators,
        std::optional<std::size_t>                        base = {});
    // Z acting on Z/d by rotation, based at 0.
    static FiniteFlowPresentation rotation(std::size_t d);
    // A finite group acting on itself by left multiplication, based at 1.
    static FiniteFlowPresentation regular(GroupContext const& group);
    // Any group acting trivially on `carrier` points.
    static FiniteFlowPresentation trivial(GroupContext const& group,
                                          std::size_t         carrier);
  };

  struct FlowCheck {
    // Base point present with orbit equal to the carrier.
    bool is_ambit = false;
    // Per point: the period of its orbit map g -> g·x (the definable level;
    // 1 for finite backends, where every map on G is definable).
    std::vector<std::uint64_t> orbit_period;
    // Integers: {pi}. Finite backends: the action of every element, by index.
    std::vector<Permutation> action;
    // Orbit decomposition, each sorted, ordered by least element.
    std::vector<std::vector<std::size_t>> orbits;
  };

  // Throws InvalidFlow for a non-bijective generator, a generating set that
  // does not generate, or a relation violation.
  FlowCheck check_definable_flow(FiniteFlowPresentation const& f);

  // h : S_G at level n -> X with h(1) = x0.
  struct AmbitMorphism {
    Level level;
    // Image of each point of the level's finite part.
    std::vector<std::size_t> limit_image;
    // g·x0 for realized g.
    std::size_t realized_image(GroupElement const& g) const;
    std::size_t operator()(TypePoint const& p) const;

    bool equivariant = false;
    bool surjective  = false;
    // Every limit value is the eventual value along its witness sequence, so
    // any continuous equivariant map agreeing on the realized part equals h.
    bool limits_forced = false;

    bool certified() const noexcept {
      return equivariant && surjective && limits_forced;
    }

    // Implementation data.
    GroupContext             group = GroupContext::integers();
    std::vector<std::size_t> base_orbit;   // integers: pi^k(x0), k < d
    std::vector<std::size_t> element_image;  // finite: g·x0 by index
  };

  // Throws InvalidFlow unless f is an ambit, LevelTooCoarse when the orbit
  // period of x0 does not divide the level.
  AmbitMorphism universal_ambit_morphism(LevelTypeSpace const&         space,
                                         FiniteFlowPresentation const& f);

  // A closed invariant subset, as sorted indices into the finite part of a
  // level type space or into a flow's carrier.
  struct SubflowDescriptor {
    std::vector<std::size_t> points;

    friend bool operator==(SubflowDescriptor const&, SubflowDescriptor const&)
        = default;
    friend auto operator<=>(SubflowDescriptor const&, SubflowDescriptor const&)
        = default;
  };

  std::vector<SubflowDescriptor> minimal_subflows(LevelTypeSpace const& space);
  std::vector<SubflowDescriptor> minimal_subflows(FiniteFlowPresentation const& f);

  // Closed and invariant under every generator.
  bool is_subflow(LevelTypeSpace const& space, std::vector<std::size_t> const& s);

  // star(s, l) in S for every s in the level space and l in S. Realized s
  // are covered by the representatives of their action on the finite part.
  bool is_left_ideal(LevelTypeSpace const& space, std::vector<std::size_t> const& s);

  // The isomorphism I -> J built from right translations.
  struct FlowIsomorphism {
    SubflowDescriptor from;
    SubflowDescriptor to;
    // map[i] is the image (space index) of from.points[i].
    std::vector<std::size_t> map;
    TypePoint p0 = TypePoint::realized(GroupElement::integer(0));  // idempotent of I
    TypePoint t  = p0;                                            // in J
    TypePoint u  = p0;                                            // in I
    TypePoint s  = p0;                                            // s*(t*u) = p0
    bool      equivariant = false;
    bool      bijective   = false;
    // r_s followed by r_{t*u} is the identity of I.
    bool inverse_verified = false;

    bool certified() const noexcept {
      return equivariant && bijective && inverse_verified;
    }
  };

  struct UniversalMinimalFlow {
    SubflowDescriptor flow;
    TypePoint         idempotent = TypePoint::realized(GroupElement::integer(0));
  };

  UniversalMinimalFlow universal_minimal_flow(LevelTypeSpace const& space);

  // Throws InvalidArgument unless i and j are minimal subflows.
  FlowIsomorphism flow_isomorphism(LevelTypeSpace const&    space,
                                   SubflowDescriptor const& i,
                                   SubflowDescriptor const& j);

  // A map Z -> {0..codomain-1}: periodic with period d beyond a finite window.
  struct EventuallyPeriodicMap {
    std::uint64_t            period = 1;
    std::vector<std::size_t> up_values;
    std::vector<std::size_t> down_values;
    std::int64_t             lo = 0;
    std::vector<std::size_t> window;  // values on [lo, lo + size)

    std::size_t operator()(std::int64_t g) const;
    std::int64_t hi() const noexcept {
      return lo + static_cast<std::int64_t>(window.size()) - 1;
    }
  };

  // A definable map from G to a finite set.
  struct DefinableMap {
    GroupContext                         group = GroupContext::integers();
    std::size_t                          codomain = 1;
    std::optional<EventuallyPeriodicMap> periodic;  // integers
    std::vector<std::size_t>             table;     // finite backends, by index

    static DefinableMap integer_map(EventuallyPeriodicMap f, std::size_t codomain);
    static DefinableMap finite_map(GroupContext g, std::vector<std::size_t> table,
                                   std::size_t codomain);

    std::size_t operator()(GroupElement const& g) const;
    // Fiber over c as a canonical definable set.
    DefinableSet fiber(std::size_t c) const;
  };

  struct ExtendedMap {
    DefinableMap             f;
    Level                    level;
    std::vector<std::size_t> values;  // on the finite part
    // For every limit point the image of each basic neighbourhood beyond the
    // window is a single value, reached along the witness sequence.
    bool singleton_certified = false;

    std::size_t operator()(TypePoint const& p) const;
  };

  // Throws LevelError when the period of f does not divide the level.
  ExtendedMap extend_definable_map(LevelTypeSpace const& space, DefinableMap const& f);

  // {g : g acts trivially on the (first) minimal subflow}.
  SubgroupDescriptor kernel_of_action(LevelTypeSpace const& space);
  SubgroupDescriptor kernel_of_action(FiniteFlowPresentation const& f);

}  // namespace defdyn
