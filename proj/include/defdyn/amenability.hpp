#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "defdyn/defset.hpp"
#include "defdyn/flows.hpp"
#include "defdyn/lp.hpp"
#include "defdyn/typespace.hpp"

namespace defdyn {

  // Exact probability weights on the finite part of a level type space or on
  // a flow carrier. Realized points carry weight 0.
  struct InvariantMeasure {
    std::optional<Level>  level;  // set for level type spaces
    std::vector<Rational> weights;

    Rational of(std::vector<std::size_t> const& subset) const;
    // Weight of the cylinder of Y: the limit points deciding Y positively.
    Rational cylinder(LevelTypeSpace const& space, DefinableSet const& y) const;

    friend bool operator==(InvariantMeasure const&, InvariantMeasure const&) = default;
  };

  // Canonical measure: equal weight on every minimal subflow, uniform inside
  // each.
  InvariantMeasure invariant_measure(LevelTypeSpace const& space);
  InvariantMeasure invariant_measure(FiniteFlowPresentation const& f);

  // An invariant probability vector for arbitrary self-maps of a finite
  // carrier (mu(f^-1 {x}) = mu({x}) for each map), from the exact LP.
  // nullopt when none exists.
  std::optional<std::vector<Rational>> invariant_measure_lp(
      std::size_t carrier, std::vector<std::vector<std::size_t>> const& maps);

  // Nonnegative, total mass 1, invariant under each permutation.
  bool is_invariant(std::vector<Rational> const& weights,
                    std::vector<Permutation> const& perms);

  // Image of a level-n measure under restriction to level m | n.
  InvariantMeasure pushforward(InvariantMeasure const& mu, LevelTypeSpace const& from,
                               LevelTypeSpace const& to);

  std::vector<std::size_t> fixed_points(LevelTypeSpace const& space);
  std::vector<std::size_t> fixed_points(FiniteFlowPresentation const& f);

  // Bounds of a generated set family. Integers: every set of period
  // N <= max_modulus given by up/down residue masks split at 0, with the
  // membership of each point of [-window, window] optionally toggled.
  // Finite backends: nonempty subsets of size <= max_size (0 = all).
  // Products: rectangles of the component families.
  struct FamilyBounds {
    std::uint64_t max_modulus = 4;
    std::int64_t  window      = 0;
    std::size_t   max_size    = 0;
    // Integers only: keep sets whose period divides this (0 = no filter).
    std::uint64_t period_divides = 0;
  };

  // The family in its canonical enumeration order, without repeats.
  std::vector<DefinableSet> generate_family(GroupContext const& ctx,
                                            FamilyBounds const& bounds);

  struct PestovCertificate {
    DefinableSet              y;
    std::vector<GroupElement> cover;
    DefinableSet              difference;
    std::string               missed;
  };

  struct PestovResult {
    std::optional<PestovCertificate> certificate;
    std::size_t                      examined = 0;
    std::string                      note;
  };

  // The first generic Y in the family with YY^-1 != G.
  PestovResult pestov_check(GroupContext const& ctx, FamilyBounds const& bounds);

  struct KernelIntersection {
    SubgroupDescriptor subgroup;
    // kernel_of_action on the minimal subflow at the matching level
    // (lcm(1..max_modulus) for the integers, 1 for finite backends).
    SubgroupDescriptor action_kernel;
    std::uint64_t      level = 1;
    std::size_t        generic_sets = 0;

    bool matches() const {
      return subgroup == action_kernel;
    }
  };

  KernelIntersection kernel_intersection(GroupContext const& ctx,
                                         FamilyBounds const& bounds);

  struct SingletonMinimalReport {
    bool all_minimal_singletons = false;   // side (a)
    bool meeting_sets_full      = false;   // side (b)
    bool agree() const noexcept {
      return all_minimal_singletons == meeting_sets_full;
    }
    std::optional<SubflowDescriptor> large_subflow;  // a fails
    std::optional<DefinableSet>      witness_set;    // b fails
  };

  // Family sets are restricted to periods dividing the level.
  SingletonMinimalReport singleton_minimal_criterion(LevelTypeSpace const& space,
                                                     FamilyBounds const&   bounds);

  struct SeparationWitness {
    DefinableSet y;
    Rational     low;
    Rational     high;
    // Contains {g : mu(gY) <= low} and misses {g : mu(gY) >= high}.
    DefinableSet separator;
  };

  struct MeasureDefinabilityReport {
    bool                           passed = false;
    std::size_t                    sets_checked = 0;
    std::vector<SeparationWitness> witnesses;
  };

  MeasureDefinabilityReport measure_definability_check(InvariantMeasure const& mu,
                                                       LevelTypeSpace const&   space,
                                                       FamilyBounds const&     bounds);

  struct PestovConsistency {
    std::vector<std::uint64_t> levels;
    bool certificate_found     = false;
    bool fixed_points_everywhere = false;
    bool fixed_point_free_level  = false;
    bool consistent() const noexcept {
      return !(certificate_found && fixed_points_everywhere)
             && (!certificate_found || fixed_point_free_level);
    }
  };

  // Integers: the levels are the divisors of lcm(1..max_modulus); finite
  // backends have the single level 1.
  PestovConsistency pestov_consistency(GroupContext const& ctx,
                                       FamilyBounds const& bounds);

}  // namespace defdyn
