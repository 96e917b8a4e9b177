#pragma once

// Brute-force reference implementations. They read sets only through
// membership and groups only through their tables, and share no code with
// the structured algorithms they are compared against.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "defdyn/defset.hpp"
#include "defdyn/group.hpp"
#include "defdyn/typespace.hpp"

namespace defdyn::oracle {

  // [-w, w] as a finite stand-in for Z.
  struct WindowUniverse {
    std::int64_t w = 200;

    // Throws InvalidArgument unless w >= 4 · period · max(1, |lo|, |hi|).
    void require_sufficient(DefinableSet const& y) const;
  };

  // Integers: {a - b : a, b in Y ∩ [-w, w]} ∩ [-w/2, w/2]. Finite
  // backends: YY^-1 from the table (the window is ignored).
  std::vector<GroupElement> difference_set(DefinableSet const& y, WindowUniverse u);

  // Depth-first search for at most `max_translates` shifts with |t| <=
  // shift_bound whose translates cover [-w, w], branching on the smallest
  // uncovered point. Finite backends search all of G.
  std::optional<std::vector<GroupElement>> generic(DefinableSet const& y,
                                                   std::size_t         max_translates,
                                                   std::int64_t        shift_bound,
                                                   WindowUniverse      u);

  // Realizes p by a and q by b with |b| >= 1000·|a|·level and classifies
  // tp(a·b): a realized value if both are realized, otherwise the sign of
  // a + b and its residue modulo the gcd of the limit moduli.
  TypePoint star(GroupContext const& ctx, TypePoint const& p, TypePoint const& q,
                 std::uint64_t level);

  // Limit-part indices follow the level type space: (+, 0..n-1) then
  // (-, 0..n-1). Exhaustive over all subsets; n <= 8.
  std::vector<std::vector<std::size_t>> minimal_subflows(std::uint64_t n);

  // p with star(p, p) = p among the 2n limit points, via the numeric star.
  std::vector<std::size_t> idempotents(std::uint64_t n);

  // Every map f : A -> B with f(pi_A(x)) = pi_B(f(x)) for each pair of
  // generator permutations. Maps are listed as image vectors.
  std::vector<std::vector<std::size_t>> equivariant_maps(
      std::vector<std::vector<std::size_t>> const& gens_a,
      std::vector<std::vector<std::size_t>> const& gens_b,
      std::size_t size_a, std::size_t size_b, bool bijective_only);

  // Rotation +1 on the limit part restricted to a subset, reindexed by
  // position in the subset.
  std::vector<std::size_t> rotation_on(std::vector<std::size_t> const& subset,
                                       std::uint64_t                   n);

}  // namespace defdyn::oracle
