#pragma once

#include <cstddef>
#include <vector>

#include "defdyn/group.hpp"
#include "defdyn/typespace.hpp"

namespace defdyn {

  // p*q by the closed-form rule. For the integers the right factor's sign
  // direction dominates; limit points given at different levels are combined
  // at the gcd of the levels (the finest level at which the product is
  // determined). Finite backends: the group law. Products: coordinatewise,
  // relative to the rectangle algebra.
  TypePoint star(GroupContext const& ctx, TypePoint const& p, TypePoint const& q);

  // p*q computed from definability of q alone: Y is in p*q iff p contains
  // {g : Y in g·q}. The resulting type is decoded from its membership on a
  // separating family of sets.
  TypePoint star_via_schema(GroupContext const& ctx,
                            TypePoint const&    p,
                            TypePoint const&    q);

  // The map r_q : p -> p*q on a level type space.
  struct RightTranslation {
    TypePoint q = TypePoint::realized(GroupElement::integer(0));
    // Image of each point of the finite part, as an index.
    std::vector<std::size_t> image;
    // r_q(1) = q
    bool maps_base_point = false;
    // r_q(g·p) = g·r_q(p) on the finite part, for every generator.
    bool equivariant = false;
    // r_q(Realized(g)) = g·q for a complete set of representatives; with
    // equivariance this pins r_q down on the dense realized part.
    bool agrees_on_realized = false;
    // star(a_k, q) -> star(p, q) along every witness sequence a_k -> p.
    bool left_continuous = false;

    bool certified() const noexcept {
      return maps_base_point && equivariant && agrees_on_realized
             && left_continuous;
    }
  };

  RightTranslation right_translation(LevelTypeSpace const& space,
                                     TypePoint const&      q);

  // Every p in the finite part with p*p = p.
  std::vector<TypePoint> find_idempotents(LevelTypeSpace const& space);

  // Does the sequence of points converge to `target` in the level-n topology?
  // Checks the tail k in [from, from + count).
  bool converges_to(std::vector<TypePoint> const& tail,
                    TypePoint const&              target,
                    std::uint64_t                 n);

}  // namespace defdyn
