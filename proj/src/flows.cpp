#include "defdyn/flows.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "defdyn/arith.hpp"
#include "defdyn/ellis.hpp"
#include "defdyn/error.hpp"

namespace defdyn {

  namespace {

    Permutation identity_permutation(std::size_t n) {
      Permutation p(n);
      std::iota(p.begin(), p.end(), std::size_t{0});
      return p;
    }

    // (a ∘ b)[i] = a[b[i]]
    Permutation after(Permutation const& a, Permutation const& b) {
      Permutation out(b.size());
      for (std::size_t i = 0; i < b.size(); ++i) {
        out[i] = a[b[i]];
      }
      return out;
    }

    void require_bijection(Permutation const& p, std::size_t carrier,
                           std::string const& who) {
      if (p.size() != carrier) {
        throw InvalidFlow(who + " has " + std::to_string(p.size())
                          + " entries, carrier has "
                          + std::to_string(carrier));
      }
      std::vector<bool> hit(carrier);
      for (auto x : p) {
        if (x >= carrier || hit[x]) {
          throw InvalidFlow(who + " is not a bijection of the carrier");
        }
        hit[x] = true;
      }
    }

    std::vector<std::vector<std::size_t>> orbits_of(
        std::size_t n, std::vector<Permutation> const& gens) {
      std::vector<std::size_t> label(n, n);
      std::vector<std::vector<std::size_t>> out;
      for (std::size_t start = 0; start < n; ++start) {
        if (label[start] != n) {
          continue;
        }
        std::vector<std::size_t> orbit{start};
        label[start] = out.size();
        for (std::size_t k = 0; k < orbit.size(); ++k) {
          for (auto const& g : gens) {
            auto const y = g[orbit[k]];
            if (label[y] == n) {
              label[y] = out.size();
              orbit.push_back(y);
            }
          }
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
      }
      return out;
    }

    std::uint64_t permutation_order(Permutation const& p) {
      std::uint64_t m = 1;
      for (auto const& c : orbits_of(p.size(), {p})) {
        m = lcm_guarded(m, c.size());
      }
      return m;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Presentations
  ////////////////////////////////////////////////////////////////////////

  FiniteFlowPresentation FiniteFlowPresentation::integer_flow(
      Permutation pi, std::optional<std::size_t> base) {
    FiniteFlowPresentation f;
    f.group   = GroupContext::integers();
    f.carrier = pi.size();
    f.generators.emplace_back(GroupElement::integer(1), std::move(pi));
    f.base = base;
    return f;
  }

  FiniteFlowPresentation FiniteFlowPresentation::finite_flow(
      GroupContext                                      group,
      std::size_t                                       carrier,
      std::vector<std::pair<GroupElement, Permutation>> generators,
      std::optional<std::size_t>                        base) {
    FiniteFlowPresentation f;
    f.group      = std::move(group);
    f.carrier    = carrier;
    f.generators = std::move(generators);
    f.base       = base;
    return f;
  }

  FiniteFlowPresentation FiniteFlowPresentation::rotation(std::size_t d) {
    Permutation pi(d);
    for (std::size_t i = 0; i < d; ++i) {
      pi[i] = (i + 1) % d;
    }
    return integer_flow(std::move(pi), 0);
  }

  FiniteFlowPresentation FiniteFlowPresentation::regular(GroupContext const& group) {
    auto const& t = group.table();
    std::vector<std::pair<GroupElement, Permutation>> gens;
    for (std::size_t g = 0; g < t.order; ++g) {
      gens.emplace_back(GroupElement::finite(g), t.table[g]);
    }
    return finite_flow(group, t.order, std::move(gens), t.identity);
  }

  FiniteFlowPresentation FiniteFlowPresentation::trivial(GroupContext const& group,
                                                         std::size_t carrier) {
    if (group.is_integers()) {
      return integer_flow(identity_permutation(carrier), 0);
    }
    std::vector<std::pair<GroupElement, Permutation>> gens;
    for (auto const& g : group.elements()) {
      gens.emplace_back(g, identity_permutation(carrier));
    }
    return finite_flow(group, carrier, std::move(gens), 0);
  }

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  FlowCheck check_definable_flow(FiniteFlowPresentation const& f) {
    if (f.group.is_product()) {
      throw Unsupported("finite flows over product backends");
    }
    if (f.carrier == 0) {
      throw InvalidFlow("flow carrier must be nonempty");
    }
    if (f.base && *f.base >= f.carrier) {
      throw InvalidFlow("base point " + std::to_string(*f.base)
                        + " outside the carrier");
    }
    for (auto const& [g, p] : f.generators) {
      if (!f.group.owns(g)) {
        throw InvalidFlow("generator " + g.to_string() + " is not in "
                          + f.group.name());
      }
      require_bijection(p, f.carrier, "action of " + g.to_string());
    }

    FlowCheck out;
    if (f.group.is_integers()) {
      if (f.generators.size() != 1 || !(f.generators[0].first == GroupElement::integer(1))) {
        throw InvalidFlow("an integer flow is given by the action of 1 alone");
      }
      out.action = {f.generators[0].second};
      out.orbits = orbits_of(f.carrier, out.action);
      out.orbit_period.assign(f.carrier, 1);
      for (auto const& c : out.orbits) {
        for (auto x : c) {
          out.orbit_period[x] = c.size();
        }
      }
    } else {
      auto const& t = f.group.table();
      std::vector<std::optional<Permutation>> rho(t.order);
      rho[t.identity] = identity_permutation(f.carrier);
      std::deque<std::size_t> queue{t.identity};
      while (!queue.empty()) {
        auto const x = queue.front();
        queue.pop_front();
        for (auto const& [s, ps] : f.generators) {
          auto const y    = t.table[s.index()][x];
          auto       cand = after(ps, *rho[x]);
          if (!rho[y]) {
            rho[y] = std::move(cand);
            queue.push_back(y);
          } else if (*rho[y] != cand) {
            throw InvalidFlow("relation violation: the generator images do "
                              "not define an action of "
                              + f.group.name());
          }
        }
      }
      for (std::size_t g = 0; g < t.order; ++g) {
        if (!rho[g]) {
          throw InvalidFlow("the given elements do not generate " + f.group.name());
        }
      }
      for (std::size_t g = 0; g < t.order; ++g) {
        for (std::size_t h = 0; h < t.order; ++h) {
          if (*rho[t.table[g][h]] != after(*rho[g], *rho[h])) {
            throw InvalidFlow("relation violation at (" + std::to_string(g) + ","
                              + std::to_string(h) + ")");
          }
        }
      }
      for (auto& r : rho) {
        out.action.push_back(std::move(*r));
      }
      out.orbits = orbits_of(f.carrier, out.action);
      out.orbit_period.assign(f.carrier, 1);
    }

    if (f.base) {
      for (auto const& c : out.orbits) {
        if (std::binary_search(c.begin(), c.end(), *f.base)) {
          out.is_ambit = c.size() == f.carrier;
        }
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Universal ambit
  ////////////////////////////////////////////////////////////////////////

  std::size_t AmbitMorphism::realized_image(GroupElement const& g) const {
    if (group.is_integers()) {
      return base_orbit[mod_floor(g.value(), base_orbit.size())];
    }
    return element_image.at(g.index());
  }

  std::size_t AmbitMorphism::operator()(TypePoint const& p) const {
    if (p.is_realized()) {
      return realized_image(p.element());
    }
    if (!p.is_limit() || !group.is_integers()) {
      throw ContextMismatch("ambit morphism: point " + p.to_string()
                            + " is not in the type space of " + group.name());
    }
    auto const q = restrict(p, level);
    return limit_image[(q.sign() == Sign::plus ? 0 : level.modulus) + q.residue()];
  }

  AmbitMorphism universal_ambit_morphism(LevelTypeSpace const&         space,
                                         FiniteFlowPresentation const& f) {
    if (!(space.context() == f.group)) {
      throw ContextMismatch("flow group " + f.group.name()
                            + " differs from the type space group "
                            + space.context().name());
    }
    auto const chk = check_definable_flow(f);
    if (!chk.is_ambit) {
      throw InvalidFlow("not an ambit: the base point has no dense orbit");
    }
    auto const x0 = *f.base;
    auto const n  = space.level().modulus;

    AmbitMorphism h;
    h.level = space.level();
    h.group = f.group;
    if (f.group.is_integers()) {
      auto const d = chk.orbit_period[x0];
      if (n % d != 0) {
        throw LevelTooCoarse("orbit period " + std::to_string(d)
                             + " does not divide level " + std::to_string(n));
      }
      std::size_t x = x0;
      for (std::uint64_t k = 0; k < d; ++k) {
        h.base_orbit.push_back(x);
        x = chk.action[0][x];
      }
    } else {
      for (auto const& a : chk.action) {
        h.element_image.push_back(a[x0]);
      }
    }
    for (auto const& p : space.points()) {
      h.limit_image.push_back(p.is_realized() ? h.realized_image(p.element())
                                              : h.base_orbit[p.residue() % h.base_orbit.size()]);
    }

    auto const gens  = space.generators();
    auto const perms = space.generator_permutations();
    h.equivariant    = true;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      auto const& act = f.group.is_integers() ? chk.action[0]
                                              : chk.action[gens[k].index()];
      for (std::size_t i = 0; i < space.size(); ++i) {
        h.equivariant = h.equivariant && h.limit_image[perms[k][i]] == act[h.limit_image[i]];
      }
      for (auto const& g : space.realized_representatives()) {
        auto const gg = compose(f.group, gens[k], g);
        h.equivariant = h.equivariant && h.realized_image(gg) == act[h.realized_image(g)];
      }
    }

    std::vector<bool> hit(f.carrier);
    for (auto const& g : space.realized_representatives()) {
      hit[h.realized_image(g)] = true;
    }
    if (f.group.is_integers()) {
      for (std::size_t k = 0; k < h.base_orbit.size(); ++k) {
        hit[h.realized_image(GroupElement::integer(static_cast<std::int64_t>(k)))] = true;
      }
    }
    h.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });

    h.limits_forced = true;
    if (f.group.is_integers()) {
      for (std::size_t i = 0; i < space.size(); ++i) {
        auto const& p  = space.point(i);
        auto const  lw = limit_of(p.sign(), static_cast<std::int64_t>(p.residue()), n);
        for (std::uint64_t k = 8; k < 24; ++k) {
          h.limits_forced = h.limits_forced
                            && h.realized_image(GroupElement::integer(lw.witness.at(k)))
                                   == h.limit_image[i];
        }
      }
    }
    return h;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subflows and ideals
  ////////////////////////////////////////////////////////////////////////

  std::vector<SubflowDescriptor> minimal_subflows(LevelTypeSpace const& space) {
    std::vector<SubflowDescriptor> out;
    for (auto& o : orbits_of(space.size(), space.generator_permutations())) {
      out.push_back({std::move(o)});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<SubflowDescriptor> minimal_subflows(FiniteFlowPresentation const& f) {
    std::vector<SubflowDescriptor> out;
    for (auto& o : check_definable_flow(f).orbits) {
      out.push_back({std::move(o)});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  namespace {

    std::vector<bool> mask_of(LevelTypeSpace const& space,
                              std::vector<std::size_t> const& s) {
      std::vector<bool> in(space.size());
      for (auto i : s) {
        if (i >= space.size()) {
          throw InvalidArgument("subset index " + std::to_string(i)
                                + " outside the level space");
        }
        in[i] = true;
      }
      return in;
    }

  }  // namespace

  bool is_subflow(LevelTypeSpace const& space, std::vector<std::size_t> const& s) {
    auto const in = mask_of(space, s);
    for (auto const& perm : space.generator_permutations()) {
      for (auto i : s) {
        if (!in[perm[i]]) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_left_ideal(LevelTypeSpace const& space, std::vector<std::size_t> const& s) {
    auto const  in  = mask_of(space, s);
    auto const& ctx = space.context();
    for (auto l : s) {
      auto const& q = space.point(l);
      for (auto const& p : space.points()) {
        if (!in[space.index_of(star(ctx, p, q))]) {
          return false;
        }
      }
      for (auto const& g : space.realized_representatives()) {
        if (!in[space.index_of(star(ctx, TypePoint::realized(g), q))]) {
          return false;
        }
      }
    }
    return true;
  }

  UniversalMinimalFlow universal_minimal_flow(LevelTypeSpace const& space) {
    auto const flows = minimal_subflows(space);
    auto const& ctx  = space.context();
    for (auto i : flows.front().points) {
      auto const& p = space.point(i);
      if (star(ctx, p, p) == p) {
        return {flows.front(), p};
      }
    }
    throw Error("minimal subflow without an idempotent");
  }

  FlowIsomorphism flow_isomorphism(LevelTypeSpace const&    space,
                                   SubflowDescriptor const& i,
                                   SubflowDescriptor const& j) {
    auto const flows = minimal_subflows(space);
    for (auto const* s : {&i, &j}) {
      if (std::find(flows.begin(), flows.end(), *s) == flows.end()) {
        throw InvalidArgument("flow_isomorphism: argument is not a minimal subflow");
      }
    }
    auto const& ctx = space.context();
    FlowIsomorphism iso;
    iso.from = i;
    iso.to   = j;

    bool have_p0 = false;
    for (auto k : i.points) {
      auto const& p = space.point(k);
      if (star(ctx, p, p) == p) {
        iso.p0  = p;
        have_p0 = true;
        break;
      }
    }
    if (!have_p0) {
      throw Error("minimal subflow without an idempotent");
    }
    iso.t         = space.point(j.points.front());
    iso.u         = space.point(i.points.front());
    auto const tu = star(ctx, iso.t, iso.u);
    bool have_s   = false;
    for (auto k : i.points) {
      if (star(ctx, space.point(k), tu) == iso.p0) {
        iso.s  = space.point(k);
        have_s = true;
        break;
      }
    }
    if (!have_s) {
      throw Error("no s in I with s*(t*u) = p0");
    }

    std::vector<std::size_t> pos(space.size(), space.size());
    for (std::size_t k = 0; k < i.points.size(); ++k) {
      pos[i.points[k]] = k;
    }
    for (auto k : i.points) {
      iso.map.push_back(space.index_of(star(ctx, space.point(k), iso.t)));
    }

    iso.equivariant = true;
    for (auto const& perm : space.generator_permutations()) {
      for (std::size_t k = 0; k < i.points.size(); ++k) {
        auto const moved = pos[perm[i.points[k]]];
        iso.equivariant  = iso.equivariant && moved < i.points.size()
                          && iso.map[moved] == perm[iso.map[k]];
      }
    }

    auto image = iso.map;
    std::sort(image.begin(), image.end());
    iso.bijective = std::adjacent_find(image.begin(), image.end()) == image.end()
                    && image == j.points;

    iso.inverse_verified = true;
    for (auto k : i.points) {
      auto const& p = space.point(k);
      iso.inverse_verified
          = iso.inverse_verified && star(ctx, star(ctx, p, iso.s), tu) == p;
    }
    return iso;
  }

  ////////////////////////////////////////////////////////////////////////
  // Definable maps
  ////////////////////////////////////////////////////////////////////////

  std::size_t EventuallyPeriodicMap::operator()(std::int64_t g) const {
    if (g > hi()) {
      return up_values[mod_floor(g, period)];
    }
    if (g < lo) {
      return down_values[mod_floor(g, period)];
    }
    return window[static_cast<std::size_t>(g - lo)];
  }

  DefinableMap DefinableMap::integer_map(EventuallyPeriodicMap f, std::size_t codomain) {
    if (f.period == 0 || f.up_values.size() != f.period
        || f.down_values.size() != f.period) {
      throw InvalidArgument("eventually periodic map: value lists must have "
                            "one entry per residue");
    }
    if (static_cast<std::int64_t>(f.window.size()) > kWindowGuard) {
      throw GuardExceeded("eventually periodic map window too large");
    }
    for (auto const* vs : {&f.up_values, &f.down_values, &f.window}) {
      for (auto v : *vs) {
        if (v >= codomain) {
          throw InvalidArgument("map value " + std::to_string(v)
                                + " outside the codomain");
        }
      }
    }
    DefinableMap m;
    m.group    = GroupContext::integers();
    m.codomain = codomain;
    m.periodic = std::move(f);
    return m;
  }

  DefinableMap DefinableMap::finite_map(GroupContext g, std::vector<std::size_t> table,
                                        std::size_t codomain) {
    if (table.size() != g.order()) {
      throw InvalidArgument("map table must list one value per group element");
    }
    for (auto v : table) {
      if (v >= codomain) {
        throw InvalidArgument("map value " + std::to_string(v)
                              + " outside the codomain");
      }
    }
    DefinableMap m;
    m.group    = std::move(g);
    m.codomain = codomain;
    m.table    = std::move(table);
    return m;
  }

  std::size_t DefinableMap::operator()(GroupElement const& g) const {
    if (!group.owns(g)) {
      throw ContextMismatch("element " + g.to_string() + " is not in " + group.name());
    }
    return periodic ? (*periodic)(g.value()) : table[g.index()];
  }

  DefinableSet DefinableMap::fiber(std::size_t c) const {
    if (periodic) {
      auto const&       f = *periodic;
      std::vector<bool> up(f.period), down(f.period), win(f.window.size());
      for (std::uint64_t r = 0; r < f.period; ++r) {
        up[r]   = f.up_values[r] == c;
        down[r] = f.down_values[r] == c;
      }
      for (std::size_t k = 0; k < f.window.size(); ++k) {
        win[k] = f.window[k] == c;
      }
      return presburger(PresburgerSet::make(f.period, up, down, f.lo, f.hi(), win));
    }
    std::vector<GroupElement> members;
    for (std::size_t g = 0; g < table.size(); ++g) {
      if (table[g] == c) {
        members.push_back(GroupElement::finite(g));
      }
    }
    return element_set(group, members);
  }

  std::size_t ExtendedMap::operator()(TypePoint const& p) const {
    if (p.is_realized()) {
      return f(p.element());
    }
    if (!p.is_limit() || !f.periodic) {
      throw ContextMismatch("extended map: point " + p.to_string()
                            + " is not in the type space of " + f.group.name());
    }
    auto const q = restrict(p, level);
    return values[(q.sign() == Sign::plus ? 0 : level.modulus) + q.residue()];
  }

  ExtendedMap extend_definable_map(LevelTypeSpace const& space, DefinableMap const& f) {
    if (!(space.context() == f.group)) {
      throw ContextMismatch("map domain " + f.group.name()
                            + " differs from the type space group "
                            + space.context().name());
    }
    ExtendedMap out;
    out.f     = f;
    out.level = space.level();
    if (!f.periodic) {
      for (auto const& p : space.points()) {
        out.values.push_back(f(p.element()));
      }
      out.singleton_certified = true;
      return out;
    }

    auto const& m = *f.periodic;
    auto const  n = space.level().modulus;
    if (n % m.period != 0) {
      throw LevelError("map period " + std::to_string(m.period)
                       + " does not divide level " + std::to_string(n));
    }
    for (auto const& p : space.points()) {
      auto const& vs = p.sign() == Sign::plus ? m.up_values : m.down_values;
      out.values.push_back(vs[p.residue() % m.period]);
    }

    // Neighbourhoods {a = alpha mod n, sign·a > K} with K past the window.
    std::int64_t const k0 = std::max(std::abs(m.lo), std::abs(m.hi())) + 1;
    out.singleton_certified = true;
    for (std::size_t i = 0; i < space.size(); ++i) {
      auto const& p    = space.point(i);
      auto const  sgn  = p.sign() == Sign::plus ? 1 : -1;
      auto const  step = static_cast<std::int64_t>(n);
      // First element of the neighbourhood in direction sgn.
      std::int64_t a = sgn * k0;
      while (mod_floor(a, n) != p.residue()) {
        a += sgn;
      }
      for (std::uint64_t j = 0; j < 2 * m.period + 2; ++j) {
        out.singleton_certified = out.singleton_certified && f(GroupElement::integer(a))
                                                                 == out.values[i];
        a = checked_add(a, sgn * step);
      }
      auto const lw    = limit_of(p.sign(), static_cast<std::int64_t>(p.residue()), n);
      auto const first = static_cast<std::uint64_t>(k0) / n + 2;
      for (std::uint64_t k = first; k < first + 16; ++k) {
        out.singleton_certified
            = out.singleton_certified
              && f(GroupElement::integer(lw.witness.at(k))) == out.values[i];
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Kernels
  ////////////////////////////////////////////////////////////////////////

  SubgroupDescriptor kernel_of_action(LevelTypeSpace const& space) {
    auto const  flow = minimal_subflows(space).front();
    auto const& ctx  = space.context();
    if (ctx.is_integers()) {
      auto const perm = space.generator_permutations().front();
      Permutation restricted(flow.points.size());
      for (std::size_t k = 0; k < flow.points.size(); ++k) {
        auto const it = std::lower_bound(flow.points.begin(), flow.points.end(),
                                         perm[flow.points[k]]);
        restricted[k] = static_cast<std::size_t>(it - flow.points.begin());
      }
      return SubgroupDescriptor::multiples_of(permutation_order(restricted));
    }
    std::vector<GroupElement> kernel;
    for (auto const& g : ctx.elements()) {
      bool fixes = true;
      for (auto i : flow.points) {
        fixes = fixes && apply_group(ctx, g, space.point(i)) == space.point(i);
      }
      if (fixes) {
        kernel.push_back(g);
      }
    }
    return SubgroupDescriptor::of_elements(std::move(kernel));
  }

  SubgroupDescriptor kernel_of_action(FiniteFlowPresentation const& f) {
    auto const chk = check_definable_flow(f);
    if (f.group.is_integers()) {
      return SubgroupDescriptor::multiples_of(permutation_order(chk.action[0]));
    }
    std::vector<GroupElement> kernel;
    auto const id = identity_permutation(f.carrier);
    for (std::size_t g = 0; g < chk.action.size(); ++g) {
      if (chk.action[g] == id) {
        kernel.push_back(GroupElement::finite(g));
      }
    }
    return SubgroupDescriptor::of_elements(std::move(kernel));
  }

}  // namespace defdyn
