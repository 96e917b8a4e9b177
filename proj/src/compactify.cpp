#include "defdyn/compactify.hpp"

#include <algorithm>
#include <numeric>

#include "defdyn/arith.hpp"
#include "defdyn/ellis.hpp"
#include "defdyn/error.hpp"

namespace defdyn {

  ////////////////////////////////////////////////////////////////////////
  // Equivalences and quotients
  ////////////////////////////////////////////////////////////////////////

  BoundedEquivalence BoundedEquivalence::congruence(std::uint64_t n) {
    if (n == 0) {
      throw InvalidArgument("congruence modulus must be positive");
    }
    if (n > level_guard()) {
      throw GuardExceeded("congruence modulus " + std::to_string(n) + " exceeds the guard");
    }
    BoundedEquivalence e;
    e.modulus = n;
    return e;
  }

  BoundedEquivalence BoundedEquivalence::partition(
      GroupContext g, std::vector<std::vector<std::size_t>> classes) {
    if (!g.is_finite()) {
      throw InvalidArgument("explicit partitions need a finite backend");
    }
    BoundedEquivalence e;
    e.group   = std::move(g);
    e.classes = std::move(classes);
    return e;
  }

  BoundedEquivalence BoundedEquivalence::equality(GroupContext const& g) {
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < g.order(); ++i) {
      classes.push_back({i});
    }
    return partition(g, std::move(classes));
  }

  BoundedEquivalence BoundedEquivalence::cosets(GroupContext const&              g,
                                                std::vector<GroupElement> const& subgroup) {
    auto const&       t = g.table();
    std::vector<bool> in(t.order);
    for (auto const& h : subgroup) {
      in.at(h.index()) = true;
    }
    for (std::size_t a = 0; a < t.order; ++a) {
      for (std::size_t b = 0; b < t.order; ++b) {
        if (in[a] && in[b] && !in[t.table[a][t.inverse[b]]]) {
          throw InvalidArgument("coset equivalence: the elements are not a subgroup");
        }
      }
    }
    if (!in[t.identity]) {
      throw InvalidArgument("coset equivalence: the elements are not a subgroup");
    }
    std::vector<std::vector<std::size_t>> classes;
    std::vector<bool>                     done(t.order);
    for (std::size_t g0 = 0; g0 < t.order; ++g0) {
      if (done[g0]) {
        continue;
      }
      std::vector<std::size_t> cls;
      for (std::size_t h = 0; h < t.order; ++h) {
        if (in[h]) {
          cls.push_back(t.table[g0][h]);
          done[t.table[g0][h]] = true;
        }
      }
      std::sort(cls.begin(), cls.end());
      classes.push_back(std::move(cls));
    }
    return partition(g, std::move(classes));
  }

  std::size_t CompactQuotient::project(GroupElement const& g) const {
    if (group.is_integers()) {
      return mod_floor(g.value(), modulus);
    }
    for (std::size_t k = 0; k < fibers.size(); ++k) {
      if (fibers[k].contains(g)) {
        return k;
      }
    }
    throw ContextMismatch("element " + g.to_string() + " has no class");
  }

  namespace {

    // The quotient group when the classes are the cosets of a normal
    // subgroup, i.e. multiplication of classes is well defined.
    std::optional<GroupContext> class_group(
        GroupContext const& g, std::vector<std::vector<std::size_t>> const& classes) {
      auto const&              t = g.table();
      std::vector<std::size_t> label(t.order);
      for (std::size_t k = 0; k < classes.size(); ++k) {
        for (auto x : classes[k]) {
          label[x] = k;
        }
      }
      std::size_t const m = classes.size();
      std::vector<std::vector<std::size_t>> table(m, std::vector<std::size_t>(m, m));
      for (std::size_t a = 0; a < t.order; ++a) {
        for (std::size_t b = 0; b < t.order; ++b) {
          auto& cell = table[label[a]][label[b]];
          auto  c    = label[t.table[a][b]];
          if (cell == m) {
            cell = c;
          } else if (cell != c) {
            return std::nullopt;
          }
        }
      }
      try {
        return GroupContext::finite_table(std::move(table),
                                          g.name() + "/N" + std::to_string(t.order / m));
      } catch (InvalidGroup const&) {
        return std::nullopt;
      }
    }

  }  // namespace

  CompactQuotient logic_quotient(BoundedEquivalence const& e) {
    CompactQuotient q;
    q.group = e.group;
    if (e.group.is_integers()) {
      if (e.modulus == 0) {
        throw InvalidArgument("integer equivalence needs a positive modulus");
      }
      q.modulus = e.modulus;
      for (std::uint64_t r = 0; r < e.modulus; ++r) {
        q.fibers.push_back(residue_class(static_cast<std::int64_t>(r), e.modulus));
      }
      q.quotient_group = GroupContext::cyclic(e.modulus);
      return q;
    }
    if (!e.group.is_finite()) {
      throw Unsupported("logic quotients over product backends");
    }
    auto const&       t = e.group.table();
    std::vector<bool> seen(t.order);
    for (auto const& cls : e.classes) {
      if (cls.empty()) {
        throw InvalidArgument("equivalence class is empty");
      }
      std::vector<GroupElement> elems;
      for (auto x : cls) {
        if (x >= t.order || seen[x]) {
          throw InvalidArgument("classes do not partition the group");
        }
        seen[x] = true;
        elems.push_back(GroupElement::finite(x));
      }
      q.fibers.push_back(element_set(e.group, elems));
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
      throw InvalidArgument("classes do not cover the group");
    }
    q.quotient_group = class_group(e.group, e.classes);
    return q;
  }

  SubgroupDescriptor g00_at_level(GroupContext const& ctx, std::uint64_t n) {
    if (n == 0) {
      throw InvalidArgument("level must be positive");
    }
    if (ctx.is_integers()) {
      return SubgroupDescriptor::multiples_of(n);
    }
    if (ctx.is_finite()) {
      return SubgroupDescriptor::of_elements({ctx.identity()});
    }
    return SubgroupDescriptor::product_of(g00_at_level(ctx.left(), n),
                                          g00_at_level(ctx.right(), n));
  }

  bool subgroup_contains(GroupContext const& ctx, SubgroupDescriptor const& a,
                         SubgroupDescriptor const& b) {
    if (a.kind != b.kind) {
      throw InvalidArgument("subgroup descriptors of different kinds");
    }
    switch (a.kind) {
      case SubgroupDescriptor::Kind::multiples:
        if (b.modulus == 0) {
          return true;
        }
        return a.modulus != 0 && b.modulus % a.modulus == 0;
      case SubgroupDescriptor::Kind::elements:
        return std::all_of(b.elements.begin(), b.elements.end(), [&](auto const& g) {
          return std::find(a.elements.begin(), a.elements.end(), g) != a.elements.end();
        });
      case SubgroupDescriptor::Kind::product:
        return subgroup_contains(ctx.left(), a.factors[0], b.factors[0])
               && subgroup_contains(ctx.right(), a.factors[1], b.factors[1]);
    }
    return false;
  }

  ////////////////////////////////////////////////////////////////////////
  // Universal compactification
  ////////////////////////////////////////////////////////////////////////

  CompactificationTarget CompactificationTarget::cyclic(std::uint64_t m) {
    if (m == 0) {
      throw InvalidArgument("compactification modulus must be positive");
    }
    CompactificationTarget c;
    c.modulus = m;
    return c;
  }

  CompactificationTarget CompactificationTarget::homomorphism(GroupContext             c,
                                                              std::vector<std::size_t> map) {
    CompactificationTarget t;
    t.target = std::move(c);
    t.map    = std::move(map);
    return t;
  }

  std::string CompactificationTarget::name() const {
    return target ? target->name() : "Z/" + std::to_string(modulus);
  }

  bool UniversalCompactification::certified() const noexcept {
    return std::all_of(maps.begin(), maps.end(),
                       [](ReductionMap const& m) { return m.certified(); });
  }

  namespace {

    bool is_hom(FiniteTable const& a, FiniteTable const& b,
                std::vector<std::size_t> const& f) {
      for (std::size_t x = 0; x < a.order; ++x) {
        for (std::size_t y = 0; y < a.order; ++y) {
          if (f[a.table[x][y]] != b.table[f[x]][f[y]]) {
            return false;
          }
        }
      }
      return true;
    }

    bool onto(std::vector<std::size_t> const& f, std::size_t size) {
      std::vector<bool> hit(size);
      for (auto v : f) {
        hit.at(v) = true;
      }
      return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    }

    UniversalCompactification integer_compactification(
        std::uint64_t n, std::vector<CompactificationTarget> const& family) {
      UniversalCompactification u;
      u.quotient        = logic_quotient(BoundedEquivalence::congruence(n));
      auto const& zn    = u.quotient.quotient_group->table();
      auto const  big_n = static_cast<std::int64_t>(n);
      for (auto const& c : family) {
        if (c.target) {
          throw InvalidArgument("integer compactification targets are moduli");
        }
        auto const m = c.modulus;
        if (n % m != 0) {
          throw LevelTooCoarse("target Z/" + std::to_string(m) + " does not divide level "
                               + std::to_string(n));
        }
        ReductionMap r;
        r.target = c.name();
        for (std::uint64_t k = 0; k < n; ++k) {
          r.table.push_back(k % m);
        }
        auto const zm  = GroupContext::cyclic(m);
        r.homomorphism = is_hom(zn, zm.table(), r.table);
        r.surjective   = onto(r.table, m);
        r.commutes     = true;
        for (std::int64_t g = -2 * big_n; g <= 2 * big_n; ++g) {
          r.commutes = r.commutes
                       && r.table[u.quotient.project(GroupElement::integer(g))]
                              == mod_floor(g, m);
        }
        // Homomorphisms Z/n -> Z/m are k -> k·c with n·c = 0 mod m.
        std::size_t commuting = 0;
        for (std::uint64_t cimg = 0; cimg < m; ++cimg) {
          if ((n * cimg) % m != 0) {
            continue;
          }
          bool ok = true;
          for (std::int64_t g = -big_n; g <= big_n && ok; ++g) {
            ok = (mod_floor(g, n) * cimg) % m == mod_floor(g, m);
          }
          commuting += ok ? 1 : 0;
        }
        r.unique = commuting == 1;
        u.maps.push_back(std::move(r));
      }
      return u;
    }

    UniversalCompactification finite_compactification(
        GroupContext const& ctx, std::vector<CompactificationTarget> const& family) {
      auto const&       t = ctx.table();
      std::vector<bool> in_kernel(t.order, true);
      for (auto const& c : family) {
        if (!c.target || !c.target->is_finite() || c.map.size() != t.order) {
          throw InvalidArgument("finite compactification targets need a table and a map");
        }
        auto const& ct = c.target->table();
        for (auto v : c.map) {
          if (v >= ct.order) {
            throw InvalidArgument("compactification map leaves " + c.target->name());
          }
        }
        if (!is_hom(t, ct, c.map) || !onto(c.map, ct.order)) {
          throw InvalidArgument("map to " + c.target->name()
                                + " is not a surjective homomorphism");
        }
        for (std::size_t g = 0; g < t.order; ++g) {
          in_kernel[g] = in_kernel[g] && c.map[g] == ct.identity;
        }
      }
      std::vector<GroupElement> kernel;
      for (std::size_t g = 0; g < t.order; ++g) {
        if (in_kernel[g]) {
          kernel.push_back(GroupElement::finite(g));
        }
      }
      UniversalCompactification u;
      u.quotient = logic_quotient(BoundedEquivalence::cosets(ctx, kernel));
      if (!u.quotient.quotient_group) {
        throw Error("intersection of kernels is not normal");
      }
      auto const& qt = u.quotient.quotient_group->table();
      for (auto const& c : family) {
        auto const&  ct = c.target->table();
        ReductionMap r;
        r.target = c.name();
        r.table.assign(u.quotient.size(), ct.order);
        r.commutes = true;
        for (std::size_t g = 0; g < t.order; ++g) {
          auto& cell = r.table[u.quotient.project(GroupElement::finite(g))];
          if (cell == ct.order) {
            cell = c.map[g];
          }
          r.commutes = r.commutes && cell == c.map[g];
        }
        r.homomorphism = r.commutes && is_hom(qt, ct, r.table);
        r.surjective   = r.commutes && onto(r.table, ct.order);
        // The projection is onto, so commuting pins every class.
        r.unique = onto([&] {
          std::vector<std::size_t> proj;
          for (std::size_t g = 0; g < t.order; ++g) {
            proj.push_back(u.quotient.project(GroupElement::finite(g)));
          }
          return proj;
        }(), u.quotient.size());
        u.maps.push_back(std::move(r));
      }
      return u;
    }

  }  // namespace

  UniversalCompactification universal_compactification(
      GroupContext const&                        ctx,
      std::uint64_t                              level,
      std::vector<CompactificationTarget> const& family) {
    if (ctx.is_integers()) {
      return integer_compactification(level, family);
    }
    if (ctx.is_finite()) {
      return finite_compactification(ctx, family);
    }
    throw Unsupported("universal compactification over product backends");
  }

  ////////////////////////////////////////////////////////////////////////
  // Definable homomorphisms
  ////////////////////////////////////////////////////////////////////////

  HomomorphismVerdict definable_homomorphism_check(DefinableMap const& f,
                                                   GroupContext const& target) {
    if (!target.is_finite() || target.order() != f.codomain) {
      throw InvalidArgument("target must be a finite group with one element per "
                            "codomain value");
    }
    auto const&         ct = target.table();
    HomomorphismVerdict v;

    if (!f.periodic) {
      auto const& t  = f.group.table();
      v.homomorphism = is_hom(t, ct, f.table);
      v.surjective   = onto(f.table, ct.order);
      v.definable    = true;
      for (std::size_t c = 0; c < ct.order; ++c) {
        auto const fib = f.fiber(c);
        for (std::size_t g = 0; g < t.order; ++g) {
          v.definable = v.definable && fib.contains(GroupElement::finite(g)) == (f.table[g] == c);
        }
      }
      if (!v.homomorphism) {
        v.failure = "not a homomorphism";
        return v;
      }
      if (!v.surjective) {
        v.failure = "image is not all of " + target.name();
        return v;
      }
      std::vector<GroupElement> kernel;
      for (std::size_t g = 0; g < t.order; ++g) {
        if (f.table[g] == ct.identity) {
          kernel.push_back(GroupElement::finite(g));
        }
      }
      auto const q = logic_quotient(BoundedEquivalence::cosets(f.group, kernel));
      v.induced.assign(q.size(), ct.order);
      for (std::size_t g = 0; g < t.order; ++g) {
        v.induced[q.project(GroupElement::finite(g))] = f.table[g];
      }
      v.induced_homomorphism = q.quotient_group && is_hom(q.quotient_group->table(), ct, v.induced);
      // Every type is realized: the identity is the homomorphism property.
      v.closure_identity = v.homomorphism;
      return v;
    }

    auto const&        m = *f.periodic;
    std::int64_t const d = static_cast<std::int64_t>(m.period);
    auto const         one = f(GroupElement::integer(1));
    v.homomorphism         = f(GroupElement::integer(0)) == ct.identity;
    for (std::int64_t g = m.lo - d - 1; g <= m.hi() + d + 1 && v.homomorphism; ++g) {
      v.homomorphism = f(GroupElement::integer(g + 1))
                       == ct.table[f(GroupElement::integer(g))][one];
    }
    std::vector<std::size_t> image;
    for (std::int64_t g = m.lo - d; g <= m.hi() + d; ++g) {
      image.push_back(f(GroupElement::integer(g)));
    }
    v.surjective = onto(image, ct.order);

    v.definable       = true;
    std::uint64_t per = 1;
    for (std::size_t c = 0; c < ct.order; ++c) {
      auto const fib = f.fiber(c);
      per            = lcm_guarded(per, fib.period());
      for (std::int64_t g = m.lo - 2 * d; g <= m.hi() + 2 * d; ++g) {
        v.definable = v.definable && fib.contains(GroupElement::integer(g)) == (f(GroupElement::integer(g)) == c);
      }
    }
    v.fiber_modulus = per;
    if (!v.homomorphism) {
      v.failure = "not a homomorphism";
      return v;
    }
    if (!v.surjective) {
      v.failure = "image is not all of " + target.name();
      return v;
    }

    auto const u = universal_compactification(f.group, per, {});
    for (std::uint64_t k = 0; k < per; ++k) {
      v.induced.push_back(f(GroupElement::integer(static_cast<std::int64_t>(k))));
    }
    v.induced_homomorphism = is_hom(u.quotient.quotient_group->table(), ct, v.induced);

    LevelTypeSpace const space(f.group, Level{per});
    auto const           ext = extend_definable_map(space, f);
    v.closure_identity       = ext.singleton_certified;
    std::vector<TypePoint> pts = space.points();
    for (auto const& g : space.realized_representatives()) {
      pts.push_back(TypePoint::realized(g));
    }
    for (auto const& p : pts) {
      for (auto const& q : pts) {
        v.closure_identity = v.closure_identity
                             && ext(star(f.group, p, q)) == ct.table[ext(p)][ext(q)];
      }
    }
    return v;
  }

}  // namespace defdyn
