#include "defdyn/amenability.hpp"

#include <algorithm>
#include <set>

#include "defdyn/arith.hpp"
#include "defdyn/error.hpp"

namespace defdyn {

  ////////////////////////////////////////////////////////////////////////
  // Measures
  ////////////////////////////////////////////////////////////////////////

  Rational InvariantMeasure::of(std::vector<std::size_t> const& subset) const {
    Rational total = 0;
    for (auto i : subset) {
      total += weights.at(i);
    }
    return total;
  }

  Rational InvariantMeasure::cylinder(LevelTypeSpace const& space,
                                      DefinableSet const&   y) const {
    Rational total = 0;
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (contains(space.point(i), y)) {
        total += weights.at(i);
      }
    }
    return total;
  }

  namespace {

    InvariantMeasure canonical(std::size_t                           size,
                               std::vector<SubflowDescriptor> const& flows) {
      InvariantMeasure mu;
      mu.weights.assign(size, Rational(0));
      for (auto const& f : flows) {
        Rational const w(1, static_cast<long long>(flows.size() * f.points.size()));
        for (auto i : f.points) {
          mu.weights[i] = w;
        }
      }
      return mu;
    }

  }  // namespace

  InvariantMeasure invariant_measure(LevelTypeSpace const& space) {
    auto mu  = canonical(space.size(), minimal_subflows(space));
    mu.level = space.level();
    return mu;
  }

  InvariantMeasure invariant_measure(FiniteFlowPresentation const& f) {
    return canonical(f.carrier, minimal_subflows(f));
  }

  std::optional<std::vector<Rational>> invariant_measure_lp(
      std::size_t carrier, std::vector<std::vector<std::size_t>> const& maps) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational>              b;
    for (auto const& f : maps) {
      if (f.size() != carrier) {
        throw InvalidArgument("invariant_measure_lp: map size differs from the carrier");
      }
      for (std::size_t x = 0; x < carrier; ++x) {
        std::vector<Rational> row(carrier);
        for (std::size_t y = 0; y < carrier; ++y) {
          if (f[y] >= carrier) {
            throw InvalidArgument("invariant_measure_lp: map leaves the carrier");
          }
          if (f[y] == x) {
            row[y] += 1;
          }
        }
        row[x] -= 1;
        a.push_back(std::move(row));
        b.emplace_back(0);
      }
    }
    a.emplace_back(carrier, Rational(1));
    b.emplace_back(1);
    return feasible_point(std::move(a), std::move(b));
  }

  bool is_invariant(std::vector<Rational> const&    weights,
                    std::vector<Permutation> const& perms) {
    Rational total = 0;
    for (auto const& w : weights) {
      if (w < 0) {
        return false;
      }
      total += w;
    }
    if (total != 1) {
      return false;
    }
    for (auto const& p : perms) {
      for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[p.at(i)] != weights[i]) {
          return false;
        }
      }
    }
    return true;
  }

  InvariantMeasure pushforward(InvariantMeasure const& mu,
                               LevelTypeSpace const&   from,
                               LevelTypeSpace const&   to) {
    if (!(from.context() == to.context())) {
      throw ContextMismatch("pushforward between different groups");
    }
    if (mu.weights.size() != from.size()) {
      throw InvalidArgument("pushforward: measure does not live on the source level");
    }
    InvariantMeasure out;
    out.level = to.level();
    out.weights.assign(to.size(), Rational(0));
    for (std::size_t i = 0; i < from.size(); ++i) {
      out.weights[to.index_of(restrict(from.point(i), to.level()))] += mu.weights[i];
    }
    return out;
  }

  std::vector<std::size_t> fixed_points(LevelTypeSpace const& space) {
    std::vector<std::size_t> out;
    auto const perms = space.generator_permutations();
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (std::all_of(perms.begin(), perms.end(),
                      [i](Permutation const& p) { return p[i] == i; })) {
        out.push_back(i);
      }
    }
    return out;
  }

  std::vector<std::size_t> fixed_points(FiniteFlowPresentation const& f) {
    auto const               chk = check_definable_flow(f);
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < f.carrier; ++x) {
      if (std::all_of(chk.action.begin(), chk.action.end(),
                      [x](Permutation const& p) { return p[x] == x; })) {
        out.push_back(x);
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Families
  ////////////////////////////////////////////////////////////////////////

  namespace {

    constexpr std::uint64_t kFamilyGuard = 1u << 22;

    std::vector<DefinableSet> integer_family(FamilyBounds const& b) {
      if (b.max_modulus == 0 || b.max_modulus > 10 || b.window < 0 || b.window > 4) {
        throw GuardExceeded("family bounds outside max_modulus 1..10, window 0..4");
      }
      std::uint64_t const toggles = std::uint64_t{1} << (2 * b.window + 1);
      std::uint64_t       total   = 0;
      for (std::uint64_t n = 1; n <= b.max_modulus; ++n) {
        total += (std::uint64_t{1} << (2 * n)) * toggles;
      }
      if (total > kFamilyGuard) {
        throw GuardExceeded("set family too large: " + std::to_string(total));
      }

      std::vector<DefinableSet> out;
      std::set<DefinableSet>    seen;
      for (std::uint64_t n = 1; n <= b.max_modulus; ++n) {
        if (b.period_divides != 0 && b.period_divides % n != 0) {
          continue;
        }
        for (std::uint64_t um = 0; um < (std::uint64_t{1} << n); ++um) {
          for (std::uint64_t dm = 0; dm < (std::uint64_t{1} << n); ++dm) {
            std::vector<bool> up(n), down(n);
            for (std::uint64_t r = 0; r < n; ++r) {
              up[r]   = (um >> r) & 1;
              down[r] = (dm >> r) & 1;
            }
            auto const base = PresburgerSet::make(n, up, down, 0, -1, {});
            for (std::uint64_t tm = 0; tm < toggles; ++tm) {
              std::vector<bool> win(static_cast<std::size_t>(2 * b.window + 1));
              for (std::int64_t x = -b.window; x <= b.window; ++x) {
                auto const k = static_cast<std::size_t>(x + b.window);
                win[k]       = base.contains(x) != static_cast<bool>((tm >> k) & 1);
              }
              auto y = presburger(PresburgerSet::make(n, up, down, -b.window, b.window, win));
              if (b.period_divides != 0 && b.period_divides % y.period() != 0) {
                continue;
              }
              if (seen.insert(y).second) {
                out.push_back(std::move(y));
              }
            }
          }
        }
      }
      return out;
    }

    std::vector<DefinableSet> finite_family(GroupContext const& ctx,
                                            FamilyBounds const& b) {
      auto const& t = ctx.table();
      if (t.order > 16) {
        throw GuardExceeded("subset family of a group of order "
                            + std::to_string(t.order));
      }
      // Rank 0 is the identity, then the other elements by index.
      std::vector<std::size_t> by_rank{t.identity};
      for (std::size_t g = 0; g < t.order; ++g) {
        if (g != t.identity) {
          by_rank.push_back(g);
        }
      }
      std::size_t const max_size = b.max_size == 0 ? t.order : std::min(b.max_size, t.order);
      std::vector<std::vector<std::size_t>> subsets;
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << t.order); ++mask) {
        std::vector<std::size_t> ranks;
        for (std::size_t r = 0; r < t.order; ++r) {
          if ((mask >> r) & 1) {
            ranks.push_back(r);
          }
        }
        if (ranks.size() <= max_size) {
          subsets.push_back(std::move(ranks));
        }
      }
      std::sort(subsets.begin(), subsets.end(), [](auto const& x, auto const& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
      });
      std::vector<DefinableSet> out;
      for (auto const& ranks : subsets) {
        std::vector<GroupElement> elems;
        for (auto r : ranks) {
          elems.push_back(GroupElement::finite(by_rank[r]));
        }
        out.push_back(element_set(ctx, elems));
      }
      return out;
    }

    std::string describe_missed(DefinableSet const& diff) {
      auto const rest = set_complement(diff);
      if (rest.is_presburger()) {
        auto const n = rest.period();
        for (std::uint64_t r = 0; r < n; ++r) {
          auto const cls = residue_class(static_cast<std::int64_t>(r), n);
          if (set_difference(cls, rest).empty()) {
            return "residue class " + std::to_string(r) + " mod " + std::to_string(n);
          }
        }
      }
      return "element " + some_element(rest)->to_string();
    }

  }  // namespace

  std::vector<DefinableSet> generate_family(GroupContext const& ctx,
                                            FamilyBounds const& bounds) {
    if (ctx.is_integers()) {
      return integer_family(bounds);
    }
    if (ctx.is_finite()) {
      return finite_family(ctx, bounds);
    }
    auto const left  = generate_family(ctx.left(), bounds);
    auto const right = generate_family(ctx.right(), bounds);
    if (left.size() * right.size() > kFamilyGuard) {
      throw GuardExceeded("rectangle family too large");
    }
    std::vector<DefinableSet> out;
    std::set<DefinableSet>    seen;
    for (auto const& a : left) {
      for (auto const& b : right) {
        if (a.empty() || b.empty()) {
          continue;
        }
        auto r = rectangle(ctx, a, b);
        if (seen.insert(r).second) {
          out.push_back(std::move(r));
        }
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Pestov certificates and kernels
  ////////////////////////////////////////////////////////////////////////

  PestovResult pestov_check(GroupContext const& ctx, FamilyBounds const& bounds) {
    PestovResult out;
    auto const   everything = whole_group(ctx);
    for (auto const& y : generate_family(ctx, bounds)) {
      ++out.examined;
      auto v = is_left_generic(ctx, y);
      if (!v.generic) {
        continue;
      }
      auto diff = difference_set(y);
      if (!(diff == everything)) {
        auto missed     = describe_missed(diff);
        out.certificate = PestovCertificate{y, std::move(v.translates), std::move(diff),
                                            std::move(missed)};
        return out;
      }
    }
    out.note = "no counterexample within the family; this is not a proof of "
               "extreme amenability";
    return out;
  }

  KernelIntersection kernel_intersection(GroupContext const& ctx,
                                         FamilyBounds const& bounds) {
    if (ctx.is_product()) {
      throw Unsupported("kernel_intersection over product backends");
    }
    KernelIntersection out;
    auto               acc = whole_group(ctx);
    for (auto const& y : generate_family(ctx, bounds)) {
      if (is_left_generic(ctx, y).generic) {
        ++out.generic_sets;
        acc = set_intersection(acc, difference_set(y));
      }
    }
    if (ctx.is_integers()) {
      auto const m = as_integer_subgroup(acc);
      if (!m) {
        throw Error("intersection of difference sets is not a subgroup: "
                    + acc.to_string());
      }
      out.subgroup = SubgroupDescriptor::multiples_of(*m);
      out.level    = lcm_upto(bounds.max_modulus);
    } else {
      std::vector<GroupElement> elems;
      for (auto const& g : ctx.elements()) {
        if (acc.contains(g)) {
          elems.push_back(g);
        }
      }
      out.subgroup = SubgroupDescriptor::of_elements(std::move(elems));
    }
    out.action_kernel = kernel_of_action(LevelTypeSpace(ctx, Level{out.level}));
    return out;
  }

  SingletonMinimalReport singleton_minimal_criterion(LevelTypeSpace const& space,
                                                     FamilyBounds const&   bounds) {
    SingletonMinimalReport out;
    auto const             flows = minimal_subflows(space);
    out.all_minimal_singletons   = true;
    for (auto const& f : flows) {
      if (f.points.size() != 1) {
        out.all_minimal_singletons = false;
        out.large_subflow          = f;
        break;
      }
    }

    auto b = bounds;
    if (space.context().is_integers()) {
      b.period_divides = space.level().modulus;
    }
    auto const everything = whole_group(space.context());
    out.meeting_sets_full = true;
    for (auto const& y : generate_family(space.context(), b)) {
      bool meets = false;
      for (auto const& f : flows) {
        for (auto i : f.points) {
          meets = meets || contains(space.point(i), y);
        }
      }
      if (meets && !(difference_set(y) == everything)) {
        out.meeting_sets_full = false;
        out.witness_set       = y;
        break;
      }
    }
    return out;
  }

  MeasureDefinabilityReport measure_definability_check(InvariantMeasure const& mu,
                                                       LevelTypeSpace const&   space,
                                                       FamilyBounds const&     bounds) {
    if (mu.weights.size() != space.size()) {
      throw InvalidArgument("measure does not live on this level");
    }
    auto const& ctx  = space.context();
    auto const  reps = space.realized_representatives();
    auto const  size = space.size();
    auto        b    = bounds;
    if (ctx.is_integers()) {
      b.period_divides = space.level().modulus;
    }

    // pull[k][i]: index of reps[k]^-1 · p_i, so that mu(gY) sums the weights
    // of the points i with pull[k][i] in Y.
    std::vector<std::vector<std::size_t>> pull(reps.size(), std::vector<std::size_t>(size));
    for (std::size_t k = 0; k < reps.size(); ++k) {
      auto const inv = invert_element(ctx, reps[k]);
      for (std::size_t i = 0; i < size; ++i) {
        pull[k][i] = space.index_of(apply_group(ctx, inv, space.point(i)));
      }
    }
    std::vector<Rational> levels = mu.weights;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    boost::multiprecision::cpp_int denominator = 1;
    for (auto const& w : levels) {
      denominator = boost::multiprecision::lcm(denominator, boost::multiprecision::denominator(w));
    }
    std::vector<boost::multiprecision::cpp_int> numerators;
    for (auto const& w : levels) {
      numerators.push_back(boost::multiprecision::numerator(w) * (denominator / boost::multiprecision::denominator(w)));
    }
    std::vector<std::size_t> cls(size);
    for (std::size_t i = 0; i < size; ++i) {
      cls[i] = static_cast<std::size_t>(
          std::lower_bound(levels.begin(), levels.end(), mu.weights[i]) - levels.begin());
    }

    // Realized samples beyond the representatives; each is also recomputed
    // directly from the translated set.
    std::vector<std::pair<GroupElement, std::size_t>> samples;
    if (ctx.is_integers()) {
      auto const n = static_cast<std::int64_t>(space.level().modulus);
      for (std::int64_t g = -3 * n; g <= 3 * n; ++g) {
        samples.emplace_back(GroupElement::integer(g), mod_floor(g, space.level().modulus));
      }
    } else {
      for (std::size_t k = 0; k < reps.size(); ++k) {
        samples.emplace_back(reps[k], k);
      }
    }
    std::vector<std::size_t> spot;
    for (std::size_t j = 0; j < samples.size(); j += std::max<std::size_t>(1, samples.size() / 3)) {
      spot.push_back(j);
    }

    MeasureDefinabilityReport out;
    out.passed = true;
    std::vector<bool>        in_y(size);
    std::vector<std::size_t> counts(levels.size());
    for (auto const& y : generate_family(ctx, b)) {
      ++out.sets_checked;
      for (std::size_t i = 0; i < size; ++i) {
        in_y[i] = contains(space.point(i), y);
      }
      // values over the common denominator
      std::vector<boost::multiprecision::cpp_int> keys;
      keys.reserve(reps.size());
      for (std::size_t k = 0; k < reps.size(); ++k) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < size; ++i) {
          counts[cls[i]] += in_y[pull[k][i]] ? 1 : 0;
        }
        boost::multiprecision::cpp_int v = 0;
        for (std::size_t c = 0; c < levels.size(); ++c) {
          if (counts[c] != 0) {
            v += numerators[c] * counts[c];
          }
        }
        keys.push_back(std::move(v));
      }
      auto distinct_keys = keys;
      std::sort(distinct_keys.begin(), distinct_keys.end());
      distinct_keys.erase(std::unique(distinct_keys.begin(), distinct_keys.end()),
                          distinct_keys.end());
      std::vector<Rational> distinct;
      for (auto const& k : distinct_keys) {
        distinct.emplace_back(k, denominator);
      }
      // rank of each representative's value among the distinct values
      std::vector<std::size_t> rank(reps.size());
      for (std::size_t k = 0; k < reps.size(); ++k) {
        rank[k] = static_cast<std::size_t>(
            std::lower_bound(distinct_keys.begin(), distinct_keys.end(), keys[k])
            - distinct_keys.begin());
      }
      for (auto j : spot) {
        auto const& [g, k] = samples[j];
        if (mu.cylinder(space, translate(g, y)) != distinct[rank[k]]) {
          out.passed = false;
        }
      }

      // (low, high) with values of rank <= below_max at most low and values of
      // rank >= above_min at least high
      struct Threshold {
        Rational    low;
        Rational    high;
        std::size_t below_max;
        std::size_t above_min;
      };
      std::vector<Threshold> thresholds;
      if (distinct.size() == 1) {
        thresholds.push_back({distinct[0], distinct[0] + 1, 0, 1});
      }
      for (std::size_t k = 0; k + 1 < distinct.size(); ++k) {
        Rational const mid = (distinct[k] + distinct[k + 1]) / 2;
        thresholds.push_back({distinct[k], mid, k, k + 1});
        thresholds.push_back({mid, distinct[k + 1], k, k + 1});
      }

      for (auto const& [low, high, below_max, above_min] : thresholds) {
        std::vector<std::uint64_t> residues;
        std::vector<GroupElement>  members;
        for (std::size_t k = 0; k < reps.size(); ++k) {
          if (rank[k] <= below_max) {
            if (ctx.is_integers()) {
              residues.push_back(static_cast<std::uint64_t>(reps[k].value()));
            } else {
              members.push_back(reps[k]);
            }
          }
        }
        auto sep = ctx.is_integers()
                       ? periodic_pattern(space.level().modulus, residues, residues)
                       : element_set(ctx, members);
        for (auto const& [g, k] : samples) {
          bool const in_sep = sep.contains(g);
          if ((rank[k] <= below_max && !in_sep) || (rank[k] >= above_min && in_sep)) {
            out.passed = false;
          }
        }
        out.witnesses.push_back({y, low, high, std::move(sep)});
      }
    }
    return out;
  }

  PestovConsistency pestov_consistency(GroupContext const& ctx,
                                       FamilyBounds const& bounds) {
    PestovConsistency out;
    out.levels = ctx.is_integers() ? divisors(lcm_upto(bounds.max_modulus))
                                   : std::vector<std::uint64_t>{1};
    out.certificate_found       = pestov_check(ctx, bounds).certificate.has_value();
    out.fixed_points_everywhere = true;
    for (auto n : out.levels) {
      bool const fp = !fixed_points(LevelTypeSpace(ctx, Level{n})).empty();
      out.fixed_points_everywhere = out.fixed_points_everywhere && fp;
      out.fixed_point_free_level  = out.fixed_point_free_level || !fp;
    }
    return out;
  }

}  // namespace defdyn
