#include "defdyn/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <set>

#include "defdyn/error.hpp"

namespace defdyn::oracle {

  namespace {

    std::int64_t modn(std::int64_t x, std::int64_t n) {
      auto r = x % n;
      return r < 0 ? r + n : r;
    }

    std::int64_t window_bound(DefinableSet const& y) {
      auto const& s = y.presburger();
      if (!s.has_window()) {
        return std::max<std::int64_t>(1, std::abs(s.lo()));
      }
      return std::max<std::int64_t>({1, std::abs(s.lo()), std::abs(s.hi())});
    }

  }  // namespace

  void WindowUniverse::require_sufficient(DefinableSet const& y) const {
    if (!y.is_presburger()) {
      return;
    }
    auto const need = 4 * static_cast<std::int64_t>(y.period()) * window_bound(y);
    if (w < need) {
      throw InvalidArgument("window universe [-" + std::to_string(w) + ", "
                            + std::to_string(w) + "] too small; need w >= "
                            + std::to_string(need));
    }
  }

  std::vector<GroupElement> difference_set(DefinableSet const& y, WindowUniverse u) {
    auto const& ctx = y.context();
    if (ctx.is_finite()) {
      auto const&           t = ctx.table();
      std::set<std::size_t> out;
      for (std::size_t a = 0; a < t.order; ++a) {
        for (std::size_t b = 0; b < t.order; ++b) {
          if (y.contains(GroupElement::finite(a)) && y.contains(GroupElement::finite(b))) {
            out.insert(t.table[a][t.inverse[b]]);
          }
        }
      }
      std::vector<GroupElement> v;
      for (auto x : out) {
        v.push_back(GroupElement::finite(x));
      }
      return v;
    }
    if (!ctx.is_integers()) {
      throw Unsupported("oracle difference set over product backends");
    }
    u.require_sufficient(y);
    std::vector<std::int64_t> members;
    for (std::int64_t x = -u.w; x <= u.w; ++x) {
      if (y.contains(GroupElement::integer(x))) {
        members.push_back(x);
      }
    }
    std::vector<bool> hit(static_cast<std::size_t>(u.w + 1));
    auto const        half = u.w / 2;
    for (auto a : members) {
      for (auto b : members) {
        auto const d = a - b;
        if (d >= -half && d <= half) {
          hit[static_cast<std::size_t>(d + half)] = true;
        }
      }
    }
    std::vector<GroupElement> out;
    for (std::int64_t d = -half; d <= half; ++d) {
      if (hit[static_cast<std::size_t>(d + half)]) {
        out.push_back(GroupElement::integer(d));
      }
    }
    return out;
  }

  namespace {

    struct CoverSearch {
      std::vector<bool>         member;  // Y on [-w - s, w + s]
      std::int64_t              offset;
      std::int64_t              w;
      std::int64_t              s;
      std::size_t               max_depth;
      std::vector<std::int64_t> chosen;

      bool in_y(std::int64_t x) const {
        return member[static_cast<std::size_t>(x + offset)];
      }

      bool covered(std::int64_t x) const {
        for (auto t : chosen) {
          if (in_y(x - t)) {
            return true;
          }
        }
        return false;
      }

      std::size_t options(std::int64_t x) const {
        std::size_t n = 0;
        for (std::int64_t t = -s; t <= s; ++t) {
          n += in_y(x - t) ? 1 : 0;
        }
        return n;
      }

      // Branches on the uncovered point with the fewest covering shifts
      // (leftmost on ties).
      bool run() {
        std::int64_t x    = 0;
        std::size_t  best = SIZE_MAX;
        for (std::int64_t p = -w; p <= w && best > 0; ++p) {
          if (covered(p)) {
            continue;
          }
          auto const k = options(p);
          if (k < best) {
            best = k;
            x    = p;
          }
        }
        if (best == SIZE_MAX) {
          return true;
        }
        if (best == 0 || chosen.size() == max_depth) {
          return false;
        }
        // Shifts in the order 0, 1, -1, 2, -2, ...
        for (std::int64_t k = 0; k <= 2 * s; ++k) {
          std::int64_t const t = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
          if (!in_y(x - t)) {
            continue;
          }
          chosen.push_back(t);
          if (run()) {
            return true;
          }
          chosen.pop_back();
        }
        return false;
      }
    };

    struct FiniteCoverSearch {
      FiniteTable const&       t;
      std::vector<bool>        member;
      std::size_t              max_depth;
      std::vector<std::size_t> chosen;

      bool covered(std::size_t x) const {
        for (auto g : chosen) {
          if (member[t.table[t.inverse[g]][x]]) {
            return true;
          }
        }
        return false;
      }

      bool run() {
        std::size_t x = 0;
        while (x < t.order && covered(x)) {
          ++x;
        }
        if (x == t.order) {
          return true;
        }
        if (chosen.size() == max_depth) {
          return false;
        }
        for (std::size_t g = 0; g < t.order; ++g) {
          if (!member[t.table[t.inverse[g]][x]]) {
            continue;
          }
          chosen.push_back(g);
          if (run()) {
            return true;
          }
          chosen.pop_back();
        }
        return false;
      }
    };

  }  // namespace

  std::optional<std::vector<GroupElement>> generic(DefinableSet const& y,
                                                   std::size_t         max_translates,
                                                   std::int64_t        shift_bound,
                                                   WindowUniverse      u) {
    auto const& ctx = y.context();
    if (ctx.is_finite()) {
      FiniteCoverSearch f{ctx.table(), {}, max_translates, {}};
      for (std::size_t g = 0; g < ctx.order(); ++g) {
        f.member.push_back(y.contains(GroupElement::finite(g)));
      }
      if (!f.run()) {
        return std::nullopt;
      }
      std::vector<GroupElement> out;
      for (auto g : f.chosen) {
        out.push_back(GroupElement::finite(g));
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    if (!ctx.is_integers()) {
      throw Unsupported("oracle genericity over product backends");
    }
    CoverSearch c;
    c.w         = u.w;
    c.s         = shift_bound;
    c.offset    = u.w + shift_bound;
    c.max_depth = max_translates;
    for (std::int64_t x = -c.offset; x <= c.offset; ++x) {
      c.member.push_back(y.contains(GroupElement::integer(x)));
    }
    if (!c.run()) {
      return std::nullopt;
    }
    std::sort(c.chosen.begin(), c.chosen.end());
    std::vector<GroupElement> out;
    for (auto t : c.chosen) {
      out.push_back(GroupElement::integer(t));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Numeric star
  ////////////////////////////////////////////////////////////////////////

  namespace {

    struct Realization {
      std::int64_t value;
      std::int64_t modulus;  // 0 when the point is realized
    };

    Realization realize(TypePoint const& p, std::int64_t scale) {
      if (p.is_realized()) {
        return {p.element().value(), 0};
      }
      auto const m    = static_cast<std::int64_t>(p.modulus());
      auto const sign = p.sign() == Sign::plus ? 1 : -1;
      return {sign * scale * m + static_cast<std::int64_t>(p.residue()), m};
    }

    TypePoint classify(Realization a, Realization b) {
      auto const c = a.value + b.value;
      if (a.modulus == 0 && b.modulus == 0) {
        return TypePoint::realized(GroupElement::integer(c));
      }
      auto const m = std::gcd(a.modulus, b.modulus);
      return TypePoint::limit(c > 0 ? Sign::plus : Sign::minus, modn(c, m),
                              static_cast<std::uint64_t>(m));
    }

  }  // namespace

  TypePoint star(GroupContext const& ctx, TypePoint const& p, TypePoint const& q,
                 std::uint64_t level) {
    if (ctx.is_finite()) {
      auto const& t = ctx.table();
      return TypePoint::realized(
          GroupElement::finite(t.table[p.element().index()][q.element().index()]));
    }
    if (ctx.is_product()) {
      return TypePoint::pair(star(ctx.left(), p.left(), q.left(), level),
                             star(ctx.right(), p.right(), q.right(), level));
    }
    auto const lvl = static_cast<std::int64_t>(std::max<std::uint64_t>(level, 1));
    // A limit p is realized beyond every parameter in play, in particular
    // beyond a realized q.
    std::int64_t const base
        = q.is_realized() ? 1000 * (std::abs(q.element().value()) + 1) : 1000;
    auto const a     = realize(p, base);
    auto const big_a = std::max<std::int64_t>(1, std::abs(a.value));
    auto const b     = realize(q, std::max<std::int64_t>(1'000'000, 1000 * (big_a + 1) * lvl));
    if (q.is_limit() && std::abs(b.value) < 1000 * big_a * lvl) {
      throw Error("oracle star: realization of q is not large enough");
    }
    return classify(a, b);
  }

  ////////////////////////////////////////////////////////////////////////
  // Exhaustive flow enumerations
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // +1 on the 2n limit points.
    std::size_t shift(std::size_t i, std::uint64_t n) {
      auto const half = static_cast<std::size_t>(n);
      return i < half ? (i + 1) % half : half + (i - half + 1) % half;
    }

  }  // namespace

  std::vector<std::vector<std::size_t>> minimal_subflows(std::uint64_t n) {
    if (n == 0 || n > 8) {
      throw InvalidArgument("oracle minimal_subflows needs 1 <= n <= 8");
    }
    std::size_t const        size = 2 * n;
    std::vector<std::uint32_t> invariant;
    for (std::uint32_t mask = 1; mask < (1u << size); ++mask) {
      bool ok = true;
      for (std::size_t i = 0; i < size && ok; ++i) {
        if ((mask >> i) & 1) {
          ok = (mask >> shift(i, n)) & 1;
        }
      }
      if (ok) {
        invariant.push_back(mask);
      }
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto m : invariant) {
      bool minimal = true;
      for (auto k : invariant) {
        if (k != m && (k & m) == k) {
          minimal = false;
        }
      }
      if (minimal) {
        std::vector<std::size_t> pts;
        for (std::size_t i = 0; i < size; ++i) {
          if ((m >> i) & 1) {
            pts.push_back(i);
          }
        }
        out.push_back(std::move(pts));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::size_t> idempotents(std::uint64_t n) {
    auto const               ctx = GroupContext::integers();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < 2 * n; ++i) {
      auto const sign = i < n ? Sign::plus : Sign::minus;
      auto const p    = TypePoint::limit(sign, static_cast<std::int64_t>(i % n), n);
      if (star(ctx, p, p, n) == p) {
        out.push_back(i);
      }
    }
    return out;
  }

  std::vector<std::vector<std::size_t>> equivariant_maps(
      std::vector<std::vector<std::size_t>> const& gens_a,
      std::vector<std::vector<std::size_t>> const& gens_b,
      std::size_t size_a, std::size_t size_b, bool bijective_only) {
    if (gens_a.size() != gens_b.size()) {
      throw InvalidArgument("equivariant_maps: generator lists differ in length");
    }
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t>              f(size_a, size_b);
    auto consistent = [&](std::size_t upto) {
      for (std::size_t g = 0; g < gens_a.size(); ++g) {
        for (std::size_t x = 0; x <= upto; ++x) {
          auto const y = gens_a[g][x];
          if (y <= upto && f[y] != gens_b[g][f[x]]) {
            return false;
          }
        }
      }
      return true;
    };
    auto rec = [&](auto&& self, std::size_t x) -> void {
      if (x == size_a) {
        if (bijective_only) {
          auto sorted = f;
          std::sort(sorted.begin(), sorted.end());
          if (size_a != size_b || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            return;
          }
        }
        out.push_back(f);
        return;
      }
      for (std::size_t v = 0; v < size_b; ++v) {
        f[x] = v;
        if (consistent(x)) {
          self(self, x + 1);
        }
      }
      f[x] = size_b;
    };
    rec(rec, 0);
    return out;
  }

  std::vector<std::size_t> rotation_on(std::vector<std::size_t> const& subset,
                                       std::uint64_t                   n) {
    std::vector<std::size_t> out;
    for (auto i : subset) {
      auto const j  = shift(i, n);
      auto const it = std::find(subset.begin(), subset.end(), j);
      if (it == subset.end()) {
        throw InvalidArgument("rotation_on: subset is not invariant");
      }
      out.push_back(static_cast<std::size_t>(it - subset.begin()));
    }
    return out;
  }

}  // namespace defdyn::oracle
