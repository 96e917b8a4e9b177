#include "defdyn/defset.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "defdyn/error.hpp"

namespace defdyn {

  namespace {

    std::strong_ordering compare_bits(std::vector<bool> const& a,
                                      std::vector<bool> const& b) {
      return std::lexicographical_compare_three_way(
          a.begin(), a.end(), b.begin(), b.end());
    }

    void check_window_size(std::int64_t lo, std::int64_t hi) {
      if (lo <= hi && checked_sub(hi, lo) >= kWindowGuard) {
        throw GuardExceeded("Presburger window [" + std::to_string(lo) + ","
                            + std::to_string(hi) + "] exceeds the window guard");
      }
    }

    std::uint64_t minimal_period(std::uint64_t            n,
                                 std::vector<bool> const& up,
                                 std::vector<bool> const& down) {
      for (auto d : divisors(n)) {
        bool ok = true;
        for (std::uint64_t i = d; i < n && ok; ++i) {
          ok = up[i] == up[i % d] && down[i] == down[i % d];
        }
        if (ok) {
          return d;
        }
      }
      return n;
    }

    void require_same(DefinableSet const& a, DefinableSet const& b) {
      if (!(a.context() == b.context())) {
        throw ContextMismatch("sets belong to different backends: "
                              + a.context().name() + " vs "
                              + b.context().name());
      }
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // PresburgerSet
  ////////////////////////////////////////////////////////////////////////

  PresburgerSet PresburgerSet::make(std::uint64_t     period,
                                    std::vector<bool> up,
                                    std::vector<bool> down,
                                    std::int64_t      lo,
                                    std::int64_t      hi,
                                    std::vector<bool> window) {
    if (period == 0) {
      throw InvalidArgument("Presburger period must be positive");
    }
    if (up.size() != period || down.size() != period) {
      throw InvalidArgument("Presburger pattern size must equal the period");
    }
    std::size_t const expected
        = lo <= hi ? static_cast<std::size_t>(checked_sub(hi, lo) + 1) : 0;
    check_window_size(lo, hi);
    if (window.size() != expected) {
      throw InvalidArgument("Presburger window size does not match [lo, hi]");
    }

    std::uint64_t const d = minimal_period(period, up, down);
    up.resize(d);
    down.resize(d);

    // Membership under the input representation.
    auto member = [&](std::int64_t x) -> bool {
      if (x > hi) {
        return up[mod_floor(x, d)];
      }
      if (x < lo) {
        return down[mod_floor(x, d)];
      }
      return window[static_cast<std::size_t>(x - lo)];
    };

    constexpr auto kNone = std::numeric_limits<std::int64_t>::min();
    // H: largest point disagreeing with the up pattern.
    std::int64_t top = kNone;
    for (std::int64_t x = hi; x >= lo; --x) {
      if (member(x) != up[mod_floor(x, d)]) {
        top = x;
        break;
      }
    }
    if (top == kNone) {
      for (std::uint64_t k = 1; k <= d; ++k) {
        std::int64_t const x = checked_sub(lo, static_cast<std::int64_t>(k));
        if (down[mod_floor(x, d)] != up[mod_floor(x, d)]) {
          top = x;
          break;
        }
      }
    }
    // L: smallest point disagreeing with the down pattern.
    constexpr auto kNoneHigh = std::numeric_limits<std::int64_t>::max();
    std::int64_t   bottom    = kNoneHigh;
    for (std::int64_t x = lo; x <= hi; ++x) {
      if (member(x) != down[mod_floor(x, d)]) {
        bottom = x;
        break;
      }
    }
    if (bottom == kNoneHigh) {
      for (std::uint64_t k = 1; k <= d; ++k) {
        std::int64_t const x = checked_add(hi, static_cast<std::int64_t>(k));
        if (down[mod_floor(x, d)] != up[mod_floor(x, d)]) {
          bottom = x;
          break;
        }
      }
    }

    PresburgerSet s;
    s.period_ = d;
    if (top == kNone) {
      s.lo_ = 0;
      s.hi_ = -1;
    } else if (bottom != kNoneHigh && bottom <= top) {
      s.lo_ = bottom;
      s.hi_ = top;
      s.window_.resize(static_cast<std::size_t>(top - bottom + 1));
      for (std::int64_t x = bottom; x <= top; ++x) {
        s.window_[static_cast<std::size_t>(x - bottom)] = member(x);
      }
    } else {
      s.lo_ = checked_add(top, 1);
      s.hi_ = top;
    }
    s.up_   = std::move(up);
    s.down_ = std::move(down);
    return s;
  }

  bool PresburgerSet::contains(std::int64_t x) const {
    if (x > hi_) {
      return up_[mod_floor(x, period_)];
    }
    if (x < lo_) {
      return down_[mod_floor(x, period_)];
    }
    return window_[static_cast<std::size_t>(x - lo_)];
  }

  bool PresburgerSet::up_empty() const {
    return std::none_of(up_.begin(), up_.end(), [](bool b) { return b; });
  }

  bool PresburgerSet::down_empty() const {
    return std::none_of(down_.begin(), down_.end(), [](bool b) { return b; });
  }

  std::strong_ordering operator<=>(PresburgerSet const& a,
                                   PresburgerSet const& b) {
    if (auto c = a.period_ <=> b.period_; c != 0) {
      return c;
    }
    if (auto c = compare_bits(a.up_, b.up_); c != 0) {
      return c;
    }
    if (auto c = compare_bits(a.down_, b.down_); c != 0) {
      return c;
    }
    if (auto c = a.lo_ <=> b.lo_; c != 0) {
      return c;
    }
    if (auto c = a.hi_ <=> b.hi_; c != 0) {
      return c;
    }
    return compare_bits(a.window_, b.window_);
  }

  ////////////////////////////////////////////////////////////////////////
  // Presburger operations
  ////////////////////////////////////////////////////////////////////////

  namespace {

    PresburgerSet presburger_empty() {
      return PresburgerSet::make(1, {false}, {false}, 0, -1, {});
    }

    template <typename F>
    PresburgerSet presburger_combine(PresburgerSet const& a,
                                     PresburgerSet const& b,
                                     F                    op) {
      std::uint64_t const n  = lcm_guarded(a.period(), b.period());
      std::int64_t const  lo = std::min(a.lo(), b.lo());
      std::int64_t const  hi = std::max(a.hi(), b.hi());
      check_window_size(lo, hi);
      std::vector<bool> up(n), down(n);
      for (std::uint64_t r = 0; r < n; ++r) {
        up[r]   = op(a.up_contains_residue(r), b.up_contains_residue(r));
        down[r] = op(a.down_contains_residue(r), b.down_contains_residue(r));
      }
      std::vector<bool> window;
      if (lo <= hi) {
        window.resize(static_cast<std::size_t>(hi - lo + 1));
        for (std::int64_t x = lo; x <= hi; ++x) {
          window[static_cast<std::size_t>(x - lo)]
              = op(a.contains(x), b.contains(x));
        }
      }
      return PresburgerSet::make(
          n, std::move(up), std::move(down), lo, hi, std::move(window));
    }

    PresburgerSet presburger_complement(PresburgerSet const& a) {
      std::vector<bool> up = a.up(), down = a.down(), window = a.window();
      up.flip();
      down.flip();
      window.flip();
      return PresburgerSet::make(a.period(),
                                 std::move(up),
                                 std::move(down),
                                 a.lo(),
                                 a.hi(),
                                 std::move(window));
    }

    PresburgerSet presburger_shift(PresburgerSet const& a, std::int64_t g) {
      std::uint64_t const n = a.period();
      std::vector<bool>   up(n), down(n);
      for (std::uint64_t r = 0; r < n; ++r) {
        auto const src = mod_floor(static_cast<std::int64_t>(r) - mod_floor(g, n),
                                   n);
        up[r]          = a.up()[src];
        down[r]        = a.down()[src];
      }
      return PresburgerSet::make(n,
                                 std::move(up),
                                 std::move(down),
                                 checked_add(a.lo(), g),
                                 checked_add(a.hi(), g),
                                 a.window());
    }

    PresburgerSet presburger_negate(PresburgerSet const& a) {
      std::uint64_t const n = a.period();
      std::vector<bool>   up(n), down(n);
      for (std::uint64_t r = 0; r < n; ++r) {
        auto const src = (n - r) % n;
        up[r]          = a.down()[src];
        down[r]        = a.up()[src];
      }
      std::vector<bool> window(a.window().rbegin(), a.window().rend());
      return PresburgerSet::make(n,
                                 std::move(up),
                                 std::move(down),
                                 checked_neg(a.hi()),
                                 checked_neg(a.lo()),
                                 std::move(window));
    }

    // A Presburger set at period n as a finite list of pieces: isolated
    // points, rays toward +inf (by first element) and rays toward -inf (by
    // last element), every ray stepping by n.
    struct Pieces {
      std::vector<std::int64_t> points;
      std::vector<std::int64_t> up_starts;
      std::vector<std::int64_t> down_ends;
    };

    Pieces pieces_of(PresburgerSet const& s, std::uint64_t n) {
      Pieces p;
      for (std::int64_t x = s.lo(); x <= s.hi(); ++x) {
        if (s.window()[static_cast<std::size_t>(x - s.lo())]) {
          p.points.push_back(x);
        }
      }
      auto const sn = static_cast<std::int64_t>(n);
      for (std::int64_t k = 1; k <= sn; ++k) {
        std::int64_t const x = checked_add(s.hi(), k);
        if (s.up_contains_residue(mod_floor(x, n))) {
          p.up_starts.push_back(x);
        }
        std::int64_t const y = checked_sub(s.lo(), k);
        if (s.down_contains_residue(mod_floor(y, n))) {
          p.down_ends.push_back(y);
        }
      }
      return p;
    }

    // Minkowski sum a + b.
    PresburgerSet presburger_sum(PresburgerSet const& a, PresburgerSet const& b) {
      std::uint64_t const n  = lcm_guarded(a.period(), b.period());
      auto const          sn = static_cast<std::int64_t>(n);
      Pieces const        pa = pieces_of(a, n);
      Pieces const        pb = pieces_of(b, n);

      std::vector<std::int64_t> points, up_starts, down_ends;
      std::vector<bool>         full(n, false);
      for (auto x : pa.points) {
        for (auto y : pb.points) {
          points.push_back(checked_add(x, y));
        }
        for (auto s : pb.up_starts) {
          up_starts.push_back(checked_add(x, s));
        }
        for (auto e : pb.down_ends) {
          down_ends.push_back(checked_add(x, e));
        }
      }
      for (auto s : pa.up_starts) {
        for (auto y : pb.points) {
          up_starts.push_back(checked_add(s, y));
        }
        for (auto t : pb.up_starts) {
          up_starts.push_back(checked_add(s, t));
        }
        for (auto e : pb.down_ends) {
          full[mod_floor(checked_add(s, e), n)] = true;
        }
      }
      for (auto e : pa.down_ends) {
        for (auto y : pb.points) {
          down_ends.push_back(checked_add(e, y));
        }
        for (auto f : pb.down_ends) {
          down_ends.push_back(checked_add(e, f));
        }
        for (auto s : pb.up_starts) {
          full[mod_floor(checked_add(e, s), n)] = true;
        }
      }

      bool const any_full = std::any_of(full.begin(), full.end(), [](bool v) {
        return v;
      });
      if (points.empty() && up_starts.empty() && down_ends.empty() && !any_full) {
        return presburger_empty();
      }

      std::int64_t lo = std::numeric_limits<std::int64_t>::max();
      std::int64_t hi = std::numeric_limits<std::int64_t>::min();
      for (auto const* v : {&points, &up_starts, &down_ends}) {
        for (auto x : *v) {
          lo = std::min(lo, x);
          hi = std::max(hi, x);
        }
      }
      if (lo > hi) {
        lo = 0;
        hi = -1;
      }
      check_window_size(lo, hi);

      std::vector<bool> up = full, down = full;
      for (auto s : up_starts) {
        up[mod_floor(s, n)] = true;
      }
      for (auto e : down_ends) {
        down[mod_floor(e, n)] = true;
      }

      std::vector<bool> window(lo <= hi ? static_cast<std::size_t>(hi - lo + 1)
                                        : 0);
      auto mark = [&](std::int64_t x) {
        window[static_cast<std::size_t>(x - lo)] = true;
      };
      for (auto x : points) {
        mark(x);
      }
      for (auto s : up_starts) {
        for (std::int64_t x = s; x <= hi; x += sn) {
          mark(x);
        }
      }
      for (auto e : down_ends) {
        for (std::int64_t x = e; x >= lo; x -= sn) {
          mark(x);
        }
      }
      for (std::int64_t x = lo; x <= hi; ++x) {
        if (full[mod_floor(x, n)]) {
          mark(x);
        }
      }
      return PresburgerSet::make(
          n, std::move(up), std::move(down), lo, hi, std::move(window));
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // DefinableSet
  ////////////////////////////////////////////////////////////////////////

  namespace {

    bool rep_matches(GroupContext const& ctx, DefinableSet::Rep const& rep) {
      switch (ctx.kind()) {
        case GroupContext::Kind::finite:
          return std::holds_alternative<FiniteSubset>(rep)
                 && std::get<FiniteSubset>(rep).members.size() == ctx.order();
        case GroupContext::Kind::integers:
          return std::holds_alternative<PresburgerSet>(rep);
        case GroupContext::Kind::product:
          return std::holds_alternative<ProductSet>(rep);
      }
      return false;
    }

  }  // namespace

  DefinableSet::DefinableSet(GroupContext ctx, Rep rep)
      : ctx_(std::move(ctx)), rep_(std::move(rep)) {
    if (!rep_matches(ctx_, rep_)) {
      throw ContextMismatch("set representation does not match backend "
                            + ctx_.name());
    }
  }

  FiniteSubset const& DefinableSet::finite() const {
    if (!is_finite()) {
      throw ContextMismatch("not a finite-group set");
    }
    return std::get<FiniteSubset>(rep_);
  }

  PresburgerSet const& DefinableSet::presburger() const {
    if (!is_presburger()) {
      throw ContextMismatch("not an integer set");
    }
    return std::get<PresburgerSet>(rep_);
  }

  ProductSet const& DefinableSet::product() const {
    if (!is_product()) {
      throw ContextMismatch("not a product set");
    }
    return std::get<ProductSet>(rep_);
  }

  bool DefinableSet::contains(GroupElement const& g) const {
    if (!ctx_.owns(g)) {
      throw ContextMismatch("element " + g.to_string() + " does not belong to "
                            + ctx_.name());
    }
    return std::visit(
        [&](auto const& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, FiniteSubset>) {
            return s.members[g.index()];
          } else if constexpr (std::is_same_v<T, PresburgerSet>) {
            return s.contains(g.value());
          } else {
            return std::any_of(s.rects.begin(), s.rects.end(), [&](auto const& r) {
              return r.left.contains(g.left()) && r.right.contains(g.right());
            });
          }
        },
        rep_);
  }

  bool DefinableSet::empty() const {
    return std::visit(
        [](auto const& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, FiniteSubset>) {
            return std::none_of(
                s.members.begin(), s.members.end(), [](bool b) { return b; });
          } else if constexpr (std::is_same_v<T, PresburgerSet>) {
            return s.up_empty() && s.down_empty() && !s.has_window();
          } else {
            return s.rects.empty();
          }
        },
        rep_);
  }

  std::uint64_t DefinableSet::period() const {
    if (is_presburger()) {
      return presburger().period();
    }
    if (is_finite()) {
      return 1;
    }
    std::uint64_t n = 1;
    for (auto const& r : product().rects) {
      n = lcm_guarded(n, r.left.period());
      n = lcm_guarded(n, r.right.period());
    }
    return n;
  }

  namespace {
    std::string residues(std::vector<bool> const& p) {
      std::string out = "[";
      bool        first = true;
      for (std::size_t r = 0; r < p.size(); ++r) {
        if (p[r]) {
          out += (first ? "" : ",") + std::to_string(r);
          first = false;
        }
      }
      return out + "]";
    }
  }  // namespace

  std::string DefinableSet::to_string() const {
    return std::visit(
        [&](auto const& s) -> std::string {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, FiniteSubset>) {
            std::string out   = "{";
            bool        first = true;
            for (std::size_t i = 0; i < s.members.size(); ++i) {
              if (s.members[i]) {
                out += (first ? "" : ",") + std::to_string(i);
                first = false;
              }
            }
            return out + "}";
          } else if constexpr (std::is_same_v<T, PresburgerSet>) {
            std::ostringstream os;
            os << "{mod " << s.period() << ", up " << residues(s.up())
               << ", down " << residues(s.down());
            if (s.has_window()) {
              os << ", window [" << s.lo() << "," << s.hi() << "] ";
              for (bool b : s.window()) {
                os << (b ? '1' : '0');
              }
            } else if (s.up() != s.down()) {
              os << ", split " << s.lo();
            }
            os << "}";
            return os.str();
          } else {
            std::string out = "";
            for (std::size_t i = 0; i < s.rects.size(); ++i) {
              out += (i == 0 ? "" : " u ") + s.rects[i].left.to_string() + " x "
                     + s.rects[i].right.to_string();
            }
            return out.empty() ? "{}" : out;
          }
        },
        rep_);
  }

  bool operator==(DefinableSet const& a, DefinableSet const& b) {
    return a.ctx_ == b.ctx_ && (a <=> b) == std::strong_ordering::equal;
  }

  std::strong_ordering operator<=>(DefinableSet const& a, DefinableSet const& b) {
    if (auto c = a.rep_.index() <=> b.rep_.index(); c != 0) {
      return c;
    }
    if (a.is_finite()) {
      return compare_bits(a.finite().members, b.finite().members);
    }
    if (a.is_presburger()) {
      return a.presburger() <=> b.presburger();
    }
    auto const& ra = a.product().rects;
    auto const& rb = b.product().rects;
    for (std::size_t i = 0; i < std::min(ra.size(), rb.size()); ++i) {
      if (auto c = ra[i].left <=> rb[i].left; c != 0) {
        return c;
      }
      if (auto c = ra[i].right <=> rb[i].right; c != 0) {
        return c;
      }
    }
    return ra.size() <=> rb.size();
  }

  ////////////////////////////////////////////////////////////////////////
  // Constructors
  ////////////////////////////////////////////////////////////////////////

  DefinableSet presburger(PresburgerSet s) {
    return DefinableSet(GroupContext::integers(), std::move(s));
  }

  DefinableSet empty_set(GroupContext const& ctx) {
    switch (ctx.kind()) {
      case GroupContext::Kind::finite:
        return DefinableSet(ctx, FiniteSubset{std::vector<bool>(ctx.order())});
      case GroupContext::Kind::integers:
        return presburger(presburger_empty());
      case GroupContext::Kind::product:
        return DefinableSet(ctx, ProductSet{});
    }
    throw ContextMismatch("unknown backend");
  }

  DefinableSet whole_group(GroupContext const& ctx) {
    switch (ctx.kind()) {
      case GroupContext::Kind::finite:
        return DefinableSet(ctx,
                            FiniteSubset{std::vector<bool>(ctx.order(), true)});
      case GroupContext::Kind::integers:
        return presburger(PresburgerSet::make(1, {true}, {true}, 0, -1, {}));
      case GroupContext::Kind::product:
        return DefinableSet(
            ctx,
            ProductSet{{Rectangle{whole_group(ctx.left()), whole_group(ctx.right())}}});
    }
    throw ContextMismatch("unknown backend");
  }

  DefinableSet element_set(GroupContext const&              ctx,
                           std::vector<GroupElement> const& elements) {
    switch (ctx.kind()) {
      case GroupContext::Kind::finite: {
        std::vector<bool> m(ctx.order());
        for (auto const& g : elements) {
          if (!ctx.owns(g)) {
            throw ContextMismatch("element " + g.to_string()
                                  + " does not belong to " + ctx.name());
          }
          m[g.index()] = true;
        }
        return DefinableSet(ctx, FiniteSubset{std::move(m)});
      }
      case GroupContext::Kind::integers: {
        if (elements.empty()) {
          return empty_set(ctx);
        }
        std::int64_t lo = std::numeric_limits<std::int64_t>::max();
        std::int64_t hi = std::numeric_limits<std::int64_t>::min();
        for (auto const& g : elements) {
          lo = std::min(lo, g.value());
          hi = std::max(hi, g.value());
        }
        check_window_size(lo, hi);
        std::vector<bool> w(static_cast<std::size_t>(hi - lo + 1));
        for (auto const& g : elements) {
          w[static_cast<std::size_t>(g.value() - lo)] = true;
        }
        return presburger(
            PresburgerSet::make(1, {false}, {false}, lo, hi, std::move(w)));
      }
      case GroupContext::Kind::product: {
        std::vector<Rectangle> rects;
        for (auto const& g : elements) {
          if (!ctx.owns(g)) {
            throw ContextMismatch("element " + g.to_string()
                                  + " does not belong to " + ctx.name());
          }
          rects.push_back(Rectangle{element_set(ctx.left(), {g.left()}),
                                    element_set(ctx.right(), {g.right()})});
        }
        return product_set(ctx, rects);
      }
    }
    throw ContextMismatch("unknown backend");
  }

  DefinableSet rectangle(GroupContext const& ctx,
                         DefinableSet const& left,
                         DefinableSet const& right) {
    return product_set(ctx, {Rectangle{left, right}});
  }

  DefinableSet product_set(GroupContext const&           ctx,
                           std::vector<Rectangle> const& rects) {
    if (!ctx.is_product()) {
      throw ContextMismatch("product_set requires a product backend");
    }
    std::vector<Rectangle> live;
    for (auto const& r : rects) {
      if (!(r.left.context() == ctx.left()) || !(r.right.context() == ctx.right())) {
        throw ContextMismatch("rectangle sides do not match the product factors");
      }
      if (!r.left.empty() && !r.right.empty()) {
        live.push_back(r);
      }
    }
    // Atoms of the Boolean algebra generated by the left sides.
    std::vector<DefinableSet> atoms;
    if (!live.empty()) {
      atoms.push_back(whole_group(ctx.left()));
    }
    for (auto const& r : live) {
      std::vector<DefinableSet> next;
      for (auto const& a : atoms) {
        auto in  = set_intersection(a, r.left);
        auto out = set_difference(a, r.left);
        if (!in.empty()) {
          next.push_back(std::move(in));
        }
        if (!out.empty()) {
          next.push_back(std::move(out));
        }
      }
      atoms = std::move(next);
    }
    // Group atoms by their section.
    std::vector<Rectangle> grouped;
    for (auto const& a : atoms) {
      auto section = empty_set(ctx.right());
      for (auto const& r : live) {
        if (!set_intersection(a, r.left).empty()) {
          section = set_union(section, r.right);
        }
      }
      if (section.empty()) {
        continue;
      }
      auto it = std::find_if(grouped.begin(), grouped.end(), [&](auto const& g) {
        return g.right == section;
      });
      if (it == grouped.end()) {
        grouped.push_back(Rectangle{a, section});
      } else {
        it->left = set_union(it->left, a);
      }
    }
    std::sort(grouped.begin(), grouped.end(), [](auto const& x, auto const& y) {
      return (x.right <=> y.right) < 0;
    });
    return DefinableSet(ctx, ProductSet{std::move(grouped)});
  }

  DefinableSet periodic_pattern(std::uint64_t                     n,
                                std::vector<std::uint64_t> const& up,
                                std::vector<std::uint64_t> const& down) {
    if (n == 0) {
      throw InvalidArgument("period must be positive");
    }
    std::vector<bool> u(n), d(n);
    for (auto r : up) {
      u[r % n] = true;
    }
    for (auto r : down) {
      d[r % n] = true;
    }
    return presburger(PresburgerSet::make(n, std::move(u), std::move(d), 0, -1, {}));
  }

  DefinableSet residue_class(std::int64_t r, std::uint64_t n) {
    auto const res = mod_floor(r, n);
    return periodic_pattern(n, {res}, {res});
  }

  DefinableSet evens() {
    return residue_class(0, 2);
  }

  DefinableSet odds() {
    return residue_class(1, 2);
  }

  DefinableSet at_least(std::int64_t a) {
    return presburger(
        PresburgerSet::make(1, {true}, {false}, a, checked_sub(a, 1), {}));
  }

  DefinableSet at_most(std::int64_t a) {
    return presburger(
        PresburgerSet::make(1, {false}, {true}, checked_add(a, 1), a, {}));
  }

  DefinableSet interval(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) {
      return empty_set(GroupContext::integers());
    }
    check_window_size(lo, hi);
    return presburger(PresburgerSet::make(
        1,
        {false},
        {false},
        lo,
        hi,
        std::vector<bool>(static_cast<std::size_t>(hi - lo + 1), true)));
  }

  ////////////////////////////////////////////////////////////////////////
  // Boolean algebra
  ////////////////////////////////////////////////////////////////////////

  DefinableSet set_union(DefinableSet const& a, DefinableSet const& b) {
    require_same(a, b);
    auto const& ctx = a.context();
    if (a.is_finite()) {
      auto m = a.finite().members;
      for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] = m[i] || b.finite().members[i];
      }
      return DefinableSet(ctx, FiniteSubset{std::move(m)});
    }
    if (a.is_presburger()) {
      return presburger(presburger_combine(
          a.presburger(), b.presburger(), [](bool x, bool y) { return x || y; }));
    }
    auto rects = a.product().rects;
    rects.insert(rects.end(), b.product().rects.begin(), b.product().rects.end());
    return product_set(ctx, rects);
  }

  DefinableSet set_intersection(DefinableSet const& a, DefinableSet const& b) {
    require_same(a, b);
    auto const& ctx = a.context();
    if (a.is_finite()) {
      auto m = a.finite().members;
      for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] = m[i] && b.finite().members[i];
      }
      return DefinableSet(ctx, FiniteSubset{std::move(m)});
    }
    if (a.is_presburger()) {
      return presburger(presburger_combine(
          a.presburger(), b.presburger(), [](bool x, bool y) { return x && y; }));
    }
    std::vector<Rectangle> rects;
    for (auto const& r : a.product().rects) {
      for (auto const& s : b.product().rects) {
        rects.push_back(Rectangle{set_intersection(r.left, s.left),
                                  set_intersection(r.right, s.right)});
      }
    }
    return product_set(ctx, rects);
  }

  DefinableSet set_complement(DefinableSet const& a) {
    auto const& ctx = a.context();
    if (a.is_finite()) {
      auto m = a.finite().members;
      m.flip();
      return DefinableSet(ctx, FiniteSubset{std::move(m)});
    }
    if (a.is_presburger()) {
      return presburger(presburger_complement(a.presburger()));
    }
    // Canonical rectangles have disjoint left sides.
    std::vector<Rectangle> rects;
    auto                   covered = empty_set(ctx.left());
    for (auto const& r : a.product().rects) {
      rects.push_back(Rectangle{r.left, set_complement(r.right)});
      covered = set_union(covered, r.left);
    }
    rects.push_back(Rectangle{set_complement(covered), whole_group(ctx.right())});
    return product_set(ctx, rects);
  }

  DefinableSet set_difference(DefinableSet const& a, DefinableSet const& b) {
    return set_intersection(a, set_complement(b));
  }

  DefinableSet boolean_op(BoolOp                      kind,
                          DefinableSet const&         a,
                          std::optional<DefinableSet> b) {
    switch (kind) {
      case BoolOp::complement:
        if (b) {
          throw InvalidArgument("complement is unary");
        }
        return set_complement(a);
      case BoolOp::union_op:
      case BoolOp::intersection:
        if (!b) {
          throw InvalidArgument("binary Boolean operation needs two operands");
        }
        return kind == BoolOp::union_op ? set_union(a, *b)
                                        : set_intersection(a, *b);
    }
    throw InvalidArgument("unknown Boolean operation");
  }

  ////////////////////////////////////////////////////////////////////////
  // Translation and difference sets
  ////////////////////////////////////////////////////////////////////////

  DefinableSet translate(GroupElement const& g, DefinableSet const& y) {
    auto const& ctx = y.context();
    if (!ctx.owns(g)) {
      throw ContextMismatch("translate: element " + g.to_string()
                            + " does not belong to " + ctx.name());
    }
    if (y.is_finite()) {
      auto const&       t = ctx.table();
      std::vector<bool> m(t.order);
      for (std::size_t i = 0; i < t.order; ++i) {
        if (y.finite().members[i]) {
          m[t.table[g.index()][i]] = true;
        }
      }
      return DefinableSet(ctx, FiniteSubset{std::move(m)});
    }
    if (y.is_presburger()) {
      return presburger(presburger_shift(y.presburger(), g.value()));
    }
    std::vector<Rectangle> rects;
    for (auto const& r : y.product().rects) {
      rects.push_back(
          Rectangle{translate(g.left(), r.left), translate(g.right(), r.right)});
    }
    return product_set(ctx, rects);
  }

  DefinableSet right_translate(DefinableSet const& y, GroupElement const& g) {
    auto const& ctx = y.context();
    if (!ctx.owns(g)) {
      throw ContextMismatch("right_translate: element " + g.to_string()
                            + " does not belong to " + ctx.name());
    }
    if (y.is_finite()) {
      auto const&       t = ctx.table();
      std::vector<bool> m(t.order);
      for (std::size_t i = 0; i < t.order; ++i) {
        if (y.finite().members[i]) {
          m[t.table[i][g.index()]] = true;
        }
      }
      return DefinableSet(ctx, FiniteSubset{std::move(m)});
    }
    if (y.is_presburger()) {
      return translate(g, y);
    }
    std::vector<Rectangle> rects;
    for (auto const& r : y.product().rects) {
      rects.push_back(Rectangle{right_translate(r.left, g.left()),
                                right_translate(r.right, g.right())});
    }
    return product_set(ctx, rects);
  }

  DefinableSet quotient_set(DefinableSet const& a, DefinableSet const& b) {
    require_same(a, b);
    auto const& ctx = a.context();
    if (a.is_finite()) {
      auto const&       t = ctx.table();
      std::vector<bool> m(t.order);
      for (std::size_t x = 0; x < t.order; ++x) {
        if (!a.finite().members[x]) {
          continue;
        }
        for (std::size_t y = 0; y < t.order; ++y) {
          if (b.finite().members[y]) {
            m[t.table[x][t.inverse[y]]] = true;
          }
        }
      }
      return DefinableSet(ctx, FiniteSubset{std::move(m)});
    }
    if (a.is_presburger()) {
      return presburger(
          presburger_sum(a.presburger(), presburger_negate(b.presburger())));
    }
    std::vector<Rectangle> rects;
    for (auto const& r : a.product().rects) {
      for (auto const& s : b.product().rects) {
        rects.push_back(Rectangle{quotient_set(r.left, s.left),
                                  quotient_set(r.right, s.right)});
      }
    }
    return product_set(ctx, rects);
  }

  DefinableSet difference_set(DefinableSet const& y) {
    return quotient_set(y, y);
  }

  std::optional<GroupElement> some_element(DefinableSet const& y) {
    if (y.empty()) {
      return std::nullopt;
    }
    if (y.is_finite()) {
      auto const& m = y.finite().members;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i]) {
          return GroupElement::finite(i);
        }
      }
    }
    if (y.is_presburger()) {
      auto const& s = y.presburger();
      for (std::int64_t x = s.lo(); x <= s.hi(); ++x) {
        if (s.contains(x)) {
          return GroupElement::integer(x);
        }
      }
      auto const n = static_cast<std::int64_t>(s.period());
      for (std::int64_t k = 1; k <= n; ++k) {
        if (s.contains(s.hi() + k)) {
          return GroupElement::integer(s.hi() + k);
        }
      }
      for (std::int64_t k = 1; k <= n; ++k) {
        if (s.contains(s.lo() - k)) {
          return GroupElement::integer(s.lo() - k);
        }
      }
    }
    if (y.is_product()) {
      auto const& r = y.product().rects.front();
      return GroupElement::pair(*some_element(r.left), *some_element(r.right));
    }
    return std::nullopt;
  }

  std::optional<std::uint64_t> as_integer_subgroup(DefinableSet const& y) {
    if (!y.is_presburger()) {
      return std::nullopt;
    }
    auto const& s = y.presburger();
    if (s.up_empty() && s.down_empty()) {
      if (s.has_window() && s.lo() == 0 && s.hi() == 0) {
        return 0;
      }
      return std::nullopt;
    }
    if (s.has_window() || s.up() != s.down()) {
      return std::nullopt;
    }
    for (std::uint64_t r = 0; r < s.period(); ++r) {
      if (s.up()[r] != (r == 0)) {
        return std::nullopt;
      }
    }
    return s.period();
  }

}  // namespace defdyn
