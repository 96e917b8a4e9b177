#include "defdyn/group.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "defdyn/arith.hpp"
#include "defdyn/error.hpp"

namespace defdyn {

  ////////////////////////////////////////////////////////////////////////
  // GroupElement
  ////////////////////////////////////////////////////////////////////////

  GroupElement GroupElement::finite(std::size_t index) {
    return GroupElement(Kind::finite, static_cast<std::int64_t>(index));
  }

  GroupElement GroupElement::integer(std::int64_t value) {
    return GroupElement(Kind::integer, value);
  }

  GroupElement GroupElement::pair(GroupElement left, GroupElement right) {
    GroupElement g(Kind::pair, 0);
    g.parts_ = std::make_shared<std::pair<GroupElement, GroupElement> const>(
        std::move(left), std::move(right));
    return g;
  }

  std::size_t GroupElement::index() const {
    if (kind_ != Kind::finite) {
      throw ContextMismatch("element " + to_string()
                            + " is not a finite-group element");
    }
    return static_cast<std::size_t>(value_);
  }

  std::int64_t GroupElement::value() const {
    if (kind_ != Kind::integer) {
      throw ContextMismatch("element " + to_string() + " is not an integer");
    }
    return value_;
  }

  GroupElement const& GroupElement::left() const {
    if (kind_ != Kind::pair) {
      throw ContextMismatch("element " + to_string() + " is not a pair");
    }
    return parts_->first;
  }

  GroupElement const& GroupElement::right() const {
    if (kind_ != Kind::pair) {
      throw ContextMismatch("element " + to_string() + " is not a pair");
    }
    return parts_->second;
  }

  std::string GroupElement::to_string() const {
    switch (kind_) {
      case Kind::finite:
        return "g" + std::to_string(value_);
      case Kind::integer:
        return std::to_string(value_);
      case Kind::pair:
        return "(" + parts_->first.to_string() + "," + parts_->second.to_string()
               + ")";
    }
    return "?";
  }

  bool operator==(GroupElement const& a, GroupElement const& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  std::strong_ordering operator<=>(GroupElement const& a,
                                   GroupElement const& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) {
      return c;
    }
    if (a.kind_ != GroupElement::Kind::pair) {
      return a.value_ <=> b.value_;
    }
    if (auto c = a.parts_->first <=> b.parts_->first; c != 0) {
      return c;
    }
    return a.parts_->second <=> b.parts_->second;
  }

  ////////////////////////////////////////////////////////////////////////
  // GroupContext
  ////////////////////////////////////////////////////////////////////////

  GroupContext GroupContext::integers() {
    return GroupContext(Kind::integers);
  }

  GroupContext GroupContext::finite_table(
      std::vector<std::vector<std::size_t>> table,
      std::string                           name) {
    std::size_t const n = table.size();
    if (n == 0) {
      throw InvalidGroup("a group table must be nonempty");
    }
    for (auto const& row : table) {
      if (row.size() != n) {
        throw InvalidGroup("group table is not square");
      }
      for (auto x : row) {
        if (x >= n) {
          throw InvalidGroup("group table entry " + std::to_string(x)
                             + " out of range");
        }
      }
    }
    std::size_t e = n;
    for (std::size_t i = 0; i < n && e == n; ++i) {
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) {
        ok = table[i][j] == j && table[j][i] == j;
      }
      if (ok) {
        e = i;
      }
    }
    if (e == n) {
      throw InvalidGroup("group table has no identity element");
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (table[table[a][b]][c] != table[a][table[b][c]]) {
            throw InvalidGroup("group table is not associative at ("
                               + std::to_string(a) + "," + std::to_string(b)
                               + "," + std::to_string(c) + ")");
          }
        }
      }
    }
    std::vector<std::size_t> inv(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (table[a][b] == e && table[b][a] == e) {
          inv[a] = b;
          break;
        }
      }
      if (inv[a] == n) {
        throw InvalidGroup("element " + std::to_string(a) + " has no inverse");
      }
    }
    auto t      = std::make_shared<FiniteTable>();
    t->name     = name.empty() ? "G" + std::to_string(n) : std::move(name);
    t->order    = n;
    t->table    = std::move(table);
    t->inverse  = std::move(inv);
    t->identity = e;
    GroupContext ctx(Kind::finite);
    ctx.table_ = std::move(t);
    return ctx;
  }

  GroupContext GroupContext::cyclic(std::size_t n) {
    if (n == 0) {
      throw InvalidGroup("cyclic group order must be positive");
    }
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        t[a][b] = (a + b) % n;
      }
    }
    return finite_table(std::move(t), "C" + std::to_string(n));
  }

  GroupContext GroupContext::product(GroupContext left, GroupContext right) {
    GroupContext ctx(Kind::product);
    ctx.parts_ = std::make_shared<std::pair<GroupContext, GroupContext> const>(
        std::move(left), std::move(right));
    if (ctx.depth() > kMaxProductDepth) {
      throw InvalidGroup("product nesting depth exceeds "
                         + std::to_string(kMaxProductDepth));
    }
    return ctx;
  }

  FiniteTable const& GroupContext::table() const {
    if (kind_ != Kind::finite) {
      throw ContextMismatch("not a finite-table backend");
    }
    return *table_;
  }

  std::size_t GroupContext::order() const {
    return table().order;
  }

  GroupContext const& GroupContext::left() const {
    if (kind_ != Kind::product) {
      throw ContextMismatch("not a product backend");
    }
    return parts_->first;
  }

  GroupContext const& GroupContext::right() const {
    if (kind_ != Kind::product) {
      throw ContextMismatch("not a product backend");
    }
    return parts_->second;
  }

  std::size_t GroupContext::depth() const noexcept {
    if (kind_ != Kind::product) {
      return 0;
    }
    return 1 + std::max(parts_->first.depth(), parts_->second.depth());
  }

  std::string GroupContext::name() const {
    switch (kind_) {
      case Kind::integers:
        return "Z";
      case Kind::finite:
        return table_->name;
      case Kind::product:
        return "(" + parts_->first.name() + " x " + parts_->second.name() + ")";
    }
    return "?";
  }

  GroupElement GroupContext::identity() const {
    switch (kind_) {
      case Kind::integers:
        return GroupElement::integer(0);
      case Kind::finite:
        return GroupElement::finite(table_->identity);
      case Kind::product:
        return GroupElement::pair(parts_->first.identity(),
                                  parts_->second.identity());
    }
    return GroupElement::integer(0);
  }

  bool GroupContext::owns(GroupElement const& g) const {
    switch (kind_) {
      case Kind::integers:
        return g.is_integer();
      case Kind::finite:
        return g.is_finite() && g.index() < table_->order;
      case Kind::product:
        return g.is_pair() && parts_->first.owns(g.left())
               && parts_->second.owns(g.right());
    }
    return false;
  }

  std::vector<GroupElement> GroupContext::elements() const {
    std::vector<GroupElement> out;
    for (std::size_t i = 0; i < order(); ++i) {
      out.push_back(GroupElement::finite(i));
    }
    return out;
  }

  bool operator==(GroupContext const& a, GroupContext const& b) {
    if (a.kind_ != b.kind_) {
      return false;
    }
    switch (a.kind_) {
      case GroupContext::Kind::integers:
        return true;
      case GroupContext::Kind::finite:
        return a.table_ == b.table_ || a.table_->table == b.table_->table;
      case GroupContext::Kind::product:
        return a.parts_->first == b.parts_->first
               && a.parts_->second == b.parts_->second;
    }
    return false;
  }

  ////////////////////////////////////////////////////////////////////////
  // Group operations
  ////////////////////////////////////////////////////////////////////////

  namespace {
    void require_owned(GroupContext const& ctx, GroupElement const& g) {
      if (!ctx.owns(g)) {
        throw ContextMismatch("element " + g.to_string()
                              + " does not belong to " + ctx.name());
      }
    }
  }  // namespace

  GroupElement compose(GroupContext const& ctx,
                       GroupElement const& g,
                       GroupElement const& h) {
    require_owned(ctx, g);
    require_owned(ctx, h);
    switch (ctx.kind()) {
      case GroupContext::Kind::integers:
        return GroupElement::integer(checked_add(g.value(), h.value()));
      case GroupContext::Kind::finite:
        return GroupElement::finite(ctx.table().table[g.index()][h.index()]);
      case GroupContext::Kind::product:
        return GroupElement::pair(compose(ctx.left(), g.left(), h.left()),
                                  compose(ctx.right(), g.right(), h.right()));
    }
    return g;
  }

  GroupElement invert_element(GroupContext const& ctx, GroupElement const& g) {
    require_owned(ctx, g);
    switch (ctx.kind()) {
      case GroupContext::Kind::integers:
        return GroupElement::integer(checked_neg(g.value()));
      case GroupContext::Kind::finite:
        return GroupElement::finite(ctx.table().inverse[g.index()]);
      case GroupContext::Kind::product:
        return GroupElement::pair(invert_element(ctx.left(), g.left()),
                                  invert_element(ctx.right(), g.right()));
    }
    return g;
  }

  std::size_t element_order(GroupContext const& ctx, GroupElement const& g) {
    require_owned(ctx, g);
    auto const&  t = ctx.table();
    std::size_t  k = 1;
    std::size_t  x = g.index();
    while (x != t.identity) {
      x = t.table[x][g.index()];
      ++k;
    }
    return k;
  }

  std::string SubgroupDescriptor::to_string() const {
    switch (kind) {
      case Kind::multiples:
        return modulus == 0 ? "{0}" : std::to_string(modulus) + "Z";
      case Kind::elements: {
        std::string out = "{";
        for (std::size_t i = 0; i < elements.size(); ++i) {
          out += (i == 0 ? "" : ",") + elements[i].to_string();
        }
        return out + "}";
      }
      case Kind::product:
        return factors[0].to_string() + " x " + factors[1].to_string();
    }
    return "?";
  }

  ////////////////////////////////////////////////////////////////////////
  // Bundled tables
  ////////////////////////////////////////////////////////////////////////

  GroupContext direct_product_table(GroupContext const& a,
                                    GroupContext const& b) {
    auto const& ta = a.table();
    auto const& tb = b.table();
    std::size_t n  = ta.order * tb.order;
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        std::size_t const l = ta.table[x / tb.order][y / tb.order];
        std::size_t const r = tb.table[x % tb.order][y % tb.order];
        t[x][y]             = l * tb.order + r;
      }
    }
    return GroupContext::finite_table(std::move(t), ta.name + "x" + tb.name);
  }

  GroupContext dihedral(std::size_t n) {
    // r^i s^j encoded as i + n*j; s r = r^{-1} s.
    std::size_t const order = 2 * n;
    std::vector<std::vector<std::size_t>> t(order,
                                            std::vector<std::size_t>(order));
    for (std::size_t x = 0; x < order; ++x) {
      for (std::size_t y = 0; y < order; ++y) {
        std::size_t const i1 = x % n, j1 = x / n, i2 = y % n, j2 = y / n;
        std::size_t const i  = j1 == 0 ? (i1 + i2) % n : (i1 + n - i2) % n;
        t[x][y]              = i + n * ((j1 + j2) % 2);
      }
    }
    return GroupContext::finite_table(std::move(t),
                                      n == 3 ? "S3" : "D" + std::to_string(n));
  }

  GroupContext quaternion() {
    // Elements ±1, ±i, ±j, ±k encoded as sign*4 + unit, unit in {1,i,j,k}.
    // unit products: table of (sign, unit).
    static constexpr std::array<std::array<std::pair<int, int>, 4>, 4> units
        = {{{{{0, 0}, {0, 1}, {0, 2}, {0, 3}}},
            {{{0, 1}, {1, 0}, {0, 3}, {1, 2}}},
            {{{0, 2}, {1, 3}, {1, 0}, {0, 1}}},
            {{{0, 3}, {0, 2}, {1, 1}, {1, 0}}}}};
    std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
    for (std::size_t x = 0; x < 8; ++x) {
      for (std::size_t y = 0; y < 8; ++y) {
        auto [s, u] = units[x % 4][y % 4];
        std::size_t const sign = (x / 4 + y / 4 + static_cast<std::size_t>(s)) % 2;
        t[x][y]                = sign * 4 + static_cast<std::size_t>(u);
      }
    }
    return GroupContext::finite_table(std::move(t), "Q8");
  }

  std::vector<GroupContext> bundled_groups() {
    auto const c2 = GroupContext::cyclic(2);
    auto const c4 = GroupContext::cyclic(4);
    auto       v4 = direct_product_table(c2, c2);
    return {GroupContext::cyclic(1),
            c2,
            GroupContext::cyclic(3),
            c4,
            v4,
            GroupContext::cyclic(5),
            GroupContext::cyclic(6),
            dihedral(3),
            GroupContext::cyclic(7),
            GroupContext::cyclic(8),
            direct_product_table(c4, c2),
            direct_product_table(v4, c2),
            dihedral(4),
            quaternion()};
  }

  GroupContext bundled_group(std::string const& name) {
    for (auto const& g : bundled_groups()) {
      if (g.name() == name) {
        return g;
      }
    }
    throw InvalidArgument("unknown bundled group '" + name + "'");
  }

}  // namespace defdyn
