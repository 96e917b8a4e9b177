#include "defdyn/json_io.hpp"

#include <algorithm>

namespace defdyn {

  namespace {

    [[noreturn]] void bad(std::string const& what, Json const& j) {
      throw SchemaError(what + ": " + j.dump());
    }

    std::int64_t as_int(Json const& j, std::string const& what) {
      if (!j.is_number_integer()) {
        bad(what + " must be an integer", j);
      }
      return j.get<std::int64_t>();
    }

    std::uint64_t as_positive(Json const& j, std::string const& what) {
      auto const v = as_int(j, what);
      if (v <= 0) {
        bad(what + " must be positive", j);
      }
      return static_cast<std::uint64_t>(v);
    }

    std::vector<std::uint64_t> residues(Json const& j, std::uint64_t n,
                                        std::string const& what) {
      if (!j.is_array()) {
        bad(what + " must be a list of residues", j);
      }
      std::vector<std::uint64_t> out;
      for (auto const& r : j) {
        out.push_back(mod_floor(as_int(r, what), n));
      }
      return out;
    }

    std::vector<bool> bits(Json const& j, std::size_t size) {
      std::vector<bool> out;
      if (j.is_string()) {
        for (char c : j.get<std::string>()) {
          if (c != '0' && c != '1') {
            bad("window bits must be 0/1", j);
          }
          out.push_back(c == '1');
        }
      } else if (j.is_array()) {
        for (auto const& b : j) {
          if (b.is_boolean()) {
            out.push_back(b.get<bool>());
          } else {
            out.push_back(as_int(b, "window bit") != 0);
          }
        }
      } else {
        bad("window bits must be a string or a list", j);
      }
      if (out.size() != size) {
        bad("window bits do not match [lo, hi]", j);
      }
      return out;
    }

    std::vector<std::size_t> index_list(Json const& j, std::string const& what) {
      if (!j.is_array()) {
        bad(what + " must be a list", j);
      }
      std::vector<std::size_t> out;
      for (auto const& x : j) {
        auto const v = as_int(x, what);
        if (v < 0) {
          bad(what + " entries must be nonnegative", j);
        }
        out.push_back(static_cast<std::size_t>(v));
      }
      return out;
    }

    std::string sign_text(Sign s) {
      return s == Sign::plus ? "+" : "-";
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Groups and elements
  ////////////////////////////////////////////////////////////////////////

  GroupContext group_from_json(Json const& j) {
    try {
      if (j.is_string()) {
        auto const s = j.get<std::string>();
        if (s == "integers" || s == "Z") {
          return GroupContext::integers();
        }
        return bundled_group(s);
      }
      if (j.is_object()) {
        if (j.contains("cyclic")) {
          return GroupContext::cyclic(as_positive(j["cyclic"], "cyclic order"));
        }
        if (j.contains("table")) {
          std::vector<std::vector<std::size_t>> t;
          if (!j["table"].is_array()) {
            bad("group table must be a list of rows", j);
          }
          for (auto const& row : j["table"]) {
            t.push_back(index_list(row, "group table row"));
          }
          return GroupContext::finite_table(std::move(t), j.value("name", ""));
        }
        if (j.contains("product")) {
          auto const& p = j["product"];
          if (!p.is_array() || p.size() != 2) {
            bad("product needs two factors", j);
          }
          return GroupContext::product(group_from_json(p[0]), group_from_json(p[1]));
        }
      }
    } catch (SchemaError const&) {
      throw;
    } catch (Error const& e) {
      throw SchemaError(std::string("invalid group: ") + e.what());
    }
    bad("unrecognised group", j);
  }

  Json to_json(GroupContext const& ctx) {
    if (ctx.is_integers()) {
      return "integers";
    }
    if (ctx.is_finite()) {
      return Json{{"name", ctx.name()}, {"order", ctx.order()}};
    }
    return Json{{"product", {to_json(ctx.left()), to_json(ctx.right())}}};
  }

  GroupElement element_from_json(GroupContext const& ctx, Json const& j) {
    if (ctx.is_product()) {
      if (!j.is_array() || j.size() != 2) {
        bad("product element must be a pair", j);
      }
      return GroupElement::pair(element_from_json(ctx.left(), j[0]),
                                element_from_json(ctx.right(), j[1]));
    }
    auto const v = as_int(j, "group element");
    if (ctx.is_integers()) {
      return GroupElement::integer(v);
    }
    if (v < 0 || static_cast<std::size_t>(v) >= ctx.order()) {
      bad("element index outside " + ctx.name(), j);
    }
    return GroupElement::finite(static_cast<std::size_t>(v));
  }

  Json to_json(GroupElement const& g) {
    switch (g.kind()) {
      case GroupElement::Kind::integer:
        return g.value();
      case GroupElement::Kind::finite:
        return g.index();
      case GroupElement::Kind::pair:
        return Json::array({to_json(g.left()), to_json(g.right())});
    }
    return nullptr;
  }

  ////////////////////////////////////////////////////////////////////////
  // Points
  ////////////////////////////////////////////////////////////////////////

  TypePoint point_from_json(GroupContext const& ctx, Json const& j) {
    if (!j.is_object() || !j.contains("kind")) {
      bad("type point needs a kind", j);
    }
    auto const kind = j["kind"].get<std::string>();
    if (kind == "realized") {
      if (!j.contains("value")) {
        bad("realized point needs a value", j);
      }
      return TypePoint::realized(element_from_json(ctx, j["value"]));
    }
    if (kind == "limit") {
      if (!ctx.is_integers()) {
        bad("limit points exist only for the integers", j);
      }
      auto const sign = j.value("sign", "");
      if (sign != "+" && sign != "-") {
        bad("limit sign must be + or -", j);
      }
      auto const mod = as_positive(j.value("mod", Json(1)), "limit modulus");
      return TypePoint::limit(sign == "+" ? Sign::plus : Sign::minus,
                              static_cast<std::int64_t>(mod_floor(as_int(j.value("res", Json(0)), "residue"), mod)),
                              mod);
    }
    if (kind == "pair") {
      if (!ctx.is_product() || !j.contains("left") || !j.contains("right")) {
        bad("pair points need a product group and two coordinates", j);
      }
      return TypePoint::pair(point_from_json(ctx.left(), j["left"]),
                             point_from_json(ctx.right(), j["right"]));
    }
    bad("unknown point kind", j);
  }

  Json to_json(TypePoint const& p) {
    switch (p.kind()) {
      case TypePoint::Kind::realized:
        return Json{{"kind", "realized"}, {"value", to_json(p.element())}};
      case TypePoint::Kind::limit:
        return Json{{"kind", "limit"},
                    {"sign", sign_text(p.sign())},
                    {"res", p.residue()},
                    {"mod", p.modulus()}};
      case TypePoint::Kind::pair:
        return Json{{"kind", "pair"}, {"left", to_json(p.left())}, {"right", to_json(p.right())}};
    }
    return nullptr;
  }

  ////////////////////////////////////////////////////////////////////////
  // Sets
  ////////////////////////////////////////////////////////////////////////

  DefinableSet set_from_json(GroupContext const& ctx, Json const& j) {
    try {
      if (j.is_string()) {
        auto const s = j.get<std::string>();
        if (s == "all") {
          return whole_group(ctx);
        }
        if (s == "empty") {
          return empty_set(ctx);
        }
        if (ctx.is_integers() && s == "evens") {
          return evens();
        }
        if (ctx.is_integers() && s == "odds") {
          return odds();
        }
        bad("unknown set name", j);
      }
      if (ctx.is_product()) {
        if (!j.is_object() || !j.contains("rects") || !j["rects"].is_array()) {
          bad("product sets are given as {\"rects\": [[A, B], ...]}", j);
        }
        std::vector<Rectangle> rects;
        for (auto const& r : j["rects"]) {
          if (!r.is_array() || r.size() != 2) {
            bad("a rectangle is a pair [A, B]", r);
          }
          rects.push_back({set_from_json(ctx.left(), r[0]), set_from_json(ctx.right(), r[1])});
        }
        return product_set(ctx, rects);
      }
      if (ctx.is_finite()) {
        std::vector<GroupElement> elems;
        if (!j.is_array()) {
          bad("finite sets are element lists", j);
        }
        for (auto const& x : j) {
          elems.push_back(element_from_json(ctx, x));
        }
        return element_set(ctx, elems);
      }
      if (!j.is_object()) {
        bad("unrecognised integer set", j);
      }
      if (j.contains("at_least")) {
        return at_least(as_int(j["at_least"], "at_least"));
      }
      if (j.contains("at_most")) {
        return at_most(as_int(j["at_most"], "at_most"));
      }
      if (j.contains("interval")) {
        auto const& iv = j["interval"];
        if (!iv.is_array() || iv.size() != 2) {
          bad("interval is [lo, hi]", j);
        }
        return interval(as_int(iv[0], "interval"), as_int(iv[1], "interval"));
      }
      if (j.contains("class")) {
        auto const& c = j["class"];
        if (!c.is_array() || c.size() != 2) {
          bad("class is [r, n]", j);
        }
        return residue_class(as_int(c[0], "residue"), as_positive(c[1], "modulus"));
      }
      if (j.contains("mod")) {
        auto const        n = as_positive(j["mod"], "mod");
        std::vector<bool> up(n), down(n);
        for (auto r : residues(j.value("up", Json::array()), n, "up")) {
          up[r] = true;
        }
        for (auto r : residues(j.value("down", Json::array()), n, "down")) {
          down[r] = true;
        }
        if (j.contains("window")) {
          auto const& w  = j["window"];
          auto const  lo = as_int(w.value("lo", Json(0)), "window lo");
          auto const  hi = as_int(w.value("hi", Json(-1)), "window hi");
          auto const  size = lo <= hi ? static_cast<std::size_t>(hi - lo + 1) : 0;
          return presburger(PresburgerSet::make(n, up, down, lo, hi,
                                                bits(w.value("bits", Json::array()), size)));
        }
        auto const split = as_int(j.value("split", Json(0)), "split");
        return presburger(PresburgerSet::make(n, up, down, split, split - 1, {}));
      }
    } catch (SchemaError const&) {
      throw;
    } catch (Error const& e) {
      throw SchemaError(std::string("invalid set: ") + e.what());
    }
    bad("unrecognised integer set", j);
  }

  Json to_json(DefinableSet const& y) {
    if (y.is_finite()) {
      Json out = Json::array();
      auto const& m = y.finite().members;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i]) {
          out.push_back(i);
        }
      }
      return out;
    }
    if (y.is_product()) {
      Json rects = Json::array();
      for (auto const& r : y.product().rects) {
        rects.push_back(Json::array({to_json(r.left), to_json(r.right)}));
      }
      return Json{{"rects", rects}};
    }
    auto const& s = y.presburger();
    Json up = Json::array(), down = Json::array();
    for (std::uint64_t r = 0; r < s.period(); ++r) {
      if (s.up()[r]) {
        up.push_back(r);
      }
      if (s.down()[r]) {
        down.push_back(r);
      }
    }
    Json out{{"mod", s.period()}, {"up", up}, {"down", down}};
    if (s.has_window()) {
      std::string b;
      for (bool x : s.window()) {
        b += x ? '1' : '0';
      }
      out["window"] = Json{{"lo", s.lo()}, {"hi", s.hi()}, {"bits", b}};
    } else if (s.up() != s.down()) {
      out["split"] = s.lo();
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Flows and maps
  ////////////////////////////////////////////////////////////////////////

  FiniteFlowPresentation flow_from_json(GroupContext const& ctx, Json const& j) {
    if (!j.is_object()) {
      bad("flow must be an object", j);
    }
    std::optional<std::size_t> base;
    if (j.contains("base") && !j["base"].is_null()) {
      base = static_cast<std::size_t>(as_int(j["base"], "base"));
    }
    if (j.contains("trivial")) {
      auto f = FiniteFlowPresentation::trivial(ctx, as_positive(j["trivial"], "trivial"));
      f.base = base.value_or(0);
      return f;
    }
    if (ctx.is_integers()) {
      if (j.contains("rotation")) {
        return FiniteFlowPresentation::rotation(as_positive(j["rotation"], "rotation"));
      }
      if (!j.contains("pi")) {
        bad("integer flows need pi", j);
      }
      auto f = FiniteFlowPresentation::integer_flow(index_list(j["pi"], "pi"), base);
      if (j.contains("carrier") && as_int(j["carrier"], "carrier")
                                       != static_cast<std::int64_t>(f.carrier)) {
        bad("carrier does not match pi", j);
      }
      return f;
    }
    if (!ctx.is_finite()) {
      bad("flows over product groups are not supported", j);
    }
    if (j.value("regular", false)) {
      return FiniteFlowPresentation::regular(ctx);
    }
    if (!j.contains("generators") || !j["generators"].is_array()) {
      bad("finite-group flows need generators", j);
    }
    std::vector<std::pair<GroupElement, Permutation>> gens;
    for (auto const& g : j["generators"]) {
      if (!g.is_object() || !g.contains("element") || !g.contains("perm")) {
        bad("generator entries are {element, perm}", g);
      }
      gens.emplace_back(element_from_json(ctx, g["element"]), index_list(g["perm"], "perm"));
    }
    auto const carrier = j.contains("carrier")
                             ? static_cast<std::size_t>(as_positive(j["carrier"], "carrier"))
                             : (gens.empty() ? 0 : gens.front().second.size());
    return FiniteFlowPresentation::finite_flow(ctx, carrier, std::move(gens), base);
  }

  DefinableMap map_from_json(GroupContext const& ctx, Json const& j) {
    if (!j.is_object()) {
      bad("map must be an object", j);
    }
    try {
      if (ctx.is_finite()) {
        return DefinableMap::finite_map(ctx, index_list(j.value("table", Json()), "table"),
                                        as_positive(j.value("codomain", Json()), "codomain"));
      }
      if (!ctx.is_integers()) {
        bad("maps over product groups are not supported", j);
      }
      if (j.contains("mod")) {
        auto const            m = as_positive(j["mod"], "mod");
        EventuallyPeriodicMap f;
        f.period = m;
        for (std::uint64_t r = 0; r < m; ++r) {
          f.up_values.push_back(r);
          f.down_values.push_back(r);
        }
        return DefinableMap::integer_map(std::move(f), m);
      }
      EventuallyPeriodicMap f;
      f.period      = as_positive(j.value("period", Json(1)), "period");
      f.up_values   = index_list(j.value("up", Json()), "up");
      f.down_values = j.contains("down") ? index_list(j["down"], "down") : f.up_values;
      f.lo          = as_int(j.value("lo", Json(0)), "lo");
      f.window      = index_list(j.value("window", Json::array()), "window");
      return DefinableMap::integer_map(std::move(f),
                                       as_positive(j.value("codomain", Json()), "codomain"));
    } catch (SchemaError const&) {
      throw;
    } catch (Error const& e) {
      throw SchemaError(std::string("invalid map: ") + e.what());
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Results
  ////////////////////////////////////////////////////////////////////////

  Json to_json(SubgroupDescriptor const& s) {
    switch (s.kind) {
      case SubgroupDescriptor::Kind::multiples:
        return Json{{"multiples_of", s.modulus}, {"text", s.to_string()}};
      case SubgroupDescriptor::Kind::elements: {
        Json e = Json::array();
        for (auto const& g : s.elements) {
          e.push_back(to_json(g));
        }
        return Json{{"elements", e}, {"text", s.to_string()}};
      }
      case SubgroupDescriptor::Kind::product:
        return Json{{"product", {to_json(s.factors[0]), to_json(s.factors[1])}},
                    {"text", s.to_string()}};
    }
    return nullptr;
  }

  Json to_json(Rational const& r) {
    return r.str();
  }

  Json to_json(InvariantMeasure const& mu, LevelTypeSpace const* space) {
    Json w = Json::array();
    for (std::size_t i = 0; i < mu.weights.size(); ++i) {
      if (space) {
        w.push_back(Json{{"point", to_json(space->point(i))}, {"weight", to_json(mu.weights[i])}});
      } else {
        w.push_back(Json{{"point", i}, {"weight", to_json(mu.weights[i])}});
      }
    }
    Json out{{"weights", w}, {"realized_weight", "0"}};
    if (mu.level) {
      out["level"] = mu.level->modulus;
    }
    return out;
  }

  Json to_json(GenericityVerdict const& v) {
    Json out{{"generic", v.generic}};
    if (v.generic) {
      Json t = Json::array();
      for (auto const& g : v.translates) {
        t.push_back(to_json(g));
      }
      out["translates"] = t;
    } else {
      out["obstruction"] = v.obstruction;
    }
    return out;
  }

}  // namespace defdyn
