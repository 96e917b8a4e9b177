#include "defdyn/scenario.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "defdyn/arith.hpp"
#include "defdyn/ellis.hpp"
#include "defdyn/oracle.hpp"

namespace defdyn {

  namespace {

    struct Env {
      GroupContext               ctx = GroupContext::integers();
      std::vector<std::uint64_t> levels;
      RunOptions                 options;
    };

    struct Param {
      char const* name;
      char const* type;
      bool        required;
    };

    using Handler = std::function<Json(Env const&, Json const&)>;

    struct Task {
      char const*        name;
      char const*        summary;
      std::vector<Param> params;
      Handler            run;
    };

    ////////////////////////////////////////////////////////////////////////
    // Parameter access
    ////////////////////////////////////////////////////////////////////////

    Json const& need(Json const& p, char const* key) {
      if (!p.contains(key)) {
        throw SchemaError(std::string("missing parameter \"") + key + "\"");
      }
      return p[key];
    }

    std::uint64_t positive(Json const& j, char const* what) {
      if (!j.is_number_integer() || j.get<std::int64_t>() <= 0) {
        throw SchemaError(std::string(what) + " must be a positive integer: " + j.dump());
      }
      auto const v = j.get<std::uint64_t>();
      if (v > level_guard()) {
        throw SchemaError(std::string(what) + " " + std::to_string(v)
                          + " exceeds the level guard " + std::to_string(level_guard()));
      }
      return v;
    }

    std::int64_t integer(Json const& j, char const* what) {
      if (!j.is_number_integer()) {
        throw SchemaError(std::string(what) + " must be an integer: " + j.dump());
      }
      return j.get<std::int64_t>();
    }

    FamilyBounds bounds_from(Json const& p) {
      FamilyBounds b;
      if (p.contains("moduli")) {
        b.max_modulus = positive(p["moduli"], "moduli");
      }
      if (p.contains("window")) {
        b.window = integer(p["window"], "window");
      }
      if (p.contains("max_size")) {
        b.max_size = static_cast<std::size_t>(integer(p["max_size"], "max_size"));
      }
      return b;
    }

    // Runs f once per level: the task's own "level" parameter, else every
    // scenario level.
    Json per_level(Env const& env, Json const& p,
                   std::function<Json(std::uint64_t)> const& f) {
      if (p.contains("level")) {
        return f(positive(p["level"], "level"));
      }
      if (env.levels.empty()) {
        throw SchemaError("task needs a level (task parameter or scenario level)");
      }
      if (env.levels.size() == 1) {
        return f(env.levels.front());
      }
      Json out = Json::array();
      for (auto n : env.levels) {
        out.push_back(Json{{"level", n}, {"result", f(n)}});
      }
      return Json{{"per_level", out}};
    }

    LevelTypeSpace space_at(Env const& env, std::uint64_t n) {
      return LevelTypeSpace(env.ctx, Level{n});
    }

    Json points_json(LevelTypeSpace const& s, std::vector<std::size_t> const& idx) {
      Json out = Json::array();
      for (auto i : idx) {
        out.push_back(to_json(s.point(i)));
      }
      return out;
    }

    Json elements_json(std::vector<GroupElement> const& v) {
      Json out = Json::array();
      for (auto const& g : v) {
        out.push_back(to_json(g));
      }
      return out;
    }

    Json subflows_json(LevelTypeSpace const& s, std::vector<SubflowDescriptor> const& fl) {
      Json out = Json::array();
      for (auto const& f : fl) {
        out.push_back(points_json(s, f.points));
      }
      return out;
    }

    std::vector<std::size_t> subset_from(LevelTypeSpace const& s, Json const& j) {
      if (!j.is_array()) {
        throw SchemaError("subset must be a list of points");
      }
      std::vector<std::size_t> out;
      for (auto const& x : j) {
        try {
          out.push_back(s.index_of(point_from_json(s.context(), x)));
        } catch (InvalidArgument const& e) {
          throw SchemaError(e.what());
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }

    Json flow_check_json(FlowCheck const& c) {
      Json orbits = Json::array();
      for (auto const& o : c.orbits) {
        orbits.push_back(o);
      }
      return Json{{"valid", true},
                  {"is_ambit", c.is_ambit},
                  {"orbit_period", c.orbit_period},
                  {"orbits", orbits}};
    }

    Json certificate_json(PestovCertificate const& c) {
      return Json{{"set", to_json(c.y)},
                  {"set_text", c.y.to_string()},
                  {"cover", elements_json(c.cover)},
                  {"difference_set", to_json(c.difference)},
                  {"missed", c.missed}};
    }

    ////////////////////////////////////////////////////////////////////////
    // Oracle agreement (--with-oracle)
    ////////////////////////////////////////////////////////////////////////

    Json oracle_difference(DefinableSet const& y, DefinableSet const& structured) {
      oracle::WindowUniverse u;
      if (y.is_presburger()) {
        auto const& s = y.presburger();
        auto const  b = std::max<std::int64_t>(
            {1, std::abs(s.lo()), std::abs(s.hi())});
        u.w = std::max<std::int64_t>(200, 4 * static_cast<std::int64_t>(s.period()) * b);
      }
      auto const brute = oracle::difference_set(y, u);
      bool       agree = true;
      if (y.is_presburger()) {
        std::size_t k = 0;
        for (std::int64_t d = -u.w / 2; d <= u.w / 2; ++d) {
          bool const in_brute = k < brute.size() && brute[k].value() == d;
          k += in_brute ? 1 : 0;
          agree = agree && in_brute == structured.contains(GroupElement::integer(d));
        }
      } else {
        agree = element_set(y.context(), brute) == structured;
      }
      return Json{{"agrees", agree}, {"window", u.w}};
    }

    ////////////////////////////////////////////////////////////////////////
    // Catalog
    ////////////////////////////////////////////////////////////////////////

    std::vector<Task> const& catalog() {
      static std::vector<Task> const tasks = {
          {"compose", "g·h", {{"g", "element", true}, {"h", "element", true}},
           [](Env const& e, Json const& p) {
             return Json{{"result", to_json(compose(e.ctx, element_from_json(e.ctx, need(p, "g")),
                                                    element_from_json(e.ctx, need(p, "h"))))}};
           }},
          {"invert", "g^-1", {{"g", "element", true}},
           [](Env const& e, Json const& p) {
             return Json{{"result", to_json(invert_element(
                                        e.ctx, element_from_json(e.ctx, need(p, "g"))))}};
           }},
          {"boolean-op", "union / intersection / complement of sets",
           {{"kind", "union|intersection|complement", true}, {"a", "set", true}, {"b", "set", false}},
           [](Env const& e, Json const& p) {
             auto const kind = need(p, "kind").get<std::string>();
             auto const a    = set_from_json(e.ctx, need(p, "a"));
             DefinableSet r  = a;
             if (kind == "union") {
               r = set_union(a, set_from_json(e.ctx, need(p, "b")));
             } else if (kind == "intersection") {
               r = set_intersection(a, set_from_json(e.ctx, need(p, "b")));
             } else if (kind == "complement") {
               r = set_complement(a);
             } else {
               throw SchemaError("unknown boolean-op kind " + kind);
             }
             return Json{{"result", to_json(r)}, {"text", r.to_string()}};
           }},
          {"translate", "gY", {{"g", "element", true}, {"set", "set", true}},
           [](Env const& e, Json const& p) {
             auto const r = translate(element_from_json(e.ctx, need(p, "g")),
                                      set_from_json(e.ctx, need(p, "set")));
             return Json{{"result", to_json(r)}, {"text", r.to_string()}};
           }},
          {"difference-set", "Y Y^-1", {{"set", "set", true}},
           [](Env const& e, Json const& p) {
             auto const y   = set_from_json(e.ctx, need(p, "set"));
             auto const r   = difference_set(y);
             Json       out{{"result", to_json(r)}, {"text", r.to_string()}};
             if (e.options.with_oracle && !e.ctx.is_product()) {
               out["oracle"] = oracle_difference(y, r);
             }
             return out;
           }},
          {"is-left-generic", "left genericity with a translate cover or an obstruction",
           {{"set", "set", true}},
           [](Env const& e, Json const& p) {
             auto const y   = set_from_json(e.ctx, need(p, "set"));
             auto const v   = is_left_generic(e.ctx, y);
             Json       out = to_json(v);
             if (e.options.with_oracle && !e.ctx.is_product()) {
               auto const o = oracle::generic(y, 4, 50, {200});
               out["oracle"] = Json{{"found_cover", o.has_value()},
                                    {"agrees", !o || v.generic}};
             }
             return out;
           }},
          {"contains", "does the type decide Y", {{"point", "point", true}, {"set", "set", true}},
           [](Env const& e, Json const& p) {
             return Json{{"result", contains(point_from_json(e.ctx, need(p, "point")),
                                             set_from_json(e.ctx, need(p, "set")))}};
           }},
          {"restrict", "level restriction of a type", {{"point", "point", true}, {"to", "level", true}},
           [](Env const& e, Json const& p) {
             return Json{{"result", to_json(restrict(point_from_json(e.ctx, need(p, "point")),
                                                     Level{positive(need(p, "to"), "to")}))}};
           }},
          {"apply-group", "g·p", {{"g", "element", true}, {"point", "point", true}},
           [](Env const& e, Json const& p) {
             return Json{{"result", to_json(apply_group(e.ctx, element_from_json(e.ctx, need(p, "g")),
                                                        point_from_json(e.ctx, need(p, "point"))))}};
           }},
          {"acting-set", "{g : Y in g·p}", {{"point", "point", true}, {"set", "set", true}},
           [](Env const& e, Json const& p) {
             auto const r = acting_set(e.ctx, point_from_json(e.ctx, need(p, "point")),
                                       set_from_json(e.ctx, need(p, "set")));
             return Json{{"result", to_json(r)}, {"text", r.to_string()}};
           }},
          {"limit-of", "limit point with a witness sequence",
           {{"sign", "+|-", true}, {"res", "integer", true}, {"level", "level", true}},
           [](Env const&, Json const& p) {
             auto const sign = need(p, "sign").get<std::string>();
             if (sign != "+" && sign != "-") {
               throw SchemaError("sign must be + or -");
             }
             auto const lw = limit_of(sign == "+" ? Sign::plus : Sign::minus,
                                      integer(need(p, "res"), "res"),
                                      positive(need(p, "level"), "level"));
             Json seq = Json::array();
             for (std::uint64_t k = 0; k < 5; ++k) {
               seq.push_back(lw.witness.at(k));
             }
             return Json{{"point", to_json(lw.point)}, {"witness", seq}};
           }},
          {"star", "Ellis product p*q", {{"p", "point", true}, {"q", "point", true}},
           [](Env const& e, Json const& p) {
             auto const a   = point_from_json(e.ctx, need(p, "p"));
             auto const b   = point_from_json(e.ctx, need(p, "q"));
             auto const r   = star(e.ctx, a, b);
             Json       out{{"result", to_json(r)}};
             if (e.options.with_oracle) {
               auto const lvl = std::max(level_of(a), level_of(b));
               auto const o   = oracle::star(e.ctx, a, b, lvl);
               auto const s   = star_via_schema(e.ctx, a, b);
               out["oracle"]  = Json{{"numeric", to_json(o)},
                                     {"schema", to_json(s)},
                                     {"agrees", o == r && s == r}};
             }
             return out;
           }},
          {"star-via-schema", "p*q from the defining schema of q",
           {{"p", "point", true}, {"q", "point", true}},
           [](Env const& e, Json const& p) {
             return Json{{"result", to_json(star_via_schema(e.ctx, point_from_json(e.ctx, need(p, "p")),
                                                            point_from_json(e.ctx, need(p, "q"))))}};
           }},
          {"right-translation", "the map r_q on a level", {{"q", "point", true}, {"level", "level", false}},
           [](Env const& e, Json const& p) {
             return per_level(e, p, [&](std::uint64_t n) {
               auto const s = space_at(e, n);
               auto const r = right_translation(s, point_from_json(e.ctx, need(p, "q")));
               Json       image = Json::array();
               for (std::size_t i = 0; i < s.size(); ++i) {
                 image.push_back(Json{{"from", to_json(s.point(i))}, {"to", to_json(s.point(r.image[i]))}});
               }
               return Json{{"image", image},
                           {"maps_base_point", r.maps_base_point},
                           {"equivariant", r.equivariant},
                           {"agrees_on_realized", r.agrees_on_realized},
                           {"left_continuous", r.left_continuous},
                           {"certified", r.certified()}};
             });
           }},
          {"find-idempotents", "p with p*p = p", {{"level", "level", false}},
           [](Env const& e, Json const& p) {
             return per_level(e, p, [&](std::uint64_t n) {
               auto const s   = space_at(e, n);
               auto const ids = find_idempotents(s);
               Json       out{{"idempotents", Json::array()}};
               for (auto const& q : ids) {
                 out["idempotents"].push_back(to_json(q));
               }
               if (e.options.with_oracle && e.ctx.is_integers() && n <= 8) {
                 std::vector<std::size_t> mine;
                 for (auto const& q : ids) {
                   mine.push_back(s.index_of(q));
                 }
                 out["oracle"] = Json{{"agrees", mine == oracle::idempotents(n)}};
               }
               return out;
             });
           }},
          {"check-flow", "validate a finite flow presentation", {{"flow", "flow", true}},
           [](Env const& e, Json const& p) {
             return flow_check_json(check_definable_flow(flow_from_json(e.ctx, need(p, "flow"))));
           }},
          {"universal-ambit-morphism", "the map from the level type space onto an ambit",
           {{"flow", "flow", true}, {"level", "level", false}},
           [](Env const& e, Json const& p) {
             auto const f = flow_from_json(e.ctx, need(p, "flow"));
             return per_level(e, p, [&](std::uint64_t n) {
               auto const s = space_at(e, n);
               auto const h = universal_ambit_morphism(s, f);
               Json       image = Json::array();
               for (std::size_t i = 0; i < s.size(); ++i) {
                 image.push_back(Json{{"from", to_json(s.point(i))}, {"to", h.limit_image[i]}});
               }
               Json realized = Json::array();
               for (auto const& g : s.realized_representatives()) {
                 realized.push_back(Json{{"from", to_json(g)}, {"to", h.realized_image(g)}});
               }
               return Json{{"image", image},
                           {"realized_image", realized},
                           {"equivariant", h.equivariant},
                           {"surjective", h.surjective},
                           {"unique", h.limits_forced},
                           {"certified", h.certified()}};
             });
           }},
          {"minimal-subflows", "minimal closed invariant subsets of a level or a flow",
           {{"level", "level", false}, {"flow", "flow", false}},
           [](Env const& e, Json const& p) {
             if (p.contains("flow")) {
               Json out = Json::array();
               for (auto const& f : minimal_subflows(flow_from_json(e.ctx, p["flow"]))) {
                 out.push_back(f.points);
               }
               return Json{{"subflows", out}, {"count", out.size()}};
             }
             return per_level(e, p, [&](std::uint64_t n) {
               auto const s  = space_at(e, n);
               auto const fl = minimal_subflows(s);
               Json       out{{"subflows", subflows_json(s, fl)}, {"count", fl.size()}};
               if (e.options.with_oracle && e.ctx.is_integers() && n <= 8) {
                 std::vector<std::vector<std::size_t>> mine;
                 for (auto const& f : fl) {
                   mine.push_back(f.points);
                 }
                 out["oracle"] = Json{{"agrees", mine == oracle::minimal_subflows(n)}};
               }
               return out;
             });
           }},
          {"is-left-ideal", "is the subset of the level space a left ideal",
           {{"subset", "point list", true}, {"level", "level", false}},
           [](Env const& e, Json const& p) {
             return per_level(e, p, [&](std::uint64_t n) {
               auto const s   = space_at(e, n);
               auto const sub = subset_from(s, need(p, "subset"));
               return Json{{"left_ideal", is_left_ideal(s, sub)}, {"subflow", is_subflow(s, sub)}};
             });
           }},
          {"universal-minimal-flow", "a minimal subflow with isomorphisms onto the others",
           {{"level", "level", false}},
           [](Env const& e, Json const& p) {
             return per_level(e, p, [&](std::uint64_t n) {
               auto const s   = space_at(e, n);
               auto const umf = universal_minimal_flow(s);
               Json       isos = Json::array();
               for (auto const& j : minimal_subflows(s)) {
                 if (j == umf.flow) {
                   continue;
                 }
                 auto const iso = flow_isomorphism(s, umf.flow, j);
                 Json       map = Json::array();
                 for (std::size_t k = 0; k < iso.from.points.size(); ++k) {
                   map.push_back(Json{{"from", to_json(s.point(iso.from.points[k]))},
                                      {"to", to_json(s.point(iso.map[k]))}});
                 }
                 isos.push_back(Json{{"to", points_json(s, j.points)},
                                     {"map", map},
                                     {"t", to_json(iso.t)},
                                     {"u", to_json(iso.u)},
                                     {"s", to_json(iso.s)},
                                     {"equivariant", iso.equivariant},
                                     {"bijective", iso.bijective},
                                     {"inverse_verified", iso.inverse_verified}});
               }
               return Json{{"flow", points_json(s, umf.flow.points)},
                           {"idempotent", to_json(umf.idempotent)},
                           {"isomorphisms", isos}};
             });
           }},
          {"extend-definable-map", "extension of a definable map to the level type space",
           {{"map", "map", true}, {"level", "level", false}},
           [](Env const& e, Json const& p) {
             auto const f = map_from_json(e.ctx, need(p, "map"));
             return per_level(e, p, [&](std::uint64_t n) {
               auto const s   = space_at(e, n);
               auto const ext = extend_definable_map(s, f);
               Json       vals = Json::array();
               for (std::size_t i = 0; i < s.size(); ++i) {
                 vals.push_back(Json{{"point", to_json(s.point(i))}, {"value", ext.values[i]}});
               }
               return Json{{"values", vals}, {"singleton_certified", ext.singleton_certified}};
             });
           }},
          {"kernel-of-action", "elements acting trivially on the minimal subflow or a flow",
           {{"level", "level", false}, {"flow", "flow", false}},
           [](Env const& e, Json const& p) {
             if (p.contains("flow")) {
               return Json{{"kernel", to_json(kernel_of_action(flow_from_json(e.ctx, p["flow"])))}};
             }
             return per_level(e, p, [&](std::uint64_t n) {
               return Json{{"kernel", to_json(kernel_of_action(space_at(e, n)))}};
             });
           }},
          {"invariant-measure", "canonical invariant probability measure",
           {{"level", "level", false}, {"flow", "flow", false}},
           [](Env const& e, Json const& p) {
             if (p.contains("flow")) {
               auto const f  = flow_from_json(e.ctx, p["flow"]);
               auto const mu = invariant_measure(f);
               return Json{{"measure", to_json(mu, nullptr)},
                           {"invariant", is_invariant(mu.weights, check_definable_flow(f).action)}};
             }
             return per_level(e, p, [&](std::uint64_t n) {
               auto const s  = space_at(e, n);
               auto const mu = invariant_measure(s);
               return Json{{"measure", to_json(mu, &s)},
                           {"invariant", is_invariant(mu.weights, s.generator_permutations())}};
             });
           }},
          {"fixed-points", "points fixed by the whole group",
           {{"level", "level", false}, {"flow", "flow", false}},
           [](Env const& e, Json const& p) {
             if (p.contains("flow")) {
               return Json{{"fixed_points", fixed_points(flow_from_json(e.ctx, p["flow"]))}};
             }
             return per_level(e, p, [&](std::uint64_t n) {
               auto const s = space_at(e, n);
               return Json{{"fixed_points", points_json(s, fixed_points(s))}};
             });
           }},
          {"pestov-check", "search the family for a generic Y with YY^-1 != G",
           {{"moduli", "integer", false}, {"window", "integer", false}, {"max_size", "integer", false}},
           [](Env const& e, Json const& p) {
             auto const r = pestov_check(e.ctx, bounds_from(p));
             Json       out{{"examined", r.examined}};
             if (r.certificate) {
               out["certificate"] = certificate_json(*r.certificate);
             } else {
               out["verdict"] = "exhausted";
               out["note"]    = r.note;
             }
             return out;
           }},
          {"pestov-consistency", "certificate search against fixed points along a divisor chain",
           {{"moduli", "integer", false}, {"window", "integer", false}},
           [](Env const& e, Json const& p) {
             auto const c = pestov_consistency(e.ctx, bounds_from(p));
             return Json{{"levels", c.levels},
                         {"certificate_found", c.certificate_found},
                         {"fixed_points_everywhere", c.fixed_points_everywhere},
                         {"fixed_point_free_level", c.fixed_point_free_level},
                         {"consistent", c.consistent()}};
           }},
          {"kernel-intersection", "intersection of YY^-1 over generic Y in the family",
           {{"moduli", "integer", false}, {"window", "integer", false}, {"max_size", "integer", false}},
           [](Env const& e, Json const& p) {
             auto const k = kernel_intersection(e.ctx, bounds_from(p));
             return Json{{"subgroup", to_json(k.subgroup)},
                         {"action_kernel", to_json(k.action_kernel)},
                         {"level", k.level},
                         {"generic_sets", k.generic_sets},
                         {"matches", k.matches()}};
           }},
          {"singleton-minimal-criterion", "both sides of the singleton-minimal-flow equivalence",
           {{"level", "level", false}, {"moduli", "integer", false}, {"window", "integer", false}},
           [](Env const& e, Json const& p) {
             return per_level(e, p, [&](std::uint64_t n) {
               auto const s = space_at(e, n);
               auto const r = singleton_minimal_criterion(s, bounds_from(p));
               Json       out{{"minimal_subflows_singletons", r.all_minimal_singletons},
                              {"meeting_sets_have_full_difference", r.meeting_sets_full},
                              {"agree", r.agree()}};
               if (r.large_subflow) {
                 out["large_subflow"] = points_json(s, r.large_subflow->points);
               }
               if (r.witness_set) {
                 out["witness_set"] = to_json(*r.witness_set);
               }
               return out;
             });
           }},
          {"measure-definability", "separation of cylinder-measure thresholds by definable sets",
           {{"level", "level", false}, {"moduli", "integer", false}, {"window", "integer", false}},
           [](Env const& e, Json const& p) {
             return per_level(e, p, [&](std::uint64_t n) {
               auto const s = space_at(e, n);
               auto const r = measure_definability_check(invariant_measure(s), s, bounds_from(p));
               return Json{{"passed", r.passed},
                           {"sets_checked", r.sets_checked},
                           {"threshold_pairs", r.witnesses.size()}};
             });
           }},
          {"logic-quotient", "quotient by a bounded equivalence",
           {{"modulus", "integer", false}, {"classes", "partition", false}, {"cosets", "element list", false}},
           [](Env const& e, Json const& p) {
             BoundedEquivalence eq;
             if (e.ctx.is_integers()) {
               eq = BoundedEquivalence::congruence(positive(need(p, "modulus"), "modulus"));
             } else if (p.contains("classes")) {
               std::vector<std::vector<std::size_t>> classes;
               for (auto const& c : p["classes"]) {
                 classes.push_back(c.get<std::vector<std::size_t>>());
               }
               eq = BoundedEquivalence::partition(e.ctx, std::move(classes));
             } else if (p.contains("cosets")) {
               std::vector<GroupElement> sub;
               for (auto const& g : p["cosets"]) {
                 sub.push_back(element_from_json(e.ctx, g));
               }
               eq = BoundedEquivalence::cosets(e.ctx, sub);
             } else {
               eq = BoundedEquivalence::equality(e.ctx);
             }
             auto const q = logic_quotient(eq);
             Json       fibers = Json::array();
             for (auto const& f : q.fibers) {
               fibers.push_back(to_json(f));
             }
             return Json{{"size", q.size()},
                         {"fibers", fibers},
                         {"topology", "discrete"},
                         {"group_quotient", q.quotient_group.has_value()}};
           }},
          {"g00", "level approximation of the smallest bounded-index type-definable subgroup",
           {{"level", "level", false}},
           [](Env const& e, Json const& p) {
             return per_level(e, p, [&](std::uint64_t n) {
               return Json{{"subgroup", to_json(g00_at_level(e.ctx, n))}};
             });
           }},
          {"universal-compactification", "G/N at a level with reduction maps onto a family",
           {{"level", "level", false}, {"targets", "integer list", false}, {"homs", "list of {target, map}", false}},
           [](Env const& e, Json const& p) {
             std::vector<CompactificationTarget> family;
             if (p.contains("targets")) {
               for (auto const& m : p["targets"]) {
                 family.push_back(CompactificationTarget::cyclic(positive(m, "target")));
               }
             }
             if (p.contains("homs")) {
               for (auto const& h : p["homs"]) {
                 family.push_back(CompactificationTarget::homomorphism(
                     group_from_json(need(h, "target")),
                     need(h, "map").get<std::vector<std::size_t>>()));
               }
             }
             auto run = [&](std::uint64_t n) {
               auto const u    = universal_compactification(e.ctx, n, family);
               Json       maps = Json::array();
               for (auto const& m : u.maps) {
                 maps.push_back(Json{{"target", m.target},
                                     {"table", m.table},
                                     {"homomorphism", m.homomorphism},
                                     {"commutes", m.commutes},
                                     {"surjective", m.surjective},
                                     {"unique", m.unique}});
               }
               return Json{{"quotient_size", u.quotient.size()},
                           {"maps", maps},
                           {"certified", u.certified()}};
             };
             if (!e.ctx.is_integers()) {
               return run(1);
             }
             return per_level(e, p, run);
           }},
          {"definable-homomorphism", "check a definable homomorphism onto a finite group",
           {{"map", "map", true}, {"target", "group", true}},
           [](Env const& e, Json const& p) {
             auto const v = definable_homomorphism_check(map_from_json(e.ctx, need(p, "map")),
                                                         group_from_json(need(p, "target")));
             Json out{{"valid", v.valid()},
                      {"homomorphism", v.homomorphism},
                      {"surjective", v.surjective},
                      {"definable", v.definable},
                      {"fiber_modulus", v.fiber_modulus},
                      {"induced", v.induced},
                      {"closure_identity", v.closure_identity}};
             if (!v.failure.empty()) {
               out["failure"] = v.failure;
             }
             return out;
           }},
      };
      return tasks;
    }

    Task const* find_task(std::string const& name) {
      for (auto const& t : catalog()) {
        if (name == t.name) {
          return &t;
        }
      }
      return nullptr;
    }

    std::pair<std::string, Json> split_task(Json const& t) {
      if (t.is_string()) {
        return {t.get<std::string>(), Json::object()};
      }
      if (t.is_object() && t.contains("op")) {
        if (!t["op"].is_string()) {
          throw SchemaError("task op must be a string");
        }
        Json params = t;
        params.erase("op");
        return {t["op"].get<std::string>(), params};
      }
      if (t.is_object() && t.size() == 1) {
        auto const& [name, params] = *t.items().begin();
        if (!params.is_object()) {
          throw SchemaError("parameters of task " + name + " must be an object");
        }
        return {name, params};
      }
      throw SchemaError("task must be a name, {name: params} or {op: name, ...}: " + t.dump());
    }

    char const* error_kind(std::exception const& e) {
      if (dynamic_cast<LevelTooCoarse const*>(&e)) {
        return "level-too-coarse";
      }
      if (dynamic_cast<LevelError const*>(&e)) {
        return "level-error";
      }
      if (dynamic_cast<ContextMismatch const*>(&e)) {
        return "context-mismatch";
      }
      if (dynamic_cast<GuardExceeded const*>(&e)) {
        return "guard-exceeded";
      }
      if (dynamic_cast<InvalidFlow const*>(&e)) {
        return "invalid-flow";
      }
      if (dynamic_cast<InvalidGroup const*>(&e)) {
        return "invalid-group";
      }
      if (dynamic_cast<InvalidArgument const*>(&e)) {
        return "invalid-argument";
      }
      if (dynamic_cast<Unsupported const*>(&e)) {
        return "unsupported";
      }
      return "error";
    }

    Json report_header(Json const& scenario) {
      return Json{{"tool", kToolName},
                  {"version", kToolVersion},
                  {"schema", kSchemaVersion},
                  {"scenario", scenario},
                  {"results", Json::array()}};
    }

    RunOutcome schema_failure(Json report, std::string const& message) {
      report["status"] = "schema-error";
      report["error"]  = message;
      return {std::move(report), kExitSchemaError};
    }

  }  // namespace

  RunOutcome run_scenario(Json const& scenario, RunOptions const& options) {
    Json report = report_header(scenario);
    Env  env;
    env.options = options;
    std::vector<std::pair<Task const*, Json>> plan;
    try {
      if (!scenario.is_object()) {
        throw SchemaError("scenario must be a JSON object");
      }
      if (scenario.contains("schema") && scenario["schema"] != kSchemaVersion) {
        throw SchemaError("unsupported schema version " + scenario["schema"].dump());
      }
      env.ctx = group_from_json(need(scenario, "group"));
      if (scenario.contains("level")) {
        env.levels.push_back(positive(scenario["level"], "level"));
      }
      if (scenario.contains("levels")) {
        if (!scenario["levels"].is_array()) {
          throw SchemaError("levels must be a list");
        }
        for (auto const& n : scenario["levels"]) {
          env.levels.push_back(positive(n, "level"));
        }
      }
      if (env.levels.empty() && !env.ctx.is_integers()) {
        env.levels.push_back(1);
      }
      auto const& tasks = need(scenario, "tasks");
      if (!tasks.is_array()) {
        throw SchemaError("tasks must be a list");
      }
      for (auto const& t : tasks) {
        auto [name, params] = split_task(t);
        auto const* task    = find_task(name);
        if (!task) {
          throw SchemaError("unknown task \"" + name + "\"");
        }
        for (auto const& [key, value] : params.items()) {
          bool known = false;
          for (auto const& prm : task->params) {
            known = known || key == prm.name;
          }
          if (!known) {
            throw SchemaError("task " + name + " has no parameter \"" + key + "\"");
          }
        }
        for (auto const& prm : task->params) {
          if (prm.required && !params.contains(prm.name)) {
            throw SchemaError("task " + name + " needs parameter \"" + prm.name + "\"");
          }
        }
        plan.emplace_back(task, std::move(params));
      }
    } catch (SchemaError const& e) {
      return schema_failure(std::move(report), e.what());
    } catch (Json::exception const& e) {
      return schema_failure(std::move(report), e.what());
    }

    int exit_code = kExitOk;
    for (auto const& [task, params] : plan) {
      Json entry{{"task", task->name}, {"params", params}};
      auto const start = std::chrono::steady_clock::now();
      try {
        entry["result"] = task->run(env, params);
      } catch (SchemaError const& e) {
        report["results"].push_back(entry);
        return schema_failure(std::move(report), e.what());
      } catch (Json::exception const& e) {
        report["results"].push_back(entry);
        return schema_failure(std::move(report), e.what());
      } catch (Error const& e) {
        entry["error"]      = e.what();
        entry["error_kind"] = error_kind(e);
        exit_code           = kExitTaskError;
      }
      auto const stop = std::chrono::steady_clock::now();
      entry["timing_ms"]
          = std::chrono::duration<double, std::milli>(stop - start).count();
      report["results"].push_back(std::move(entry));
    }
    report["status"] = exit_code == kExitOk ? "ok" : "partial";
    return {std::move(report), exit_code};
  }

  RunOutcome run_scenario_text(std::string const& text, RunOptions const& options) {
    Json scenario;
    try {
      scenario = Json::parse(text);
    } catch (Json::parse_error const& e) {
      return schema_failure(report_header(nullptr), std::string("malformed JSON: ") + e.what());
    }
    return run_scenario(scenario, options);
  }

  Json list_capabilities() {
    Json tasks = Json::array();
    for (auto const& t : catalog()) {
      Json params = Json::object();
      for (auto const& p : t.params) {
        params[p.name] = Json{{"type", p.type}, {"required", p.required}};
      }
      tasks.push_back(Json{{"name", t.name}, {"summary", t.summary}, {"params", params}});
    }
    return Json{{"tool", kToolName},
                {"version", kToolVersion},
                {"schema", kSchemaVersion},
                {"tasks", tasks}};
  }

  Json strip_timings(Json report) {
    if (report.contains("results")) {
      for (auto& r : report["results"]) {
        r.erase("timing_ms");
      }
    }
    return report;
  }

  std::string render_text(Json const& report) {
    std::ostringstream os;
    os << report.value("tool", "defdyn") << " " << report.value("version", "") << "\n";
    if (report.contains("scenario") && report["scenario"].is_object()
        && report["scenario"].contains("group")) {
      os << "group: " << report["scenario"]["group"].dump() << "\n";
    }
    std::size_t i = 0;
    for (auto const& r : report.value("results", Json::array())) {
      os << "\n[" << ++i << "] " << r.value("task", "?");
      if (r.contains("params") && !r["params"].empty()) {
        os << " " << r["params"].dump();
      }
      os << "\n";
      if (r.contains("error")) {
        os << "    error (" << r.value("error_kind", "error") << "): "
           << r["error"].get<std::string>() << "\n";
      } else if (r.contains("result")) {
        if (r["result"].is_object()) {
          for (auto const& [k, v] : r["result"].items()) {
            os << "    " << k << ": " << v.dump() << "\n";
          }
        } else {
          os << "    " << r["result"].dump() << "\n";
        }
      }
    }
    os << "\nstatus: " << report.value("status", "?");
    if (report.contains("error")) {
      os << " (" << report["error"].get<std::string>() << ")";
    }
    os << "\n";
    return os.str();
  }

}  // namespace defdyn
