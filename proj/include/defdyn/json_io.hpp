#pragma once

#include <json.hpp>

#include "defdyn/amenability.hpp"
#include "defdyn/compactify.hpp"
#include "defdyn/defset.hpp"
#include "defdyn/error.hpp"
#include "defdyn/flows.hpp"
#include "defdyn/group.hpp"
#include "defdyn/typespace.hpp"

namespace defdyn {

  using Json = nlohmann::json;

  // Malformed scenario input.
  class SchemaError : public Error {
   public:
    using Error::Error;
  };

  // Groups: "integers" | "Z" | bundled name ("C3", "S3", ...) |
  // {"cyclic": n} | {"table": [[...]], "name": s} | {"product": [g, g]}.
  GroupContext group_from_json(Json const& j);
  Json         to_json(GroupContext const& ctx);

  // Integers and finite indices as numbers, product elements as [l, r].
  GroupElement element_from_json(GroupContext const& ctx, Json const& j);
  Json         to_json(GroupElement const& g);

  // {"kind":"realized","value":v} | {"kind":"limit","sign":"+","res":r,"mod":n}
  // | {"kind":"pair","left":p,"right":q}
  TypePoint point_from_json(GroupContext const& ctx, Json const& j);
  Json      to_json(TypePoint const& p);

  // Integers: "evens" | "odds" | "all" | "empty" | {"at_least": a} |
  // {"at_most": a} | {"interval": [lo, hi]} | {"class": [r, n]} |
  // {"mod": N, "up": [...], "down": [...], "window": {"lo", "hi", "bits"}}
  // or with "split": s in place of a window. Finite: element list, "all",
  // "empty". Products: {"rects": [[A, B], ...]}.
  DefinableSet set_from_json(GroupContext const& ctx, Json const& j);
  Json         to_json(DefinableSet const& y);

  // Integers: {"pi": [...], "base": i} or {"rotation": d}. Finite:
  // {"carrier": k, "generators": [{"element": g, "perm": [...]}], "base": i}
  // or {"regular": true}. Any group: {"trivial": k}.
  FiniteFlowPresentation flow_from_json(GroupContext const& ctx, Json const& j);

  // Integers: {"period", "up", "down", "lo", "window", "codomain"} or the
  // reduction {"mod": m}. Finite: {"table": [...], "codomain": c}.
  DefinableMap map_from_json(GroupContext const& ctx, Json const& j);

  Json to_json(SubgroupDescriptor const& s);
  Json to_json(Rational const& r);
  Json to_json(InvariantMeasure const& mu, LevelTypeSpace const* space);
  Json to_json(GenericityVerdict const& v);

}  // namespace defdyn
