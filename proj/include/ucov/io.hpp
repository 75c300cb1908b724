#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ucov/algebra.hpp"
#include "ucov/cover.hpp"
#include "ucov/groups.hpp"
#include "ucov/ktheory.hpp"
#include "ucov/paths.hpp"

namespace ucov {

using Json = nlohmann::ordered_json;

// All parsers throw ParseError with a location string ("context: problem")
// identifying the offending entry.
//
// File grammars (JSON, UTF-8):
//   algebra   {"blocks": [n1, ...], "weights": [w1, ...]}
//   element   {"algebra"?: ..., "blocks": [[[ [re, im], ...row ], ...rows ], ...]}
//   path      {"algebra": ..., "type": "segments", "start": elt,
//              "generators": [elt, ...]}
//          or {"algebra": ..., "type": "samples", "times": [t, ...],
//              "values": [elt, ...]}
//   covering  {"algebra": ..., "endpoint": elt, "w": ["p/q" | number, ...]}
//   loopclass {"algebra": ..., "winds": [int, ...]}
//   group     {"name"?: str, "elements"?: [str, ...], "table": [[int, ...], ...]}
//          or {"name"?: str, "degree": n, "generators": [[perm], ...]}
//   ses       {"K": group, "S": group, "U": group,
//              "alpha": [int, ...], "beta": [int, ...], "gamma"?: [int, ...]}
//   config    {"unitarity"?: w, "gap_slack"?: x, ...} (any Tolerances field)

Json loadJsonFile(const std::string& path);

TracialAlgebra parseAlgebra(const Json& j, const std::string& context = "algebra");

// Element blocks; the algebra comes from the embedded "algebra" key or the
// fallback (exactly one must be available).
Element parseElement(const Json& j,
                     const std::optional<TracialAlgebra>& fallback,
                     const std::string& context = "element");

// Accepts both path forms; a samples-form file is reduced with fromSamples.
SegmentPath parsePath(const Json& j,
                      const std::optional<TracialAlgebra>& fallback,
                      const Tolerances& tol = Tolerances::defaults(),
                      const std::string& context = "path");

CoveringElement parseCoveringElement(const Json& j,
                                     const std::optional<TracialAlgebra>& fallback,
                                     const Tolerances& tol = Tolerances::defaults());

LoopClass parseLoopClass(const Json& j,
                         const std::optional<TracialAlgebra>& fallback);

GroupPtr parseGroup(const Json& j, const std::string& context = "group");

struct SesFile {
  ShortExactSequence ses;
  std::optional<GroupHom> gamma;
};
SesFile parseSes(const Json& j);

Tolerances parseConfig(const Json& j);

// Serializers (stable key order, round-trip exact).
Json algebraToJson(const TracialAlgebra& a);
Json elementToJson(const Element& e, bool includeAlgebra = true);
Json pathToJson(const SegmentPath& p);
Json coveringElementToJson(const CoveringElement& x);
Json loopClassToJson(const LoopClass& c);

}  // namespace ucov
