#include "ucov/io.hpp"

#include <fstream>
#include <utility>

#include "ucov/errors.hpp"

namespace ucov {

namespace {

[[noreturn]] void fail(const std::string& context, const std::string& problem) {
  throw ParseError(context + ": " + problem);
}

const Json& member(const Json& j, const char* key, const std::string& context) {
  if (!j.is_object()) fail(context, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(context, std::string("missing key \"") + key + "\"");
  return *it;
}

double asNumber(const Json& j, const std::string& context) {
  if (!j.is_number()) fail(context, "expected a number");
  return j.get<double>();
}

std::int64_t asInteger(const Json& j, const std::string& context) {
  if (!j.is_number_integer()) fail(context, "expected an integer");
  return j.get<std::int64_t>();
}

const Json& asArray(const Json& j, const std::string& context) {
  if (!j.is_array()) fail(context, "expected an array");
  return j;
}

Complex asComplex(const Json& j, const std::string& context) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2)
    fail(context, "expected [re, im] (or a plain real number)");
  return Complex(asNumber(j[0], context + "[0]"), asNumber(j[1], context + "[1]"));
}

Matrix parseMatrix(const Json& j, int n, const std::string& context) {
  asArray(j, context);
  if (static_cast<int>(j.size()) != n)
    fail(context, "expected " + std::to_string(n) + " rows, got " +
                      std::to_string(j.size()));
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const Json& row = j[r];
    std::string rowContext = context + ", row " + std::to_string(r);
    asArray(row, rowContext);
    if (static_cast<int>(row.size()) != n)
      fail(rowContext, "expected " + std::to_string(n) + " entries, got " +
                           std::to_string(row.size()));
    for (int c = 0; c < n; ++c)
      m(r, c) = asComplex(row[c], rowContext + ", col " + std::to_string(c));
  }
  return m;
}

TracialAlgebra resolveAlgebra(const Json& j,
                              const std::optional<TracialAlgebra>& fallback,
                              const std::string& context) {
  if (j.is_object() && j.contains("algebra"))
    return parseAlgebra(j["algebra"], context + ": algebra");
  if (fallback) return *fallback;
  fail(context, "no embedded \"algebra\" and no --algebra file given");
}

Json complexToJson(const Complex& z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

TracialAlgebra parseAlgebra(const Json& j, const std::string& context) {
  const Json& blocks = asArray(member(j, "blocks", context), context + ": blocks");
  const Json& weights = asArray(member(j, "weights", context), context + ": weights");
  if (blocks.size() != weights.size() || blocks.empty())
    fail(context, "blocks and weights must be nonempty and equally long");
  std::vector<int> sizes;
  std::vector<double> ws;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    std::int64_t n = asInteger(blocks[i], context + ": blocks[" + std::to_string(i) + "]");
    if (n < 1 || n > 64) fail(context, "block size " + std::to_string(n) +
                                           " out of the supported range [1, 64]");
    sizes.push_back(static_cast<int>(n));
    ws.push_back(asNumber(weights[i], context + ": weights[" + std::to_string(i) + "]"));
  }
  return TracialAlgebra(std::move(sizes), std::move(ws));
}

Element parseElement(const Json& j, const std::optional<TracialAlgebra>& fallback,
                     const std::string& context) {
  TracialAlgebra algebra = resolveAlgebra(j, fallback, context);
  const Json& blocks = asArray(member(j, "blocks", context), context + ": blocks");
  if (static_cast<int>(blocks.size()) != algebra.blockCount())
    fail(context, "expected " + std::to_string(algebra.blockCount()) +
                      " blocks, got " + std::to_string(blocks.size()));
  std::vector<Matrix> ms;
  ms.reserve(blocks.size());
  for (int i = 0; i < algebra.blockCount(); ++i)
    ms.push_back(parseMatrix(blocks[i], algebra.blockSize(i),
                             context + ": block " + std::to_string(i)));
  return Element(std::move(algebra), std::move(ms));
}

SegmentPath parsePath(const Json& j, const std::optional<TracialAlgebra>& fallback,
                      const Tolerances& tol, const std::string& context) {
  TracialAlgebra algebra = resolveAlgebra(j, fallback, context);
  const Json& type = member(j, "type", context);
  if (!type.is_string()) fail(context, "\"type\" must be a string");
  std::string kind = type.get<std::string>();
  if (kind == "segments") {
    Element start = parseElement(member(j, "start", context), algebra,
                                 context + ": start");
    const Json& gens = asArray(member(j, "generators", context),
                               context + ": generators");
    std::vector<Hermitian> generators;
    generators.reserve(gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g)
      generators.push_back(Hermitian(
          parseElement(gens[g], algebra,
                       context + ": generators[" + std::to_string(g) + "]"),
          tol));
    return SegmentPath(Unitary(std::move(start), tol), std::move(generators));
  }
  if (kind == "samples") {
    const Json& times = asArray(member(j, "times", context), context + ": times");
    const Json& values = asArray(member(j, "values", context), context + ": values");
    if (times.size() != values.size())
      fail(context, "times and values must be equally long");
    std::vector<double> ts;
    std::vector<Unitary> vs;
    for (std::size_t s = 0; s < times.size(); ++s) {
      ts.push_back(asNumber(times[s], context + ": times[" + std::to_string(s) + "]"));
      vs.push_back(Unitary(
          parseElement(values[s], algebra,
                       context + ": values[" + std::to_string(s) + "]"),
          tol));
    }
    return fromSamples(SampledPath(std::move(ts), std::move(vs), tol), tol);
  }
  fail(context, "\"type\" must be \"segments\" or \"samples\"");
}

CoveringElement parseCoveringElement(const Json& j,
                                     const std::optional<TracialAlgebra>& fallback,
                                     const Tolerances& tol) {
  const std::string context = "covering element";
  TracialAlgebra algebra = resolveAlgebra(j, fallback, context);
  Element endpoint = parseElement(member(j, "endpoint", context), algebra,
                                  context + ": endpoint");
  const Json& wj = asArray(member(j, "w", context), context + ": w");
  if (static_cast<int>(wj.size()) != algebra.blockCount())
    fail(context, "w must have one entry per block");
  std::vector<Rational> w;
  w.reserve(wj.size());
  for (std::size_t i = 0; i < wj.size(); ++i) {
    const Json& entry = wj[i];
    if (entry.is_string())
      w.push_back(rationalFromString(entry.get<std::string>()));
    else if (entry.is_number_integer())
      w.push_back(Rational(static_cast<long>(entry.get<std::int64_t>())));
    else if (entry.is_number())
      w.push_back(rationalFromDouble(entry.get<double>()));
    else
      fail(context, "w[" + std::to_string(i) + "] must be \"p/q\" or a number");
  }
  return CoveringElement(Unitary(std::move(endpoint), tol), std::move(w), tol);
}

LoopClass parseLoopClass(const Json& j,
                         const std::optional<TracialAlgebra>& fallback) {
  const std::string context = "loop class";
  TracialAlgebra algebra = resolveAlgebra(j, fallback, context);
  const Json& winds = asArray(member(j, "winds", context), context + ": winds");
  if (static_cast<int>(winds.size()) != algebra.blockCount())
    fail(context, "winds must have one entry per block");
  std::vector<std::int64_t> ws;
  ws.reserve(winds.size());
  for (std::size_t i = 0; i < winds.size(); ++i)
    ws.push_back(asInteger(winds[i], context + ": winds[" + std::to_string(i) + "]"));
  return LoopClass(WindingVector(std::move(algebra), std::move(ws)));
}

GroupPtr parseGroup(const Json& j, const std::string& context) {
  if (!j.is_object()) fail(context, "expected an object");
  std::string name = j.contains("name") && j["name"].is_string()
                         ? j["name"].get<std::string>()
                         : "group";
  if (j.contains("degree")) {
    std::int64_t degree = asInteger(member(j, "degree", context), context + ": degree");
    const Json& gens = asArray(member(j, "generators", context),
                               context + ": generators");
    std::vector<std::vector<int>> generators;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const Json& one = asArray(gens[g], context + ": generators[" + std::to_string(g) + "]");
      std::vector<int> p;
      for (std::size_t i = 0; i < one.size(); ++i)
        p.push_back(static_cast<int>(
            asInteger(one[i], context + ": generators[" + std::to_string(g) +
                                  "][" + std::to_string(i) + "]")));
      generators.push_back(std::move(p));
    }
    return FiniteGroup::fromPermutations(static_cast<int>(degree), generators);
  }
  const Json& table = asArray(member(j, "table", context), context + ": table");
  std::vector<std::vector<int>> rows;
  for (std::size_t r = 0; r < table.size(); ++r) {
    const Json& row = asArray(table[r], context + ": table[" + std::to_string(r) + "]");
    std::vector<int> entries;
    for (std::size_t c = 0; c < row.size(); ++c)
      entries.push_back(static_cast<int>(
          asInteger(row[c], context + ": table[" + std::to_string(r) + "][" +
                                std::to_string(c) + "]")));
    rows.push_back(std::move(entries));
  }
  std::vector<std::string> names;
  if (j.contains("elements")) {
    const Json& elements = asArray(j["elements"], context + ": elements");
    for (const auto& e : elements) {
      if (!e.is_string()) fail(context, "element names must be strings");
      names.push_back(e.get<std::string>());
    }
  }
  return FiniteGroup::make(std::move(name), std::move(names), std::move(rows));
}

SesFile parseSes(const Json& j) {
  const std::string context = "ses";
  GroupPtr k = parseGroup(member(j, "K", context), context + ": K");
  GroupPtr s = parseGroup(member(j, "S", context), context + ": S");
  GroupPtr u = parseGroup(member(j, "U", context), context + ": U");
  auto parseImages = [&](const char* key, int expected) {
    const Json& arr = asArray(member(j, key, context),
                              context + std::string(": ") + key);
    if (static_cast<int>(arr.size()) != expected)
      fail(context, std::string(key) + " must list one image per domain element");
    std::vector<int> images;
    for (std::size_t i = 0; i < arr.size(); ++i)
      images.push_back(static_cast<int>(
          asInteger(arr[i], context + std::string(": ") + key + "[" +
                                std::to_string(i) + "]")));
    return images;
  };
  GroupHom alpha(k, s, parseImages("alpha", k->order()));
  GroupHom beta(s, u, parseImages("beta", s->order()));
  std::optional<GroupHom> gamma;
  if (j.contains("gamma"))
    gamma.emplace(s, k, parseImages("gamma", s->order()));
  return SesFile{ShortExactSequence(std::move(alpha), std::move(beta)),
                 std::move(gamma)};
}

Tolerances parseConfig(const Json& j) {
  const std::string context = "config";
  if (!j.is_object()) fail(context, "expected an object");
  Tolerances tol;
  for (auto it = j.begin(); it != j.end(); ++it) {
    double value = asNumber(it.value(), context + ": " + it.key());
    if (!(value > 0.0)) fail(context, it.key() + " must be positive");
    if (it.key() == "unitarity") tol.unitarity = value;
    else if (it.key() == "hermiticity") tol.hermiticity = value;
    else if (it.key() == "idempotency") tol.idempotency = value;
    else if (it.key() == "projection_spectrum") tol.projectionSpectrum = value;
    else if (it.key() == "branch_margin") tol.branchMargin = value;
    else if (it.key() == "gap_slack") tol.gapSlack = value;
    else if (it.key() == "lattice_residual") tol.latticeResidual = value;
    else if (it.key() == "loop_closure") tol.loopClosure = value;
    else if (it.key() == "cover_compatibility") tol.coverCompatibility = value;
    else if (it.key() == "invertibility") tol.invertibility = value;
    else fail(context, "unknown key \"" + it.key() + "\"");
  }
  return tol;
}

Json algebraToJson(const TracialAlgebra& a) {
  Json j;
  j["blocks"] = a.blockSizes();
  j["weights"] = a.traceWeights();
  return j;
}

Json elementToJson(const Element& e, bool includeAlgebra) {
  Json j;
  if (includeAlgebra) j["algebra"] = algebraToJson(e.algebra());
  Json blocks = Json::array();
  for (int i = 0; i < e.blockCount(); ++i) {
    Json m = Json::array();
    for (int r = 0; r < e.block(i).rows(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < e.block(i).cols(); ++c)
        row.push_back(complexToJson(e.block(i)(r, c)));
      m.push_back(std::move(row));
    }
    blocks.push_back(std::move(m));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

Json pathToJson(const SegmentPath& p) {
  Json j;
  j["algebra"] = algebraToJson(p.algebra());
  j["type"] = "segments";
  j["start"] = elementToJson(p.start().element(), false);
  Json gens = Json::array();
  for (const auto& g : p.generators())
    gens.push_back(elementToJson(g.element(), false));
  j["generators"] = std::move(gens);
  return j;
}

Json coveringElementToJson(const CoveringElement& x) {
  Json j;
  j["algebra"] = algebraToJson(x.algebra());
  j["endpoint"] = elementToJson(x.endpoint().element(), false);
  Json w = Json::array();
  for (const auto& q : x.w()) w.push_back(toString(q));
  j["w"] = std::move(w);
  return j;
}

Json loopClassToJson(const LoopClass& c) {
  Json j;
  j["algebra"] = algebraToJson(c.algebra());
  j["winds"] = c.winding().winds();
  return j;
}

}  // namespace ucov
