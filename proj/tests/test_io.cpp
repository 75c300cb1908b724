#include <doctest.h>

#include <string>

#include "support.hpp"
#include "ucov/errors.hpp"
#include "ucov/io.hpp"

using namespace ucov;
using namespace ucov::testing;

namespace {

std::string parseErrorMessage(const Json& j) {
  try {
    parseAlgebra(j);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("algebra round-trips through JSON") {
  TracialAlgebra a = m2m3();
  TracialAlgebra back = parseAlgebra(algebraToJson(a));
  CHECK(back == a);
}

TEST_CASE("algebra parse errors carry locations") {
  CHECK_THROWS_AS(parseAlgebra(Json::parse("[]")), ParseError);
  CHECK_THROWS_AS(parseAlgebra(Json::parse(R"({"weights": [1.0]})")), ParseError);
  CHECK_THROWS_AS(parseAlgebra(Json::parse(R"({"blocks": [2], "weights": [1, 2]})")),
                  ParseError);
  CHECK_THROWS_AS(parseAlgebra(Json::parse(R"({"blocks": [2.5], "weights": [1]})")),
                  ParseError);
  CHECK(parseErrorMessage(Json::parse(R"({"blocks": "x", "weights": [1]})"))
            .find("blocks") != std::string::npos);
  // semantic violations (bad weights) are still parse-stage failures: the
  // file, not the math, is wrong
  CHECK_THROWS_AS(parseAlgebra(Json::parse(R"({"blocks": [2], "weights": [-1]})")),
                  Error);
}

TEST_CASE("elements round-trip with and without an embedded algebra") {
  TracialAlgebra a = m2m1();
  Element x(a, {mat2(Complex(1, 2), 0, Complex(0, -1), 3),
                Matrix::Constant(1, 1, Complex(0.5, 0.25))});
  Element viaEmbedded = parseElement(elementToJson(x), std::nullopt);
  CHECK(operatorNorm(viaEmbedded - x) == 0.0);
  Element viaFallback = parseElement(elementToJson(x, false), a);
  CHECK(operatorNorm(viaFallback - x) == 0.0);
  CHECK(viaFallback.algebra() == a);
  // no algebra from either source
  CHECK_THROWS_AS(parseElement(elementToJson(x, false), std::nullopt), ParseError);
  // block shape disagrees with the algebra
  Json bad = elementToJson(x);
  bad["blocks"][0] = Json::array({Json::array({Json::array({1.0, 0.0})})});
  CHECK_THROWS_AS(parseElement(bad, std::nullopt), ParseError);
}

TEST_CASE("matrix entries accept both complex and plain-number forms") {
  TracialAlgebra a = m2m1();
  Json j = Json::parse(R"({
    "blocks": [[[1, [0, 2]], [0, -1]], [[0.5]]]
  })");
  Element x = parseElement(j, a);
  CHECK(x.block(0)(0, 0) == Complex(1, 0));
  CHECK(x.block(0)(0, 1) == Complex(0, 2));
  CHECK(x.block(0)(1, 1) == Complex(-1, 0));
  CHECK(x.block(1)(0, 0) == Complex(0.5, 0));
  Json bad = Json::parse(R"({"blocks": [[[ [1, 2, 3], 0], [0, 0]], [[1]]]})");
  CHECK_THROWS_AS(parseElement(bad, a), ParseError);
}

TEST_CASE("segment paths round-trip exactly") {
  TracialAlgebra a = m2m3();
  Rng rng(401);
  SegmentPath p = randomPath(a, 3, 0.3, rng);
  SegmentPath back = parsePath(pathToJson(p), std::nullopt);
  CHECK(back.segmentCount() == p.segmentCount());
  CHECK(operatorNorm(back.endpoint().element() - p.endpoint().element()) == 0.0);
  for (int j = 0; j < p.segmentCount(); ++j)
    CHECK(operatorNorm(back.generator(j).element() -
                       p.generator(j).element()) == 0.0);
}

TEST_CASE("samples-form paths are reduced on parse") {
  TracialAlgebra a = m2();
  Json j;
  j["algebra"] = algebraToJson(a);
  j["type"] = "samples";
  j["times"] = Json::array({0.0, 0.5, 1.0});
  Hermitian g(Element(a, {mat2(0.1, 0, 0, -0.1)}));
  SegmentPath reference(Unitary::identity(a), {g, g});
  j["values"] = Json::array({elementToJson(reference.evaluate(0.0).element(), false),
                             elementToJson(reference.evaluate(0.5).element(), false),
                             elementToJson(reference.evaluate(1.0).element(), false)});
  SegmentPath parsed = parsePath(j, std::nullopt);
  CHECK(parsed.segmentCount() == 2);
  CHECK(operatorNorm(parsed.endpoint().element() -
                     reference.endpoint().element()) < 1e-12);
  // a gap of norm 2 in the samples is a semantic error, not a parse error
  j["values"][1] = elementToJson(Element(a, {mat2(-1, 0, 0, -1)}), false);
  CHECK_THROWS_AS(parsePath(j, std::nullopt), GapTooLarge);
  j["type"] = "zigzag";
  CHECK_THROWS_AS(parsePath(j, std::nullopt), ParseError);
}

TEST_CASE("covering elements round-trip with exact w") {
  TracialAlgebra a = m2m3();
  Unitary u = Unitary::identity(a);
  CoveringElement x(u, {makeRational(-7, 2), makeRational(5, 3)});
  CoveringElement back = parseCoveringElement(coveringElementToJson(x), std::nullopt);
  CHECK(back.w()[0] == makeRational(-7, 2));
  CHECK(back.w()[1] == makeRational(5, 3));
  CHECK(operatorNorm(back.endpoint().element() - u.element()) == 0.0);
}

TEST_CASE("covering w entries accept strings, integers and doubles") {
  TracialAlgebra a = m2m1();
  Json j;
  j["algebra"] = algebraToJson(a);
  j["endpoint"] = elementToJson(Element::identity(a), false);
  j["w"] = Json::array({"-3/2", 2});
  CoveringElement x = parseCoveringElement(j, std::nullopt);
  CHECK(x.w()[0] == makeRational(-3, 2));
  CHECK(x.w()[1] == makeRational(2));
  // doubles embed as exact dyadics; 0.5 is compatible with det = -1 in M2
  Unitary u(Element(a, {mat2(1, 0, 0, -1), Matrix::Constant(1, 1, 1.0)}));
  j["endpoint"] = elementToJson(u.element(), false);
  j["w"] = Json::array({0.25, 0});
  CHECK(parseCoveringElement(j, std::nullopt).w()[0] == makeRational(1, 4));
  j["w"] = Json::array({"nonsense", 0});
  CHECK_THROWS_AS(parseCoveringElement(j, std::nullopt), ParseError);
  // incompatible w is caught by the covering invariant, after parsing
  j["w"] = Json::array({"1/3", 0});
  CHECK_THROWS_AS(parseCoveringElement(j, std::nullopt), InvariantViolation);
}

TEST_CASE("loop classes parse winds as exact integers") {
  TracialAlgebra a = m2m3();
  LoopClass c(WindingVector(a, {4, -2}));
  LoopClass back = parseLoopClass(loopClassToJson(c), std::nullopt);
  CHECK(back == c);
  Json j = loopClassToJson(c);
  j["winds"][0] = 1.5;
  CHECK_THROWS_AS(parseLoopClass(j, std::nullopt), ParseError);
}

TEST_CASE("groups parse from tables and from permutation generators") {
  Json table = Json::parse(R"({
    "name": "C3",
    "elements": ["e", "g", "gg"],
    "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
  })");
  GroupPtr c3 = parseGroup(table);
  CHECK(c3->order() == 3);
  CHECK(c3->elementName(1) == "g");
  Json perms = Json::parse(R"({"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]})");
  CHECK(parseGroup(perms)->order() == 6);
  // a structurally fine but non-associative table is a semantic error
  Json bad = Json::parse(R"({"table": [[0, 1, 2], [1, 2, 0], [2, 1, 0]]})");
  CHECK_THROWS_AS(parseGroup(bad), PreconditionError);
  Json shapeless = Json::parse(R"({"table": "xyz"})");
  CHECK_THROWS_AS(parseGroup(shapeless), ParseError);
  CHECK_THROWS_AS(parseGroup(Json::parse(R"({"degree": 3})")), ParseError);
}

TEST_CASE("ses files parse with and without gamma") {
  Json j = Json::parse(R"({
    "K": {"table": [[0, 1], [1, 0]]},
    "S": {"table": [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]]},
    "U": {"table": [[0, 1], [1, 0]]},
    "alpha": [0, 2],
    "beta": [0, 1, 0, 1]
  })");
  SesFile f = parseSes(j);
  CHECK(f.ses.s()->order() == 4);
  CHECK_FALSE(f.gamma.has_value());
  j["gamma"] = Json::array({0, 0, 1, 0});
  // that gamma is not a homomorphism: semantic, not parse
  CHECK_THROWS_AS(parseSes(j), PreconditionError);
  j.erase("gamma");
  j["beta"] = Json::array({0, 0, 0, 0});
  CHECK_THROWS_AS(parseSes(j), NotExact);
  j.erase("alpha");
  CHECK_THROWS_AS(parseSes(j), ParseError);
}

TEST_CASE("config files override individual tolerances") {
  Tolerances tol = parseConfig(Json::parse(
      R"({"gap_slack": 0.1, "lattice_residual": 1e-7})"));
  CHECK(tol.gapSlack == 0.1);
  CHECK(tol.latticeResidual == 1e-7);
  // untouched fields keep their defaults
  CHECK(tol.unitarity == Tolerances::defaults().unitarity);
  CHECK_THROWS_AS(parseConfig(Json::parse(R"({"gapslack": 0.1})")), ParseError);
  CHECK_THROWS_AS(parseConfig(Json::parse(R"({"gap_slack": "x"})")), ParseError);
}

TEST_CASE("loadJsonFile reports missing files and bad syntax") {
  CHECK_THROWS_AS(loadJsonFile("/nonexistent/file.json"), ParseError);
}
