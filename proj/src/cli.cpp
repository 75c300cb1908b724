#include "ucov/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "ucov/errors.hpp"
#include "ucov/io.hpp"
#include "ucov/random.hpp"

namespace ucov {

std::string formatReal(double x) {
  if (x == 0.0) return "0";  // never print "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void RunReport::add(const std::string& key, const std::string& value) {
  fields.emplace_back(key, value);
}

std::string RunReport::render(bool includeTiming) const {
  std::ostringstream os;
  os << "command: " << command << "\n";
  os << "input: " << inputDigest << "\n";
  for (const auto& [key, value] : fields) os << key << ": " << value << "\n";
  for (const auto& line : lines) os << line << "\n";
  if (!verdict.empty()) os << "verdict: " << verdict << "\n";
  if (structured) os << "structured: " << *structured << "\n";
  // intentionally after the comparable section
  if (includeTiming) os << "wall-seconds: " << formatReal(wallSeconds) << "\n";
  return os.str();
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const std::string& bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string readFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string digestOf(const std::vector<std::string>& fileContents) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& bytes : fileContents) {
    h = fnv1a(h, bytes);
    h = fnv1a(h, std::string(1, '\x1f'));
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string toleranceHeader(const Tolerances& t) {
  std::ostringstream os;
  os << "branch_margin=" << formatReal(t.branchMargin)
     << " cover_compatibility=" << formatReal(t.coverCompatibility)
     << " gap_slack=" << formatReal(t.gapSlack)
     << " hermiticity=" << formatReal(t.hermiticity)
     << " idempotency=" << formatReal(t.idempotency)
     << " invertibility=" << formatReal(t.invertibility)
     << " lattice_residual=" << formatReal(t.latticeResidual)
     << " loop_closure=" << formatReal(t.loopClosure)
     << " projection_spectrum=" << formatReal(t.projectionSpectrum)
     << " unitarity=" << formatReal(t.unitarity);
  return os.str();
}

// Reads the files named by the command (the optional --algebra file first),
// folds their bytes into the digest and starts the report with the
// reproducibility header.
RunReport startReport(const std::string& command, const CliOptions& opt,
                      const std::vector<std::string>& files,
                      const std::vector<std::string>& literals = {}) {
  std::vector<std::string> contents;
  if (opt.algebraFile) contents.push_back(readFileBytes(*opt.algebraFile));
  for (const auto& f : files) contents.push_back(readFileBytes(f));
  for (const auto& l : literals) contents.push_back(l);
  RunReport report;
  report.command = command;
  report.inputDigest = digestOf(contents);
  report.add("tolerances", toleranceHeader(opt.tolerances));
  return report;
}

std::optional<TracialAlgebra> fallbackAlgebra(const CliOptions& opt) {
  if (!opt.algebraFile) return std::nullopt;
  return parseAlgebra(loadJsonFile(*opt.algebraFile), *opt.algebraFile);
}

void writeResult(const CliOptions& opt, const Json& j) {
  if (!opt.outFile) return;
  std::ofstream out(*opt.outFile);
  if (!out) throw Error("cannot write " + *opt.outFile);
  out << j.dump(2) << "\n";
}

SegmentPath loadPath(const std::string& file, const CliOptions& opt) {
  return parsePath(loadJsonFile(file), fallbackAlgebra(opt), opt.tolerances, file);
}

std::string complexPair(const Complex& z) {
  return "(" + formatReal(z.real()) + "," + formatReal(z.imag()) + ")";
}

void describeCovering(RunReport& report, const std::string& label,
                      const CoveringElement& x) {
  for (int i = 0; i < x.algebra().blockCount(); ++i) {
    Complex det = x.endpoint().block(i).determinant();
    report.lines.push_back(label + " block " + std::to_string(i) +
                           ": n=" + std::to_string(x.algebra().blockSize(i)) +
                           " w=" + toString(x.w()[i]) + " (" +
                           formatReal(toDouble(x.w()[i])) + ") det=" +
                           complexPair(det));
  }
}

Json windsJson(const WindingVector& w) {
  Json j = Json::array();
  for (int i = 0; i < w.size(); ++i) j.push_back(w[i]);
  return j;
}

}  // namespace

RunReport cmdPredet(const std::string& pathFile, const CliOptions& opt) {
  RunReport report = startReport("predet", opt, {pathFile});
  SegmentPath path = loadPath(pathFile, opt);
  CenterVector predet = preDeterminant(path);
  std::vector<double> raw = preDeterminantUnnormalized(path);
  double scalar = preDeterminantScalar(path);
  report.add("algebra", path.algebra().describe());
  report.add("segments", std::to_string(path.segmentCount()));
  for (int i = 0; i < predet.size(); ++i)
    report.lines.push_back(
        "block " + std::to_string(i) + ": size=" +
        std::to_string(path.algebra().blockSize(i)) + " weight=" +
        formatReal(path.algebra().traceWeight(i)) + " predet=" +
        formatReal(predet[i]) + " n*predet=" + formatReal(raw[i]));
  report.add("scalar", formatReal(scalar));
  report.verdict = "ok";
  Json result;
  result["algebra"] = algebraToJson(path.algebra());
  result["predet"] = predet.coords();
  result["unnormalized"] = raw;
  result["scalar"] = scalar;
  if (opt.structured) report.structured = result.dump();
  writeResult(opt, result);
  return report;
}

RunReport cmdWinding(const std::string& pathFile, const CliOptions& opt) {
  RunReport report = startReport("winding", opt, {pathFile});
  SegmentPath path = loadPath(pathFile, opt);
  WindingResult winding = windingOracleDetailed(path, opt.tolerances);
  report.add("algebra", path.algebra().describe());
  report.add("grid-points", std::to_string(winding.gridPoints));
  for (int i = 0; i < winding.winds.size(); ++i)
    report.lines.push_back("block " + std::to_string(i) + ": wind=" +
                           std::to_string(winding.winds[i]) + " residual=" +
                           formatReal(winding.residuals[i]));
  report.verdict = "ok";
  Json result = loopClassToJson(LoopClass(winding.winds));
  if (opt.structured) report.structured = result.dump();
  writeResult(opt, result);
  return report;
}

RunReport cmdHomotopy(const std::string& pathFileA, const std::string& pathFileB,
                      const CliOptions& opt) {
  RunReport report = startReport("homotopy", opt, {pathFileA, pathFileB});
  SegmentPath a = loadPath(pathFileA, opt);
  SegmentPath b = loadPath(pathFileB, opt);
  bool equivalent = homotopyEquivalent(a, b, opt.tolerances);
  WindingVector wa = windingOracle(a, opt.tolerances);
  WindingVector wb = windingOracle(b, opt.tolerances);
  report.add("algebra", a.algebra().describe());
  for (int i = 0; i < wa.size(); ++i)
    report.lines.push_back("block " + std::to_string(i) + ": wind-a=" +
                           std::to_string(wa[i]) + " wind-b=" +
                           std::to_string(wb[i]));
  report.verdict = equivalent ? "homotopic" : "not-homotopic";
  Json result;
  result["homotopic"] = equivalent;
  result["winds_a"] = windsJson(wa);
  result["winds_b"] = windsJson(wb);
  if (opt.structured) report.structured = result.dump();
  writeResult(opt, result);
  return report;
}

RunReport cmdFkDet(const std::string& elementFile, const CliOptions& opt) {
  RunReport report = startReport("fkdet", opt, {elementFile});
  Element x = parseElement(loadJsonFile(elementFile), fallbackAlgebra(opt),
                           elementFile);
  double value = fugledeKadison(x, opt.tolerances);
  report.add("algebra", x.algebra().describe());
  report.add("fk-det", formatReal(value));
  report.verdict = "ok";
  Json result;
  result["fk_det"] = value;
  if (opt.structured) report.structured = result.dump();
  writeResult(opt, result);
  return report;
}

RunReport cmdCover(const std::string& op, const std::vector<std::string>& argFiles,
                   const CliOptions& opt) {
  auto requireFiles = [&](std::size_t n) {
    if (argFiles.size() != n)
      throw PreconditionError("cover " + op + ": expected " + std::to_string(n) +
                              " input file(s), got " +
                              std::to_string(argFiles.size()));
  };
  RunReport report = startReport("cover " + op, opt, argFiles);
  auto fallback = fallbackAlgebra(opt);
  auto loadCovering = [&](const std::string& f) {
    return parseCoveringElement(loadJsonFile(f), fallback, opt.tolerances);
  };
  Json result;
  if (op == "multiply") {
    requireFiles(2);
    CoveringElement z = coverMultiply(loadCovering(argFiles[0]),
                                      loadCovering(argFiles[1]), opt.tolerances);
    report.add("algebra", z.algebra().describe());
    describeCovering(report, "product", z);
    result = coveringElementToJson(z);
  } else if (op == "inverse") {
    requireFiles(1);
    CoveringElement z = coverInverse(loadCovering(argFiles[0]), opt.tolerances);
    report.add("algebra", z.algebra().describe());
    describeCovering(report, "inverse", z);
    result = coveringElementToJson(z);
  } else if (op == "embed") {
    requireFiles(1);
    LoopClass c = parseLoopClass(loadJsonFile(argFiles[0]), fallback);
    CoveringElement z = embedLoopClass(c);
    report.add("algebra", z.algebra().describe());
    describeCovering(report, "embedded", z);
    result = coveringElementToJson(z);
  } else if (op == "endpoint") {
    requireFiles(1);
    Unitary u = coverEndpoint(loadCovering(argFiles[0]));
    report.add("algebra", u.algebra().describe());
    for (int i = 0; i < u.algebra().blockCount(); ++i)
      report.lines.push_back("block " + std::to_string(i) + ": det=" +
                             complexPair(u.block(i).determinant()));
    result = elementToJson(u.element());
  } else if (op == "retract") {
    requireFiles(1);
    LoopClass c = loopClassRetraction(loadCovering(argFiles[0]), opt.tolerances);
    report.add("algebra", c.algebra().describe());
    for (int i = 0; i < c.size(); ++i)
      report.lines.push_back("block " + std::to_string(i) + ": wind=" +
                             std::to_string(c[i]));
    result = loopClassToJson(c);
  } else if (op == "split") {
    requireFiles(1);
    CoverSplit split = splitCoveringElement(loadCovering(argFiles[0]),
                                            opt.tolerances);
    report.add("algebra", split.basePart.algebra().describe());
    for (int i = 0; i < split.loopPart.size(); ++i)
      report.lines.push_back("loop block " + std::to_string(i) + ": wind=" +
                             std::to_string(split.loopPart[i]));
    describeCovering(report, "base", split.basePart);
    result["loop"] = loopClassToJson(split.loopPart);
    result["base"] = coveringElementToJson(split.basePart);
  } else {
    throw PreconditionError(
        "cover: unknown op \"" + op +
        "\" (expected multiply|inverse|embed|endpoint|retract|split)");
  }
  report.verdict = "ok";
  if (opt.structured) report.structured = result.dump();
  writeResult(opt, result);
  return report;
}

RunReport cmdSplitDemo(const std::string& target, int maxLevel,
                       const CliOptions& opt) {
  RunReport report = startReport("splitdemo", opt, {},
                                 {target, std::to_string(maxLevel)});
  Rational t = rationalFromString(target);
  std::vector<DyadicRung> rungs = dyadicTraceLadder(t, maxLevel);
  report.add("target", toString(t));
  report.add("levels", std::to_string(maxLevel));
  bool boundOk = true;
  bool monotone = true;
  Json table = Json::array();
  for (std::size_t r = 0; r < rungs.size(); ++r) {
    const DyadicRung& rung = rungs[r];
    // error <= 2^{-(level+1)}, checked exactly
    Rational scale = makeRational(std::int64_t(1) << (rung.level + 1));
    if (rung.error * scale > 1) boundOk = false;
    if (r > 0 && rung.error > rungs[r - 1].error) monotone = false;
    report.lines.push_back(
        "m=" + std::to_string(rung.level) + " dim=" +
        std::to_string(std::int64_t(1) << rung.level) + " rank=" +
        std::to_string(rung.rank) + " achieved=" + toString(rung.achieved) +
        " error=" + toString(rung.error));
    Json row;
    row["level"] = rung.level;
    row["rank"] = rung.rank;
    row["achieved"] = toString(rung.achieved);
    row["error"] = toString(rung.error);
    table.push_back(std::move(row));
  }
  report.add("error-bound-held", boundOk ? "true" : "false");
  report.add("error-non-increasing", monotone ? "true" : "false");
  report.verdict = boundOk && monotone ? "ok" : "violated";
  Json result;
  result["target"] = toString(t);
  result["rungs"] = std::move(table);
  if (opt.structured) report.structured = result.dump();
  writeResult(opt, result);
  return report;
}

RunReport cmdLeftSplit(const std::string& sesFile, const CliOptions& opt) {
  RunReport report = startReport("leftsplit", opt, {sesFile});
  SesFile sf = parseSes(loadJsonFile(sesFile));
  const ShortExactSequence& ses = sf.ses;
  report.add("K", ses.k()->name() + " (order " +
                      std::to_string(ses.k()->order()) + ")");
  report.add("S", ses.s()->name() + " (order " +
                      std::to_string(ses.s()->order()) + ")");
  report.add("U", ses.u()->name() + " (order " +
                      std::to_string(ses.u()->order()) + ")");
  std::optional<GroupHom> gamma = sf.gamma;
  std::string source = "file";
  if (!gamma) {
    gamma = findRetraction(ses);
    source = "search";
  }
  Json result;
  result["K"] = ses.k()->name();
  result["S"] = ses.s()->name();
  result["U"] = ses.u()->name();
  if (!gamma) {
    report.add("retraction", "none");
    report.lines.push_back(
        "exhaustive search over homomorphisms S -> K found no retraction");
    report.verdict = "no-retraction";
    result["retraction"] = nullptr;
  } else {
    GroupHom iso = directProductFromLeftSplit(ses, *gamma);
    report.add("retraction", source);
    Json gammaJson = Json::array();
    for (int s = 0; s < ses.s()->order(); ++s) {
      report.lines.push_back("gamma: " + ses.s()->elementName(s) + " -> " +
                             ses.k()->elementName(gamma->apply(s)));
      gammaJson.push_back(gamma->apply(s));
    }
    Json isoJson = Json::array();
    for (int s = 0; s < ses.s()->order(); ++s) {
      report.lines.push_back("iso: " + ses.s()->elementName(s) + " -> " +
                             iso.codomain()->elementName(iso.apply(s)));
      isoJson.push_back(iso.apply(s));
    }
    report.verdict = "direct-product";
    result["retraction"] = std::move(gammaJson);
    result["iso"] = std::move(isoJson);
    result["product"] = iso.codomain()->name();
  }
  if (opt.structured) report.structured = result.dump();
  writeResult(opt, result);
  return report;
}

RunReport cmdGenerate(const std::string& kind, const CliOptions& opt) {
  RunReport report = startReport("generate", opt, {},
                                 {kind, std::to_string(opt.seed)});
  Rng rng(opt.seed);
  TracialAlgebra algebra = randomAlgebra(rng);
  Json result;
  if (kind == "algebra") {
    result = algebraToJson(algebra);
  } else if (kind == "path") {
    result = pathToJson(randomPath(algebra, 2 + rng.uniformInt(0, 2), 0.3, rng));
  } else if (kind == "loop") {
    result = pathToJson(randomLoop(algebra, rng));
  } else if (kind == "small-loop") {
    result = pathToJson(randomSmallLoop(algebra, 0.45, rng));
  } else if (kind == "unitary") {
    result = elementToJson(randomUnitary(algebra, rng).element());
  } else if (kind == "element") {
    std::vector<Matrix> blocks;
    for (int i = 0; i < algebra.blockCount(); ++i) {
      int n = algebra.blockSize(i);
      Matrix b(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          b(r, c) = 0.4 * rng.gaussianComplex() + (r == c ? 2.0 : 0.0);
      blocks.push_back(std::move(b));
    }
    result = elementToJson(Element(algebra, std::move(blocks)));
  } else if (kind == "covering") {
    result = coveringElementToJson(
        liftPath(randomPath(algebra, 2, 0.3, rng), opt.tolerances));
  } else if (kind == "loopclass") {
    std::vector<std::int64_t> winds;
    for (int i = 0; i < algebra.blockCount(); ++i)
      winds.push_back(rng.uniformInt(-3, 3));
    result = loopClassToJson(LoopClass(WindingVector(algebra, std::move(winds))));
  } else {
    throw PreconditionError(
        "generate: unknown kind \"" + kind +
        "\" (expected algebra|path|loop|small-loop|unitary|element|covering|"
        "loopclass)");
  }
  report.add("kind", kind);
  report.add("seed", std::to_string(opt.seed));
  if (opt.outFile) {
    report.add("written", *opt.outFile);
  } else {
    report.lines.push_back(result.dump());
  }
  report.verdict = "ok";
  if (opt.structured) report.structured = result.dump();
  writeResult(opt, result);
  return report;
}

int runMain(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"pre-determinant and covering-group toolkit for tracial "
               "block-matrix algebras"};
  app.name("ucov");
  app.require_subcommand(1);
  app.fallthrough();

  std::string algebraFile, configFile, outFile;
  CliOptions opt;
  app.add_option("--algebra", algebraFile, "fallback algebra file");
  app.add_option("--config", configFile, "tolerance overrides (JSON)");
  app.add_option("--out", outFile, "write the result object to this file");
  app.add_flag("--structured", opt.structured, "append a one-line JSON result");
  app.add_flag("--timing", opt.timing, "append wall-clock seconds");
  app.add_option("--seed", opt.seed, "seed for generate");

  std::string pathA, pathB, elementFile, coverOp, sesFile, kind, target;
  std::vector<std::string> coverFiles;
  int maxLevel = 8;

  CLI::App* predet = app.add_subcommand("predet", "pre-determinant of a path");
  predet->add_option("path,--path", pathA, "path file")->required();
  CLI::App* winding = app.add_subcommand("winding", "determinant winding of a loop");
  winding->add_option("path,--path", pathA, "loop file")->required();
  CLI::App* homotopy = app.add_subcommand("homotopy", "decide loop homotopy");
  homotopy->add_option("a", pathA, "first loop file")->required();
  homotopy->add_option("b", pathB, "second loop file")->required();
  CLI::App* fkdet = app.add_subcommand("fkdet", "Fuglede-Kadison determinant");
  fkdet->add_option("element", elementFile, "element file")->required();
  CLI::App* cover = app.add_subcommand("cover", "covering-group operations");
  cover->add_option("op", coverOp,
                    "multiply|inverse|embed|endpoint|retract|split")
      ->required();
  cover->add_option("files", coverFiles, "operand file(s)");
  CLI::App* splitdemo =
      app.add_subcommand("splitdemo", "dyadic trace-divisibility ladder");
  splitdemo->add_option("target", target, "target trace in [0,1], e.g. 1/3")
      ->required();
  splitdemo->add_option("levels", maxLevel, "ladder height (default 8)");
  CLI::App* leftsplit =
      app.add_subcommand("leftsplit", "finite-group left-split analysis");
  leftsplit->add_option("ses", sesFile, "short exact sequence file")->required();
  CLI::App* generate = app.add_subcommand("generate", "deterministic test data");
  generate->add_option("kind", kind,
                       "algebra|path|loop|small-loop|unitary|element|covering|"
                       "loopclass")
      ->required();

  std::vector<std::string> argv{"ucov"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> argvPtrs;
  argvPtrs.reserve(argv.size());
  for (const auto& a : argv) argvPtrs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argvPtrs.size()), argvPtrs.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 1;
  }

  if (!algebraFile.empty()) opt.algebraFile = algebraFile;
  if (!configFile.empty()) opt.configFile = configFile;
  if (!outFile.empty()) opt.outFile = outFile;

  try {
    if (opt.configFile)
      opt.tolerances = parseConfig(loadJsonFile(*opt.configFile));
    auto t0 = std::chrono::steady_clock::now();
    RunReport report;
    if (*predet) report = cmdPredet(pathA, opt);
    else if (*winding) report = cmdWinding(pathA, opt);
    else if (*homotopy) report = cmdHomotopy(pathA, pathB, opt);
    else if (*fkdet) report = cmdFkDet(elementFile, opt);
    else if (*cover) report = cmdCover(coverOp, coverFiles, opt);
    else if (*splitdemo) report = cmdSplitDemo(target, maxLevel, opt);
    else if (*leftsplit) report = cmdLeftSplit(sesFile, opt);
    else if (*generate) report = cmdGenerate(kind, opt);
    else throw Error("no subcommand dispatched");
    report.wallSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    out << report.render(opt.timing);
    return 0;
  } catch (const LatticeError& e) {
    err << "error: lattice: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << "\n";
    return 4;
  } catch (const PreconditionError& e) {
    err << "error: precondition: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ucov
