#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "snapfix/report.hpp"
#include "snapfix/shapes.hpp"

namespace fs = std::filesystem;
using namespace snapfix;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalidMesh = 2;
constexpr int kExitNoFixture = 3;

struct LoadedMesh {
  Polyhedron raw;
  Polyhedron merged;
};

LoadedMesh loadAndMerge(const RunConfig& cfg) {
  MeshTolerances tol{cfg.angleTol, cfg.distTol};
  Polyhedron raw;
  if (cfg.input.rfind("builtin:", 0) == 0) {
    raw = shapes::byName(cfg.input.substr(8));
  } else if (!cfg.format.empty()) {
    std::ifstream in(cfg.input, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + cfg.input);
    MeshFormat f = cfg.format == "off"   ? MeshFormat::OFF
                   : cfg.format == "obj" ? MeshFormat::OBJ
                                         : MeshFormat::STL;
    raw = loadMesh(in, f, tol);
  } else {
    raw = loadMeshFile(cfg.input, tol);
  }
  return {raw, mergeCoplanarFacets(raw, cfg.angleTol, cfg.distTol)};
}

Report meshColumns(const std::string& name, const LoadedMesh& m) {
  Report r;
  r.name = name;
  r.verts = m.raw.vertexCount();
  r.edges = m.raw.edgeCount;
  r.tris = m.raw.facetCount();
  r.merged = m.merged.facetCount();
  r.genusValue = genus(m.merged);
  return r;
}

void emitReport(const RunConfig& cfg, const Report& r) {
  std::cout << r.toJson().dump(2) << '\n';
  if (!cfg.jsonPath.empty()) {
    std::ofstream out(cfg.jsonPath);
    if (!out) throw std::ios_base::failure("cannot write " + cfg.jsonPath);
    out << r.toJson().dump(2) << '\n';
  }
}

int cmdCheck(const RunConfig& cfg) {
  LoadedMesh m = loadAndMerge(cfg);
  Report r = meshColumns(fs::path(cfg.input).filename().string(), m);
  emitReport(cfg, r);
  return kExitOk;
}

void writeSolid(const RunConfig& cfg, const Polyhedron& merged, const Fixture& fx) {
  SolidMesh solid = buildFixtureSolid(merged, fx, cfg.params);
  std::ofstream out(cfg.solidPath, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + cfg.solidPath);
  std::string ext = fs::path(cfg.solidPath).extension().string();
  SolidFormat f = SolidFormat::StlBinary;
  if (ext == ".off") f = SolidFormat::OFF;
  else if (ext == ".obj") f = SolidFormat::OBJ;
  exportMesh(solid, f, out);
}

int cmdSynth(const RunConfig& cfg) {
  LoadedMesh m = loadAndMerge(cfg);
  Report r = meshColumns(fs::path(cfg.input).filename().string(), m);
  SynthOptions opts{cfg.epsCover, cfg.threads, cfg.maxFingers};

  Objective obj = objectiveFromName(cfg.objective);
  if (obj == Objective::Fingers) {
    SynthesisResult res = minimalSnappingFixture(m.merged, opts);
    r.validCalls = res.stats.validCalls;
    r.wallMs = res.stats.wallMs;
    if (res.fixture) {
      r.fixture = res.fixture;
      r.minFingers = static_cast<int>(res.fixture->fingers.size());
      r.metrics = qualityOf(m.merged, *res.fixture, cfg.params);
      r.serving = res.servingDirection;
    }
  } else {
    auto best = bestFixture(m.merged, obj, cfg.params, opts);
    if (best) {
      r.fixture = best->first;
      r.minFingers = best->second.fingerCount;
      r.metrics = best->second;
      r.serving = servingDirection(m.merged, best->first, cfg.epsCover);
    }
  }
  if (r.fixture && !cfg.solidPath.empty()) writeSolid(cfg, m.merged, *r.fixture);
  emitReport(cfg, r);
  return r.fixture ? kExitOk : kExitNoFixture;
}

int cmdEnumerate(const RunConfig& cfg, bool all, const std::string& streamPath) {
  LoadedMesh m = loadAndMerge(cfg);
  Report r = meshColumns(fs::path(cfg.input).filename().string(), m);
  SynthOptions opts{cfg.epsCover, cfg.threads, cfg.maxFingers};

  auto t0 = std::chrono::steady_clock::now();
  EnumerationSummary s = countMinimalFixtures(m.merged, opts);
  r.minFingers = s.minFingers;
  r.fixturesAtMin = s.countAtMin;
  if (s.first) {
    r.fixture = s.first;
    r.metrics = qualityOf(m.merged, *s.first, cfg.params);
    r.serving = servingDirection(m.merged, *s.first, cfg.epsCover);
  }
  if (all || !streamPath.empty()) {
    std::ofstream streamOut;
    std::ostream* os = &std::cout;
    if (!streamPath.empty()) {
      streamOut.open(streamPath);
      if (!streamOut) throw std::ios_base::failure("cannot write " + streamPath);
      os = &streamOut;
    }
    enumerateFixtures(m.merged, cfg.maxFingers, [&](const Fixture& fx) {
      *os << fixtureToJson(fx, std::nullopt, std::nullopt).dump() << '\n';
    }, opts);
  }
  r.wallMs = std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now() - t0).count();
  emitReport(cfg, r);
  return s.minFingers > 0 ? kExitOk : kExitNoFixture;
}

int cmdBench(const RunConfig& cfg, const std::string& corpusDir, const std::string& csvPath) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpusDir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    if (ext == ".off" || ext == ".obj" || ext == ".stl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::ofstream csv;
  if (!csvPath.empty()) {
    csv.open(csvPath);
    if (!csv) throw std::ios_base::failure("cannot write " + csvPath);
  }
  std::ostream& table = csv.is_open() ? csv : std::cout;
  table << Report::csvHeader() << '\n';

  for (const auto& f : files) {
    try {
      RunConfig sub = cfg;
      sub.input = f.string();
      sub.format.clear();
      LoadedMesh m = loadAndMerge(sub);
      Report r = meshColumns(f.filename().string(), m);
      SynthOptions opts{cfg.epsCover, cfg.threads, cfg.maxFingers};
      auto t0 = std::chrono::steady_clock::now();
      EnumerationSummary s = countMinimalFixtures(m.merged, opts);
      r.minFingers = s.minFingers;
      r.fixturesAtMin = s.countAtMin;
      r.wallMs = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0).count();
      table << r.csvRow() << '\n';
    } catch (const std::exception& e) {
      std::cerr << f.string() << ": " << e.what() << '\n';
      table << f.filename().string() << ",error,,,,,,,\n";
    }
  }
  return kExitOk;
}

int cmdGen(const std::string& shape, double size, const std::string& outPath) {
  Polyhedron p = shapes::byName(shape, size);
  std::ofstream out(outPath, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + outPath);
  std::string ext = fs::path(outPath).extension().string();
  if (ext == ".obj") writeOBJ(p, out);
  else writeOFF(p, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"snapping-fixture synthesis for polyhedral workpieces"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("SNAPFIX_THREADS")) cfg.threads = std::atoi(env);

  // a config file supplies defaults; explicit flags override it
  std::string configPath;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") configPath = argv[i + 1];
  if (!configPath.empty()) {
    std::ifstream in(configPath);
    if (!in) {
      std::cerr << "i/o error: cannot open " << configPath << '\n';
      return kExitIo;
    }
    cfg = RunConfig::load(in);
  }

  bool needInput = false;
  auto addCommon = [&](CLI::App* sub, bool needsInput = true) {
    if (needsInput) {
      sub->add_option("--input,-i", cfg.input, "mesh file or builtin:<name>");
      sub->parse_complete_callback([&] { needInput = true; });
    }
    sub->add_option("--format", cfg.format, "off|obj|stl (default: by extension)");
    sub->add_option("--alpha-p", cfg.params.alphaP, "palm extrusion, mm");
    sub->add_option("--alpha-b", cfg.params.alphaB, "body extrusion, mm");
    sub->add_option("--alpha-t", cfg.params.alphaT, "fingertip extrusion, mm");
    sub->add_option("--clearance", cfg.params.clearance, "workpiece gap, mm");
    sub->add_option("--body-shrink", cfg.params.bodyShrink, "body joint-edge fraction");
    sub->add_option("--tip-width", cfg.params.tipWidth, "fingertip width, mm");
    sub->add_option("--angle-tol", cfg.angleTol, "coplanarity angle tolerance, rad");
    sub->add_option("--dist-tol", cfg.distTol, "weld/plane distance tolerance, mm");
    sub->add_option("--eps-cover", cfg.epsCover, "coverage dot-product tolerance");
    sub->add_option("--objective", cfg.objective, "fingers|weight|obscuration");
    sub->add_option("--max-fingers", cfg.maxFingers, "2, 3, or 4")
        ->check(CLI::Range(2, 4));
    sub->add_option("--solid", cfg.solidPath, "write fixture solid (stl/off/obj)");
    sub->add_option("--json", cfg.jsonPath, "write report JSON");
    sub->add_option("--threads", cfg.threads, "palm-level parallelism");
    sub->add_option("--config", configPath, "key = value config file");
  };

  CLI::App* check = app.add_subcommand("check", "validate a mesh and print its stats");
  addCommon(check);

  CLI::App* synth = app.add_subcommand("synth", "synthesize a minimal snapping fixture");
  addCommon(synth);

  CLI::App* enumerate =
      app.add_subcommand("enumerate", "count fixtures at the minimal finger level");
  bool enumerateAll = false;
  std::string streamPath;
  enumerate->add_flag("--all", enumerateAll, "also stream every valid fixture");
  enumerate->add_option("--stream", streamPath, "write the fixture stream to a file");
  addCommon(enumerate);

  CLI::App* bench = app.add_subcommand("bench", "run a corpus and emit a results table");
  std::string corpusDir, csvPath;
  bench->add_option("--corpus", corpusDir, "directory of mesh files")->required();
  bench->add_option("--csv", csvPath, "write the table as CSV");
  addCommon(bench, /*needsInput=*/false);

  CLI::App* gen = app.add_subcommand("gen", "write a builtin test solid");
  std::string shape = "cube", outPath;
  double size = 20.0;
  gen->add_option("--shape", shape, "tetrahedron|cube|...|prismN")->required();
  gen->add_option("--size", size, "characteristic size, mm");
  gen->add_option("--output,-o", outPath, "output mesh path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (needInput && cfg.input.empty()) {
      std::cerr << "error: --input is required (flag or config file)\n";
      return kExitIo;
    }
    if (gen->parsed()) return cmdGen(shape, size, outPath);
    if (check->parsed()) return cmdCheck(cfg);
    if (synth->parsed()) return cmdSynth(cfg);
    if (enumerate->parsed()) return cmdEnumerate(cfg, enumerateAll, streamPath);
    if (bench->parsed()) return cmdBench(cfg, corpusDir, csvPath);
  } catch (const MeshError& e) {
    std::cerr << "invalid mesh: " << e.what() << '\n';
    return kExitInvalidMesh;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidMesh;
  }
  return kExitOk;
}
