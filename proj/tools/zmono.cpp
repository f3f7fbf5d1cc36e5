// zmono: candidate validation, enumeration, realization on surfaces, and
// inspection of zigzags and z-monodromies of map files.
//
// Exit codes: 0 success, 1 invalid candidate, 2 construction or repair
// failure, 3 verification mismatch, 4 I/O or format error.

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zmono/core.hpp"
#include "zmono/export.hpp"
#include "zmono/map_io.hpp"
#include "zmono/monodromy.hpp"
#include "zmono/planar.hpp"
#include "zmono/surface.hpp"
#include "zmono/zigzag.hpp"

namespace {

using json = nlohmann::ordered_json;  // step records keep field order
using namespace zmono;

int exitCodeFor(Err e) {
  switch (e) {
    case Err::SyntaxError:
    case Err::SymbolOutOfRange:
    case Err::RepeatedSymbol:
    case Err::M1Violation:
    case Err::M2Violation:
      return 1;
    case Err::InternalDegeneracy:
    case Err::NotAFaceLoop:
    case Err::EdgeOnProtectedFace:
    case Err::PatchContractViolation:
    case Err::ProtectedFaceViolation:
    case Err::RepairBudgetExceeded:
    case Err::NoEligibleEdge:
    case Err::FaceNotTriangular:
    case Err::CompositionSSFailure:
      return 2;
    case Err::VerificationMismatch:
      return 3;
    default:
      return 4;  // I/O, format, marks, geometry, map axioms
  }
}

struct Ctx {
  std::string sub;
  std::uint64_t seed = 0;
  bool json_out = false;
  json out;  // machine report, printed at the end under --json

  void log(const std::string& msg) const {
    std::cerr << "[" << sub << " seed=" << seed << "] " << msg << "\n";
  }
  void line(const std::string& msg) const {
    if (!json_out) std::cout << msg << "\n";
  }
};

int runGuarded(Ctx& ctx, const std::function<void()>& body) {
  int rc = 0;
  try {
    body();
  } catch (const Error& e) {
    rc = exitCodeFor(e.code());
    ctx.out["error"] = {{"code", errName(e.code())}, {"message", e.what()}};
    if (!ctx.json_out) std::cout << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    rc = 4;
    ctx.out["error"] = {{"code", "IoError"}, {"message", e.what()}};
    if (!ctx.json_out) std::cout << "error: " << e.what() << "\n";
  }
  ctx.out["ok"] = rc == 0;
  if (ctx.json_out) std::cout << ctx.out.dump(2) << "\n";
  return rc;
}

// Surface vocabulary errors are usage errors (exit 4), not candidate errors.
SurfaceSpec parseSurfaceArg(const std::string& text) {
  try {
    return SurfaceSpec::parse(text);
  } catch (const Error& e) {
    throw Error(Err::IoError, e.what());
  }
}

json stepJson(const RepairStep& s) {
  return json{{"step", s.step},       {"kind", s.kind}, {"site", s.site},
              {"V", s.vertices},      {"E", s.edges},   {"F", s.faces},
              {"monodromy_ok", s.monodromy_ok}};
}

// One JSON line per step: the pinned diagnostic trace format.
void printTrace(Ctx& ctx, const std::vector<RepairStep>& steps) {
  ctx.out["steps"] = json::array();
  for (const RepairStep& s : steps) {
    ctx.out["steps"].push_back(stepJson(s));
    if (!ctx.json_out) std::cout << stepJson(s).dump() << "\n";
  }
}

struct CellSummary {
  Cells c;
  long chi;
  bool orientable, ss;
};

CellSummary summarize(const FlagMap& m) {
  return {cells(m), eulerCharacteristic(m), isOrientable(m), satisfiesSS(m)};
}

void reportMapShape(Ctx& ctx, const FlagMap& m) {
  const CellSummary s = summarize(m);
  ctx.out["map"] = {{"flags", m.flagCount()},
                    {"V", s.c.vertexCount()},
                    {"E", s.c.edgeCount()},
                    {"F", s.c.faceCount()},
                    {"euler_characteristic", s.chi},
                    {"orientable", s.orientable},
                    {"two_sided_simple", s.ss}};
  ctx.line("map: V=" + std::to_string(s.c.vertexCount()) +
           " E=" + std::to_string(s.c.edgeCount()) +
           " F=" + std::to_string(s.c.faceCount()) +
           " chi=" + std::to_string(s.chi) +
           (s.orientable ? " orientable" : " non-orientable") +
           (s.ss ? " two-sided-simple" : ""));
}

// --face accepts a face id, a mark name, or NAME for a mark "face_NAME".
std::uint32_t resolveFace(const FlagMap& m, const Cells& c,
                          const std::string& text) {
  if (!text.empty() &&
      text.find_first_not_of("0123456789") == std::string::npos) {
    const unsigned long id = std::stoul(text);
    if (id >= c.faceCount())
      throw Error(Err::IoError, "face id " + text + " out of range (0.." +
                                    std::to_string(c.faceCount() - 1) + ")");
    return static_cast<std::uint32_t>(id);
  }
  for (const std::string& name : {text, "face_" + text})
    if (m.hasMark(name)) return c.face_of[m.mark(name)];
  throw Error(Err::IoError, "no face id or mark named '" + text + "'");
}

// Frame for a face: the flag of mark "e1" when it lies on the face (the
// frame a realization was verified with), otherwise the face's lowest flag.
// --base overrides with the lowest flag of the face on the given edge.
FaceFrame resolveFrame(const FlagMap& m, const Cells& c, std::uint32_t face,
                       long base_edge) {
  if (base_edge >= 0) {
    for (Flag f = 0; f < m.flagCount(); ++f)
      if (c.face_of[f] == face &&
          c.edge_of[f] == static_cast<std::uint32_t>(base_edge))
        return frameAt(m, f);
    throw Error(Err::EdgeNotOnFace, "edge " + std::to_string(base_edge) +
                                        " does not lie on face " +
                                        std::to_string(face));
  }
  if (m.hasMark("e1") && c.face_of[m.mark("e1")] == face)
    return frameAt(m, m.mark("e1"));
  return frameAt(m, c.face_rep[face]);
}

int cmdValidate(Ctx& ctx, int k, const std::string& sigma_text) {
  return runGuarded(ctx, [&] {
    const ZPerm sigma = parseCandidate(sigma_text, k);
    ctx.out["k"] = k;
    ctx.out["sigma"] = formatCandidate(sigma);
    ctx.out["valid"] = true;
    ctx.line("valid");
    ctx.line("canonical: " + formatCandidate(sigma));
  });
}

int cmdEnumerate(Ctx& ctx, int k, const std::string& classes_arg) {
  return runGuarded(ctx, [&] {
    ctx.out["k"] = k;
    if (classes_arg.empty()) {
      ctx.out["candidates"] = json::array();
      std::uint64_t count = 0;
      enumerateCandidates(k, [&](const ZPerm& p) {
        ++count;
        const std::string text = formatCandidate(p);
        if (ctx.json_out)
          ctx.out["candidates"].push_back(text);
        else
          std::cout << text << "\n";
      });
      ctx.out["count"] = count;
      ctx.line(std::to_string(count) + " candidates");
      return;
    }

    bool rot = false, refl = false, rev = false;
    std::stringstream ss(classes_arg);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part == "rotation") rot = true;
      else if (part == "reflection") refl = true;
      else if (part == "reversal") rev = true;
      else if (part == "all") rot = refl = rev = true;
      else
        throw Error(Err::IoError,
                    "--classes takes a comma list of rotation, reflection, "
                    "reversal, or all; got '" + part + "'");
    }
    const std::vector<ZPerm> all = allCandidates(k);
    const auto classes = classifyCandidates(k, rot, refl, rev);
    ctx.out["classes"] = json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
      json members = json::array();
      for (std::size_t idx : classes[i])
        members.push_back(formatCandidate(all[idx]));
      ctx.out["classes"].push_back(
          {{"representative", formatCandidate(all[classes[i][0]])},
           {"size", classes[i].size()},
           {"members", std::move(members)}});
      if (!ctx.json_out)
        std::cout << "class " << i + 1 << " (size " << classes[i].size()
                  << "): " << formatCandidate(all[classes[i][0]]) << "\n";
    }
    ctx.out["count"] = all.size();
    ctx.out["class_count"] = classes.size();
    ctx.line(std::to_string(classes.size()) + " classes of " +
             std::to_string(all.size()) + " candidates");
  });
}

int cmdRealize(Ctx& ctx, int k, const std::string& sigma_text,
               const std::string& surface_text, const std::string& out_path) {
  return runGuarded(ctx, [&] {
    const ZPerm sigma = parseCandidate(sigma_text, k);
    const SurfaceSpec spec = parseSurfaceArg(surface_text);
    ctx.log("realizing " + formatCandidate(sigma) + " on " + spec.text());

    // The sphere path runs the planar pipeline directly so the chord-diagram
    // drawing it was built from can ride along in the output file.
    std::optional<SurfaceRealization> sr;
    std::optional<ConstructionDrawing> drawing;
    if (spec.kind == SurfaceSpec::Kind::Sphere) {
      Realization pr = realizePlanar(sigma);
      drawing = drawingOf(pr.build);
      sr.emplace(SurfaceRealization{std::move(pr.gamma), pr.frame, spec,
                                    std::move(pr.steps)});
    } else {
      sr.emplace(realizeOnSurface(sigma, spec));
    }
    printTrace(ctx, sr->steps);
    reportMapShape(ctx, sr->map);
    ctx.out["surface"] = spec.text();
    ctx.out["sigma"] = formatCandidate(sigma);
    ctx.out["monodromy"] = formatCandidate(zMonodromy(sr->map, sr->frame));

    writeTextFile(out_path, saveMap(sr->map, drawing ? &*drawing : nullptr));
    ctx.out["out"] = out_path;
    ctx.line("z-monodromy verified: " + formatCandidate(sigma));
    ctx.line("wrote " + out_path);
  });
}

int cmdZigzags(Ctx& ctx, const std::string& map_path) {
  return runGuarded(ctx, [&] {
    const FlagMap m = loadMap(readTextFile(map_path)).map;
    reportMapShape(ctx, m);
    const Cells c = cells(m);
    const ZigzagTrace z = traceZigzags(m);
    ctx.out["pairs"] = json::array();
    std::size_t i = 0;
    for (std::uint32_t rep : z.pair_reps) {
      const std::vector<std::uint32_t> edges = zigzagEdges(c, z.orbits[rep]);
      json e = json::array();
      std::string text;
      for (std::uint32_t eid : edges) {
        e.push_back(eid);
        text += (text.empty() ? "" : " ") + std::to_string(eid);
      }
      ctx.out["pairs"].push_back(
          {{"length", edges.size()}, {"edges", std::move(e)}});
      ctx.line("zigzag " + std::to_string(++i) + " (length " +
               std::to_string(edges.size()) + "): " + text);
    }
    ctx.out["count"] = z.pair_reps.size();
    ctx.line(std::to_string(z.pair_reps.size()) + " zigzags up to reversal");
  });
}

int cmdMonodromy(Ctx& ctx, const std::string& map_path,
                 const std::string& face_text, long base_edge) {
  return runGuarded(ctx, [&] {
    const FlagMap m = loadMap(readTextFile(map_path)).map;
    const Cells c = cells(m);
    const std::uint32_t face = resolveFace(m, c, face_text);
    const FaceFrame fr = resolveFrame(m, c, face, base_edge);
    const ZPerm mono = zMonodromy(m, fr);
    ctx.out["face"] = face;
    ctx.out["k"] = fr.k;
    ctx.out["base_flag"] = fr.base;
    ctx.out["base_edge"] = c.edge_of[fr.base];
    ctx.out["monodromy"] = formatCandidate(mono);
    ctx.line("face " + std::to_string(face) + " (k=" + std::to_string(fr.k) +
             ", base edge e" + std::to_string(c.edge_of[fr.base]) + ")");
    ctx.line("z-monodromy: " + formatCandidate(mono));
  });
}

int cmdVerify(Ctx& ctx, const std::string& map_path,
              const std::string& face_text, const std::string& sigma_text,
              long base_edge) {
  return runGuarded(ctx, [&] {
    const FlagMap m = loadMap(readTextFile(map_path)).map;
    const Cells c = cells(m);
    const std::uint32_t face = resolveFace(m, c, face_text);
    const FaceFrame fr = resolveFrame(m, c, face, base_edge);
    const ZPerm sigma = parseCandidate(sigma_text, fr.k);
    const ZPerm mono = zMonodromy(m, fr);
    ctx.out["face"] = face;
    ctx.out["k"] = fr.k;
    ctx.out["monodromy"] = formatCandidate(mono);
    ctx.out["sigma"] = formatCandidate(sigma);
    if (!(mono == sigma))
      throw Error(Err::VerificationMismatch,
                  "z-monodromy " + formatCandidate(mono) +
                      " differs from the candidate " + formatCandidate(sigma));
    ctx.line("verified: face " + std::to_string(face) + " has z-monodromy " +
             formatCandidate(sigma));
  });
}

int cmdExport(Ctx& ctx, const std::string& map_path, const std::string& format,
              const std::string& out_path) {
  return runGuarded(ctx, [&] {
    const LoadedMap loaded = loadMap(readTextFile(map_path));
    std::string text;
    if (format == "dot") {
      text = exportDot(loaded.map);
    } else {
      if (!loaded.has_construction)
        throw Error(Err::NoGeometry,
                    "map file has no construction drawing; SVG export needs "
                    "a sphere realization's output");
      text = exportSvg(loaded.construction);
    }
    writeTextFile(out_path, text);
    ctx.out["format"] = format;
    ctx.out["out"] = out_path;
    ctx.line("wrote " + out_path);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zigzags and z-monodromies of maps on closed surfaces"};
  app.require_subcommand(1);

  Ctx ctx;
  app.add_flag("--json", ctx.json_out, "machine-readable JSON on stdout");
  app.add_option("--seed", ctx.seed,
                 "seed for randomized choices (none in the current "
                 "subcommands; logged for reproducibility)")
      ->capture_default_str();

  int k = 0;
  std::string sigma_text, surface_text = "sphere", map_path, out_path;
  std::string face_text, format, classes_arg;
  long base_edge = -1;

  CLI::App* validate = app.add_subcommand("validate", "check a candidate");
  validate->add_option("--k", k, "face length")->required();
  validate->add_option("--sigma", sigma_text, "signed cycle notation")->required();

  CLI::App* enumerate =
      app.add_subcommand("enumerate", "list all admissible candidates");
  enumerate->add_option("--k", k, "face length")->required();
  enumerate->add_option(
      "--classes", classes_arg,
      "group into orbits: comma list of rotation, reflection, reversal, or all");

  CLI::App* realize = app.add_subcommand(
      "realize", "realize a candidate as a face's z-monodromy on a surface");
  realize->add_option("--k", k, "face length")->required();
  realize->add_option("--sigma", sigma_text, "signed cycle notation")->required();
  realize->add_option("--surface", surface_text, "sphere | genus:g | cross:h")
      ->capture_default_str();
  realize->add_option("--out", out_path, "output map file")->required();

  CLI::App* zigzags = app.add_subcommand("zigzags", "trace all zigzags");
  zigzags->add_option("--map", map_path, "map file")->required();

  CLI::App* monodromy =
      app.add_subcommand("monodromy", "z-monodromy of one face");
  monodromy->add_option("--map", map_path, "map file")->required();
  monodromy->add_option("--face", face_text, "face id or mark name")->required();
  monodromy->add_option("--base", base_edge, "base edge id on the face");

  CLI::App* verify = app.add_subcommand(
      "verify", "check a face's z-monodromy against a candidate");
  verify->add_option("--map", map_path, "map file")->required();
  verify->add_option("--face", face_text, "face id or mark name")->required();
  verify->add_option("--sigma", sigma_text, "signed cycle notation")->required();
  verify->add_option("--base", base_edge, "base edge id on the face");

  CLI::App* exporter = app.add_subcommand("export", "write a DOT or SVG view");
  exporter->add_option("--map", map_path, "map file")->required();
  exporter->add_option("--format", format, "dot | svg")
      ->required()
      ->check(CLI::IsMember({"dot", "svg"}));
  exporter->add_option("--out", out_path, "output file")->required();

  // --json / --seed may appear before or after the subcommand
  for (CLI::App* sub : {validate, enumerate, realize, zigzags, monodromy,
                        verify, exporter})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 4;  // help/version exit 0, usage errors are format errors
  }

  if (app.got_subcommand(validate)) ctx.sub = "validate";
  else if (app.got_subcommand(enumerate)) ctx.sub = "enumerate";
  else if (app.got_subcommand(realize)) ctx.sub = "realize";
  else if (app.got_subcommand(zigzags)) ctx.sub = "zigzags";
  else if (app.got_subcommand(monodromy)) ctx.sub = "monodromy";
  else if (app.got_subcommand(verify)) ctx.sub = "verify";
  else ctx.sub = "export";
  ctx.out["subcommand"] = ctx.sub;
  ctx.out["seed"] = ctx.seed;

  if (ctx.sub == "validate") return cmdValidate(ctx, k, sigma_text);
  if (ctx.sub == "enumerate") return cmdEnumerate(ctx, k, classes_arg);
  if (ctx.sub == "realize")
    return cmdRealize(ctx, k, sigma_text, surface_text, out_path);
  if (ctx.sub == "zigzags") return cmdZigzags(ctx, map_path);
  if (ctx.sub == "monodromy")
    return cmdMonodromy(ctx, map_path, face_text, base_edge);
  if (ctx.sub == "verify")
    return cmdVerify(ctx, map_path, face_text, sigma_text, base_edge);
  return cmdExport(ctx, map_path, format, out_path);
}
