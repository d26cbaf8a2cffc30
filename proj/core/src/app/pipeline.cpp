#include "hyperpack/app/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hyperpack/app/scene.hpp"
#include "hyperpack/domain.hpp"
#include "hyperpack/error.hpp"
#include "hyperpack/group.hpp"
#include "hyperpack/search.hpp"
#include "hyperpack/tess.hpp"

namespace hyperpack::app {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view toString(Stage s) noexcept {
  switch (s) {
    case Stage::Distances: return "distances";
    case Stage::Domain: return "domain";
    case Stage::Pairings: return "pairings";
    case Stage::Candidates: return "candidates";
    case Stage::Filtering: return "filtering";
    case Stage::Completion: return "completion";
    case Stage::Certificate: return "certificate";
  }
  return "unknown";
}

namespace {

constexpr double kAngleTol = 1e-6;
constexpr double kCycleTol = 1e-6;
constexpr double kCentreTol = 1e-6;

constexpr const char* kArtifactNames[] = {"config.json",    "distances.json",  "domain.json", "pairings.json",
                                          "candidates.json", "filtering.json", "solutions.json",
                                          "certificate.json", "error.json",    "domain.svg",
                                          "bananas.svg",     "certificate.svg"};

json pointJson(Complex z) { return json::array({z.real(), z.imag()}); }

json matrixJson(const Isometry& g) {
  return json::array({pointJson(g.a()), pointJson(g.b()), pointJson(std::conj(g.b())), pointJson(std::conj(g.a()))});
}

json edgeJson(EdgeKey e) { return {{"poly", e.poly + 1}, {"edge", e.edge}}; }

json pairingJson(const SidePairing& p) {
  return {{"type", pairingType(p)},
          {"label", pairingLabel(p)},
          {"src", edgeJson(p.src)},
          {"dst", edgeJson(p.dst)},
          {"reversing", p.reversing},
          {"class", toString(p.cls.kind)},
          {"translation_length", p.cls.translationLength},
          {"matrix", matrixJson(p.map)}};
}

json identificationJson(const Identification& id) {
  return {{"a", edgeJson(id.a)}, {"b", edgeJson(id.b)}, {"reversing", id.reversing}};
}

json tolerancesJson(const PipelineConfig& cfg) {
  return {{"match_tol", cfg.matchTol},         {"dedup_tol", cfg.dedupTol},
          {"distance_dedup_tol", 1e-9},        {"angle_tol", kAngleTol},
          {"cycle_tol", kCycleTol},            {"member_tol", GroupOptions{}.memberTol},
          {"swap_tol", kSwapTol},              {"basepoint_clearance", kBasepointClearance},
          {"centre_tol", kCentreTol}};
}

// Everything computed so far, shared by the stages and the renderer.
struct Context {
  const PipelineConfig& cfg;
  std::string hash;
  std::optional<TriangleGenerators> gens;
  DistanceSet D;
  std::optional<FundamentalDomain> F;
  PairingList L;
  // Seed pair and candidates of the run that ended the search (or the last).
  std::optional<std::array<SidePairing, 2>> seeds;
  std::vector<Candidate> candidates;
};

class ArtifactWriter {
 public:
  ArtifactWriter(const Context& ctx, std::vector<fs::path>& written) : ctx_(ctx), written_(written) {}

  void write(Stage stage, json payload) const { write(std::string(toString(stage)) + ".json", stage, std::move(payload)); }

  void write(const std::string& file, Stage stage, json payload) const {
    payload["stage"] = toString(stage);
    payload["config_hash"] = ctx_.hash;
    payload["tolerances"] = tolerancesJson(ctx_.cfg);
    writeText(file, payload.dump(1) + "\n");
  }

  void writeText(const std::string& file, const std::string& text) const {
    const fs::path dir(ctx_.cfg.outputDir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path path = dir / file;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorCode::Io, "short write to " + path.string());
    written_.push_back(path);
  }

 private:
  const Context& ctx_;
  std::vector<fs::path>& written_;
};

void logLine(const RunOptions& opts, const std::string& line) {
  if (opts.log) *opts.log << line << '\n' << std::flush;
}

SidePairing seedPairing(const FundamentalDomain& F, const SeedSpec& s) {
  for (EdgeKey e : {s.src, s.dst}) {
    if (F.boundaryIndex(e) < 0) throw Error(ErrorCode::ConfigRejected, "seed edge " + toString(e) + " is internal to F");
  }
  const SidePairing p = makePairing(F, s.src, s.dst, s.reversing);
  if (!p.cls.axial()) {
    throw Error(ErrorCode::NotAxial, "seed " + toString(s.src) + " -> " + toString(s.dst) + " is " +
                                         std::string(toString(p.cls.kind)) + ", not hyperbolic or glide");
  }
  return p;
}

// Seed pairs in the order they are tried: the configured pair, or pairs of
// one representative per (identification, orientation) in L order.
std::vector<std::array<SidePairing, 2>> seedPairs(const Context& ctx) {
  if (ctx.cfg.seedPairs) {
    const auto& s = *ctx.cfg.seedPairs;
    return {{seedPairing(*ctx.F, s[0]), seedPairing(*ctx.F, s[1])}};
  }
  std::vector<SidePairing> reps;
  for (const SidePairing& p : ctx.L.entries)
    if (p.src < p.dst) reps.push_back(p);
  std::vector<std::array<SidePairing, 2>> out;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (ctx.cfg.seedPairLimit != 0 && out.size() >= ctx.cfg.seedPairLimit) return out;
      out.push_back({reps[i], reps[j]});
    }
  }
  return out;
}

bool isCentre(const FundamentalDomain& F, Point z) {
  for (int i = 0; i < F.k(); ++i)
    if (std::abs(F.center(i) - z) < kCentreTol) return true;
  return false;
}

bool containsAll(const std::vector<Identification>& ids, const std::vector<Identification>& required) {
  return std::includes(ids.begin(), ids.end(), required.begin(), required.end());
}

json seedsJson(const std::array<SidePairing, 2>& s) { return json::array({pairingJson(s[0]), pairingJson(s[1])}); }

json topologyJson(const TopologyReport& t) {
  return {{"vertices", t.vertices}, {"edges", t.edges},           {"faces", t.faces},
          {"euler_characteristic", t.eulerChar}, {"orientable", t.orientable}, {"genus", t.genus}};
}

json certificateJson(const Context& ctx, const PackingCertificate& c, const GroupPresentation& G,
                     const std::array<SidePairing, 2>& seeds, const PairingSolution& sol) {
  json gens = json::array();
  for (std::size_t i = 0; i < G.generators().size(); ++i) {
    const SidePairing& g = G.generators()[i];
    const MembershipResult& m = c.normalizer.conjugates[i];
    json entry = pairingJson(g);
    entry["inverse"] = G.inverseOf(static_cast<int>(i));
    entry["conjugate"] = {{"member", m.member},
                          {"residual", m.residual},
                          {"word", m.word},
                          {"strategy", toString(m.strategy)},
                          {"greedy_steps", m.greedySteps},
                          {"walk_steps", m.walkSteps}};
    gens.push_back(std::move(entry));
  }
  json ids = json::array();
  for (const Identification& id : sol.identifications) ids.push_back(identificationJson(id));
  return {{"n", ctx.cfg.n},
          {"frame_angle", ctx.cfg.frameAngle()},
          {"pass", c.pass},
          {"P", pointJson(c.P)},
          {"O_prime", pointJson(c.Oprime)},
          {"midpoint", pointJson(c.midpoint)},
          {"tau", matrixJson(c.tau)},
          {"swap_error", c.swapError},
          {"swap_check", c.swapCheck},
          {"normalizes", c.normalizer.normalizes},
          {"max_length_drift", c.normalizer.maxLengthDrift},
          {"basepoint", pointJson(G.basepoint())},
          {"seeds", seedsJson(seeds)},
          {"identifications", ids},
          {"generators", gens}};
}

void stageDistances(Context& ctx, const ArtifactWriter& out) {
  ctx.gens.emplace(ctx.cfg.n, ctx.cfg.frameAngle());
  DistanceOptions o;
  o.matchTol = ctx.cfg.matchTol;
  o.workers = ctx.cfg.workers;
  ctx.D = admissibleDistances(*ctx.gens, ctx.cfg.depth, o);
  const PolygonMetrics& m = ctx.gens->metrics();
  out.write(Stage::Distances, {{"n", ctx.cfg.n},
                               {"depth", ctx.D.depth},
                               {"tol", ctx.D.matchTol},
                               {"inradius", m.inradius},
                               {"circumradius", m.circumradius},
                               {"count", ctx.D.values.size()},
                               {"values", ctx.D.values}});
}

void stageDomain(Context& ctx, const ArtifactWriter& out) {
  ctx.F.emplace(buildDomain(*ctx.gens, ctx.cfg.attachments));
  const FundamentalDomain& F = *ctx.F;
  json polys = json::array();
  for (int i = 0; i < F.k(); ++i) {
    json verts = json::array();
    for (int j = 0; j < F.n(); ++j) verts.push_back(pointJson(F.edge({i, j}).start));
    polys.push_back({{"index", i + 1}, {"center", pointJson(F.center(i))}, {"placement", matrixJson(F.placement(i))},
                     {"vertices", verts}});
  }
  json boundary = json::array();
  for (const EdgeRef& e : F.boundaryEdges())
    boundary.push_back({{"edge", edgeJson(e.key)}, {"start", pointJson(e.start)}, {"end", pointJson(e.end)}});
  json internal = json::array();
  for (const InternalEdge& e : F.internalEdges()) internal.push_back(json::array({edgeJson(e.first), edgeJson(e.second)}));
  json vertices = json::array();
  for (const BoundaryVertex& v : F.boundaryVertices())
    vertices.push_back({{"point", pointJson(v.point)}, {"angle", v.angle}, {"corners", v.corners}});
  out.write(Stage::Domain, {{"n", F.n()},
                            {"k", F.k()},
                            {"frame_angle", ctx.cfg.frameAngle()},
                            {"polygons", polys},
                            {"boundary_edges", boundary},
                            {"internal_edges", internal},
                            {"boundary_vertices", vertices},
                            {"interior_vertices", F.interiorVertexCount()}});
}

void stagePairings(Context& ctx, const ArtifactWriter& out) {
  ctx.L = enumeratePairings(*ctx.F);
  json entries = json::array();
  for (const SidePairing& p : ctx.L.entries) entries.push_back(pairingJson(p));
  json excluded = json::array();
  for (const SidePairing& p : ctx.L.excluded)
    excluded.push_back({{"src", edgeJson(p.src)}, {"dst", edgeJson(p.dst)}, {"reversing", p.reversing},
                        {"class", toString(p.cls.kind)}});
  out.write(Stage::Pairings, {{"count", ctx.L.entries.size()},
                              {"excluded_count", ctx.L.excluded.size()},
                              {"pairings", entries},
                              {"excluded", excluded}});
}

struct SearchOutcome {
  json candidateRuns = json::array();
  json filteringRuns = json::array();
  json solutionRuns = json::array();
  std::optional<json> certificate;
};

// Runs candidates through certificate for one seed pair. Returns true when a
// certificate passed.
bool searchSeedPair(Context& ctx, const std::array<SidePairing, 2>& seeds, Stage stopAfter, SearchOutcome& outcome,
                    RunSummary& summary) {
  const PipelineConfig& cfg = ctx.cfg;
  const FundamentalDomain& F = *ctx.F;
  CandidateOptions co;
  co.dedupTol = cfg.dedupTol;
  co.workers = cfg.workers;
  const CandidateSet C = candidates(seeds[0], seeds[1], ctx.D, F, co);
  ctx.seeds = seeds;
  ctx.candidates = C.candidates;
  summary.candidates += C.candidates.size();

  json cands = json::array();
  for (const Candidate& c : C.candidates)
    cands.push_back({{"point", pointJson(c.point)}, {"seed_distances", c.seedDistances}});
  outcome.candidateRuns.push_back({{"seeds", seedsJson(seeds)},
                                   {"raw_intersections", C.rawIntersections},
                                   {"coincident_pairs", C.coincidentPairs},
                                   {"candidates", cands}});
  if (stopAfter == Stage::Candidates) return false;

  struct Good {
    Point point;
    std::vector<SidePairing> Lc;
  };
  std::vector<Good> good;
  json filtered = json::array();
  for (const Candidate& c : C.candidates) {
    json rec = {{"point", pointJson(c.point)}};
    if (isCentre(F, c.point)) {
      rec["status"] = "centre";
      filtered.push_back(std::move(rec));
      continue;
    }
    std::vector<SidePairing> Lc = compatiblePairings(c.point, ctx.L.entries, ctx.D);
    const std::vector<EdgeKey> missing = uncoveredEdges(edgeCoverage(Lc, F));
    rec["compatible"] = Lc.size();
    json miss = json::array();
    for (EdgeKey e : missing) miss.push_back(edgeJson(e));
    rec["uncovered"] = miss;
    rec["status"] = missing.empty() ? "good" : "uncovered";
    filtered.push_back(std::move(rec));
    if (missing.empty()) good.push_back({c.point, std::move(Lc)});
  }
  summary.goodCandidates += good.size();
  outcome.filteringRuns.push_back({{"seeds", seedsJson(seeds)}, {"candidates", filtered}});
  if (stopAfter == Stage::Filtering) return false;

  if (cfg.preferNear) {
    const Point q = *cfg.preferNear;
    std::stable_sort(good.begin(), good.end(),
                     [&](const Good& x, const Good& y) { return std::abs(x.point - q) < std::abs(y.point - q); });
  }

  json solved = json::array();
  bool certified = false;
  for (const Good& g : good) {
    CompletionOptions opts;
    opts.limit = cfg.limit;
    opts.maxNodes = cfg.maxNodes;
    opts.angleTol = kAngleTol;
    opts.cycleTol = kCycleTol;
    opts.requireNonOrientable = !cfg.orientable;
    const CompletionResult res = completePairing(g.Lc, F, opts);
    summary.solutions += res.solutions.size();
    json sols = json::array();
    for (const PairingSolution& s : res.solutions) {
      json ids = json::array();
      for (const Identification& id : s.identifications) ids.push_back(identificationJson(id));
      json cycles = json::array();
      for (const VertexCycle& vc : s.vertexCycles) cycles.push_back({{"vertices", vc.vertices}, {"angle_sum", vc.angleSum}});
      json rec = {{"identifications", ids},
                  {"orientation_reversing", s.orientationReversingCount},
                  {"vertex_cycles", cycles},
                  {"topology", topologyJson(verifyTopology(s, F, kAngleTol))},
                  {"certified", nullptr}};
      if (stopAfter == Stage::Certificate && !certified && containsAll(s.identifications, cfg.requireIdentifications)) {
        try {
          const GroupPresentation G(F, s.chosen);
          const PackingCertificate cert = secondPackingCertificate(g.point, G, *ctx.gens, {}, cfg.workers);
          rec["certified"] = cert.pass;
          if (cert.pass) {
            certified = true;
            summary.certifiedPoint = g.point;
            outcome.certificate = certificateJson(ctx, cert, G, seeds, s);
          }
        } catch (const Error& e) {
          rec["certified"] = false;
          rec["certificate_error"] = {{"code", toString(e.code())}, {"message", e.what()}};
        }
      }
      sols.push_back(std::move(rec));
    }
    solved.push_back({{"point", pointJson(g.point)},
                      {"compatible", g.Lc.size()},
                      {"nodes", res.nodes},
                      {"exhausted", res.exhausted},
                      {"budget_hit", res.budgetHit},
                      {"solutions", sols}});
    if (certified) break;
  }
  outcome.solutionRuns.push_back({{"seeds", seedsJson(seeds)}, {"candidates", solved}});
  return certified;
}

void buildContext(Context& ctx, const ArtifactWriter& out, const RunOptions& opts, RunSummary& summary,
                  std::string& current) {
  current = "distances";
  stageDistances(ctx, out);
  summary.reached = Stage::Distances;
  logLine(opts, "distances: " + std::to_string(ctx.D.values.size()) + " values at depth " + std::to_string(ctx.D.depth));
  if (opts.stopAfter == Stage::Distances) return;
  current = "domain";
  stageDomain(ctx, out);
  summary.reached = Stage::Domain;
  logLine(opts, "domain: " + std::to_string(ctx.F->boundaryEdges().size()) + " boundary edges");
  if (opts.stopAfter == Stage::Domain) return;
  current = "pairings";
  stagePairings(ctx, out);
  summary.reached = Stage::Pairings;
  logLine(opts, "pairings: " + std::to_string(ctx.L.entries.size()) + " axial, " +
                    std::to_string(ctx.L.excluded.size()) + " excluded");
}

}  // namespace

RunSummary runPipeline(const PipelineConfig& cfg, const RunOptions& opts) {
  RunSummary summary;
  Context ctx{cfg, configHash(cfg), {}, {}, {}, {}, {}, {}};
  ArtifactWriter out(ctx, summary.artifacts);
  std::string current = "config";
  try {
    validate(cfg);
    // A rerun must not leave results of an earlier, longer run behind.
    for (const char* stale : kArtifactNames) {
      std::error_code ec;
      fs::remove(fs::path(cfg.outputDir) / stale, ec);
    }
    out.writeText("config.json", toJson(cfg));
    buildContext(ctx, out, opts, summary, current);
    if (opts.stopAfter <= Stage::Pairings) {
      summary.exitCode = kExitCertified;
      return summary;
    }
    current = "candidates";
    SearchOutcome outcome;
    bool certified = false;
    for (const auto& seeds : seedPairs(ctx)) {
      ++summary.seedPairsTried;
      certified = searchSeedPair(ctx, seeds, opts.stopAfter, outcome, summary);
      if (certified) break;
    }
    logLine(opts, "candidates: " + std::to_string(summary.candidates) + " over " +
                      std::to_string(summary.seedPairsTried) + " seed pair(s)");
    out.write(Stage::Candidates, {{"seed_runs", outcome.candidateRuns}});
    summary.reached = Stage::Candidates;
    if (opts.stopAfter >= Stage::Filtering) {
      current = "filtering";
      out.write(Stage::Filtering, {{"seed_runs", outcome.filteringRuns}});
      summary.reached = Stage::Filtering;
      logLine(opts, "filtering: " + std::to_string(summary.goodCandidates) + " candidate(s) cover every edge");
    }
    if (opts.stopAfter >= Stage::Completion) {
      current = "completion";
      out.write("solutions.json", Stage::Completion, {{"seed_runs", outcome.solutionRuns}});
      summary.reached = Stage::Completion;
      logLine(opts, "completion: " + std::to_string(summary.solutions) + " solution(s)");
    }
    if (opts.stopAfter >= Stage::Certificate) {
      current = "certificate";
      if (outcome.certificate) {
        out.write(Stage::Certificate, *outcome.certificate);
        summary.reached = Stage::Certificate;
        const Point p = *summary.certifiedPoint;
        logLine(opts, "certificate: pass at " + std::to_string(p.real()) + " " + std::to_string(p.imag()));
      } else {
        logLine(opts, "certificate: none found");
      }
    }
    if (opts.renderFigures && opts.stopAfter >= Stage::Candidates) {
      current = "render";
      for (const fs::path& p : renderFigures(cfg)) summary.artifacts.push_back(p);
    }
    summary.exitCode = (opts.stopAfter < Stage::Certificate || outcome.certificate) ? kExitCertified : kExitExhausted;
  } catch (const Error& e) {
    summary.exitCode = kExitError;
    summary.errorStage = current;
    summary.errorCode = std::string(toString(e.code()));
    summary.errorMessage = e.what();
  } catch (const std::exception& e) {
    summary.exitCode = kExitError;
    summary.errorStage = current;
    summary.errorCode = "Internal";
    summary.errorMessage = e.what();
  }
  if (summary.exitCode == kExitError) {
    try {
      out.writeText("error.json", json{{"stage", summary.errorStage},
                                       {"reason", summary.errorCode},
                                       {"message", summary.errorMessage},
                                       {"config_hash", ctx.hash}}
                                          .dump(1) +
                                      "\n");
    } catch (const Error&) {
      // Nowhere to report it; the summary still carries the error.
    }
  }
  return summary;
}

// ------------------------------------------------------------------ verify

namespace {

Isometry isometryFrom(const json& m, bool reversing) {
  const Complex a(m.at(0).at(0).get<double>(), m.at(0).at(1).get<double>());
  const Complex b(m.at(1).at(0).get<double>(), m.at(1).at(1).get<double>());
  return {a, b, reversing};
}

Point pointFrom(const json& p) { return {p.at(0).get<double>(), p.at(1).get<double>()}; }

}  // namespace

VerifyReport verifyCertificate(std::string_view text) {
  VerifyReport r;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    r.problems.push_back(std::string("not JSON: ") + e.what());
    return r;
  }
  try {
    const double memberTol = j.at("tolerances").at("member_tol").get<double>();
    const double swapTol = j.at("tolerances").at("swap_tol").get<double>();
    const Isometry tau = isometryFrom(j.at("tau"), false);
    const Point P = pointFrom(j.at("P"));
    const Point Oprime = pointFrom(j.at("O_prime"));
    const Point m = pointFrom(j.at("midpoint"));

    const TriangleGenerators gens(j.at("n").get<int>(), j.at("frame_angle").get<double>());
    if (std::abs(secondCentre(gens) - Oprime) > 1e-12) r.problems.push_back("O' does not match (ca)^2 b (0)");
    const IsometryClass tc = classify(tau);
    if (tc.kind != IsometryKind::Elliptic || std::abs(std::abs(tc.rotationAngle) - kPi) > 1e-9)
      r.problems.push_back("tau is not a half-turn");
    if (std::abs(apply(tau, m) - m) > 1e-12) r.problems.push_back("tau does not fix the midpoint");
    r.swapError = std::max(std::abs(apply(tau, P) - Oprime), std::abs(apply(tau, Oprime) - P));
    if (r.swapError > swapTol) r.problems.push_back("tau does not swap P and O'");

    std::vector<Isometry> G;
    for (const json& g : j.at("generators")) G.push_back(isometryFrom(g.at("matrix"), g.at("reversing").get<bool>()));
    r.generators = G.size();
    if (G.empty()) r.problems.push_back("no generators");
    for (std::size_t i = 0; i < G.size(); ++i) {
      const json& conj = j.at("generators").at(i).at("conjugate");
      if (!conj.at("member").get<bool>()) {
        r.problems.push_back("generator " + std::to_string(i) + " conjugate recorded as non-member");
        continue;
      }
      Isometry w;
      bool valid = true;
      for (const json& x : conj.at("word")) {
        const int idx = x.get<int>();
        if (idx < 0 || static_cast<std::size_t>(idx) >= G.size()) {
          valid = false;
          break;
        }
        w = compose(w, G[static_cast<std::size_t>(idx)]);
      }
      if (!valid) {
        r.problems.push_back("generator " + std::to_string(i) + " word names a missing generator");
        continue;
      }
      const double res =
          matrixDistance(compose(inverse(w), conjugate(tau, G[i])), Isometry::identity());
      r.maxResidual = std::max(r.maxResidual, res);
      if (!(res < memberTol))
        r.problems.push_back("generator " + std::to_string(i) + " residual " + std::to_string(res));
    }
    if (!j.at("pass").get<bool>()) r.problems.push_back("certificate records a failure");
  } catch (const std::exception& e) {
    r.problems.push_back(std::string("malformed certificate: ") + e.what());
  }
  r.ok = r.problems.empty();
  return r;
}

VerifyReport verifyCertificateFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    VerifyReport r;
    r.problems.push_back("cannot read " + path.string());
    return r;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return verifyCertificate(buf.str());
}

// ------------------------------------------------------------------ render

namespace {

const char* kPolyFill[] = {"#dbe8f6", "#f6e3d0", "#dcefd8", "#efdcef", "#f3efcf", "#d8efef"};

Layer domainLayer(const FundamentalDomain& F, bool labels) {
  Layer layer{"domain", {}};
  for (int i = 0; i < F.k(); ++i) {
    PolygonShape p;
    for (int j = 0; j < F.n(); ++j) p.vertices.push_back(F.edge({i, j}).start);
    p.fill = kPolyFill[i % 6];
    p.style = {"#404040", 1.0, Stroke::Solid};
    layer.shapes.emplace_back(std::move(p));
  }
  if (!labels) return layer;
  for (int i = 0; i < F.k(); ++i) {
    layer.shapes.emplace_back(Text{F.center(i), "pol" + std::to_string(i + 1), 13.0, "#202020"});
  }
  for (const EdgeRef& e : F.boundaryEdges()) {
    const Point mid = midpoint(e.start, e.end);
    // Pulled a little towards the polygon centre.
    const Point at = mid + 0.12 * (F.center(e.key.poly) - mid);
    layer.shapes.emplace_back(Text{at, std::to_string(e.key.edge), 9.0, "#505050"});
  }
  return layer;
}

}  // namespace

std::vector<fs::path> renderFigures(const PipelineConfig& cfg) {
  validate(cfg);
  const TriangleGenerators gens(cfg.n, cfg.frameAngle());
  const FundamentalDomain F = buildDomain(gens, cfg.attachments);
  std::vector<fs::path> written;
  const fs::path dir(cfg.outputDir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const auto save = [&](const std::string& name, const Scene& scene) {
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << render(scene);
    written.push_back(path);
  };

  Scene domain{"Fundamental domain", {domainLayer(F, true)}};
  save("domain.svg", domain);

  // Seeds and candidates come from the artifacts when present.
  std::optional<std::array<SidePairing, 2>> seeds;
  std::vector<Point> cands;
  {
    std::ifstream in(dir / "candidates.json", std::ios::binary);
    if (in) {
      const json j = json::parse(in);
      const json& runs = j.at("seed_runs");
      if (!runs.empty()) {
        const json& run = runs.back();
        const auto seedOf = [&](const json& s) {
          const EdgeKey src{s.at("src").at("poly").get<int>() - 1, s.at("src").at("edge").get<int>()};
          const EdgeKey dst{s.at("dst").at("poly").get<int>() - 1, s.at("dst").at("edge").get<int>()};
          return makePairing(F, src, dst, s.at("reversing").get<bool>());
        };
        seeds = std::array<SidePairing, 2>{seedOf(run.at("seeds").at(0)), seedOf(run.at("seeds").at(1))};
        for (const json& c : run.at("candidates")) cands.push_back(pointFrom(c.at("point")));
      }
    }
  }
  if (seeds) {
    DistanceOptions o;
    o.matchTol = cfg.matchTol;
    o.workers = cfg.workers;
    const DistanceSet D = admissibleDistances(gens, cfg.depth, o);
    Scene scene{"Bananas of the seed pairings", {domainLayer(F, false)}};
    const char* colors[] = {"#c0392b", "#1f5fa8"};
    for (int s = 0; s < 2; ++s) {
      const SidePairing& p = (*seeds)[static_cast<std::size_t>(s)];
      Layer arcs{"bananas-" + std::to_string(s + 1), {}};
      // Only bananas that can reach F, as in the candidate search.
      for (const Banana& b : bananas(p, D, p.cls.translationLength + 2.0 * gens.metrics().inradius * cfg.k)) {
        for (const GeneralizedCircle& c : b.arcs) arcs.shapes.emplace_back(Curve{c, {colors[s], 0.6, Stroke::Solid}});
      }
      arcs.shapes.emplace_back(Curve{axis(p.map), {colors[s], 1.4, Stroke::Dashed}});
      scene.layers.push_back(std::move(arcs));
    }
    Layer points{"candidates", {}};
    for (Point z : cands) points.shapes.emplace_back(Marker{z, "", "#111111"});
    scene.layers.push_back(std::move(points));
    save("bananas.svg", scene);
  }

  std::ifstream certIn(dir / "certificate.json", std::ios::binary);
  if (certIn) {
    const json j = json::parse(certIn);
    const Point P = pointFrom(j.at("P"));
    const Point O = pointFrom(j.at("O_prime"));
    const Point m = pointFrom(j.at("midpoint"));
    Scene scene{"Second packing centre", {domainLayer(F, true)}};
    Layer marks{"certificate", {}};
    marks.shapes.emplace_back(Segment{P, O, {"#8e44ad", 1.4, Stroke::Dashed}});
    marks.shapes.emplace_back(Marker{0.0, "O", "#111111"});
    marks.shapes.emplace_back(Marker{P, "P", "#c0392b"});
    marks.shapes.emplace_back(Marker{O, "O'", "#1f5fa8"});
    marks.shapes.emplace_back(Marker{m, "m", "#8e44ad"});
    scene.layers.push_back(std::move(marks));
    save("certificate.svg", scene);
  }
  return written;
}

}  // namespace hyperpack::app
