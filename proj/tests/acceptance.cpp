// Acceptance checks: one PASS/FAIL line per criterion, exit status is the
// number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hyperpack/app/config.hpp"
#include "hyperpack/app/pipeline.hpp"
#include "hyperpack/domain.hpp"
#include "hyperpack/error.hpp"
#include "hyperpack/group.hpp"
#include "hyperpack/search.hpp"
#include "hyperpack/tess.hpp"
#include "n14_reference.hpp"
#include "random_geometry.hpp"

namespace fs = std::filesystem;
using namespace hyperpack;

namespace {

constexpr double kReplaySeconds = 300.0;
constexpr double kCycleTol = 1e-6;
constexpr double kResidualTol = 1e-6;
constexpr double kSwapTolerance = 1e-8;
constexpr double kInvarianceTol = 1e-10;
constexpr double kDisplacementTol = 1e-8;
constexpr double kHypercycleTol = 1e-7;
constexpr double kConjugationTol = 1e-8;
constexpr double kDistanceTol = 1e-9;
constexpr int kPropertyDraws = 10000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct N14 {
  TriangleGenerators gens{n14::kN, n14::kFrameAngle};
  FundamentalDomain F = buildDomain(gens, n14::attachments());
  PairingList L = enumeratePairings(F);
  DistanceSet D = admissibleDistances(gens, n14::kDepth);
  SidePairing p1 = makePairing(F, n14::kSeed1.src, n14::kSeed1.dst, n14::kSeed1.reversing);
  SidePairing p2 = makePairing(F, n14::kSeed2.src, n14::kSeed2.dst, n14::kSeed2.reversing);
  CandidateSet C = candidates(p1, p2, D, F);

  const Candidate* near(Point z) const {
    for (const Candidate& c : C.candidates)
      if (std::abs(c.point - z) < n14::kPointTol) return &c;
    return nullptr;
  }
};

double replaySeconds = 0.0;

const N14& n14Run() {
  static const N14* run = [] {
    const auto t0 = std::chrono::steady_clock::now();
    const N14* r = new N14;
    replaySeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }();
  return *run;
}

Outcome replay() {
  const N14& r = n14Run();
  const bool origin = r.near(0.0) != nullptr;
  const bool good = r.near(n14::kGoodCandidate) != nullptr;
  const bool rejected = r.near(n14::kRejectedCandidate) != nullptr;
  const bool fast = replaySeconds < kReplaySeconds;
  return {origin && good && rejected && fast,
          fmt("%g candidates; origin, 0.516-0.248i, 0.324-0.478i present: ", static_cast<double>(r.C.candidates.size())) +
              (origin ? "y" : "n") + (good ? "y" : "n") + (rejected ? "y" : "n") + fmt("; %.2fs", replaySeconds)};
}

Outcome rejection() {
  const N14& r = n14Run();
  const Candidate* c = r.near(n14::kRejectedCandidate);
  if (!c) return {false, "candidate near 0.324-0.478i missing"};
  const std::vector<SidePairing> Lc = compatiblePairings(c->point, r.L.entries, r.D);
  std::vector<Identification> ids;
  for (const SidePairing& p : Lc) ids.push_back(identificationOf(p));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const bool same = ids == n14::rejectedCompatible();
  const auto missing = uncoveredEdges(edgeCoverage(Lc, r.F));
  const bool edge3 = std::find(missing.begin(), missing.end(), EdgeKey{0, 3}) != missing.end();
  return {same && edge3, fmt("|L_c| = %g directed (%g identifications), ", static_cast<double>(Lc.size()),
                             static_cast<double>(ids.size())) +
                             (same ? "matches" : "differs") + "; pol1[3] " + (edge3 ? "uncovered" : "covered")};
}

Outcome completion() {
  const N14& r = n14Run();
  const Candidate* c = r.near(n14::kGoodCandidate);
  if (!c) return {false, "candidate near 0.516-0.248i missing"};
  CompletionOptions opts;
  opts.limit = 0;
  const CompletionResult res = completePairing(compatiblePairings(c->point, r.L.entries, r.D), r.F, opts);
  const auto expected = n14::generatingIdentifications();
  for (const PairingSolution& s : res.solutions) {
    if (!std::includes(s.identifications.begin(), s.identifications.end(), expected.begin(), expected.end()))
      continue;
    double worst = 0.0;
    for (const VertexCycle& vc : s.vertexCycles) worst = std::max(worst, std::abs(vc.angleSum - 2 * kPi));
    try {
      const TopologyReport t = verifyTopology(s, r.F, kCycleTol);
      const bool ok = t.eulerChar == -4 && !t.orientable && t.genus == 6 && worst < kCycleTol;
      return {ok, fmt("%g solutions; reference set found; chi %g, genus %g", static_cast<double>(res.solutions.size()),
                      t.eulerChar, t.genus) +
                      (t.orientable ? ", orientable" : ", non-orientable") + fmt(", worst cycle error %.1e", worst)};
    } catch (const Error& e) {
      return {false, std::string("reference set fails topology: ") + e.what()};
    }
  }
  return {false, fmt("%g solutions, none contains the reference set", static_cast<double>(res.solutions.size()))};
}

Outcome certificate() {
  const N14& r = n14Run();
  const Candidate* c = r.near(n14::kGoodCandidate);
  if (!c) return {false, "candidate near 0.516-0.248i missing"};
  std::vector<SidePairing> gens;
  for (const auto& p : n14::generatingSet()) {
    gens.push_back(makePairing(r.F, {p.srcPoly, p.srcEdge}, {p.dstPoly, p.dstEdge}, p.reversing));
    gens.push_back(makePairing(r.F, {p.dstPoly, p.dstEdge}, {p.srcPoly, p.srcEdge}, p.reversing));
  }
  const GroupPresentation G(r.F, gens);
  const PackingCertificate cert = secondPackingCertificate(c->point, G, r.gens);
  double worst = 0.0;
  bool members = true;
  for (const MembershipResult& m : cert.normalizer.conjugates) {
    members = members && m.member;
    worst = std::max(worst, m.residual);
  }
  const bool ok = cert.pass && members && worst < kResidualTol && cert.swapError < kSwapTolerance;
  return {ok, fmt("%g conjugates in K, max residual %.1e, swap error %.1e",
                  static_cast<double>(cert.normalizer.conjugates.size()), worst, cert.swapError)};
}

Outcome properties() {
  using hyperpack::testing::RandomGeometry;
  const auto t0 = std::chrono::steady_clock::now();
  int failures = 0;
  std::size_t checks = 0;
  {
    RandomGeometry rnd(101);
    for (int i = 0; i < kPropertyDraws; ++i, ++checks) {
      const Isometry g = rnd.isometry();
      const Point z = rnd.point(), w = rnd.point();
      const double d = dist(z, w);
      if (std::abs(dist(apply(g, z), apply(g, w)) - d) > kInvarianceTol * std::max(1.0, d)) ++failures;
    }
  }
  {
    RandomGeometry rnd(103);
    for (int i = 0; i < kPropertyDraws; ++i, ++checks) {
      const double T = rnd.uniform(0.05, 4.0);
      const Isometry g = rnd.hyperbolic(T);
      const Point z = rnd.point();
      const double lhs = std::sinh(dist(z, apply(g, z)) / 2.0);
      const double rhs = std::cosh(distToGeodesic(z, axis(g))) * std::sinh(T / 2.0);
      if (std::abs(lhs - rhs) > kDisplacementTol * std::max(1.0, rhs)) ++failures;
    }
  }
  {
    RandomGeometry rnd(104);
    for (int i = 0; i < kPropertyDraws; ++i, ++checks) {
      const double T = rnd.uniform(0.05, 4.0);
      const Isometry g = rnd.glide(T);
      const Point z = rnd.point();
      const double lhs = std::cosh(dist(z, apply(g, z)) / 2.0);
      const double rhs = std::cosh(distToGeodesic(z, axis(g))) * std::cosh(T / 2.0);
      if (std::abs(lhs - rhs) > kDisplacementTol * std::max(1.0, rhs)) ++failures;
    }
  }
  {
    RandomGeometry rnd(105);
    for (int i = 0; i < kPropertyDraws; ++i) {
      const double T = rnd.uniform(0.2, 3.0);
      const Isometry g = i % 2 == 0 ? rnd.hyperbolic(T) : rnd.glide(T);
      const double d = T + rnd.uniform(0.0, 3.0);
      const auto delta = displacementOffset(classify(g), d);
      if (!delta) {
        ++failures;
        continue;
      }
      const Side side = i % 4 < 2 ? Side::Left : Side::Right;
      const GeneralizedCircle banana = hypercycle(axis(g), std::max(*delta, 1e-12), side);
      for (Point z : hyperpack::testing::samplesInside(banana, 4, 0.9)) {
        ++checks;
        if (std::abs(dist(z, apply(g, z)) - d) > kHypercycleTol) ++failures;
      }
    }
  }
  {
    RandomGeometry rnd(106);
    for (int i = 0; i < kPropertyDraws; ++i, ++checks) {
      const double T = rnd.uniform(0.05, 4.0);
      const Isometry g = i % 2 == 0 ? rnd.hyperbolic(T) : rnd.glide(T);
      const IsometryClass a = classify(g);
      const IsometryClass b = classify(conjugate(rnd.isometry(), g));
      if (a.kind != b.kind || std::abs(a.translationLength - b.translationLength) > kConjugationTol ||
          std::abs(a.translationLength - T) > kConjugationTol)
        ++failures;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {failures == 0, fmt("%g checks, %g failures, %.2fs", static_cast<double>(checks), failures, secs)};
}

Outcome distances() {
  const DistanceSet d1 = admissibleDistances(14, 1);
  const double two_r = 2 * polygonMetrics(14).inradius;
  const bool depth1 = d1.values.size() == 2 && std::abs(d1.values[0]) < kDistanceTol &&
                      std::abs(d1.values[1] - two_r) < kDistanceTol;

  const TriangleGenerators t7(7);
  const DistanceSet d5 = admissibleDistances(t7, 5);
  const std::array<int, 5> word{1, 6, 4, 1, 5};
  const bool member = isAdmissible(dist(0.0, apply(t7.product(word), 0.0)), d5);

  bool monotone = true;
  for (int n : {7, 14}) {
    const DistanceSet lo = admissibleDistances(n, 3);
    const DistanceSet hi = admissibleDistances(n, 4);
    for (double v : lo.values) monotone = monotone && std::abs(nearestAdmissible(v, hi) - v) < kDistanceTol;
  }
  return {depth1 && member && monotone, std::string("depth-1 set ") + (depth1 ? "ok" : "wrong") +
                                            "; R1R6R4R1R5 " + (member ? "member" : "missing") + "; depth 3 in 4 " +
                                            (monotone ? "ok" : "violated")};
}

Outcome arithmetic() {
  const app::PrimitivePair p7 = app::primitivePair(7);
  const app::PrimitivePair p14 = app::primitivePair(14);
  const bool pairs = p7.k == 6 && p7.g == 3 && p14.k == 3 && p14.g == 6;
  std::vector<int> accepted;
  for (int n = 1; n <= 100; ++n) {
    // Any k with an integer genus; if none exists the N is rejected anyway.
    int k = 1;
    while (k < 200 && !app::genusFor(n, k)) ++k;
    app::PipelineConfig c;
    c.n = n;
    c.k = k;
    for (int i = 1; i < k; ++i) c.attachments.push_back({i - 1, 1});
    try {
      app::validate(c);
      accepted.push_back(n);
    } catch (const Error&) {
    }
  }
  const std::vector<int> expected(std::begin(app::kRelevantN), std::end(app::kRelevantN));
  const bool list = accepted == expected;
  const bool n13 = std::find(accepted.begin(), accepted.end(), 13) == accepted.end();
  std::string acc;
  for (int n : accepted) acc += (acc.empty() ? "" : ",") + std::to_string(n);
  return {pairs && list && n13, fmt("N=7 -> (%g,%g), N=14 -> (%g,", p7.k, p7.g, p14.k) + std::to_string(p14.g) +
                                    "); accepted N in 1..100: {" + acc + "}"};
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    out[e.path().filename().string()] = buf.str();
  }
  return out;
}

Outcome determinism() {
  app::PipelineConfig cfg = app::loadConfig(fs::path(HYPERPACK_CONFIG_DIR) / "n14.json");
  cfg.outputDir = (fs::temp_directory_path() / "hyperpack_acceptance_determinism").string();
  fs::remove_all(cfg.outputDir);
  const app::RunSummary first = app::runPipeline(cfg);
  const auto a = snapshot(cfg.outputDir);
  const app::RunSummary second = app::runPipeline(cfg);
  const auto b = snapshot(cfg.outputDir);
  fs::remove_all(cfg.outputDir);
  std::size_t json = 0, svg = 0;
  for (const auto& [name, bytes] : a) {
    json += name.ends_with(".json");
    svg += name.ends_with(".svg");
  }
  const bool ok = first.exitCode == app::kExitCertified && second.exitCode == app::kExitCertified && a == b &&
                  json >= 8 && svg == 3;
  return {ok, fmt("exit codes %g/%g; %g JSON and ", first.exitCode, second.exitCode, static_cast<double>(json)) +
                  std::to_string(svg) + " SVG artifacts " + (a == b ? "byte-identical" : "differ")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"N=14 replay", replay},
      {"rejection reproduction", rejection},
      {"completion reproduction", completion},
      {"certificate reproduction", certificate},
      {"kernel property suite", properties},
      {"distance-set checks", distances},
      {"arithmetic checks", arithmetic},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}
