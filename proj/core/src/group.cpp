#include "hyperpack/group.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>

#include "hyperpack/parallel.hpp"

namespace hyperpack {

GroupPresentation::GroupPresentation(const FundamentalDomain& F, std::vector<SidePairing> generators,
                                     Point basepoint)
    : F_(&F), gens_(std::move(generators)), basepoint_(basepoint) {
  std::sort(gens_.begin(), gens_.end(), pairingLess);
  for (const SidePairing& g : gens_) {
    const int j = findInverse(gens_, g);
    if (j < 0) {
      throw Error(ErrorCode::ConfigRejected,
                  "generator " + toString(g.src) + " -> " + toString(g.dst) + " has no inverse listed");
    }
    inverse_.push_back(j);
    bySource_.emplace(g.src, static_cast<int>(inverse_.size()) - 1);
  }
  for (int p = 0; p < F.k(); ++p) {
    for (int j = 0; j < F.n(); ++j) {
      const EdgeRef e = F.edge({p, j});
      if (distToGeodesic(basepoint_, e.carrier) < kBasepointClearance) {
        throw Error(ErrorCode::ConfigRejected, "basepoint lies on edge " + toString(e.key));
      }
    }
  }
  if (!containsPoint(F, basepoint_)) throw Error(ErrorCode::ConfigRejected, "basepoint outside F");
}

int GroupPresentation::pairingFrom(EdgeKey e) const {
  const auto it = bySource_.find(e);
  return it == bySource_.end() ? -1 : it->second;
}

std::string_view toString(ReductionStrategy s) noexcept {
  switch (s) {
    case ReductionStrategy::Greedy: return "greedy";
    case ReductionStrategy::EdgeWalk: return "edge-walk";
    case ReductionStrategy::BreadthFirst: return "breadth-first";
  }
  return "unknown";
}

Isometry wordProduct(const std::vector<int>& word, const GroupPresentation& G) {
  Isometry g;
  for (int i : word) g = compose(g, G.generator(i));
  return g;
}

double wordResidual(const std::vector<int>& word, const Isometry& h, const GroupPresentation& G) {
  return matrixDistance(compose(inverse(wordProduct(word, G)), h), Isometry::identity());
}

namespace {

// Word for h given the generators u1, u2, ... applied to h in that order,
// u_k ... u_1 h ~ 1, so h = u_1^-1 ... u_k^-1.
std::vector<int> invertApplied(const std::vector<int>& applied, const GroupPresentation& G) {
  std::vector<int> word;
  word.reserve(applied.size());
  for (int i : applied) word.push_back(G.inverseOf(i));
  return word;
}

struct PointKey {
  long long x, y;
  bool operator==(const PointKey&) const = default;
};

struct PointKeyHash {
  std::size_t operator()(const PointKey& k) const noexcept {
    return std::hash<long long>()(k.x) * 1000003u ^ std::hash<long long>()(k.y);
  }
};

PointKey keyOf(Point z) {
  return {std::llround(z.real() * 1e8), std::llround(z.imag() * 1e8)};
}

bool onSegment(Point x, Point from, Point to, double tol) {
  return dist(from, x) + dist(x, to) - dist(from, to) < tol;
}

// Follows the geodesic from p (in F) to w. Each step finds where it first
// leaves F, through boundary edge e, and applies the pairing with source e,
// which carries the next tile back onto F. The remaining length shrinks by
// the length travelled inside F, so the walk ends after the number of tiles
// the geodesic crosses. Returns false when the exit cannot be resolved.
bool edgeWalk(Point p, Point& w, Isometry& reduced, std::vector<int>& applied, const GroupPresentation& G,
              const GroupOptions& opts, MembershipResult& res) {
  constexpr double kOnTol = 1e-9;
  constexpr double kLeaveTol = 1e-9;
  const FundamentalDomain& F = G.domain();
  while (!containsPoint(F, w)) {
    if (res.walkSteps >= opts.maxWalkSteps) return false;
    const GeneralizedCircle path = geodesicJoining(p, w);
    double bestT = std::numeric_limits<double>::infinity();
    Point exit{};
    int gen = -1;
    for (const EdgeRef& e : F.boundaryEdges()) {
      for (Point x : intersect(path, e.carrier)) {
        if (std::abs(x) >= 1.0) continue;
        const double t = dist(p, x);
        if (t <= kLeaveTol || t >= bestT) continue;
        if (!onSegment(x, p, w, kOnTol) || !onSegment(x, e.start, e.end, kOnTol)) continue;
        const int g = G.pairingFrom(e.key);
        if (g < 0) continue;
        bestT = t;
        exit = x;
        gen = g;
      }
    }
    if (gen < 0) return false;
    const Isometry& g = G.generator(gen);
    applied.push_back(gen);
    reduced = compose(g, reduced);
    w = apply(g, w);
    p = apply(g, exit);
    res.minProgress = std::min(res.minProgress, bestT);
    ++res.walkSteps;
  }
  return true;
}

// Breadth-first search from w for a word carrying it into F. Returns the
// applied generators, or nothing when the depth or node cap is hit.
std::optional<std::vector<int>> breadthFirst(Point w, const GroupPresentation& G, const GroupOptions& opts) {
  struct Node {
    Point z;
    int parent;
    int gen;
    int depth;
  };
  std::vector<Node> nodes{{w, -1, -1, 0}};
  std::unordered_map<PointKey, int, PointKeyHash> seen{{keyOf(w), 0}};
  const int ngen = static_cast<int>(G.generators().size());
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const Node cur = nodes[head];
    if (containsPoint(G.domain(), cur.z)) {
      std::vector<int> applied;
      for (int i = static_cast<int>(head); nodes[static_cast<std::size_t>(i)].parent >= 0;
           i = nodes[static_cast<std::size_t>(i)].parent)
        applied.push_back(nodes[static_cast<std::size_t>(i)].gen);
      std::reverse(applied.begin(), applied.end());
      return applied;
    }
    if (cur.depth >= opts.bfsDepth) continue;
    for (int g = 0; g < ngen; ++g) {
      const Point z = apply(G.generator(g), cur.z);
      if (!seen.emplace(keyOf(z), static_cast<int>(nodes.size())).second) continue;
      if (nodes.size() >= opts.bfsNodeCap) return std::nullopt;
      nodes.push_back({z, static_cast<int>(head), g, cur.depth + 1});
    }
  }
  return std::nullopt;
}

}  // namespace

MembershipResult reduceToDomain(const Isometry& h, const GroupPresentation& G, const GroupOptions& opts) {
  const Point base = G.basepoint();
  MembershipResult res;
  res.minProgress = std::numeric_limits<double>::infinity();

  std::vector<int> applied;
  Isometry reduced = h;
  Point w = apply(h, base);
  bool stalled = false;
  while (!containsPoint(G.domain(), w)) {
    if (res.greedySteps >= opts.maxGreedySteps) {
      stalled = true;
      break;
    }
    const double current = dist(base, w);
    int best = -1;
    double bestDist = current;
    for (int g = 0; g < static_cast<int>(G.generators().size()); ++g) {
      const double d = dist(base, apply(G.generator(g), w));
      if (d < bestDist) {
        bestDist = d;
        best = g;
      }
    }
    if (best < 0 || current - bestDist < opts.progressMargin) {
      stalled = true;
      break;
    }
    res.minProgress = std::min(res.minProgress, current - bestDist);
    applied.push_back(best);
    reduced = compose(G.generator(best), reduced);
    w = apply(G.generator(best), w);
    ++res.greedySteps;
  }

  if (stalled && opts.maxWalkSteps > 0) {
    res.strategy = ReductionStrategy::EdgeWalk;
    std::vector<int> walkApplied;
    Point walkW = w;
    Isometry walkReduced = reduced;
    if (edgeWalk(base, walkW, walkReduced, walkApplied, G, opts, res)) {
      applied.insert(applied.end(), walkApplied.begin(), walkApplied.end());
      reduced = walkReduced;
      w = walkW;
      stalled = false;
    }
  }
  if (stalled) {
    res.strategy = ReductionStrategy::BreadthFirst;
    const auto tail = breadthFirst(w, G, opts);
    if (!tail) {
      throw Error(ErrorCode::ReductionStalled,
                  "no word of length <= " + std::to_string(opts.bfsDepth) +
                      " brings the point back into F; residual so far " +
                      std::to_string(matrixDistance(reduced, Isometry::identity())));
    }
    for (int g : *tail) {
      applied.push_back(g);
      reduced = compose(G.generator(g), reduced);
    }
  }
  if (res.greedySteps + res.walkSteps == 0) res.minProgress = 0.0;

  res.residual = matrixDistance(reduced, Isometry::identity());
  res.member = res.residual < opts.memberTol;
  if (res.member) res.word = invertApplied(applied, G);
  return res;
}

NormalizerReport normalizes(const Isometry& t, const GroupPresentation& G, const GroupOptions& opts,
                            unsigned workers) {
  const std::size_t n = G.generators().size();
  NormalizerReport report;
  report.conjugates.resize(n);
  std::vector<double> drift(n, 0.0);
  parallelFor(n, workers, [&](std::size_t i) {
    const SidePairing& g = G.generators()[i];
    const Isometry h = conjugate(t, g.map);
    report.conjugates[i] = reduceToDomain(h, G, opts);
    const IsometryClass c = classify(h);
    drift[i] = std::abs(c.translationLength - g.cls.translationLength);
    if (c.kind != g.cls.kind) drift[i] = std::numeric_limits<double>::infinity();
  });
  report.maxLengthDrift = n == 0 ? 0.0 : *std::max_element(drift.begin(), drift.end());
  report.normalizes = std::all_of(report.conjugates.begin(), report.conjugates.end(),
                                  [](const MembershipResult& m) { return m.member; });
  return report;
}

Point secondCentre(const TriangleGenerators& gens) {
  const Isometry& ca = gens.rotationStep();
  return apply(compose(compose(ca, ca), gens.b()), 0.0);
}

PackingCertificate secondPackingCertificate(Point P, Point Oprime, const GroupPresentation& G,
                                            const GroupOptions& opts, unsigned workers) {
  PackingCertificate cert;
  cert.P = P;
  cert.Oprime = Oprime;
  cert.midpoint = midpoint(P, Oprime);
  cert.tau = ellipticAbout(cert.midpoint, kPi);
  cert.swapError = std::max(std::abs(apply(cert.tau, P) - Oprime), std::abs(apply(cert.tau, Oprime) - P));
  cert.swapCheck = cert.swapError <= kSwapTol;
  cert.normalizer = normalizes(cert.tau, G, opts, workers);
  cert.pass = cert.swapCheck && cert.normalizer.normalizes;
  return cert;
}

PackingCertificate secondPackingCertificate(Point P, const GroupPresentation& G,
                                            const TriangleGenerators& gens, const GroupOptions& opts,
                                            unsigned workers) {
  return secondPackingCertificate(P, secondCentre(gens), G, opts, workers);
}

}  // namespace hyperpack
