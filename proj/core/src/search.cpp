#include "hyperpack/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "hyperpack/parallel.hpp"

namespace hyperpack {

std::vector<Banana> bananas(const SidePairing& p, const DistanceSet& set, double maxDistance) {
  std::vector<Banana> out;
  const GeneralizedCircle ax = axis(p.map);
  for (double d : set.values) {
    if (maxDistance >= 0.0 && d > maxDistance) break;
    const auto delta = displacementOffset(p.cls, d);
    if (!delta) continue;
    Banana b;
    b.distance = d;
    if (*delta <= kAxisOffsetTol) {
      b.axisOnly = true;
      b.arcs.push_back(ax);
    } else {
      b.arcs.push_back(hypercycle(ax, *delta, Side::Left));
      b.arcs.push_back(hypercycle(ax, *delta, Side::Right));
    }
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

struct RawHit {
  Point z;
  double d1;
  double d2;
};

bool hitLess(const RawHit& x, const RawHit& y) {
  return std::tuple(x.z.real(), x.z.imag(), x.d1, x.d2) < std::tuple(y.z.real(), y.z.imag(), y.d1, y.d2);
}

// Bananas of p that can reach F: F lies within `reach` of the origin, so a
// point of F is at most reach + d(0, axis) from the axis.
std::vector<Banana> reachableBananas(const SidePairing& p, const DistanceSet& set, double reach) {
  const double limit = reach + distToGeodesic(0.0, axis(p.map));
  std::vector<Banana> all = bananas(p, set);
  std::vector<Banana> out;
  for (Banana& b : all) {
    const double delta = displacementOffset(p.cls, b.distance).value_or(0.0);
    if (delta <= limit) out.push_back(std::move(b));
  }
  return out;
}

double domainReach(const FundamentalDomain& F) {
  double reach = 0.0;
  for (int i = 0; i < F.k(); ++i) reach = std::max(reach, dist(0.0, F.center(i)));
  return reach + F.generators().metrics().circumradius;
}

}  // namespace

CandidateSet candidates(const SidePairing& p1, const SidePairing& p2, const DistanceSet& set,
                        const FundamentalDomain& F, const CandidateOptions& opts) {
  const double reach = domainReach(F);
  const std::vector<Banana> b1 = reachableBananas(p1, set, reach);
  const std::vector<Banana> b2 = reachableBananas(p2, set, reach);
  const double rmax = F.maxVertexModulus() + 1e-12;

  std::vector<std::vector<RawHit>> hits(b1.size());
  std::vector<std::size_t> coincident(b1.size(), 0);
  std::vector<std::size_t> raw(b1.size(), 0);
  parallelFor(b1.size(), opts.workers, [&](std::size_t i) {
    for (const GeneralizedCircle& c1 : b1[i].arcs) {
      for (const Banana& other : b2) {
        for (const GeneralizedCircle& c2 : other.arcs) {
          std::vector<Point> pts;
          try {
            pts = intersect(c1, c2);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::CoincidentCurves) throw;
            ++coincident[i];
            continue;
          }
          for (Point z : pts) {
            ++raw[i];
            if (std::abs(z) > rmax || !containsPoint(F, z)) continue;
            hits[i].push_back({z, b1[i].distance, other.distance});
          }
        }
      }
    }
  });

  CandidateSet out;
  std::vector<RawHit> all;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    all.insert(all.end(), hits[i].begin(), hits[i].end());
    out.coincidentPairs += coincident[i];
    out.rawIntersections += raw[i];
  }
  std::sort(all.begin(), all.end(), hitLess);

  for (const RawHit& h : all) {
    bool duplicate = false;
    for (auto it = out.candidates.rbegin(); it != out.candidates.rend(); ++it) {
      if (h.z.real() - it->point.real() > opts.dedupTol) break;
      if (std::abs(h.z - it->point) <= opts.dedupTol) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    Candidate c;
    c.point = h.z;
    c.seeds = {p1, p2};
    c.seedDistances = {h.d1, h.d2};
    out.candidates.push_back(c);
  }
  return out;
}

std::vector<SidePairing> compatiblePairings(Point z, const std::vector<SidePairing>& L,
                                            const DistanceSet& set) {
  std::vector<SidePairing> out;
  for (const SidePairing& p : L)
    if (isAdmissible(dist(z, apply(p.map, z)), set)) out.push_back(p);
  return out;
}

std::vector<EdgeCoverage> edgeCoverage(const std::vector<SidePairing>& Lc,
                                       const FundamentalDomain& F) {
  std::vector<EdgeCoverage> out;
  for (const EdgeRef& e : F.boundaryEdges()) out.push_back({e.key, {}});
  for (std::size_t i = 0; i < Lc.size(); ++i) {
    const int s = F.boundaryIndex(Lc[i].src);
    const int d = F.boundaryIndex(Lc[i].dst);
    if (s >= 0) out[static_cast<std::size_t>(s)].entries.push_back(static_cast<int>(i));
    if (d >= 0 && d != s) out[static_cast<std::size_t>(d)].entries.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<EdgeKey> uncoveredEdges(const std::vector<EdgeCoverage>& coverage) {
  std::vector<EdgeKey> out;
  for (const EdgeCoverage& c : coverage)
    if (c.entries.empty()) out.push_back(c.edge);
  return out;
}

Identification identificationOf(const SidePairing& p) {
  if (p.src < p.dst) return {p.src, p.dst, p.reversing};
  return {p.dst, p.src, p.reversing};
}

CellBoundary cellBoundary(const FundamentalDomain& F) {
  CellBoundary cells;
  const int E = static_cast<int>(F.boundaryEdges().size());
  for (int e = 0; e < E; ++e) cells.edgeVertices.push_back({F.startVertex(e), F.endVertex(e)});
  for (const BoundaryVertex& v : F.boundaryVertices()) {
    cells.vertexEdges.push_back(v.edges);
    cells.vertexAngles.push_back(v.angle);
  }
  cells.faces = F.k();
  cells.internalEdges = static_cast<int>(F.internalEdges().size());
  cells.interiorVertices = F.interiorVertexCount();
  return cells;
}

namespace {

struct Glue {
  int other = -1;
  bool reversing = false;
};

class CycleWalker {
 public:
  CycleWalker(const CellBoundary& cells, const std::vector<Glue>& glue) : cells_(cells), glue_(glue) {}

  bool open(int e) const { return glue_[static_cast<std::size_t>(e)].other < 0; }

  // Image of vertex v of edge e on the glued edge, and that edge.
  std::pair<int, int> image(int e, int v) const {
    const Glue& g = glue_[static_cast<std::size_t>(e)];
    const auto& src = cells_.edgeVertices[static_cast<std::size_t>(e)];
    const auto& dst = cells_.edgeVertices[static_cast<std::size_t>(g.other)];
    const bool atStart = v == src[0];
    const int w = g.reversing ? (atStart ? dst[0] : dst[1]) : (atStart ? dst[1] : dst[0]);
    return {w, g.other};
  }

  int otherEdge(int w, int e) const {
    const auto& ve = cells_.vertexEdges[static_cast<std::size_t>(w)];
    return ve[0] == e ? ve[1] : ve[0];
  }

  double angle(int v) const { return cells_.vertexAngles[static_cast<std::size_t>(v)]; }

 private:
  const CellBoundary& cells_;
  const std::vector<Glue>& glue_;
};

std::vector<Glue> glueTable(const CellBoundary& cells, const std::vector<EdgeGluing>& gluings) {
  std::vector<Glue> glue(cells.edgeVertices.size());
  for (const EdgeGluing& g : gluings) {
    if (g.a == g.b || glue[static_cast<std::size_t>(g.a)].other >= 0 ||
        glue[static_cast<std::size_t>(g.b)].other >= 0) {
      throw Error(ErrorCode::InvalidCellStructure, "gluings are not a matching of boundary edges");
    }
    glue[static_cast<std::size_t>(g.a)] = {g.b, g.reversing};
    glue[static_cast<std::size_t>(g.b)] = {g.a, g.reversing};
  }
  for (const Glue& g : glue)
    if (g.other < 0) throw Error(ErrorCode::InvalidCellStructure, "a boundary edge is left unglued");
  return glue;
}

}  // namespace

std::vector<VertexCycle> traceVertexCycles(const CellBoundary& cells,
                                           const std::vector<EdgeGluing>& gluings) {
  const std::vector<Glue> glue = glueTable(cells, gluings);
  const CycleWalker walk(cells, glue);
  const int V = static_cast<int>(cells.vertexEdges.size());
  std::vector<char> used(static_cast<std::size_t>(V), 0);
  std::vector<VertexCycle> out;
  for (int v0 = 0; v0 < V; ++v0) {
    if (used[static_cast<std::size_t>(v0)]) continue;
    VertexCycle cycle;
    const int e0 = cells.vertexEdges[static_cast<std::size_t>(v0)][0];
    int v = v0;
    int e = e0;
    do {
      if (!used[static_cast<std::size_t>(v)]) {
        used[static_cast<std::size_t>(v)] = 1;
        cycle.vertices.push_back(v);
        cycle.angleSum += walk.angle(v);
      } else if (v == v0) {
        cycle.twisted = true;
      }
      const auto [w, o] = walk.image(e, v);
      e = walk.otherEdge(w, o);
      v = w;
    } while (!(v == v0 && e == e0));
    out.push_back(std::move(cycle));
  }
  return out;
}

TopologyReport surfaceTopology(const CellBoundary& cells, const std::vector<EdgeGluing>& gluings,
                               double angleTol) {
  const std::vector<VertexCycle> cycles = traceVertexCycles(cells, gluings);
  for (const VertexCycle& c : cycles) {
    if (c.twisted) throw Error(ErrorCode::InvalidCellStructure, "vertex cycle closes with a reflection");
    if (std::abs(c.angleSum - 2.0 * kPi) > angleTol) {
      throw Error(ErrorCode::InvalidCellStructure,
                  "vertex cycle angle sum " + std::to_string(c.angleSum) + " is not 2pi");
    }
  }
  TopologyReport r;
  r.vertices = static_cast<int>(cycles.size()) + cells.interiorVertices;
  r.edges = cells.internalEdges + static_cast<int>(gluings.size());
  r.faces = cells.faces;
  r.eulerChar = r.vertices - r.edges + r.faces;
  r.orientable = std::none_of(gluings.begin(), gluings.end(), [](const EdgeGluing& g) { return g.reversing; });
  r.genus = r.orientable ? (2 - r.eulerChar) / 2 : 2 - r.eulerChar;
  return r;
}

std::vector<EdgeGluing> gluingsOf(const std::vector<Identification>& ids, const FundamentalDomain& F) {
  std::vector<EdgeGluing> out;
  for (const Identification& id : ids) out.push_back({F.boundaryIndex(id.a), F.boundaryIndex(id.b), id.reversing});
  return out;
}

TopologyReport verifyTopology(const PairingSolution& sol, const FundamentalDomain& F, double angleTol) {
  return surfaceTopology(cellBoundary(F), gluingsOf(sol.identifications, F), angleTol);
}

namespace {

class Completion {
 public:
  Completion(const std::vector<SidePairing>& Lc, const FundamentalDomain& F, const CompletionOptions& opts)
      : F_(F), opts_(opts), cells_(cellBoundary(F)) {
    for (const SidePairing& p : Lc) {
      if (F.boundaryIndex(p.src) < 0 || F.boundaryIndex(p.dst) < 0 || p.src == p.dst) continue;
      ids_.push_back(identificationOf(p));
    }
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());

    const std::size_t E = F.boundaryEdges().size();
    options_.resize(E);
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      options_[static_cast<std::size_t>(F.boundaryIndex(ids_[i].a))].push_back(static_cast<int>(i));
      options_[static_cast<std::size_t>(F.boundaryIndex(ids_[i].b))].push_back(static_cast<int>(i));
      forward_.push_back(makePairing(F, ids_[i].a, ids_[i].b, ids_[i].reversing).map);
    }
    glue_.assign(E, Glue{});
    chosen_.assign(E, -1);
  }

  CompletionResult run() {
    const bool covered = std::none_of(options_.begin(), options_.end(),
                                      [](const std::vector<int>& o) { return o.empty(); });
    if (covered) search();
    result_.exhausted = !stopped_;
    return std::move(result_);
  }

 private:
  void search() {
    if (stopped_) return;
    if (opts_.maxNodes != 0 && result_.nodes >= opts_.maxNodes) {
      stopped_ = true;
      result_.budgetHit = true;
      return;
    }
    ++result_.nodes;
    const int E = static_cast<int>(glue_.size());
    int e = 0;
    while (e < E && glue_[static_cast<std::size_t>(e)].other >= 0) ++e;
    if (e == E) {
      accept();
      return;
    }
    for (int idx : options_[static_cast<std::size_t>(e)]) {
      const Identification& id = ids_[static_cast<std::size_t>(idx)];
      const int a = F_.boundaryIndex(id.a);
      const int b = F_.boundaryIndex(id.b);
      const int o = a == e ? b : a;
      if (glue_[static_cast<std::size_t>(o)].other >= 0) continue;
      glue_[static_cast<std::size_t>(e)] = {o, id.reversing};
      glue_[static_cast<std::size_t>(o)] = {e, id.reversing};
      chosen_[static_cast<std::size_t>(e)] = idx;
      chosen_[static_cast<std::size_t>(o)] = idx;
      if (chainsOk(e) && chainsOk(o)) search();
      glue_[static_cast<std::size_t>(e)] = Glue{};
      glue_[static_cast<std::size_t>(o)] = Glue{};
      chosen_[static_cast<std::size_t>(e)] = -1;
      chosen_[static_cast<std::size_t>(o)] = -1;
      if (stopped_) return;
    }
  }

  bool chainsOk(int e) const {
    const auto& ends = cells_.edgeVertices[static_cast<std::size_t>(e)];
    return chainOk(ends[0]) && chainOk(ends[1]);
  }

  // Follows the vertex chain through v both ways as far as edges are glued.
  bool chainOk(int v0) const {
    const CycleWalker walk(cells_, glue_);
    const double full = 2.0 * kPi;
    const auto& ve = cells_.vertexEdges[static_cast<std::size_t>(v0)];
    double sum = walk.angle(v0);
    int v = v0;
    int e = ve[0];
    const int maxSteps = static_cast<int>(cells_.vertexEdges.size()) + 1;
    for (int step = 0; step < maxSteps; ++step) {
      if (walk.open(e)) break;
      const auto [w, o] = walk.image(e, v);
      const int next = walk.otherEdge(w, o);
      if (w == v0) {
        if (next != ve[0]) return false;
        return std::abs(sum - full) <= opts_.angleTol;
      }
      sum += walk.angle(w);
      if (sum > full + opts_.angleTol) return false;
      v = w;
      e = next;
    }
    v = v0;
    e = ve[1];
    for (int step = 0; step < maxSteps; ++step) {
      if (walk.open(e)) break;
      const auto [w, o] = walk.image(e, v);
      if (w == v0) return false;
      sum += walk.angle(w);
      if (sum > full + opts_.angleTol) return false;
      v = w;
      e = walk.otherEdge(w, o);
    }
    return true;
  }

  Isometry stepMap(int e) const {
    const int idx = chosen_[static_cast<std::size_t>(e)];
    const Isometry& fwd = forward_[static_cast<std::size_t>(idx)];
    return F_.boundaryEdges()[static_cast<std::size_t>(e)].key == ids_[static_cast<std::size_t>(idx)].a
               ? fwd
               : inverse(fwd);
  }

  void accept() {
    PairingSolution sol;
    std::vector<EdgeGluing> gluings;
    for (std::size_t e = 0; e < glue_.size(); ++e) {
      const Glue& g = glue_[e];
      if (static_cast<int>(e) > g.other) continue;
      const Identification& id = ids_[static_cast<std::size_t>(chosen_[e])];
      sol.identifications.push_back(id);
      gluings.push_back({static_cast<int>(e), g.other, g.reversing});
      sol.orientationReversingCount += id.reversing;
    }
    if (opts_.requireNonOrientable && sol.orientationReversingCount == 0) return;

    sol.vertexCycles = traceVertexCycles(cells_, gluings);
    const CycleWalker walk(cells_, glue_);
    for (const VertexCycle& c : sol.vertexCycles) {
      if (c.twisted || std::abs(c.angleSum - 2.0 * kPi) > opts_.angleTol) return;
      // Cycle transformation: compose the pairings met along the walk.
      const int v0 = c.vertices.front();
      const int e0 = cells_.vertexEdges[static_cast<std::size_t>(v0)][0];
      Isometry g;
      int v = v0;
      int e = e0;
      do {
        g = compose(stepMap(e), g);
        const auto [w, o] = walk.image(e, v);
        e = walk.otherEdge(w, o);
        v = w;
      } while (!(v == v0 && e == e0));
      if (matrixDistance(g, Isometry::identity()) > opts_.cycleTol) return;
    }

    std::sort(sol.identifications.begin(), sol.identifications.end());
    for (const Identification& id : sol.identifications) {
      sol.chosen.push_back(makePairing(F_, id.a, id.b, id.reversing));
      sol.chosen.push_back(makePairing(F_, id.b, id.a, id.reversing));
    }
    std::sort(sol.chosen.begin(), sol.chosen.end(), pairingLess);
    result_.solutions.push_back(std::move(sol));
    if (opts_.limit != 0 && result_.solutions.size() >= opts_.limit) stopped_ = true;
  }

  const FundamentalDomain& F_;
  CompletionOptions opts_;
  CellBoundary cells_;
  std::vector<Identification> ids_;
  std::vector<Isometry> forward_;
  std::vector<std::vector<int>> options_;
  std::vector<Glue> glue_;
  std::vector<int> chosen_;
  CompletionResult result_;
  bool stopped_ = false;
};

}  // namespace

CompletionResult completePairing(const std::vector<SidePairing>& Lc, const FundamentalDomain& F,
                                 const CompletionOptions& opts) {
  return Completion(Lc, F, opts).run();
}

}  // namespace hyperpack
