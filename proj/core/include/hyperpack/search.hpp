#pragma once

// Candidate packing centres from intersecting bananas, the per-candidate
// pairing filter, and backtracking completion of a side-pairing set subject
// to the vertex-cycle condition.

#include <array>
#include <compare>
#include <cstddef>
#include <vector>

#include "hyperpack/domain.hpp"
#include "hyperpack/geom.hpp"
#include "hyperpack/tess.hpp"

namespace hyperpack {

/// Points displaced exactly `distance` by a pairing: two hypercycles, or the
/// axis alone when the distance is the translation length.
struct Banana {
  double distance = 0.0;
  std::vector<GeneralizedCircle> arcs;
  bool axisOnly = false;
};

/// Offsets below this are treated as the axis itself.
inline constexpr double kAxisOffsetTol = 1e-9;

/// One banana per admissible distance the map can realise, in increasing
/// distance order. `maxDistance` drops bananas past it (default: no limit).
std::vector<Banana> bananas(const SidePairing& p, const DistanceSet& set,
                            double maxDistance = -1.0);

struct Candidate {
  Point point;
  std::array<SidePairing, 2> seeds;
  std::array<double, 2> seedDistances{0.0, 0.0};
};

struct CandidateOptions {
  double dedupTol = 1e-6;
  unsigned workers = 0;
};

struct CandidateSet {
  std::vector<Candidate> candidates;
  /// Intersections thrown away because the two curves coincided.
  std::size_t coincidentPairs = 0;
  std::size_t rawIntersections = 0;
};

/// Intersections of p1-bananas with p2-bananas inside F, merged at dedupTol
/// and sorted by (re, im).
CandidateSet candidates(const SidePairing& p1, const SidePairing& p2, const DistanceSet& set,
                        const FundamentalDomain& F, const CandidateOptions& opts = {});

/// Entries of L displacing `z` by an admissible distance, in L's order.
std::vector<SidePairing> compatiblePairings(Point z, const std::vector<SidePairing>& L,
                                            const DistanceSet& set);

struct EdgeCoverage {
  EdgeKey edge;
  /// Indices into L_c of entries with this edge as source or target.
  std::vector<int> entries;
};

/// One record per boundary edge of F, in boundary order.
std::vector<EdgeCoverage> edgeCoverage(const std::vector<SidePairing>& Lc,
                                       const FundamentalDomain& F);
std::vector<EdgeKey> uncoveredEdges(const std::vector<EdgeCoverage>& coverage);

/// An unordered identification of two boundary edges, with a < b.
struct Identification {
  EdgeKey a;
  EdgeKey b;
  bool reversing = false;
  auto operator<=>(const Identification&) const = default;
};

Identification identificationOf(const SidePairing& p);

// Combinatorial view of the boundary of F, enough to trace vertex cycles.
struct CellBoundary {
  /// Start and end vertex of each boundary edge.
  std::vector<std::array<int, 2>> edgeVertices;
  /// Edge leaving and edge arriving at each boundary vertex.
  std::vector<std::array<int, 2>> vertexEdges;
  std::vector<double> vertexAngles;
  int faces = 0;
  int internalEdges = 0;
  int interiorVertices = 0;
};

CellBoundary cellBoundary(const FundamentalDomain& F);

/// Boundary edges a and b glued; conformal gluings send start(a) to end(b),
/// reversing ones send start(a) to start(b).
struct EdgeGluing {
  int a = 0;
  int b = 0;
  bool reversing = false;
};

struct VertexCycle {
  /// Boundary vertices in walk order, starting from the smallest.
  std::vector<int> vertices;
  double angleSum = 0.0;
  /// The walk came back through the other edge at its start vertex; the
  /// cycle transformation is then a reflection.
  bool twisted = false;
};

/// Vertex cycles of a complete gluing of the boundary edges.
std::vector<VertexCycle> traceVertexCycles(const CellBoundary& cells,
                                           const std::vector<EdgeGluing>& gluings);

struct TopologyReport {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int eulerChar = 0;
  bool orientable = true;
  /// Number of handles (orientable) or cross-caps (non-orientable).
  int genus = 0;
};

/// Counts cells of the quotient. Throws InvalidCellStructure when a cycle is
/// twisted or its angle sum is not 2 pi within angleTol.
TopologyReport surfaceTopology(const CellBoundary& cells, const std::vector<EdgeGluing>& gluings,
                               double angleTol = 1e-6);

struct PairingSolution {
  std::vector<Identification> identifications;
  /// Both directions of each identification, sorted as L.
  std::vector<SidePairing> chosen;
  std::vector<VertexCycle> vertexCycles;
  int orientationReversingCount = 0;
};

struct CompletionOptions {
  /// Stop after this many solutions; 0 searches exhaustively.
  std::size_t limit = 32;
  double angleTol = 1e-6;
  /// Matrix distance from the identity allowed for cycle transformations.
  double cycleTol = 1e-6;
  bool requireNonOrientable = true;
  /// Give up after visiting this many nodes; 0 means no budget.
  std::size_t maxNodes = 0;
};

struct CompletionResult {
  std::vector<PairingSolution> solutions;
  std::size_t nodes = 0;
  /// False when the search stopped at the limit or the node budget.
  bool exhausted = true;
  bool budgetHit = false;
};

/// Depth-first search over boundary edges in (poly, edge) order. Each step
/// glues the first free edge to a free partner allowed by Lc, pruning any
/// vertex chain whose angle sum passes 2 pi or closes short of it. Leaves are
/// accepted when every cycle transformation is the identity. A pairing and
/// its inverse count as one identification.
CompletionResult completePairing(const std::vector<SidePairing>& Lc, const FundamentalDomain& F,
                                 const CompletionOptions& opts = {});

/// Gluings of the identifications of a solution, as boundary-edge indices.
std::vector<EdgeGluing> gluingsOf(const std::vector<Identification>& ids,
                                  const FundamentalDomain& F);

/// Throws InvalidCellStructure if the solution's angle sums fail.
TopologyReport verifyTopology(const PairingSolution& sol, const FundamentalDomain& F,
                              double angleTol = 1e-6);

}  // namespace hyperpack
