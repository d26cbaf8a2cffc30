#pragma once

// A fundamental region built from k tiles of the tessellation, its boundary
// edge table, and the list of all candidate side pairings between boundary
// edges.

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "hyperpack/geom.hpp"
#include "hyperpack/tess.hpp"

namespace hyperpack {

/// Polygon attached across edge `parentEdge` of polygon `parent`.
struct Attachment {
  int parent = 0;
  int parentEdge = 0;
  bool operator==(const Attachment&) const = default;
};

struct EdgeKey {
  int poly = 0;
  int edge = 0;
  auto operator<=>(const EdgeKey&) const = default;
};

std::string toString(const EdgeKey& key);

/// A placed polygon edge. The edge runs from `start` to `end` along
/// `carrier`; the polygon lies on side `inwardSide` of the carrier.
struct EdgeRef {
  EdgeKey key;
  Point start;
  Point end;
  GeneralizedCircle carrier = GeneralizedCircle::realDiameter();
  Side inwardSide = Side::Left;
};

struct InternalEdge {
  EdgeKey first;
  EdgeKey second;
};

/// A vertex of F lying on its boundary. `edges` are indices into
/// boundaryEdges(); `angle` is the interior angle of F at the vertex.
struct BoundaryVertex {
  Point point;
  double angle = 0.0;
  int corners = 0;
  std::array<int, 2> edges{-1, -1};
};

class FundamentalDomain {
 public:
  int n() const { return gens_.n(); }
  int k() const { return static_cast<int>(placements_.size()); }
  const TriangleGenerators& generators() const { return gens_; }
  const std::vector<Attachment>& attachments() const { return attachments_; }

  /// Polygon i is the image of the central polygon under placement(i).
  const Isometry& placement(int i) const { return placements_.at(static_cast<std::size_t>(i)); }
  Point center(int i) const { return apply(placement(i), Point{}); }

  EdgeRef edge(EdgeKey key) const;
  /// Maps edge 0 of the central polygon onto edge `key`, preserving direction.
  Isometry edgeFrame(EdgeKey key) const;

  const std::vector<InternalEdge>& internalEdges() const { return internal_; }
  /// Sorted by (poly, edge).
  const std::vector<EdgeRef>& boundaryEdges() const { return boundary_; }
  /// Index into boundaryEdges(), or -1 for internal edges.
  int boundaryIndex(EdgeKey key) const;

  const std::vector<BoundaryVertex>& boundaryVertices() const { return vertices_; }
  /// Index of the boundary vertex at the start / end of boundary edge i.
  int startVertex(int i) const { return edgeVertices_.at(static_cast<std::size_t>(i))[0]; }
  int endVertex(int i) const { return edgeVertices_.at(static_cast<std::size_t>(i))[1]; }
  /// Vertices of F not on its boundary; each is surrounded by a full angle.
  int interiorVertexCount() const { return interiorVertices_; }
  /// Largest Euclidean modulus of a vertex of F.
  double maxVertexModulus() const { return maxModulus_; }

 private:
  friend FundamentalDomain buildDomain(const TriangleGenerators&, const std::vector<Attachment>&);
  explicit FundamentalDomain(const TriangleGenerators& gens) : gens_(gens) {}

  TriangleGenerators gens_;
  std::vector<Attachment> attachments_;
  std::vector<Isometry> placements_;
  std::vector<InternalEdge> internal_;
  std::vector<EdgeRef> boundary_;
  std::vector<int> boundaryIndex_;
  std::vector<BoundaryVertex> vertices_;
  std::vector<std::array<int, 2>> edgeVertices_;
  int interiorVertices_ = 0;
  double maxModulus_ = 0.0;
};

/// Places polygon 0 at the centre and each attached polygon i+1 at
/// placement(parent) * R_parentEdge, so its edge 0 is the shared edge.
/// Internal edges are detected by endpoint coincidence, which also picks up
/// adjacencies closed by the assembly itself.
/// Throws OverlappingPolygons, DisconnectedAssembly or ConfigRejected.
FundamentalDomain buildDomain(const TriangleGenerators& gens,
                              const std::vector<Attachment>& attachments);
FundamentalDomain buildDomain(int n, const std::vector<Attachment>& attachments);

/// True when z lies strictly inside a polygon of F or on an internal edge.
bool containsPoint(const FundamentalDomain& F, Point z, double tol = 1e-12);

struct SidePairing {
  Isometry map;
  EdgeKey src;
  EdgeKey dst;
  bool reversing = false;
  IsometryClass cls;
};

/// Sort order of the list L.
bool pairingLess(const SidePairing& x, const SidePairing& y);

/// Conformal pairings send src.start to dst.end, reversing ones send
/// src.start to dst.start; both carry the inside of src to the outside of dst.
SidePairing makePairing(const FundamentalDomain& F, EdgeKey src, EdgeKey dst, bool reversing);

/// "hyperbolic" or "or-hyperbolic".
std::string pairingType(const SidePairing& p);
/// "de polX a polY", 1-based.
std::string pairingLabel(const SidePairing& p);

struct PairingList {
  /// Axial pairings, sorted by pairingLess.
  std::vector<SidePairing> entries;
  /// Matchings whose map is not hyperbolic or a glide (elliptic ones occur
  /// for conformal pairings of edges meeting at a vertex). Same order.
  std::vector<SidePairing> excluded;
};

/// Both matchings of every ordered pair of distinct boundary edges.
PairingList enumeratePairings(const FundamentalDomain& F);

/// Index of the entry pairing dst back to src, or -1.
int findInverse(const std::vector<SidePairing>& list, const SidePairing& p);

}  // namespace hyperpack
