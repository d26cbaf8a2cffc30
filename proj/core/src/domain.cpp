#include "hyperpack/domain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

namespace hyperpack {

namespace {

constexpr double kCoincidenceTol = 1e-9;

int wrap(int j, int n) { return ((j % n) + n) % n; }

// Interior angle at v between the geodesic segments towards u and w.
double cornerAngle(Point v, Point u, Point w) {
  const Isometry toOrigin = inverse(Isometry::translation(v));
  const double d = std::arg(apply(toOrigin, u)) - std::arg(apply(toOrigin, w));
  return std::abs(std::remainder(d, 2.0 * kPi));
}

}  // namespace

std::string toString(const EdgeKey& key) {
  return "pol" + std::to_string(key.poly + 1) + "[" + std::to_string(key.edge) + "]";
}

Isometry FundamentalDomain::edgeFrame(EdgeKey key) const {
  return compose(placement(key.poly), Isometry::rotation(2.0 * kPi * key.edge / n()));
}

EdgeRef FundamentalDomain::edge(EdgeKey key) const {
  const Isometry& g = placement(key.poly);
  EdgeRef ref;
  ref.key = key;
  ref.start = apply(g, gens_.vertex(key.edge));
  ref.end = apply(g, gens_.vertex(wrap(key.edge + 1, n())));
  ref.carrier = gens_.edgeCarrier(key.edge).transformed(g);
  ref.inwardSide = Side::Left;
  return ref;
}

int FundamentalDomain::boundaryIndex(EdgeKey key) const {
  return boundaryIndex_.at(static_cast<std::size_t>(key.poly * n() + key.edge));
}

FundamentalDomain buildDomain(const TriangleGenerators& gens,
                              const std::vector<Attachment>& attachments) {
  FundamentalDomain F(gens);
  const int n = gens.n();
  const int k = static_cast<int>(attachments.size()) + 1;
  F.attachments_ = attachments;
  F.placements_.push_back(Isometry::identity());

  std::vector<std::pair<int, int>> used;
  for (int i = 1; i < k; ++i) {
    const Attachment& at = attachments[static_cast<std::size_t>(i - 1)];
    if (at.parent < 0 || at.parent >= i) {
      throw Error(ErrorCode::DisconnectedAssembly,
                  "polygon " + std::to_string(i) + " attaches to polygon " +
                      std::to_string(at.parent) + ", which is not placed before it");
    }
    if (at.parentEdge < 0 || at.parentEdge >= n) {
      throw Error(ErrorCode::ConfigRejected,
                  "edge label " + std::to_string(at.parentEdge) + " out of range");
    }
    if (std::find(used.begin(), used.end(), std::pair{at.parent, at.parentEdge}) != used.end()) {
      throw Error(ErrorCode::OverlappingPolygons,
                  "edge " + std::to_string(at.parentEdge) + " of polygon " +
                      std::to_string(at.parent) + " is used by two attachments");
    }
    used.emplace_back(at.parent, at.parentEdge);
    F.placements_.push_back(
        compose(F.placements_[static_cast<std::size_t>(at.parent)], gens.neighborMap(at.parentEdge)));
  }

  const double minSeparation = 2.0 * gens.metrics().inradius - 1e-9;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < i; ++j) {
      if (dist(F.center(i), F.center(j)) < minSeparation) {
        throw Error(ErrorCode::OverlappingPolygons,
                    "polygons " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
      }
    }
  }

  // Cluster polygon vertices into distinct points.
  std::vector<Point> points;
  std::vector<int> vid(static_cast<std::size_t>(k * n));
  for (int p = 0; p < k; ++p) {
    for (int j = 0; j < n; ++j) {
      const Point z = apply(F.placement(p), gens.vertex(j));
      int id = -1;
      for (std::size_t q = 0; q < points.size(); ++q) {
        if (std::abs(points[q] - z) < kCoincidenceTol) {
          id = static_cast<int>(q);
          break;
        }
      }
      if (id < 0) {
        id = static_cast<int>(points.size());
        points.push_back(z);
        F.maxModulus_ = std::max(F.maxModulus_, std::abs(z));
      }
      vid[static_cast<std::size_t>(p * n + j)] = id;
    }
  }
  auto vertexId = [&](int p, int j) { return vid[static_cast<std::size_t>(p * n + wrap(j, n))]; };

  // Edges sharing endpoints in opposite directions are internal.
  std::map<std::pair<int, int>, EdgeKey> byEndpoints;
  for (int p = 0; p < k; ++p)
    for (int j = 0; j < n; ++j) byEndpoints[{vertexId(p, j), vertexId(p, j + 1)}] = {p, j};

  F.boundaryIndex_.assign(static_cast<std::size_t>(k * n), -1);
  for (int p = 0; p < k; ++p) {
    for (int j = 0; j < n; ++j) {
      const auto twin = byEndpoints.find({vertexId(p, j + 1), vertexId(p, j)});
      if (twin != byEndpoints.end()) {
        if (EdgeKey{p, j} < twin->second) F.internal_.push_back({{p, j}, twin->second});
        continue;
      }
      F.boundaryIndex_[static_cast<std::size_t>(p * n + j)] = static_cast<int>(F.boundary_.size());
      F.boundary_.push_back(F.edge({p, j}));
    }
  }

  // Angles of F at each distinct vertex, summed over polygon corners.
  std::vector<double> angle(points.size(), 0.0);
  std::vector<int> corners(points.size(), 0);
  for (int p = 0; p < k; ++p) {
    for (int j = 0; j < n; ++j) {
      const std::size_t v = static_cast<std::size_t>(vertexId(p, j));
      angle[v] += cornerAngle(points[v], points[static_cast<std::size_t>(vertexId(p, j - 1))],
                              points[static_cast<std::size_t>(vertexId(p, j + 1))]);
      ++corners[v];
    }
  }

  std::vector<int> boundaryVertexOf(points.size(), -1);
  F.edgeVertices_.resize(F.boundary_.size());
  for (std::size_t e = 0; e < F.boundary_.size(); ++e) {
    const EdgeKey key = F.boundary_[e].key;
    const std::array<int, 2> ends{vertexId(key.poly, key.edge), vertexId(key.poly, key.edge + 1)};
    for (int s = 0; s < 2; ++s) {
      const std::size_t v = static_cast<std::size_t>(ends[static_cast<std::size_t>(s)]);
      int& bv = boundaryVertexOf[v];
      if (bv < 0) {
        bv = static_cast<int>(F.vertices_.size());
        F.vertices_.push_back({points[v], angle[v], corners[v], {-1, -1}});
      }
      BoundaryVertex& rec = F.vertices_[static_cast<std::size_t>(bv)];
      // Slot 0 holds the edge leaving the vertex, slot 1 the edge arriving.
      const std::size_t slot = s == 0 ? 0 : 1;
      if (rec.edges[slot] >= 0) {
        throw Error(ErrorCode::InvalidCellStructure,
                    "boundary of F is not a simple curve at a vertex");
      }
      rec.edges[slot] = static_cast<int>(e);
      F.edgeVertices_[e][static_cast<std::size_t>(s)] = bv;
    }
  }
  for (std::size_t v = 0; v < points.size(); ++v) {
    if (boundaryVertexOf[v] >= 0) continue;
    if (std::abs(angle[v] - 2.0 * kPi) > 1e-6) {
      throw Error(ErrorCode::InvalidCellStructure, "interior vertex of F without full angle");
    }
    ++F.interiorVertices_;
  }
  return F;
}

FundamentalDomain buildDomain(int n, const std::vector<Attachment>& attachments) {
  return buildDomain(TriangleGenerators(n), attachments);
}

bool containsPoint(const FundamentalDomain& F, Point z, double tol) {
  if (std::norm(z) >= 1.0) return false;
  const int n = F.n();
  for (int p = 0; p < F.k(); ++p) {
    const Point w = apply(inverse(F.placement(p)), z);
    const double scale = 1.0 - std::norm(w);
    bool inside = true;
    for (int j = 0; j < n && inside; ++j) {
      // sinh of the signed distance to the edge geodesic.
      const double s = F.generators().edgeCarrier(j).evaluate(w) / scale;
      if (s < -tol) inside = false;
      else if (s <= tol && F.boundaryIndex({p, j}) >= 0) inside = false;
    }
    if (inside) return true;
  }
  return false;
}

bool pairingLess(const SidePairing& x, const SidePairing& y) {
  return std::tuple(x.src.poly, x.src.edge, x.reversing, x.dst.poly, x.dst.edge) <
         std::tuple(y.src.poly, y.src.edge, y.reversing, y.dst.poly, y.dst.edge);
}

SidePairing makePairing(const FundamentalDomain& F, EdgeKey src, EdgeKey dst, bool reversing) {
  const TriangleGenerators& gens = F.generators();
  // R_0 carries edge 0 onto itself reversed, b fixes it pointwise; both swap
  // the central polygon with its neighbour across edge 0.
  const Isometry& across = reversing ? gens.b() : gens.neighborMap(0);
  SidePairing p;
  p.map = compose(F.edgeFrame(dst), compose(across, inverse(F.edgeFrame(src))));
  p.src = src;
  p.dst = dst;
  p.reversing = reversing;
  try {
    p.cls = classify(p.map);
  } catch (const Error&) {
    p.cls = {};
    p.cls.kind = IsometryKind::Parabolic;
  }
  return p;
}

std::string pairingType(const SidePairing& p) { return p.reversing ? "or-hyperbolic" : "hyperbolic"; }

std::string pairingLabel(const SidePairing& p) {
  return "de pol" + std::to_string(p.src.poly + 1) + " a pol" + std::to_string(p.dst.poly + 1);
}

PairingList enumeratePairings(const FundamentalDomain& F) {
  PairingList out;
  for (const EdgeRef& s : F.boundaryEdges()) {
    for (bool reversing : {false, true}) {
      for (const EdgeRef& d : F.boundaryEdges()) {
        if (s.key == d.key) continue;
        SidePairing p = makePairing(F, s.key, d.key, reversing);
        (p.cls.axial() ? out.entries : out.excluded).push_back(p);
      }
    }
  }
  // Generation order already follows pairingLess; keep the sort as the contract.
  std::stable_sort(out.entries.begin(), out.entries.end(), pairingLess);
  std::stable_sort(out.excluded.begin(), out.excluded.end(), pairingLess);
  return out;
}

int findInverse(const std::vector<SidePairing>& list, const SidePairing& p) {
  SidePairing key;
  key.src = p.dst;
  key.dst = p.src;
  key.reversing = p.reversing;
  const auto it = std::lower_bound(list.begin(), list.end(), key, pairingLess);
  if (it == list.end() || it->src != key.src || it->dst != key.dst || it->reversing != key.reversing)
    return -1;
  return static_cast<int>(it - list.begin());
}

}  // namespace hyperpack
