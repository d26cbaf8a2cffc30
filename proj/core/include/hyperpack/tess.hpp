#pragma once

// The tessellation of the disk by regular n-gons with interior angle 2pi/3,
// generated by reflections in the sides of a (2, 3, n) triangle.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hyperpack/geom.hpp"

namespace hyperpack {

struct PolygonMetrics {
  int n = 0;
  double inradius = 0.0;
  double circumradius = 0.0;
};

/// Throws NotHyperbolic for n <= 6.
PolygonMetrics polygonMetrics(int n);

/// Radius of an extremal k-packing on a surface of Euler characteristic chi:
/// acosh(1 / (2 sin(k pi / (6 (k - chi))))).
double extremalRadius(int k, int chi);

/// Reflections a, b, c in the sides BC, CA, AB of the triangle with B at the
/// origin, C the midpoint of edge 0 of the central polygon P0 and A the
/// vertex of P0 just counterclockwise of C. R_m = (ca)^m ab maps P0 onto its
/// neighbour across edge m, with that neighbour's edge 0 on the shared side.
///
/// C lies on the ray at angle frameAngle; 0 puts it on the positive real axis.
class TriangleGenerators {
 public:
  explicit TriangleGenerators(int n, double frameAngle = 0.0);

  int n() const { return metrics_.n; }
  double frameAngle() const { return frameAngle_; }
  const PolygonMetrics& metrics() const { return metrics_; }

  const Isometry& a() const { return a_; }
  const Isometry& b() const { return b_; }
  const Isometry& c() const { return c_; }
  /// ca, the rotation by 2pi/n about the origin.
  const Isometry& rotationStep() const { return ca_; }
  const Isometry& neighborMap(int m) const { return rm_.at(static_cast<std::size_t>(m)); }
  std::span<const Isometry> neighborMaps() const { return rm_; }
  /// R_{i1} R_{i2} ... R_{ik}.
  Isometry product(std::span<const int> indices) const;

  Point vertexA() const { return vertexA_; }
  Point midpointC() const { return midpointC_; }
  /// Vertex j of P0; edge j runs from vertex j to vertex j+1.
  Point vertex(int j) const;
  /// Oriented geodesic carrying edge j of P0, directed from vertex j to
  /// vertex j+1, so P0 lies on its left.
  GeneralizedCircle edgeCarrier(int j) const;

 private:
  PolygonMetrics metrics_;
  double frameAngle_;
  Isometry a_, b_, c_, ca_;
  std::vector<Isometry> rm_;
  Point vertexA_, midpointC_;
  GeneralizedCircle carrier0_;
};

/// Sorted admissible centre-to-centre distances of the tessellation.
struct DistanceSet {
  std::vector<double> values;
  int depth = 0;
  double matchTol = 1e-4;
  double dedupTol = 1e-9;
};

struct DistanceOptions {
  double matchTol = 1e-4;
  double dedupTol = 1e-9;
  unsigned workers = 0;
};

/// d(0, R(0)) for every product R of exactly `depth` neighbour maps, plus 0,
/// sorted and merged at dedupTol. Products are streamed in mixed-radix order;
/// cost is n^depth matrix products.
DistanceSet admissibleDistances(const TriangleGenerators& gens, int depth,
                                const DistanceOptions& opts = {});
DistanceSet admissibleDistances(int n, int depth, const DistanceOptions& opts = {});

bool isAdmissible(double d, const DistanceSet& set);
/// Closest member of the set to d.
double nearestAdmissible(double d, const DistanceSet& set);

}  // namespace hyperpack
