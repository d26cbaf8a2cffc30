#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hyperpack/geom.hpp"

namespace hyperpack::app {

enum class Stroke { Solid, Dashed };

struct Style {
  std::string color = "#000000";
  double width = 1.0;
  Stroke stroke = Stroke::Solid;
};

/// Geodesic polygon, edges drawn as true arcs.
struct PolygonShape {
  std::vector<Point> vertices;
  Style style;
  std::string fill = "none";
};

/// The part of a geodesic between two points.
struct Segment {
  Point from;
  Point to;
  Style style;
};

/// A geodesic or hypercycle drawn across the whole disk.
struct Curve {
  GeneralizedCircle curve;
  Style style;
};

struct Marker {
  Point at;
  std::string label;
  std::string color = "#000000";
};

struct Text {
  Point at;
  std::string text;
  double size = 10.0;
  std::string color = "#000000";
};

using Shape = std::variant<PolygonShape, Segment, Curve, Marker, Text>;

struct Layer {
  std::string name;
  std::vector<Shape> shapes;
};

/// Layers draw in order, later ones on top.
struct Scene {
  std::string title;
  std::vector<Layer> layers;
};

inline constexpr int kSvgSize = 800;
inline constexpr double kSvgDiskRadius = 380.0;

/// Standalone SVG. Coordinates are printed at fixed precision, so equal
/// scenes give byte-identical output.
std::string render(const Scene& scene);

}  // namespace hyperpack::app
