#include "hyperpack/app/scene.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace hyperpack::app {

namespace {

constexpr double kCentre = kSvgSize / 2.0;

struct Screen {
  double x, y;
};

Screen toScreen(Point z) { return {kCentre + kSvgDiskRadius * z.real(), kCentre - kSvgDiskRadius * z.imag()}; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string strokeAttrs(const Style& s) {
  std::string a = "stroke=\"" + s.color + "\" stroke-width=\"" + num(s.width) + "\"";
  if (s.stroke == Stroke::Dashed) a += " stroke-dasharray=\"6 4\"";
  return a;
}

// Path command drawing the arc of `curve` from `from` to `to` that passes
// through `via`; straight when the curve is a line.
std::string arcTo(const GeneralizedCircle& curve, Point from, Point to, Point via) {
  const Screen b = toScreen(to);
  if (curve.kind() == GeneralizedCircle::Kind::Line) return "L " + num(b.x) + " " + num(b.y);
  const Screen a = toScreen(from);
  const Screen c = toScreen(curve.center());
  const Screen v = toScreen(via);
  const double r = kSvgDiskRadius * curve.radius();
  const auto angle = [&](Screen p) { return std::atan2(p.y - c.y, p.x - c.x); };
  const auto ccw = [](double from, double to) {
    double d = std::fmod(to - from, 2 * kPi);
    if (d < 0) d += 2 * kPi;
    return d;
  };
  // SVG's positive sweep runs with increasing screen angle.
  const double toEnd = ccw(angle(a), angle(b));
  const bool positive = ccw(angle(a), angle(v)) < toEnd;
  const double extent = positive ? toEnd : 2 * kPi - toEnd;
  return "A " + num(r) + " " + num(r) + " 0 " + (extent > kPi ? "1" : "0") + " " + (positive ? "1" : "0") +
         " " + num(b.x) + " " + num(b.y);
}

std::string moveTo(Point z) {
  const Screen s = toScreen(z);
  return "M " + num(s.x) + " " + num(s.y);
}

std::string segmentPath(Point from, Point to) {
  if (std::abs(from - to) < 1e-12) return moveTo(from);
  return arcTo(geodesicJoining(from, to), from, to, midpoint(from, to));
}

void emit(std::string& out, const PolygonShape& p) {
  if (p.vertices.size() < 2) return;
  std::string d = moveTo(p.vertices.front());
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    const Point a = p.vertices[i];
    const Point b = p.vertices[(i + 1) % p.vertices.size()];
    d += " " + segmentPath(a, b);
  }
  out += "  <path d=\"" + d + " Z\" fill=\"" + p.fill + "\" " + strokeAttrs(p.style) + "/>\n";
}

void emit(std::string& out, const Segment& s) {
  out += "  <path d=\"" + moveTo(s.from) + " " + segmentPath(s.from, s.to) + "\" fill=\"none\" " +
         strokeAttrs(s.style) + "/>\n";
}

void emit(std::string& out, const Curve& c) {
  const std::vector<Point> ends = c.curve.idealPoints();
  if (ends.size() != 2) return;
  Point via = 0.0;
  if (c.curve.kind() == GeneralizedCircle::Kind::Circle) {
    const Complex centre = c.curve.center();
    const double m = std::abs(centre);
    if (m == 0.0) return;
    via = centre * (1.0 - c.curve.radius() / m);
  }
  out += "  <path d=\"" + moveTo(ends[0]) + " " + arcTo(c.curve, ends[0], ends[1], via) + "\" fill=\"none\" " +
         strokeAttrs(c.style) + "/>\n";
}

void emit(std::string& out, const Marker& m) {
  const Screen s = toScreen(m.at);
  out += "  <circle cx=\"" + num(s.x) + "\" cy=\"" + num(s.y) + "\" r=\"3.500\" fill=\"" + m.color + "\"/>\n";
  if (!m.label.empty()) {
    out += "  <text x=\"" + num(s.x + 6) + "\" y=\"" + num(s.y - 6) + "\" font-size=\"12.000\" fill=\"" + m.color +
           "\">" + escape(m.label) + "</text>\n";
  }
}

void emit(std::string& out, const Text& t) {
  const Screen s = toScreen(t.at);
  out += "  <text x=\"" + num(s.x) + "\" y=\"" + num(s.y) + "\" font-size=\"" + num(t.size) +
         "\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"" + t.color + "\">" + escape(t.text) +
         "</text>\n";
}

}  // namespace

std::string render(const Scene& scene) {
  const std::string size = std::to_string(kSvgSize);
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + size + "\" height=\"" + size +
         "\" viewBox=\"0 0 " + size + " " + size + "\" font-family=\"sans-serif\">\n";
  if (!scene.title.empty()) out += "<title>" + escape(scene.title) + "</title>\n";
  out += "<rect width=\"" + size + "\" height=\"" + size + "\" fill=\"#ffffff\"/>\n";
  out += "<defs><clipPath id=\"disk\"><circle cx=\"" + num(kCentre) + "\" cy=\"" + num(kCentre) + "\" r=\"" +
         num(kSvgDiskRadius) + "\"/></clipPath></defs>\n";
  out += "<circle cx=\"" + num(kCentre) + "\" cy=\"" + num(kCentre) + "\" r=\"" + num(kSvgDiskRadius) +
         "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.500\"/>\n";
  for (const Layer& layer : scene.layers) {
    out += "<g id=\"" + escape(layer.name) + "\" clip-path=\"url(#disk)\">\n";
    for (const Shape& shape : layer.shapes) std::visit([&](const auto& s) { emit(out, s); }, shape);
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace hyperpack::app
