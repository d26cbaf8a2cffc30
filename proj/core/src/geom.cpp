#include "hyperpack/geom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hyperpack {

std::string_view toString(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateClassification: return "DegenerateClassification";
    case ErrorCode::NotAxial: return "NotAxial";
    case ErrorCode::CoincidentCurves: return "CoincidentCurves";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::OverlappingPolygons: return "OverlappingPolygons";
    case ErrorCode::DisconnectedAssembly: return "DisconnectedAssembly";
    case ErrorCode::InvalidCellStructure: return "InvalidCellStructure";
    case ErrorCode::ReductionStalled: return "ReductionStalled";
    case ErrorCode::DegenerateMidpoint: return "DegenerateMidpoint";
    case ErrorCode::NotRelevantN: return "NotRelevantN";
    case ErrorCode::ConfigRejected: return "ConfigRejected";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

using Mat2 = std::array<std::array<Complex, 2>, 2>;

Mat2 mul(const Mat2& x, const Mat2& y) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return r;
}

Mat2 adjoint(const Mat2& x) {
  return {{{std::conj(x[0][0]), std::conj(x[1][0])}, {std::conj(x[0][1]), std::conj(x[1][1])}}};
}

// 1 - |z|^2 without cancellation near the boundary.
double conformalFactor(Point z) {
  const double r = std::abs(z);
  return (1.0 - r) * (1.0 + r);
}

double wrapAngle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

}  // namespace

double dist(Point z, Point w) {
  const double s = std::abs(z - w) / std::sqrt(conformalFactor(z) * conformalFactor(w));
  return 2.0 * std::asinh(s);
}

// ---------------------------------------------------------------- Isometry

Isometry::Isometry(Complex a, Complex b, bool reversing) : reversing_(reversing) {
  const double det = std::norm(a) - std::norm(b);
  if (!(det > 0.0)) throw std::invalid_argument("Isometry: |a|^2 - |b|^2 must be positive");
  const double s = 1.0 / std::sqrt(det);
  a_ = a * s;
  b_ = b * s;
}

Isometry Isometry::rotation(double angle) { return {std::polar(1.0, angle / 2.0), 0.0, false}; }

Isometry Isometry::translation(Point p) { return {1.0, p, false}; }

Isometry Isometry::reflectionInDiameter(double angle) { return {std::polar(1.0, angle), 0.0, true}; }

Point Isometry::operator()(Point z) const {
  const Complex w = reversing_ ? std::conj(z) : z;
  return (a_ * w + b_) / (std::conj(b_) * w + std::conj(a_));
}

Isometry compose(const Isometry& g, const Isometry& h) {
  Complex ha = h.a();
  Complex hb = h.b();
  if (g.reversing()) {
    ha = std::conj(ha);
    hb = std::conj(hb);
  }
  // [[ga, gb], [conj gb, conj ga]] * [[ha, hb], [conj hb, conj ha]], first row.
  const Complex a = g.a() * ha + g.b() * std::conj(hb);
  const Complex b = g.a() * hb + g.b() * std::conj(ha);
  return {a, b, g.reversing() != h.reversing()};
}

Isometry inverse(const Isometry& g) {
  if (g.reversing()) return {g.a(), -std::conj(g.b()), true};
  return {std::conj(g.a()), -g.b(), false};
}

Isometry conjugate(const Isometry& g, const Isometry& h) { return compose(compose(g, h), inverse(g)); }

double matrixDistance(const Isometry& g, const Isometry& h) {
  if (g.reversing() != h.reversing()) return std::numeric_limits<double>::infinity();
  auto frob = [&](double sign) {
    const Complex da = g.a() - sign * h.a();
    const Complex db = g.b() - sign * h.b();
    return std::sqrt(2.0 * (std::norm(da) + std::norm(db)));
  };
  return std::min(frob(1.0), frob(-1.0));
}

std::string_view toString(IsometryKind kind) noexcept {
  switch (kind) {
    case IsometryKind::Identity: return "identity";
    case IsometryKind::Elliptic: return "elliptic";
    case IsometryKind::Parabolic: return "parabolic";
    case IsometryKind::Hyperbolic: return "hyperbolic";
    case IsometryKind::Reflection: return "reflection";
    case IsometryKind::Glide: return "glide";
  }
  return "unknown";
}

namespace {

IsometryClass classifyConformal(const Isometry& g) {
  IsometryClass cls;
  const double re = g.a().real();
  const double t = std::abs(2.0 * re);
  if (t > 2.0 + kParabolicTol) {
    cls.kind = IsometryKind::Hyperbolic;
    cls.translationLength = 2.0 * std::acosh(std::abs(re));
    return cls;
  }
  if (t >= 2.0 - kParabolicTol) {
    cls.kind = std::abs(g.b()) <= std::sqrt(kParabolicTol) ? IsometryKind::Identity
                                                            : IsometryKind::Parabolic;
    return cls;
  }
  cls.kind = IsometryKind::Elliptic;
  // Interior fixed point via the stable root of conj(b) p^2 + (conj a - a) p - b = 0.
  const double im = g.a().imag();
  const double s = std::sqrt(std::max(0.0, 1.0 - re * re));
  const Complex q(0.0, im + std::copysign(s, im));
  const Point p = -g.b() / q;
  cls.rotationAngle = wrapAngle(-2.0 * std::arg(std::conj(g.b()) * p + std::conj(g.a())));
  return cls;
}

}  // namespace

IsometryClass classify(const Isometry& g) {
  if (!g.reversing()) return classifyConformal(g);
  // For reversing g = M conj(.), g^2 = M conj(M) has half-trace
  // |a|^2 + Re(b^2) = 1 + 2 Re(b)^2 >= 1.
  const double half = std::norm(g.a()) + (g.b() * g.b()).real();
  IsometryClass cls;
  if (half <= 1.0 + kParabolicTol) {
    cls.kind = IsometryKind::Reflection;
    return cls;
  }
  const IsometryClass sq = classifyConformal(compose(g, g));
  if (sq.kind != IsometryKind::Hyperbolic) {
    throw Error(ErrorCode::DegenerateClassification,
                "orientation-reversing isometry with non-hyperbolic square");
  }
  cls.kind = IsometryKind::Glide;
  cls.translationLength = std::acosh(half);
  return cls;
}

// ------------------------------------------------------- GeneralizedCircle

GeneralizedCircle::GeneralizedCircle(double A, Complex B, double C) {
  const double k = std::norm(B) - A * C;
  if (!(k > 0.0)) throw std::invalid_argument("GeneralizedCircle: empty or degenerate curve");
  const double s = 1.0 / std::sqrt(k);
  A_ = A * s;
  B_ = B * s;
  C_ = C * s;
}

GeneralizedCircle GeneralizedCircle::circle(Complex center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("GeneralizedCircle: radius must be positive");
  return {1.0, -center, std::norm(center) - radius * radius};
}

GeneralizedCircle GeneralizedCircle::line(Complex normal, double offset) {
  const Complex n = normal / std::abs(normal);
  return {0.0, n, -2.0 * offset};
}

GeneralizedCircle GeneralizedCircle::realDiameter() { return {0.0, Complex(0.0, 1.0), 0.0}; }

namespace {
constexpr double kLineTol = 1e-12;
}

GeneralizedCircle::Kind GeneralizedCircle::kind() const {
  return std::abs(A_) < kLineTol ? Kind::Line : Kind::Circle;
}

Complex GeneralizedCircle::center() const { return -B_ / A_; }

double GeneralizedCircle::radius() const { return 1.0 / std::abs(A_); }

Complex GeneralizedCircle::normal() const { return B_ / std::abs(B_); }

double GeneralizedCircle::offset() const { return -C_ / (2.0 * std::abs(B_)); }

double GeneralizedCircle::evaluate(Point z) const {
  return A_ * std::norm(z) + 2.0 * (std::conj(B_) * z).real() + C_;
}

bool GeneralizedCircle::isGeodesic(double tol) const { return std::abs(A_ - C_) <= tol; }

GeneralizedCircle GeneralizedCircle::transformed(const Isometry& g) const {
  const Complex B = g.reversing() ? std::conj(B_) : B_;
  const Mat2 H{{{A_, B}, {std::conj(B), C_}}};
  const Mat2 inv{{{std::conj(g.a()), -g.b()}, {-std::conj(g.b()), g.a()}}};
  const Mat2 out = mul(adjoint(inv), mul(H, inv));
  return {out[0][0].real(), out[0][1], out[1][1].real()};
}

namespace {

std::vector<Point> lineLine(const GeneralizedCircle& l1, const GeneralizedCircle& l2) {
  const Complex n1 = l1.normal();
  const Complex n2 = l2.normal();
  const double o1 = l1.offset();
  const double o2 = l2.offset();
  const double det = n1.real() * n2.imag() - n1.imag() * n2.real();
  if (std::abs(det) < kLineTol) {
    const double sign = (std::conj(n1) * n2).real() > 0 ? 1.0 : -1.0;
    if (std::abs(o1 - sign * o2) < kLineTol) {
      throw Error(ErrorCode::CoincidentCurves, "intersect: coincident lines");
    }
    return {};
  }
  const double x = (o1 * n2.imag() - o2 * n1.imag()) / det;
  const double y = (n1.real() * o2 - n2.real() * o1) / det;
  return {Point(x, y)};
}

std::vector<Point> lineCircle(Complex n, double off, Complex center, double r) {
  const double t = (std::conj(n) * center).real() - off;
  const double h2 = (r - t) * (r + t);
  const Point foot = center - t * n;
  if (h2 < -kTangencyTol) return {};
  if (h2 <= kTangencyTol) return {foot};
  const double h = std::sqrt(h2);
  const Complex along = Complex(0.0, 1.0) * n;
  return {foot + h * along, foot - h * along};
}

std::vector<Point> intersectAll(const GeneralizedCircle& c1, const GeneralizedCircle& c2) {
  const bool line1 = c1.kind() == GeneralizedCircle::Kind::Line;
  const bool line2 = c2.kind() == GeneralizedCircle::Kind::Line;
  if (line1 && line2) return lineLine(c1, c2);
  const bool firstPrimary = std::abs(c1.formA()) >= std::abs(c2.formA());
  const GeneralizedCircle& p = firstPrimary ? c1 : c2;
  const GeneralizedCircle& o = firstPrimary ? c2 : c1;
  // Radical axis: A_p Q_o - A_o Q_p is linear in z.
  const double ap = p.formA();
  const double ao = o.formA();
  const Complex BL = ap * o.formB() - ao * p.formB();
  const double CL = ap * o.formC() - ao * p.formC();
  const double scale = std::max(1.0, std::abs(ap));
  if (std::abs(BL) < kLineTol * scale) {
    if (std::abs(CL) < kLineTol * scale) {
      throw Error(ErrorCode::CoincidentCurves, "intersect: coincident circles");
    }
    return {};
  }
  const Complex n = BL / std::abs(BL);
  const double off = -CL / (2.0 * std::abs(BL));
  return lineCircle(n, off, p.center(), p.radius());
}

}  // namespace

std::vector<Point> GeneralizedCircle::idealPoints() const {
  std::vector<Point> pts = intersectAll(*this, GeneralizedCircle::circle(0.0, 1.0));
  for (auto& z : pts) z /= std::abs(z);
  return pts;
}

std::vector<Point> intersect(const GeneralizedCircle& c1, const GeneralizedCircle& c2) {
  std::vector<Point> all = intersectAll(c1, c2);
  std::vector<Point> inside;
  for (const Point z : all)
    if (std::abs(z) < 1.0) inside.push_back(z);
  return inside;
}

// -------------------------------------------------------------- geodesics

Isometry geodesicFrame(Point from, Point to) {
  from /= std::abs(from);
  to /= std::abs(to);
  const Complex s = from + to;
  if (std::abs(s) < 1e-12) return Isometry::rotation(std::arg(to));
  // Centre of the orthogonal circle through both points, and the geodesic's
  // point nearest the origin.
  const Complex c = s / (1.0 + (std::conj(from) * to).real());
  const double cr = std::abs(c);
  const double r = std::sqrt(std::max(0.0, cr * cr - 1.0));
  const Point foot = c / cr * (cr - r);
  const Isometry t = Isometry::translation(foot);
  const double base = std::arg(c);
  const Isometry f1 = compose(t, Isometry::rotation(base + kPi / 2.0));
  const Isometry f2 = compose(t, Isometry::rotation(base - kPi / 2.0));
  return std::abs(f1(1.0) - to) <= std::abs(f2(1.0) - to) ? f1 : f2;
}

GeneralizedCircle geodesicThrough(Point from, Point to) {
  return GeneralizedCircle::realDiameter().transformed(geodesicFrame(from, to));
}

GeneralizedCircle geodesicJoining(Point z, Point w) {
  const Isometry t = Isometry::translation(z);
  const Point q = apply(inverse(t), w);
  if (std::abs(q) == 0.0) throw Error(ErrorCode::DegenerateMidpoint, "geodesicJoining: equal points");
  return GeneralizedCircle::realDiameter().transformed(compose(t, Isometry::rotation(std::arg(q))));
}

std::pair<Point, Point> idealFixedPoints(const Isometry& g) {
  const IsometryClass cls = classify(g);
  if (!cls.axial()) throw Error(ErrorCode::NotAxial, "isometry has no axis");
  const Isometry h = g.reversing() ? compose(g, g) : g;
  const double re = h.a().real();
  const double root = std::sqrt(re * re - 1.0);
  const Complex bc = std::conj(h.b());
  const Complex ia(0.0, h.a().imag());
  Point p = (ia + root) / bc;
  Point q = (ia - root) / bc;
  p /= std::abs(p);
  q /= std::abs(q);
  // |h'(z)| = 1 / |conj(b) z + conj(a)|^2; the attracting point has |h'| < 1.
  const auto stretch = [&](Point z) { return std::norm(bc * z + std::conj(h.a())); };
  if (stretch(p) > stretch(q)) return {q, p};
  return {p, q};
}

Isometry axisFrame(const Isometry& g) {
  const auto [repel, attract] = idealFixedPoints(g);
  return geodesicFrame(repel, attract);
}

GeneralizedCircle axis(const Isometry& g) {
  return GeneralizedCircle::realDiameter().transformed(axisFrame(g));
}

double signedDistToGeodesic(Point z, const GeneralizedCircle& geodesic) {
  return std::asinh(geodesic.evaluate(z) / conformalFactor(z));
}

double distToGeodesic(Point z, const GeneralizedCircle& geodesic) {
  return std::abs(signedDistToGeodesic(z, geodesic));
}

std::optional<double> displacementOffset(const IsometryClass& cls, double d) {
  if (!cls.axial()) throw Error(ErrorCode::NotAxial, "displacementOffset: not hyperbolic or glide");
  const double half = cls.translationLength / 2.0;
  const double ratio = cls.kind == IsometryKind::Hyperbolic ? std::sinh(d / 2.0) / std::sinh(half)
                                                            : std::cosh(d / 2.0) / std::cosh(half);
  if (ratio < 1.0) return std::nullopt;
  return std::acosh(ratio);
}

GeneralizedCircle hypercycle(const GeneralizedCircle& geodesic, double offset, Side side) {
  const double s = (side == Side::Left ? 1.0 : -1.0) * std::sinh(offset);
  return {geodesic.formA() + s, geodesic.formB(), geodesic.formC() - s};
}

Isometry ellipticAbout(Point p, double angle) {
  const Isometry t = Isometry::translation(p);
  return compose(t, compose(Isometry::rotation(angle), inverse(t)));
}

Point midpoint(Point z, Point w) {
  const Isometry t = Isometry::translation(z);
  const Point v = inverse(t)(w);
  const double r = std::abs(v);
  if (r < 1e-15) throw Error(ErrorCode::DegenerateMidpoint, "midpoint of coincident points");
  // tanh(atanh(r) / 2) = r / (1 + sqrt(1 - r^2))
  const double half = r / (1.0 + std::sqrt(conformalFactor(v)));
  return t(v / r * half);
}

}  // namespace hyperpack
