#pragma once

// Poincare-disk hyperbolic geometry: points, distances, isometries as
// unit-determinant SU(1,1) matrices with an orientation flag, their
// classification, axes, and equidistant loci (hypercycles).

#include <complex>
#include <optional>
#include <vector>

#include "hyperpack/error.hpp"

namespace hyperpack {

using Complex = std::complex<double>;

/// A point of the open unit disk, stored as a complex number.
using Point = Complex;

inline constexpr double kPi = 3.14159265358979323846;

/// Hyperbolic distance in the disk model.
double dist(Point z, Point w);

/// Disk isometry z -> (a w + b) / (conj(b) w + conj(a)), where w = z for
/// conformal maps and w = conj(z) for orientation-reversing ones.
/// |a|^2 - |b|^2 = 1 is restored on construction.
class Isometry {
 public:
  Isometry() = default;
  Isometry(Complex a, Complex b, bool reversing = false);

  static Isometry identity() { return {}; }
  /// Rotation about the origin by `angle` (counterclockwise).
  static Isometry rotation(double angle);
  /// Conformal translation along the diameter through p, sending 0 to p.
  static Isometry translation(Point p);
  /// Reflection in the diameter making angle `angle` with the real axis.
  static Isometry reflectionInDiameter(double angle);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  bool reversing() const { return reversing_; }

  Point operator()(Point z) const;

 private:
  Complex a_{1.0, 0.0};
  Complex b_{0.0, 0.0};
  bool reversing_ = false;
};

// A function object rather than a function, so that unqualified calls never
// reach std::apply through argument-dependent lookup on std::complex.
struct ApplyFn {
  Point operator()(const Isometry& g, Point z) const { return g(z); }
};
inline constexpr ApplyFn apply{};

/// g after h: apply(compose(g, h), z) == apply(g, apply(h, z)).
Isometry compose(const Isometry& g, const Isometry& h);
Isometry inverse(const Isometry& g);
/// g h g^-1.
Isometry conjugate(const Isometry& g, const Isometry& h);

/// Frobenius distance between the matrices of g and h, minimised over the
/// global sign ambiguity. Infinite when orientations differ.
double matrixDistance(const Isometry& g, const Isometry& h);

enum class IsometryKind { Identity, Elliptic, Parabolic, Hyperbolic, Reflection, Glide };

std::string_view toString(IsometryKind kind) noexcept;

struct IsometryClass {
  IsometryKind kind = IsometryKind::Identity;
  /// Displacement of axis points; set for Hyperbolic and Glide.
  double translationLength = 0.0;
  /// Counterclockwise rotation angle in (-pi, pi]; set for Elliptic.
  double rotationAngle = 0.0;

  bool axial() const {
    return kind == IsometryKind::Hyperbolic || kind == IsometryKind::Glide;
  }
};

/// |trace| within this of 2 counts as parabolic or identity.
inline constexpr double kParabolicTol = 1e-9;

IsometryClass classify(const Isometry& g);

/// Circle or line in the plane, held as the Hermitian form
///   Q(z) = A |z|^2 + 2 Re(conj(B) z) + C
/// scaled so that |B|^2 - A C = 1. The sign of the form orients the curve:
/// the "left" side is where Q > 0. For a geodesic, asinh(|Q(z)| / (1-|z|^2))
/// is the hyperbolic distance from z to it.
class GeneralizedCircle {
 public:
  enum class Kind { Circle, Line };

  GeneralizedCircle(double A, Complex B, double C);

  static GeneralizedCircle circle(Complex center, double radius);
  /// Line {z : Re(conj(normal) z) = offset}; positive side is along normal.
  static GeneralizedCircle line(Complex normal, double offset);
  /// The real diameter, oriented from -1 to 1 (upper half-disk on the left).
  static GeneralizedCircle realDiameter();

  Kind kind() const;
  Complex center() const;
  double radius() const;
  Complex normal() const;
  double offset() const;

  double formA() const { return A_; }
  Complex formB() const { return B_; }
  double formC() const { return C_; }

  double evaluate(Point z) const;
  bool isGeodesic(double tol = 1e-9) const;
  /// Intersections with the unit circle (the ideal endpoints of a geodesic
  /// or hypercycle).
  std::vector<Point> idealPoints() const;
  /// Image of this curve under g.
  GeneralizedCircle transformed(const Isometry& g) const;
  GeneralizedCircle flipped() const { return {-A_, -B_, -C_}; }

 private:
  double A_;
  Complex B_;
  double C_;
};

/// Oriented geodesic between two ideal points, from `from` to `to`.
GeneralizedCircle geodesicThrough(Point from, Point to);
/// Oriented geodesic through two distinct interior points, directed z to w.
GeneralizedCircle geodesicJoining(Point z, Point w);
/// Conformal isometry sending -1 to `from` and 1 to `to`; maps the real
/// diameter (with its orientation) onto geodesicThrough(from, to).
Isometry geodesicFrame(Point from, Point to);

/// Repelling and attracting ideal fixed points of an axial isometry (of g^2
/// for glides).
std::pair<Point, Point> idealFixedPoints(const Isometry& g);

/// Invariant geodesic of a hyperbolic map or glide reflection, oriented in
/// the direction of translation. Throws NotAxial otherwise.
GeneralizedCircle axis(const Isometry& g);
/// Frame isometry carrying the real diameter onto axis(g).
Isometry axisFrame(const Isometry& g);

double distToGeodesic(Point z, const GeneralizedCircle& geodesic);
/// Same, signed by side (positive on the left).
double signedDistToGeodesic(Point z, const GeneralizedCircle& geodesic);

/// Distance from the axis of the points moved exactly `d` by an isometry of
/// class `cls`; nullopt when no point is moved that far. Throws NotAxial.
std::optional<double> displacementOffset(const IsometryClass& cls, double d);

enum class Side { Left, Right };

/// Equidistant curve at distance `offset` from a geodesic on the given side.
GeneralizedCircle hypercycle(const GeneralizedCircle& geodesic, double offset, Side side);

/// Tangent-case threshold on the intersection discriminant.
inline constexpr double kTangencyTol = 1e-12;

/// Intersections of two generalized circles inside the open unit disk.
/// Throws CoincidentCurves when both describe the same curve.
std::vector<Point> intersect(const GeneralizedCircle& c1, const GeneralizedCircle& c2);

/// Rotation by `angle` about p.
Isometry ellipticAbout(Point p, double angle);
/// Hyperbolic midpoint of the segment zw. Throws DegenerateMidpoint if z == w.
Point midpoint(Point z, Point w);

}  // namespace hyperpack
