#include "hyperpack/geom.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "random_geometry.hpp"

using namespace hyperpack;
using hyperpack::testing::RandomGeometry;
using hyperpack::testing::samplesInside;

namespace {

// Extended-precision evaluation of cosh d = 1 + 2|z-w|^2 / ((1-|z|^2)(1-|w|^2)).
long double distOracle(Point z, Point w) {
  const long double dx = static_cast<long double>(z.real()) - w.real();
  const long double dy = static_cast<long double>(z.imag()) - w.imag();
  const long double nz = static_cast<long double>(z.real()) * z.real() +
                         static_cast<long double>(z.imag()) * z.imag();
  const long double nw = static_cast<long double>(w.real()) * w.real() +
                         static_cast<long double>(w.imag()) * w.imag();
  return std::acosh(1.0L + 2.0L * (dx * dx + dy * dy) / ((1.0L - nz) * (1.0L - nw)));
}

void expectNear(Point a, Point b, double tol) { EXPECT_LT(std::abs(a - b), tol) << a << " vs " << b; }

}  // namespace

TEST(Dist, Basics) {
  EXPECT_EQ(dist(0.0, 0.0), 0.0);
  EXPECT_NEAR(dist(0.0, 0.5), std::log(3.0), 1e-15);
  const Point z(0.0, 0.3);
  EXPECT_NEAR(dist(z, -z), 1.238078416812446861896269396244277750336, 1e-14);
  EXPECT_NEAR(dist(z, -z), static_cast<double>(distOracle(z, -z)), 1e-14);
}

TEST(Dist, MatchesOracleOnRandomPairs) {
  RandomGeometry rnd(11);
  for (int i = 0; i < 1000; ++i) {
    const Point z = rnd.point(4.0);
    const Point w = rnd.point(4.0);
    const double d = dist(z, w);
    EXPECT_NEAR(d, static_cast<double>(distOracle(z, w)), 1e-11 * std::max(1.0, d));
    EXPECT_DOUBLE_EQ(d, dist(w, z));
  }
}

TEST(Isometry, ApplyExamples) {
  const Point z(0.2, -0.4);
  expectNear(apply(Isometry::identity(), z), z, 1e-15);
  expectNear(apply(Isometry::rotation(kPi), 0.5), -0.5, 1e-15);
  const Isometry c = Isometry::reflectionInDiameter(0.7);
  expectNear(apply(c, apply(c, z)), z, 1e-12);
  expectNear(apply(Isometry::translation(0.3), 0.0), 0.3, 1e-15);
}

TEST(Isometry, ConstructionNormalizes) {
  const Isometry g(Complex(3.0, 1.0), Complex(1.0, -2.0), true);
  EXPECT_NEAR(std::norm(g.a()) - std::norm(g.b()), 1.0, 1e-12);
}

TEST(Isometry, ComposeAndInverse) {
  RandomGeometry rnd(12);
  for (int i = 0; i < 200; ++i) {
    const Isometry g = rnd.isometry();
    const Isometry h = rnd.isometry();
    const Point z = rnd.point();
    const Isometry gh = compose(g, h);
    EXPECT_EQ(gh.reversing(), g.reversing() != h.reversing());
    expectNear(apply(gh, z), apply(g, apply(h, z)), 1e-10);
    EXPECT_LT(matrixDistance(compose(g, inverse(g)), Isometry::identity()), 1e-10);
    EXPECT_EQ(inverse(g).reversing(), g.reversing());
    EXPECT_NEAR(std::norm(gh.a()) - std::norm(gh.b()), 1.0, 1e-12);
  }
}

TEST(Isometry, InverseExamples) {
  EXPECT_LT(matrixDistance(inverse(Isometry::identity()), Isometry::identity()), 1e-15);
  const Isometry r = Isometry::reflectionInDiameter(1.1);
  EXPECT_LT(matrixDistance(inverse(r), r), 1e-15);
  RandomGeometry rnd(13);
  const Isometry g = rnd.hyperbolic(1.7);
  EXPECT_NEAR(classify(inverse(g)).translationLength, classify(g).translationLength, 1e-12);
}

TEST(Isometry, TwoMirrorsMakeARotation) {
  const Isometry r = compose(Isometry::reflectionInDiameter(0.9), Isometry::reflectionInDiameter(0.3));
  const IsometryClass cls = classify(r);
  ASSERT_EQ(cls.kind, IsometryKind::Elliptic);
  EXPECT_NEAR(cls.rotationAngle, 1.2, 1e-12);
  expectNear(apply(r, 0.5), std::polar(0.5, 1.2), 1e-12);
}

TEST(Isometry, MatrixDistanceIgnoresSign) {
  const Isometry g(Complex(1.2, 0.3), Complex(0.4, 0.1));
  const Isometry minus(-g.a(), -g.b());
  EXPECT_LT(matrixDistance(g, minus), 1e-15);
  EXPECT_TRUE(std::isinf(matrixDistance(g, Isometry(g.a(), g.b(), true))));
}

TEST(Classify, Examples) {
  const IsometryClass half = classify(Isometry(Complex(0.0, 1.0), 0.0));
  EXPECT_EQ(half.kind, IsometryKind::Elliptic);
  EXPECT_NEAR(half.rotationAngle, kPi, 1e-12);

  const double t = 1.3;
  const IsometryClass hyp = classify(Isometry(std::cosh(t / 2), std::sinh(t / 2)));
  EXPECT_EQ(hyp.kind, IsometryKind::Hyperbolic);
  EXPECT_NEAR(hyp.translationLength, t, 1e-12);

  const IsometryClass glide = classify(Isometry(std::cosh(t / 2), std::sinh(t / 2), true));
  EXPECT_EQ(glide.kind, IsometryKind::Glide);
  EXPECT_NEAR(glide.translationLength, t, 1e-12);

  EXPECT_EQ(classify(Isometry::identity()).kind, IsometryKind::Identity);
  EXPECT_EQ(classify(Isometry(Complex(1.0, 0.5), 0.5)).kind, IsometryKind::Parabolic);
  EXPECT_EQ(classify(Isometry::reflectionInDiameter(0.4)).kind, IsometryKind::Reflection);
  EXPECT_FALSE(classify(Isometry::reflectionInDiameter(0.4)).axial());
}

TEST(Classify, ConjugatedReflectionStaysReflection) {
  RandomGeometry rnd(14);
  for (int i = 0; i < 200; ++i) {
    const Isometry r = conjugate(rnd.isometry(), Isometry::reflectionInDiameter(rnd.angle()));
    EXPECT_EQ(classify(r).kind, IsometryKind::Reflection);
  }
}

TEST(Classify, GlideLengthIsHalfTheSquare) {
  RandomGeometry rnd(15);
  for (int i = 0; i < 200; ++i) {
    const Isometry g = rnd.glide(rnd.uniform(0.1, 4.0));
    const IsometryClass cls = classify(g);
    ASSERT_EQ(cls.kind, IsometryKind::Glide);
    const IsometryClass sq = classify(compose(g, g));
    ASSERT_EQ(sq.kind, IsometryKind::Hyperbolic);
    EXPECT_NEAR(cls.translationLength, sq.translationLength / 2.0, 1e-9);
  }
}

TEST(Axis, RealNormalFormHasRealDiameter) {
  const GeneralizedCircle ax = axis(Isometry(std::cosh(0.8), std::sinh(0.8)));
  EXPECT_EQ(ax.kind(), GeneralizedCircle::Kind::Line);
  EXPECT_LT(std::abs(ax.evaluate(0.5)), 1e-12);
  EXPECT_LT(std::abs(ax.evaluate(-0.7)), 1e-12);
  // Oriented in the direction of translation: from -1 to 1.
  const auto [rep, att] = idealFixedPoints(Isometry(std::cosh(0.8), std::sinh(0.8)));
  expectNear(rep, -1.0, 1e-12);
  expectNear(att, 1.0, 1e-12);
}

TEST(Axis, InvariantUnderMapAndShared) {
  RandomGeometry rnd(16);
  for (int i = 0; i < 300; ++i) {
    const bool glide = i % 2 == 1;
    const Isometry g = glide ? rnd.glide(rnd.uniform(0.2, 3.0)) : rnd.hyperbolic(rnd.uniform(0.2, 3.0));
    const GeneralizedCircle ax = axis(g);
    EXPECT_TRUE(ax.isGeodesic());
    for (Point e : ax.idealPoints()) EXPECT_NEAR(std::abs(e), 1.0, 1e-9);
    for (Point z : samplesInside(ax, 12, 0.95)) {
      EXPECT_LT(distToGeodesic(apply(g, z), ax), 1e-8);
    }
    const GeneralizedCircle ax2 = axis(compose(g, g));
    for (Point z : samplesInside(ax, 6, 0.9)) EXPECT_LT(distToGeodesic(z, ax2), 1e-8);
  }
}

TEST(Axis, RejectsNonAxial) {
  try {
    axis(Isometry::rotation(0.4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAxial);
  }
  EXPECT_THROW(axis(Isometry::reflectionInDiameter(0.4)), Error);
}

TEST(GeodesicDistance, Examples) {
  const GeneralizedCircle real = GeneralizedCircle::realDiameter();
  EXPECT_LT(distToGeodesic(0.4, real), 1e-15);
  const Point z(0.0, 0.6);
  EXPECT_NEAR(distToGeodesic(z, real), dist(z, 0.0), 1e-14);
  EXPECT_GT(signedDistToGeodesic(z, real), 0.0);
  EXPECT_LT(signedDistToGeodesic(-z, real), 0.0);
}

TEST(GeodesicJoining, PassesThroughBothPoints) {
  RandomGeometry rnd(18);
  for (int i = 0; i < 200; ++i) {
    const Point z = rnd.point(0.95);
    const Point w = rnd.point(0.95);
    const GeneralizedCircle g = geodesicJoining(z, w);
    EXPECT_TRUE(g.isGeodesic());
    EXPECT_LT(distToGeodesic(z, g), 1e-9);
    EXPECT_LT(distToGeodesic(w, g), 1e-9);
    EXPECT_LT(distToGeodesic(midpoint(z, w), g), 1e-9);
    const Point off = rnd.point(0.9);
    EXPECT_NEAR(signedDistToGeodesic(off, g), -signedDistToGeodesic(off, geodesicJoining(w, z)), 1e-9);
  }
  EXPECT_THROW(geodesicJoining(0.3, 0.3), Error);
}

TEST(GeodesicFrame, SendsEndpoints) {
  RandomGeometry rnd(17);
  for (int i = 0; i < 100; ++i) {
    const Point from = std::polar(1.0, rnd.angle());
    const Point to = std::polar(1.0, rnd.angle());
    const Isometry f = geodesicFrame(from, to);
    expectNear(apply(f, -1.0), from, 1e-9);
    expectNear(apply(f, 1.0), to, 1e-9);
    const GeneralizedCircle g = geodesicThrough(from, to);
    EXPECT_GT(g.evaluate(apply(f, Point(0.0, 0.5))), 0.0);
  }
}

TEST(DisplacementOffset, Examples) {
  IsometryClass hyp{IsometryKind::Hyperbolic, 1.5, 0.0};
  EXPECT_NEAR(*displacementOffset(hyp, 1.5), 0.0, 1e-12);
  EXPECT_FALSE(displacementOffset(hyp, 1.0).has_value());

  IsometryClass glide{IsometryKind::Glide, 0.9, 0.0};
  const double d = 2.0 * std::acosh(std::cosh(0.45) * std::cosh(1.0));
  EXPECT_NEAR(*displacementOffset(glide, d), 1.0, 1e-12);
  EXPECT_THROW(displacementOffset(IsometryClass{}, 1.0), Error);
}

TEST(Hypercycle, Examples) {
  const GeneralizedCircle real = GeneralizedCircle::realDiameter();
  const double delta = 0.7;
  const GeneralizedCircle left = hypercycle(real, delta, Side::Left);
  EXPECT_LT(std::abs(left.evaluate(1.0)), 1e-12);
  EXPECT_LT(std::abs(left.evaluate(-1.0)), 1e-12);
  EXPECT_LT(std::abs(left.evaluate(Point(0.0, std::tanh(delta / 2)))), 1e-12);

  const GeneralizedCircle right = hypercycle(real, delta, Side::Right);
  EXPECT_LT(std::abs(right.evaluate(Point(0.0, -std::tanh(delta / 2)))), 1e-12);

  const GeneralizedCircle thin = hypercycle(real, 1e-9, Side::Left);
  for (Point z : samplesInside(thin, 16, 0.9)) EXPECT_LT(std::abs(z.imag()), 1e-8);
}

TEST(Hypercycle, MirrorSymmetric) {
  RandomGeometry rnd(18);
  for (int i = 0; i < 50; ++i) {
    const GeneralizedCircle ax = axis(rnd.hyperbolic(1.0));
    const double delta = rnd.uniform(0.1, 2.0);
    const GeneralizedCircle l = hypercycle(ax, delta, Side::Left);
    const GeneralizedCircle r = hypercycle(ax, delta, Side::Right);
    const Isometry frame = geodesicFrame(ax.idealPoints()[0], ax.idealPoints()[1]);
    // Reflection in the axis.
    const Isometry mirror = conjugate(frame, Isometry::reflectionInDiameter(0.0));
    for (Point z : samplesInside(l, 10, 0.95)) {
      EXPECT_NEAR(signedDistToGeodesic(z, ax), delta, 1e-8);
      EXPECT_LT(std::abs(r.evaluate(apply(mirror, z))), 1e-8);
    }
  }
}

TEST(Intersect, Examples) {
  const auto l1 = GeneralizedCircle::line(1.0, 0.0);
  const auto l2 = GeneralizedCircle::line(1.0, 1.0);
  EXPECT_TRUE(intersect(l1, GeneralizedCircle::line(1.0, 0.5)).empty());
  EXPECT_TRUE(intersect(l1, l2).empty());
  const auto pts = intersect(GeneralizedCircle::realDiameter(), GeneralizedCircle::line(1.0, 0.0));
  ASSERT_EQ(pts.size(), 1u);
  expectNear(pts[0], 0.0, 1e-15);

  const auto two = intersect(GeneralizedCircle::circle(0.0, 0.5), GeneralizedCircle::realDiameter());
  ASSERT_EQ(two.size(), 2u);

  const auto tangent = intersect(GeneralizedCircle::circle(0.0, 0.5), GeneralizedCircle::line(1.0, 0.5));
  ASSERT_EQ(tangent.size(), 1u);
  expectNear(tangent[0], 0.5, 1e-9);

  // Outside the disk.
  EXPECT_TRUE(intersect(GeneralizedCircle::circle(2.0, 0.5), GeneralizedCircle::realDiameter()).empty());

  try {
    intersect(GeneralizedCircle::circle(0.1, 0.5), GeneralizedCircle::circle(0.1, 0.5).flipped());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CoincidentCurves);
  }
}

TEST(Intersect, RandomCirclesAgreeWithEquations) {
  RandomGeometry rnd(19);
  int found = 0;
  for (int i = 0; i < 500; ++i) {
    const auto c1 = GeneralizedCircle::circle(rnd.point(1.0), rnd.uniform(0.1, 1.0));
    const auto c2 = GeneralizedCircle::circle(rnd.point(1.0), rnd.uniform(0.1, 1.0));
    for (Point z : intersect(c1, c2)) {
      ++found;
      EXPECT_LT(std::abs(c1.evaluate(z)), 1e-9);
      EXPECT_LT(std::abs(c2.evaluate(z)), 1e-9);
      EXPECT_LT(std::abs(z), 1.0);
    }
  }
  EXPECT_GT(found, 100);
}

TEST(Transform, MapsCurvesToImages) {
  RandomGeometry rnd(20);
  for (int i = 0; i < 200; ++i) {
    const Isometry g = rnd.isometry();
    const GeneralizedCircle c = GeneralizedCircle::circle(rnd.point(1.0), rnd.uniform(0.05, 0.8));
    const GeneralizedCircle img = c.transformed(g);
    for (Point z : samplesInside(c, 8, 0.95)) EXPECT_LT(std::abs(img.evaluate(apply(g, z))), 1e-7);
    // Orientation: the left side maps to the left side.
    const Point inside = c.center();
    if (std::abs(inside) < 0.95) {
      EXPECT_EQ(c.evaluate(inside) > 0, img.evaluate(apply(g, inside)) > 0);
    }
  }
}

TEST(Elliptic, AboutPointAndMidpoint) {
  expectNear(apply(ellipticAbout(0.0, kPi), Point(0.3, 0.1)), Point(-0.3, -0.1), 1e-15);
  const double x = 0.6;
  expectNear(midpoint(0.0, x), std::tanh(std::atanh(x) / 2.0), 1e-15);
  EXPECT_THROW(midpoint(Point(0.2, 0.2), Point(0.2, 0.2)), Error);

  RandomGeometry rnd(21);
  for (int i = 0; i < 200; ++i) {
    const Point p = rnd.point();
    const double theta = rnd.uniform(-3.0, 3.0);
    const Isometry e = ellipticAbout(p, theta);
    expectNear(apply(e, p), p, 1e-10);
    const IsometryClass cls = classify(e);
    ASSERT_EQ(cls.kind, IsometryKind::Elliptic);
    EXPECT_NEAR(cls.rotationAngle, theta, 1e-9);

    const Point z = rnd.point();
    const Point w = rnd.point();
    const Point m = midpoint(z, w);
    EXPECT_NEAR(dist(z, m), dist(z, w) / 2.0, 1e-10);
    EXPECT_NEAR(dist(m, w), dist(z, w) / 2.0, 1e-10);
    expectNear(apply(ellipticAbout(m, kPi), z), w, 1e-8);
  }
}

// Randomized kernel properties, 10^4 draws each.

TEST(KernelProperties, DistanceInvariance) {
  RandomGeometry rnd(101);
  for (int i = 0; i < 10000; ++i) {
    const Isometry g = rnd.isometry();
    const Point z = rnd.point();
    const Point w = rnd.point();
    const double d = dist(z, w);
    ASSERT_NEAR(dist(apply(g, z), apply(g, w)), d, 1e-10 * std::max(1.0, d));
  }
}

TEST(KernelProperties, Associativity) {
  RandomGeometry rnd(102);
  for (int i = 0; i < 10000; ++i) {
    const Isometry f = rnd.isometry(), g = rnd.isometry(), h = rnd.isometry();
    const Isometry l = compose(compose(f, g), h);
    const Isometry r = compose(f, compose(g, h));
    ASSERT_LT(matrixDistance(l, r), 1e-9);
    ASSERT_NEAR(std::norm(l.a()) - std::norm(l.b()), 1.0, 1e-12);
  }
}

TEST(KernelProperties, HyperbolicDisplacement) {
  RandomGeometry rnd(103);
  for (int i = 0; i < 10000; ++i) {
    const double T = rnd.uniform(0.05, 4.0);
    const Isometry g = rnd.hyperbolic(T);
    const Point z = rnd.point();
    const double lhs = std::sinh(dist(z, apply(g, z)) / 2.0);
    const double rhs = std::cosh(distToGeodesic(z, axis(g))) * std::sinh(T / 2.0);
    ASSERT_NEAR(lhs, rhs, 1e-8 * std::max(1.0, rhs));
  }
}

TEST(KernelProperties, GlideDisplacement) {
  RandomGeometry rnd(104);
  for (int i = 0; i < 10000; ++i) {
    const double T = rnd.uniform(0.05, 4.0);
    const Isometry g = rnd.glide(T);
    const Point z = rnd.point();
    const double lhs = std::cosh(dist(z, apply(g, z)) / 2.0);
    const double rhs = std::cosh(distToGeodesic(z, axis(g))) * std::cosh(T / 2.0);
    ASSERT_NEAR(lhs, rhs, 1e-8 * std::max(1.0, rhs));
  }
}

TEST(KernelProperties, HypercycleRoundTrip) {
  RandomGeometry rnd(105);
  int sampled = 0;
  for (int i = 0; i < 10000; ++i) {
    const double T = rnd.uniform(0.2, 3.0);
    const Isometry g = i % 2 == 0 ? rnd.hyperbolic(T) : rnd.glide(T);
    const IsometryClass cls = classify(g);
    const double d = T + rnd.uniform(0.0, 3.0);
    const auto delta = displacementOffset(cls, d);
    ASSERT_TRUE(delta.has_value());
    const Side side = i % 4 < 2 ? Side::Left : Side::Right;
    const GeneralizedCircle banana = hypercycle(axis(g), std::max(*delta, 1e-12), side);
    for (Point z : samplesInside(banana, 4, 0.9)) {
      ASSERT_NEAR(dist(z, apply(g, z)), d, 1e-7);
      ++sampled;
    }
  }
  EXPECT_GT(sampled, 10000);
}

TEST(KernelProperties, ConjugationInvariance) {
  RandomGeometry rnd(106);
  for (int i = 0; i < 10000; ++i) {
    const double T = rnd.uniform(0.05, 4.0);
    const Isometry g = i % 2 == 0 ? rnd.hyperbolic(T) : rnd.glide(T);
    const IsometryClass a = classify(g);
    const IsometryClass b = classify(conjugate(rnd.isometry(), g));
    ASSERT_EQ(a.kind, b.kind);
    ASSERT_NEAR(a.translationLength, b.translationLength, 1e-8);
    ASSERT_NEAR(a.translationLength, T, 1e-8);
  }
}
