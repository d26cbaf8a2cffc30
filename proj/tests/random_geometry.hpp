#pragma once

#include <cmath>
#include <random>

#include "hyperpack/geom.hpp"

namespace hyperpack::testing {

class RandomGeometry {
 public:
  explicit RandomGeometry(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double angle() { return uniform(-kPi, kPi); }

  /// Uniform in angle, hyperbolic radius up to rmax.
  Point point(double rmax = 2.5) {
    return std::polar(std::tanh(uniform(0.0, rmax) / 2.0), angle());
  }

  Isometry isometry(double tmax = 3.0) {
    const double t = uniform(0.0, tmax);
    Isometry g(std::polar(std::cosh(t / 2.0), angle()), std::polar(std::sinh(t / 2.0), angle()));
    if (uniform(0.0, 1.0) < 0.5) g = compose(g, Isometry::reflectionInDiameter(angle()));
    return g;
  }

  /// Hyperbolic map with translation length T, axis conjugated to a random place.
  Isometry hyperbolic(double T) {
    const Isometry normal(std::cosh(T / 2.0), std::sinh(T / 2.0));
    return conjugate(mover(), normal);
  }

  Isometry glide(double T) {
    const Isometry normal(std::cosh(T / 2.0), std::sinh(T / 2.0), true);
    return conjugate(mover(), normal);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  Isometry mover() {
    const double t = uniform(0.0, 2.0);
    return Isometry(std::polar(std::cosh(t / 2.0), angle()), std::polar(std::sinh(t / 2.0), angle()));
  }

  std::mt19937_64 rng_;
};

/// Points of a generalized circle that fall inside the disk of radius rmax.
inline std::vector<Point> samplesInside(const GeneralizedCircle& c, int count, double rmax = 0.97) {
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) {
    Point z;
    if (c.kind() == GeneralizedCircle::Kind::Circle) {
      z = c.center() + std::polar(c.radius(), 2.0 * kPi * (i + 0.5) / count);
    } else {
      const double s = -1.0 + 2.0 * (i + 0.5) / count;
      z = c.offset() * c.normal() + s * Complex(0.0, 1.0) * c.normal();
    }
    if (std::abs(z) < rmax) out.push_back(z);
  }
  return out;
}

}  // namespace hyperpack::testing
