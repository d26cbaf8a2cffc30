#include "hyperpack/tess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperpack/parallel.hpp"

namespace hyperpack {

PolygonMetrics polygonMetrics(int n) {
  if (n <= 6) {
    throw Error(ErrorCode::NotHyperbolic,
                "regular " + std::to_string(n) + "-gons with angle 2pi/3 are not hyperbolic");
  }
  PolygonMetrics m;
  m.n = n;
  const double t = kPi / n;
  m.inradius = std::acosh(1.0 / (2.0 * std::sin(t)));
  m.circumradius = std::acosh(1.0 / (std::tan(kPi / 3.0) * std::tan(t)));
  return m;
}

double extremalRadius(int k, int chi) {
  return std::acosh(1.0 / (2.0 * std::sin(k * kPi / (6.0 * (k - chi)))));
}

namespace {

// Euclidean modulus of a disk point at hyperbolic distance r from 0.
double euclideanRadius(double r) { return std::tanh(r / 2.0); }

// Fold a DFS over the last `levels` factors of R_{i1}...R_{ik}, starting from
// `prefix`, into `out`. Only the distance of the final image of 0 is kept:
// cosh d(0, g 0) = 1 + 2|b|^2, i.e. d = 2 asinh |b|.
void streamProducts(std::span<const Isometry> rm, const Isometry& prefix, int levels,
                    std::vector<double>& out) {
  const int n = static_cast<int>(rm.size());
  std::vector<Isometry> stack(static_cast<std::size_t>(levels) + 1);
  std::vector<int> digit(static_cast<std::size_t>(levels), 0);
  stack[0] = prefix;
  int level = 0;
  while (level >= 0) {
    if (level == levels) {
      out.push_back(2.0 * std::asinh(std::abs(stack[static_cast<std::size_t>(level)].b())));
      --level;
      continue;
    }
    int& d = digit[static_cast<std::size_t>(level)];
    if (d == n) {
      d = 0;
      --level;
      continue;
    }
    stack[static_cast<std::size_t>(level) + 1] =
        compose(stack[static_cast<std::size_t>(level)], rm[static_cast<std::size_t>(d)]);
    ++d;
    ++level;
  }
}

void sortAndMerge(std::vector<double>& v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v)
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  v.swap(out);
}

}  // namespace

TriangleGenerators::TriangleGenerators(int n, double frameAngle)
    : metrics_(polygonMetrics(n)),
      frameAngle_(frameAngle),
      carrier0_(GeneralizedCircle::realDiameter()) {
  const double step = kPi / n;
  midpointC_ = std::polar(euclideanRadius(metrics_.inradius), frameAngle);
  vertexA_ = std::polar(euclideanRadius(metrics_.circumradius), frameAngle + step);

  a_ = Isometry::reflectionInDiameter(frameAngle);
  c_ = Isometry::reflectionInDiameter(frameAngle + step);
  // b: reflection in the geodesic through C perpendicular to BC, obtained by
  // transporting the reflection in the perpendicular diameter.
  const Isometry toC = Isometry::translation(midpointC_);
  b_ = compose(toC, compose(Isometry::reflectionInDiameter(frameAngle + kPi / 2.0), inverse(toC)));
  ca_ = compose(c_, a_);

  const Isometry ab = compose(a_, b_);
  rm_.reserve(static_cast<std::size_t>(n));
  Isometry power;
  for (int m = 0; m < n; ++m) {
    rm_.push_back(compose(power, ab));
    power = compose(ca_, power);
  }

  // Edge 0 carrier: the diameter perpendicular to BC, pushed out to C and
  // directed counterclockwise.
  const Isometry frame =
      compose(toC, Isometry::rotation(frameAngle + kPi / 2.0));
  carrier0_ = GeneralizedCircle::realDiameter().transformed(frame);
}

Isometry TriangleGenerators::product(std::span<const int> indices) const {
  Isometry g;
  for (int i : indices) g = compose(g, neighborMap(((i % n()) + n()) % n()));
  return g;
}

Point TriangleGenerators::vertex(int j) const {
  return std::polar(euclideanRadius(metrics_.circumradius),
                    frameAngle_ + (2.0 * j - 1.0) * kPi / n());
}

GeneralizedCircle TriangleGenerators::edgeCarrier(int j) const {
  return carrier0_.transformed(Isometry::rotation(2.0 * kPi * j / n()));
}

DistanceSet admissibleDistances(const TriangleGenerators& gens, int depth,
                                const DistanceOptions& opts) {
  if (depth < 1) throw std::invalid_argument("admissibleDistances: depth must be >= 1");
  const auto rm = gens.neighborMaps();
  const int n = gens.n();
  // Split the product space on its first two digits.
  const int splitLevels = std::min(depth, 2);
  std::size_t tasks = 1;
  for (int i = 0; i < splitLevels; ++i) tasks *= static_cast<std::size_t>(n);

  std::vector<std::vector<double>> partial(tasks);
  parallelFor(tasks, opts.workers, [&](std::size_t t) {
    Isometry prefix;
    std::size_t rest = t;
    std::array<int, 2> digits{};
    for (int i = splitLevels - 1; i >= 0; --i) {
      digits[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
    for (int i = 0; i < splitLevels; ++i)
      prefix = compose(prefix, rm[static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])]);
    auto& out = partial[t];
    streamProducts(rm, prefix, depth - splitLevels, out);
    sortAndMerge(out, opts.dedupTol);
  });

  DistanceSet set;
  set.depth = depth;
  set.matchTol = opts.matchTol;
  set.dedupTol = opts.dedupTol;
  set.values.push_back(0.0);
  for (const auto& p : partial) set.values.insert(set.values.end(), p.begin(), p.end());
  sortAndMerge(set.values, opts.dedupTol);
  return set;
}

DistanceSet admissibleDistances(int n, int depth, const DistanceOptions& opts) {
  return admissibleDistances(TriangleGenerators(n), depth, opts);
}

double nearestAdmissible(double d, const DistanceSet& set) {
  const auto& v = set.values;
  auto it = std::lower_bound(v.begin(), v.end(), d);
  if (it == v.end()) return v.back();
  if (it == v.begin()) return *it;
  const double hi = *it;
  const double lo = *std::prev(it);
  return (d - lo) <= (hi - d) ? lo : hi;
}

bool isAdmissible(double d, const DistanceSet& set) {
  if (set.values.empty()) return false;
  return std::abs(nearestAdmissible(d, set) - d) <= set.matchTol;
}

}  // namespace hyperpack
