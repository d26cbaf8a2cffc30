#pragma once

// Membership in the group generated by a side-pairing set, by reducing the
// image of a basepoint back into the fundamental domain, and the normalizer
// certificate for a second extremal packing.

#include <cstddef>
#include <map>
#include <string_view>
#include <vector>

#include "hyperpack/domain.hpp"
#include "hyperpack/geom.hpp"
#include "hyperpack/tess.hpp"

namespace hyperpack {

struct GroupOptions {
  /// Member iff the reduced element is this close to the identity.
  double memberTol = 1e-6;
  /// Word length bound for the breadth-first fallback.
  int bfsDepth = 12;
  std::size_t bfsNodeCap = 200000;
  /// Greedy steps must shorten the distance to the basepoint by this much.
  double progressMargin = 1e-9;
  std::size_t maxGreedySteps = 10000;
  /// Set to 0 to go straight from greedy to breadth-first search.
  std::size_t maxWalkSteps = 10000;
};

inline constexpr Point kDefaultBasepoint{1e-3, 1.3e-3};
/// Required distance from the basepoint to every edge geodesic of F.
inline constexpr double kBasepointClearance = 1e-6;

class GroupPresentation {
 public:
  /// `generators` must list the inverse of each of its entries. Throws
  /// ConfigRejected when an inverse is missing or the basepoint sits too
  /// close to an edge.
  GroupPresentation(const FundamentalDomain& F, std::vector<SidePairing> generators,
                    Point basepoint = kDefaultBasepoint);

  const FundamentalDomain& domain() const { return *F_; }
  const std::vector<SidePairing>& generators() const { return gens_; }
  const Isometry& generator(int i) const { return gens_.at(static_cast<std::size_t>(i)).map; }
  int inverseOf(int i) const { return inverse_.at(static_cast<std::size_t>(i)); }
  Point basepoint() const { return basepoint_; }
  /// Generator whose source is boundary edge `e`, or -1.
  int pairingFrom(EdgeKey e) const;

 private:
  const FundamentalDomain* F_;
  std::vector<SidePairing> gens_;
  std::vector<int> inverse_;
  std::map<EdgeKey, int> bySource_;
  Point basepoint_;
};

enum class ReductionStrategy { Greedy, EdgeWalk, BreadthFirst };
std::string_view toString(ReductionStrategy s) noexcept;

struct MembershipResult {
  bool member = false;
  /// Generator indices with h = g[w0] g[w1] ... g[wk].
  std::vector<int> word;
  /// Matrix distance of the reduced element to the identity.
  double residual = 0.0;
  ReductionStrategy strategy = ReductionStrategy::Greedy;
  std::size_t greedySteps = 0;
  std::size_t walkSteps = 0;
  /// Smallest distance decrease over the greedy steps taken.
  double minProgress = 0.0;
};

/// Pulls h(basepoint) back into F with generators, greedily shortening its
/// distance to the basepoint. When no generator makes progress it walks the
/// geodesic from the basepoint, undoing one boundary crossing at a time, and
/// last of all tries breadth-first search over words. Throws ReductionStalled
/// when nothing reaches F.
MembershipResult reduceToDomain(const Isometry& h, const GroupPresentation& G,
                                const GroupOptions& opts = {});

/// Composes the generators named by `word`.
Isometry wordProduct(const std::vector<int>& word, const GroupPresentation& G);
/// Distance of word^-1 h from the identity. Comparing word and h directly
/// is swamped by rounding in the scale of long products.
double wordResidual(const std::vector<int>& word, const Isometry& h, const GroupPresentation& G);

struct NormalizerReport {
  bool normalizes = false;
  /// One entry per generator, for t g t^-1.
  std::vector<MembershipResult> conjugates;
  /// Largest change in translation length under conjugation.
  double maxLengthDrift = 0.0;
};

NormalizerReport normalizes(const Isometry& t, const GroupPresentation& G,
                            const GroupOptions& opts = {}, unsigned workers = 0);

struct PackingCertificate {
  Point P;
  Point Oprime;
  Point midpoint;
  Isometry tau;
  NormalizerReport normalizer;
  double swapError = 0.0;
  bool swapCheck = false;
  bool pass = false;
};

inline constexpr double kSwapTol = 1e-8;

/// O' = (ca)^2 b (0); tau is the half-turn about the midpoint of P and O'.
/// Passes when tau normalizes G and swaps P with O'.
PackingCertificate secondPackingCertificate(Point P, const GroupPresentation& G,
                                            const TriangleGenerators& gens,
                                            const GroupOptions& opts = {}, unsigned workers = 0);
/// Same with O' given. Throws DegenerateMidpoint when P == O'.
PackingCertificate secondPackingCertificate(Point P, Point Oprime, const GroupPresentation& G,
                                            const GroupOptions& opts = {}, unsigned workers = 0);

Point secondCentre(const TriangleGenerators& gens);

}  // namespace hyperpack
