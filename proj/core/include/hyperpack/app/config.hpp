#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperpack/domain.hpp"
#include "hyperpack/geom.hpp"
#include "hyperpack/search.hpp"

namespace hyperpack::app {

/// Values of N for which two extremal packings can coexist.
inline constexpr int kRelevantN[] = {7, 8, 9, 10, 11, 12, 14, 16, 18, 24, 30};

bool isRelevantN(int n) noexcept;

/// Genus of a k-extremal surface tiled by k regular N-gons of angle 2pi/3,
/// or nothing when it is not an integer in range (>= 3 non-orientable,
/// >= 2 orientable).
std::optional<int> genusFor(int n, int k, bool orientable = false) noexcept;

struct PrimitivePair {
  int k;
  int g;
  bool operator==(const PrimitivePair&) const = default;
};

/// Smallest k (hence smallest g) with a valid genus. Throws NotRelevantN
/// for N outside kRelevantN.
PrimitivePair primitivePair(int n, bool orientable = false);

struct SeedSpec {
  EdgeKey src;
  EdgeKey dst;
  bool reversing = false;
  bool operator==(const SeedSpec&) const = default;
};

struct PipelineConfig {
  int n = 14;
  int k = 3;
  /// Polygons 1..k-1, in order; parents are 0-based in memory.
  std::vector<Attachment> attachments;
  /// Rotation of the tessellation frame in units of pi/n.
  int frameRotation = 0;
  int depth = 5;
  double matchTol = 1e-4;
  bool orientable = false;
  /// The two seed pairings; when absent, seed pairs are enumerated.
  std::optional<std::vector<SeedSpec>> seedPairs;
  /// Cap on enumerated seed pairs (0 = all).
  std::size_t seedPairLimit = 64;
  /// Solutions kept per candidate (0 = all).
  std::size_t limit = 32;
  std::size_t maxNodes = 2000000;
  double dedupTol = 1e-6;
  /// Try candidates nearest this point first.
  std::optional<Point> preferNear;
  /// Only certify solutions containing all of these.
  std::vector<Identification> requireIdentifications;
  std::string outputDir = "out";
  unsigned workers = 0;

  double frameAngle() const { return frameRotation * kPi / n; }
  bool operator==(const PipelineConfig&) const = default;
};

/// Throws ConfigRejected for an inconsistent config.
void validate(const PipelineConfig& cfg);

/// Parses and validates. Throws ConfigRejected on malformed input.
PipelineConfig parseConfig(std::string_view json);
PipelineConfig loadConfig(const std::filesystem::path& path);
/// Canonical JSON form; parseConfig(toJson(c)) == c.
std::string toJson(const PipelineConfig& cfg);

/// FNV-1a of the canonical JSON, as 16 hex digits.
std::string configHash(const PipelineConfig& cfg);
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// "1:13" (1-based polygon, 0-based edge) or "pol1[13]".
EdgeKey parseEdgeSelector(std::string_view text);

}  // namespace hyperpack::app
