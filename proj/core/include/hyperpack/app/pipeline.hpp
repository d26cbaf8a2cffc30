#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperpack/app/config.hpp"
#include "hyperpack/geom.hpp"

namespace hyperpack::app {

enum class Stage { Distances, Domain, Pairings, Candidates, Filtering, Completion, Certificate };

std::string_view toString(Stage s) noexcept;

inline constexpr int kExitCertified = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitExhausted = 2;

struct RunOptions {
  /// Last stage to run. Runs that stop early exit 0 when nothing failed.
  Stage stopAfter = Stage::Certificate;
  bool renderFigures = true;
  /// Progress lines, one per stage; may be null.
  std::ostream* log = nullptr;
};

struct RunSummary {
  int exitCode = kExitError;
  /// Last stage that finished.
  std::optional<Stage> reached;
  std::vector<std::filesystem::path> artifacts;
  std::size_t seedPairsTried = 0;
  std::size_t candidates = 0;
  std::size_t goodCandidates = 0;
  std::size_t solutions = 0;
  std::optional<Point> certifiedPoint;
  /// Set when exitCode is kExitError.
  std::string errorStage;
  std::string errorCode;
  std::string errorMessage;
};

/// distances -> domain -> pairings -> candidates -> filtering -> completion
/// -> certificate, writing one JSON artifact per stage into cfg.outputDir.
/// Errors are caught, written to error.json with the failing stage, and
/// reported through the summary.
RunSummary runPipeline(const PipelineConfig& cfg, const RunOptions& opts = {});

struct VerifyReport {
  bool ok = false;
  std::size_t generators = 0;
  double maxResidual = 0.0;
  double swapError = 0.0;
  std::vector<std::string> problems;
};

/// Re-checks a certificate from its stored matrices and words alone.
VerifyReport verifyCertificate(std::string_view certificateJson);
VerifyReport verifyCertificateFile(const std::filesystem::path& path);

/// Writes domain.svg, bananas.svg and, when a certificate exists,
/// certificate.svg from the artifacts in cfg.outputDir.
std::vector<std::filesystem::path> renderFigures(const PipelineConfig& cfg);

}  // namespace hyperpack::app
