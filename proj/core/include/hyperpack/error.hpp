#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperpack {

enum class ErrorCode {
  DegenerateClassification,
  NotAxial,
  CoincidentCurves,
  NotHyperbolic,
  OverlappingPolygons,
  DisconnectedAssembly,
  InvalidCellStructure,
  ReductionStalled,
  DegenerateMidpoint,
  NotRelevantN,
  ConfigRejected,
  Io,
};

/// Machine-readable name used in CLI error reports and JSON artifacts.
std::string_view toString(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hyperpack
