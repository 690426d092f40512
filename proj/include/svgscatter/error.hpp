#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace svgscatter {

/// Failure kinds raised by the extraction stages. Each stage documents the
/// subset it can raise; the pipeline maps them onto report statuses.
enum class Errc {
  MalformedXml,
  NotSvg,
  DegenerateTransform,
  PathSyntax,
  NoAxesFound,
  InsufficientMatches,
  TooFewTicks,
  CollocatedTicks,
  NonlinearScale,
  NoDataGlyphs,
  TemplateGroupOutOfRange,
  DestinationCollision,
  BadFilter,
  MissingTruth,
  BadConfig,
  IoFailure,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace svgscatter
