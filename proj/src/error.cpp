#include "svgscatter/error.hpp"

namespace svgscatter {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedXml: return "MalformedXml";
    case Errc::NotSvg: return "NotSvg";
    case Errc::DegenerateTransform: return "DegenerateTransform";
    case Errc::PathSyntax: return "PathSyntax";
    case Errc::NoAxesFound: return "NoAxesFound";
    case Errc::InsufficientMatches: return "InsufficientMatches";
    case Errc::TooFewTicks: return "TooFewTicks";
    case Errc::CollocatedTicks: return "CollocatedTicks";
    case Errc::NonlinearScale: return "NonlinearScale";
    case Errc::NoDataGlyphs: return "NoDataGlyphs";
    case Errc::TemplateGroupOutOfRange: return "TemplateGroupOutOfRange";
    case Errc::DestinationCollision: return "DestinationCollision";
    case Errc::BadFilter: return "BadFilter";
    case Errc::MissingTruth: return "MissingTruth";
    case Errc::BadConfig: return "BadConfig";
    case Errc::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace svgscatter
