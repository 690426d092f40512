#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace svgscatter {

namespace fs = std::filesystem;

/// One document's directory: `<id>/fulltext.pdf` plus
/// `<id>/figures/figure<N>/figure.svg`.
struct CTree {
  std::string id;
  std::optional<fs::path> fulltext;
  std::vector<std::pair<int, fs::path>> figures;  // sorted by index
};

struct CorpusProject {
  fs::path root;
  std::vector<CTree> trees;  // sorted by id
};

/// A figure selected for extraction.
struct FigureEntry {
  std::string tree_id;
  int index = 0;
  fs::path svg;
};

/// The filter used for clipped figure corpora.
inline constexpr std::string_view kDefaultFigureFilter =
    R"(^.*figures/figure(\d+)/figure(_\d+)?\.svg)";

/// Reads an existing directory layout into a project model.
CorpusProject scan_project(const fs::path& root);

/// Expands a `(\N)` / `\N` template with the capture groups of `match`.
/// Throws Error(TemplateGroupOutOfRange).
std::string expand_template(std::string_view pattern, const std::vector<std::string>& groups);

/// Moves every file under `root` whose path fully matches `file_filter` to
/// `root / expand_template(template, captures)`, then scans the result.
/// Nothing is moved if two files share a destination or a destination is
/// already taken (Error(DestinationCollision)).
CorpusProject make_project(const fs::path& root, std::string_view file_filter,
                           std::string_view destination_template);

/// Every file inside the project's trees whose path fully matches
/// `figure_filter`; the first capture group is the figure index. Ordered by
/// (tree id, index, path). Throws Error(BadFilter).
std::vector<FigureEntry> enumerate_figures(const CorpusProject& project,
                                           std::string_view figure_filter = kDefaultFigureFilter);

}  // namespace svgscatter
