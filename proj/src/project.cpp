#include "svgscatter/project.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <set>
#include <tuple>

#include "svgscatter/error.hpp"

namespace svgscatter {

namespace {

std::regex compile(std::string_view pattern) {
  try {
    return std::regex(std::string(pattern), std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw Error(Errc::BadFilter, "invalid filter '" + std::string(pattern) + "': " + e.what());
  }
}

/// Largest group number referenced by a template, or 0.
int max_group_reference(std::string_view pattern) {
  int max_ref = 0;
  for (std::size_t i = 0; i + 1 < pattern.size(); ++i) {
    if (pattern[i] != '\\' || !std::isdigit(static_cast<unsigned char>(pattern[i + 1])))
      continue;
    int n = 0;
    std::size_t j = i + 1;
    while (j < pattern.size() && std::isdigit(static_cast<unsigned char>(pattern[j])))
      n = n * 10 + (pattern[j++] - '0');
    max_ref = std::max(max_ref, n);
  }
  return max_ref;
}

std::vector<std::string> groups_of(const std::smatch& m) {
  std::vector<std::string> g;
  for (std::size_t i = 1; i < m.size(); ++i) g.push_back(m[i].str());
  return g;
}

}  // namespace

std::string expand_template(std::string_view pattern, const std::vector<std::string>& groups) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size();) {
    // `(\N)` and bare `\N` both stand for group N.
    const bool wrapped = pattern[i] == '(' && i + 2 < pattern.size() && pattern[i + 1] == '\\' &&
                         std::isdigit(static_cast<unsigned char>(pattern[i + 2]));
    const bool bare = pattern[i] == '\\' && i + 1 < pattern.size() &&
                      std::isdigit(static_cast<unsigned char>(pattern[i + 1]));
    if (!wrapped && !bare) {
      out += pattern[i++];
      continue;
    }
    std::size_t j = i + (wrapped ? 2 : 1);
    int n = 0;
    while (j < pattern.size() && std::isdigit(static_cast<unsigned char>(pattern[j])))
      n = n * 10 + (pattern[j++] - '0');
    if (wrapped) {
      if (j >= pattern.size() || pattern[j] != ')') {
        out += pattern[i++];
        continue;
      }
      ++j;
    }
    if (n < 1 || static_cast<std::size_t>(n) > groups.size())
      throw Error(Errc::TemplateGroupOutOfRange,
                  "template refers to group " + std::to_string(n) + " but the filter has " +
                      std::to_string(groups.size()));
    out += groups[static_cast<std::size_t>(n - 1)];
    i = j;
  }
  return out;
}

CorpusProject scan_project(const fs::path& root) {
  CorpusProject project;
  project.root = root;
  if (!fs::is_directory(root)) return project;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    CTree tree;
    tree.id = entry.path().filename().string();
    if (fs::is_regular_file(entry.path() / "fulltext.pdf"))
      tree.fulltext = entry.path() / "fulltext.pdf";
    const fs::path figures = entry.path() / "figures";
    if (fs::is_directory(figures)) {
      for (const auto& fig : fs::directory_iterator(figures)) {
        const std::string name = fig.path().filename().string();
        if (!fig.is_directory() || !name.starts_with("figure") || name.size() == 6) continue;
        const std::string digits = name.substr(6);
        if (!std::all_of(digits.begin(), digits.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          continue;
        if (fs::is_regular_file(fig.path() / "figure.svg"))
          tree.figures.emplace_back(std::stoi(digits), fig.path() / "figure.svg");
      }
      std::sort(tree.figures.begin(), tree.figures.end());
    }
    project.trees.push_back(std::move(tree));
  }
  std::sort(project.trees.begin(), project.trees.end(),
            [](const CTree& a, const CTree& b) { return a.id < b.id; });
  return project;
}

CorpusProject make_project(const fs::path& root, std::string_view file_filter,
                           std::string_view destination_template) {
  if (!fs::is_directory(root))
    throw Error(Errc::IoFailure, "project root " + root.string() + " is not a directory");
  const std::regex filter = compile(file_filter);
  const int referenced = max_group_reference(destination_template);
  if (static_cast<std::size_t>(referenced) > filter.mark_count())
    throw Error(Errc::TemplateGroupOutOfRange,
                "template refers to group " + std::to_string(referenced) + " but the filter has " +
                    std::to_string(filter.mark_count()));

  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<std::pair<fs::path, fs::path>> moves;
  std::map<fs::path, fs::path> claimed;
  for (const fs::path& file : files) {
    const std::string text = file.generic_string();
    std::smatch m;
    if (!std::regex_match(text, m, filter)) continue;
    const fs::path dest = (root / expand_template(destination_template, groups_of(m)))
                              .lexically_normal();
    if (dest == file.lexically_normal()) continue;
    if (auto [it, fresh] = claimed.emplace(dest, file); !fresh)
      throw Error(Errc::DestinationCollision, it->second.string() + " and " + file.string() +
                                                  " both map to " + dest.string());
    if (fs::exists(dest))
      throw Error(Errc::DestinationCollision,
                  file.string() + " would overwrite existing " + dest.string());
    moves.emplace_back(file, dest);
  }

  for (const auto& [from, to] : moves) {
    std::error_code ec;
    fs::create_directories(to.parent_path(), ec);
    fs::rename(from, to, ec);
    if (ec)
      throw Error(Errc::IoFailure,
                  "cannot move " + from.string() + " to " + to.string() + ": " + ec.message());
  }
  return scan_project(root);
}

std::vector<FigureEntry> enumerate_figures(const CorpusProject& project,
                                           std::string_view figure_filter) {
  const std::regex filter = compile(figure_filter);
  if (filter.mark_count() < 1)
    throw Error(Errc::BadFilter, "figure filter needs a capture group for the figure index");

  std::vector<FigureEntry> out;
  for (const CTree& tree : project.trees) {
    const fs::path dir = project.root / tree.id;
    if (!fs::is_directory(dir)) continue;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      const std::string text = entry.path().generic_string();
      std::smatch m;
      if (!std::regex_match(text, m, filter)) continue;
      const std::string index = m[1].str();
      if (index.empty() || index.size() > 9 ||
          !std::all_of(index.begin(), index.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        continue;
      out.push_back(FigureEntry{tree.id, std::stoi(index), entry.path()});
    }
  }
  std::sort(out.begin(), out.end(), [](const FigureEntry& a, const FigureEntry& b) {
    return std::tie(a.tree_id, a.index, a.svg) < std::tie(b.tree_id, b.index, b.svg);
  });
  return out;
}

}  // namespace svgscatter
