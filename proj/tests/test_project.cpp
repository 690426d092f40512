#include <doctest.h>

#include <regex>
#include <set>

#include "support.hpp"
#include "svgscatter/error.hpp"
#include "svgscatter/project.hpp"

using namespace svgscatter;
using test::TempDir;
using test::write_file;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::IoFailure;
}

std::set<std::string> files_under(const fs::path& root) {
  std::set<std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out.insert(e.path().lexically_relative(root).generic_string());
  return out;
}

}  // namespace

TEST_CASE("pdfs move into per-document trees") {
  TempDir dir;
  write_file(dir.path() / "paperA.pdf", "%PDF");
  const CorpusProject p = make_project(dir.path(), ".*/(.*).pdf", "(\\1)/fulltext.pdf");
  CHECK(files_under(dir.path()) == std::set<std::string>{"paperA/fulltext.pdf"});
  REQUIRE(p.trees.size() == 1);
  CHECK(p.trees[0].id == "paperA");
  CHECK(p.trees[0].fulltext.has_value());
}

TEST_CASE("empty root gives an empty project") {
  TempDir dir;
  CHECK(make_project(dir.path(), ".*/(.*).pdf", "(\\1)/fulltext.pdf").trees.empty());
  CHECK(scan_project(dir.path()).trees.empty());
}

TEST_CASE("colliding destinations move nothing") {
  TempDir dir;
  write_file(dir.path() / "x/a.pdf", "1");
  write_file(dir.path() / "y/a.pdf", "2");
  // Oracle: substitute every match and look for repeats.
  const std::regex filter(".*/(.*).pdf");
  std::multiset<std::string> dests;
  for (const auto& f : files_under(dir.path())) {
    std::smatch m;
    const std::string full = (dir.path() / f).generic_string();
    if (std::regex_match(full, m, filter)) dests.insert(m[1].str() + "/fulltext.pdf");
  }
  CHECK(dests.count("a/fulltext.pdf") == 2);

  const auto before = files_under(dir.path());
  CHECK(code_of([&] { make_project(dir.path(), ".*/(.*).pdf", "(\\1)/fulltext.pdf"); }) ==
        Errc::DestinationCollision);
  CHECK(files_under(dir.path()) == before);
}

TEST_CASE("existing destinations are never overwritten") {
  TempDir dir;
  write_file(dir.path() / "a.pdf", "new");
  write_file(dir.path() / "a/fulltext.pdf", "old");
  CHECK(code_of([&] { make_project(dir.path(), ".*/([^/]*).pdf", "(\\1)/fulltext.pdf"); }) ==
        Errc::DestinationCollision);
  CHECK(test::read_file(dir.path() / "a/fulltext.pdf") == "old");
}

TEST_CASE("template groups must exist") {
  TempDir dir;
  write_file(dir.path() / "a.pdf", "x");
  CHECK(code_of([&] { make_project(dir.path(), ".*/(.*).pdf", "(\\2)/fulltext.pdf"); }) ==
        Errc::TemplateGroupOutOfRange);
  CHECK(fs::exists(dir.path() / "a.pdf"));
  CHECK(expand_template("(\\1)/x/\\2", {"a", "b"}) == "a/x/b");
  CHECK(code_of([] { expand_template("\\3", {"a"}); }) == Errc::TemplateGroupOutOfRange);
}

TEST_CASE("clipped figures become numbered figure folders") {
  TempDir dir;
  write_file(dir.path() / "doc1/fulltext.pdf", "%PDF");
  write_file(dir.path() / "doc1/page3_fig2.svg", "<svg/>");
  write_file(dir.path() / "doc1/page5_fig10.svg", "<svg/>");
  const auto p = make_project(dir.path(), ".*/(doc\\d+)/page\\d+_fig(\\d+).svg",
                              "(\\1)/figures/figure(\\2)/figure.svg");
  REQUIRE(p.trees.size() == 1);
  REQUIRE(p.trees[0].figures.size() == 2);
  CHECK(p.trees[0].figures[0].first == 2);
  CHECK(p.trees[0].figures[1].first == 10);
}

TEST_CASE("figure enumeration") {
  TempDir dir;
  write_file(dir.path() / "t1/figures/figure1/figure.svg", "<svg/>");
  write_file(dir.path() / "t1/figures/figure2/figure.svg", "<svg/>");
  write_file(dir.path() / "t1/figures/figure2/figure_2.svg", "<svg/>");
  write_file(dir.path() / "t1/figures/figure2/figure.csv", "x");
  const auto entries = enumerate_figures(scan_project(dir.path()));
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].index == 1);
  CHECK(entries[1].index == 2);
  CHECK(entries[1].svg.filename() == "figure.svg");
  CHECK(entries[2].svg.filename() == "figure_2.svg");

  CHECK(enumerate_figures(scan_project(dir.path()), R"(^.*nothing(\d+)\.svg)").empty());
  CHECK(code_of([&] { enumerate_figures(scan_project(dir.path()), ".*\\.svg"); }) ==
        Errc::BadFilter);
  CHECK(code_of([&] { enumerate_figures(scan_project(dir.path()), "(["); }) == Errc::BadFilter);
}

TEST_CASE("figure indices sort numerically") {
  TempDir dir;
  test::Rng rng(73);
  std::vector<int> indices;
  for (int i = 0; i < 12; ++i) {
    const int n = rng.integer(1, 200);
    if (std::find(indices.begin(), indices.end(), n) != indices.end()) continue;
    indices.push_back(n);
    write_file(dir.path() / "t" / "figures" / ("figure" + std::to_string(n)) / "figure.svg", "");
  }
  write_file(dir.path() / "u/figures/figure10/figure.svg", "");
  write_file(dir.path() / "u/figures/figure2/figure.svg", "");
  const auto entries = enumerate_figures(scan_project(dir.path()));
  std::vector<int> got;
  for (const auto& e : entries)
    if (e.tree_id == "t") got.push_back(e.index);
  std::sort(indices.begin(), indices.end());
  CHECK(got == indices);
  CHECK(entries[entries.size() - 2].index == 2);
  CHECK(entries.back().index == 10);
}
