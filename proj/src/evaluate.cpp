#include "svgscatter/evaluate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "svgscatter/error.hpp"
#include "svgscatter/pipeline.hpp"
#include "svgscatter/project.hpp"

namespace svgscatter {

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

double parse_double(const std::string& field, std::size_t line_no) {
  std::string_view s = field;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v))
    throw Error(Errc::BadConfig,
                "line " + std::to_string(line_no) + ": '" + field + "' is not a number");
  return v;
}

std::vector<double> column(const std::vector<DataXY>& points, int axis) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const DataXY& p : points) out.push_back(p[axis]);
  return out;
}

bool axis_correct(const std::vector<DataXY>& truth, const std::vector<DataXY>& extracted,
                  int axis, double tolerance) {
  const std::vector<double> t = column(truth, axis);
  return match_axis(t, column(extracted, axis), tolerance * axis_range_width(t)).has_value();
}

}  // namespace

std::optional<std::vector<std::size_t>> match_axis(const std::vector<double>& truth,
                                                   const std::vector<double>& extracted,
                                                   double tolerance) {
  std::vector<std::size_t> t(truth.size());
  std::vector<std::size_t> e(extracted.size());
  std::iota(t.begin(), t.end(), 0);
  std::iota(e.begin(), e.end(), 0);
  std::stable_sort(t.begin(), t.end(), [&](auto a, auto b) { return truth[a] < truth[b]; });
  std::stable_sort(e.begin(), e.end(),
                   [&](auto a, auto b) { return extracted[a] < extracted[b]; });

  // Every window has the same width, so taking the leftmost free candidate
  // for each truth value in ascending order never blocks a later one.
  std::vector<std::size_t> assignment(truth.size());
  std::size_t next = 0;
  for (std::size_t ti : t) {
    while (next < e.size() && extracted[e[next]] < truth[ti] - tolerance) ++next;
    if (next == e.size() || extracted[e[next]] > truth[ti] + tolerance) return std::nullopt;
    assignment[ti] = e[next++];
  }
  return assignment;
}

double axis_range_width(const std::vector<double>& truth) {
  if (truth.empty()) return 1.0;
  const auto [lo, hi] = std::minmax_element(truth.begin(), truth.end());
  if (*hi > *lo) return *hi - *lo;
  return std::max(1.0, std::abs(*lo));
}

EvalRecord evaluate_figure(const FigureOutcome& outcome, const std::vector<DataXY>& truth,
                           double tolerance) {
  EvalRecord r;
  r.figure_id = outcome.figure_id;
  r.n_extracted = static_cast<int>(outcome.points.size());
  r.n_truth = static_cast<int>(truth.size());
  r.data_extracted = r.n_extracted > 0;
  if (r.data_extracted) {
    r.x_axis_correct = axis_correct(truth, outcome.points, 0, tolerance);
    r.y_axis_correct = axis_correct(truth, outcome.points, 1, tolerance);
  }
  return r;
}

EvalSummary summarize(const std::vector<EvalRecord>& records) {
  EvalSummary s;
  s.figures = static_cast<int>(records.size());
  for (const EvalRecord& r : records) {
    s.data_extracted += r.data_extracted;
    s.x_correct += r.x_axis_correct;
    s.y_correct += r.y_axis_correct;
    s.both_correct += r.both_correct();
  }
  return s;
}

Evaluation evaluate(const std::vector<FigureOutcome>& outcomes,
                    const std::map<std::string, std::vector<DataXY>>& truths, double tolerance) {
  Evaluation ev;
  for (const FigureOutcome& o : outcomes) {
    const auto it = truths.find(o.figure_id);
    if (it == truths.end())
      throw Error(Errc::MissingTruth, "no truth for figure " + o.figure_id);
    ev.records.push_back(evaluate_figure(o, it->second, tolerance));
  }
  ev.summary = summarize(ev.records);
  return ev;
}

std::vector<DataXY> parse_points_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::BadConfig, "csv has no header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv_line(line);
  const auto xi = std::find(header.begin(), header.end(), "x");
  const auto yi = std::find(header.begin(), header.end(), "y");
  if (xi == header.end() || yi == header.end())
    throw Error(Errc::BadConfig, "csv header lacks x and y columns");
  const auto xc = static_cast<std::size_t>(xi - header.begin());
  const auto yc = static_cast<std::size_t>(yi - header.begin());

  std::vector<DataXY> points;
  for (std::size_t line_no = 2; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw Error(Errc::BadConfig, "line " + std::to_string(line_no) + " has " +
                                       std::to_string(fields.size()) + " fields");
    points.emplace_back(parse_double(fields[xc], line_no), parse_double(fields[yc], line_no));
  }
  return points;
}

std::vector<DataXY> read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_points_csv(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

Evaluation evaluate_project(const std::filesystem::path& project_root,
                            const std::filesystem::path& output_root, double tolerance,
                            std::string_view figure_filter) {
  const CorpusProject project = scan_project(project_root);
  std::vector<FigureOutcome> outcomes;
  std::map<std::string, std::vector<DataXY>> truths;
  for (const FigureEntry& entry : enumerate_figures(project, figure_filter)) {
    const fs::path rel = entry.svg.lexically_relative(project.root);
    std::string id = entry.tree_id + "/figure" + std::to_string(entry.index);
    if (const std::string stem = entry.svg.stem().string(); stem != "figure")
      id += "/" + stem;

    const fs::path truth = entry.svg.parent_path() / "truth.csv";
    if (!fs::is_regular_file(truth))
      throw Error(Errc::MissingTruth, "no truth.csv beside " + rel.generic_string());
    truths[id] = read_points_csv(truth);

    FigureOutcome outcome{id, {}};
    const fs::path csv = output_root / rel.parent_path() / output_names(entry.svg).csv;
    if (fs::is_regular_file(csv)) outcome.points = read_points_csv(csv);
    outcomes.push_back(std::move(outcome));
  }
  return evaluate(outcomes, truths, tolerance);
}

std::string format_eval_table(const std::vector<EvalRecord>& records) {
  auto yes_no = [](bool b) { return b ? "yes" : "no"; };
  std::string out = "figure_id,data_extracted,n_extracted,n_truth,x_axis_correct,y_axis_correct\n";
  for (const EvalRecord& r : records) {
    out += r.figure_id;
    out += ',';
    out += yes_no(r.data_extracted);
    out += ',' + std::to_string(r.n_extracted) + ',' + std::to_string(r.n_truth) + ',';
    out += yes_no(r.x_axis_correct);
    out += ',';
    out += yes_no(r.y_axis_correct);
    out += '\n';
  }
  return out;
}

std::string format_eval_summary(const EvalSummary& s) {
  nlohmann::ordered_json j;
  j["figures"] = s.figures;
  j["data_extracted"] = s.data_extracted;
  j["x_axis_correct"] = s.x_correct;
  j["y_axis_correct"] = s.y_correct;
  j["both_axes_correct"] = s.both_correct;
  j["fraction_data_extracted"] = s.fraction_extracted();
  j["fraction_both_axes_correct"] = s.fraction_both_correct();
  j["fraction_both_axes_correct_of_extracted"] = s.fraction_both_correct_of_extracted();
  return j.dump(2) + "\n";
}

}  // namespace svgscatter
