#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svgscatter/project.hpp"
#include "svgscatter/synth.hpp"

namespace svgscatter {

/// One row of the evaluation table.
struct EvalRecord {
  std::string figure_id;
  bool data_extracted = false;
  int n_extracted = 0;
  int n_truth = 0;
  bool x_axis_correct = false;
  bool y_axis_correct = false;

  bool both_correct() const { return x_axis_correct && y_axis_correct; }
};

struct EvalSummary {
  int figures = 0;
  int data_extracted = 0;
  int x_correct = 0;
  int y_correct = 0;
  int both_correct = 0;

  double fraction_extracted() const { return ratio(data_extracted); }
  double fraction_both_correct() const { return ratio(both_correct); }
  /// Share of figures with data that are correct on both axes.
  double fraction_both_correct_of_extracted() const {
    return data_extracted ? static_cast<double>(both_correct) / data_extracted : 0.0;
  }

 private:
  double ratio(int n) const { return figures ? static_cast<double>(n) / figures : 0.0; }
};

struct Evaluation {
  std::vector<EvalRecord> records;
  EvalSummary summary;
};

/// Extracted points of one figure; an empty list means no data rows.
struct FigureOutcome {
  std::string figure_id;
  std::vector<DataXY> points;
};

/// One-to-one matching of `truth` values to `extracted` values along one
/// axis. Sweeps both sorted lists, giving each truth value the smallest
/// free extracted value within `tolerance`. Returns the extracted index
/// per truth value, or nullopt if some truth value stays unmatched.
std::optional<std::vector<std::size_t>> match_axis(const std::vector<double>& truth,
                                                   const std::vector<double>& extracted,
                                                   double tolerance);

/// Width used to scale the tolerance: the truth span, or the largest
/// magnitude (at least 1) when every truth value is equal.
double axis_range_width(const std::vector<double>& truth);

EvalRecord evaluate_figure(const FigureOutcome& outcome, const std::vector<DataXY>& truth,
                           double tolerance = 0.005);

EvalSummary summarize(const std::vector<EvalRecord>& records);

/// Throws Error(MissingTruth) if an outcome has no truth entry.
Evaluation evaluate(const std::vector<FigureOutcome>& outcomes,
                    const std::map<std::string, std::vector<DataXY>>& truths,
                    double tolerance = 0.005);

/// Reads the `x` and `y` columns of a CSV with a header row.
/// Throws Error(IoFailure) or Error(BadConfig) for malformed content.
std::vector<DataXY> parse_points_csv(std::string_view text);
std::vector<DataXY> read_points_csv(const std::filesystem::path& path);

/// Evaluates extraction outputs under `output_root` against the
/// `truth.csv` stored beside each figure svg. Figure ids are
/// `<tree>/figure<N>`. Throws Error(MissingTruth).
Evaluation evaluate_project(const std::filesystem::path& project_root,
                            const std::filesystem::path& output_root, double tolerance = 0.005,
                            std::string_view figure_filter = kDefaultFigureFilter);

/// CSV table with columns figure_id, data_extracted, n_extracted, n_truth,
/// x_axis_correct, y_axis_correct; flags are written as yes/no.
std::string format_eval_table(const std::vector<EvalRecord>& records);

/// Counts and fractions as JSON.
std::string format_eval_summary(const EvalSummary& summary);

}  // namespace svgscatter
