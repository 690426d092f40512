#include "svgscatter/pipeline.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "format.hpp"
#include "svgscatter/error.hpp"

namespace svgscatter {

std::string_view to_string(Status status) noexcept {
  switch (status) {
    case Status::Ok: return "ok";
    case Status::NoAxes: return "no_axes";
    case Status::NonlinearScale: return "nonlinear_scale";
    case Status::TooFewTicks: return "too_few_ticks";
    case Status::RasterBody: return "raster_body";
    case Status::NoDataGlyphs: return "no_data_glyphs";
    case Status::ParseError: return "parse_error";
  }
  return "parse_error";
}

namespace {

Status status_for(Errc code) {
  switch (code) {
    case Errc::NoAxesFound: return Status::NoAxes;
    case Errc::NonlinearScale: return Status::NonlinearScale;
    case Errc::InsufficientMatches:
    case Errc::TooFewTicks:
    case Errc::CollocatedTicks: return Status::TooFewTicks;
    case Errc::NoDataGlyphs: return Status::NoDataGlyphs;
    default: return Status::ParseError;
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(Errc::IoFailure, "cannot read " + path.string());
  return ss.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error(Errc::IoFailure, "cannot write " + path.string());
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json calibration_json(const std::optional<AxisCalibration>& cal) {
  if (!cal) return nullptr;
  nlohmann::ordered_json j;
  j["slope"] = cal->slope;
  j["intercept"] = cal->intercept;
  j["rms_residual"] = cal->rms_residual;
  j["n_ticks"] = cal->n_ticks;
  j["value_span"] = cal->value_span;
  j["reversed"] = cal->reversed;
  return j;
}

}  // namespace

FigureResult extract_figure_svg(std::string_view svg, const PipelineConfig& config) {
  FigureResult result;
  ExtractionReport& report = result.report;
  Overlay overlay;

  auto fail = [&](Status status, std::string message) {
    report.status = status;
    report.message = std::move(message);
    report.n_points = 0;
    result.points.clear();
    result.annotated_svg = annotate_svg(svg, overlay, config);
    return result;
  };

  FigureDocument doc;
  try {
    doc = parse_svg(svg, config.svg);
  } catch (const Error& e) {
    report.status = Status::ParseError;
    report.message = e.what();
    result.annotated_svg = std::string(svg);
    return result;
  }
  report.warnings = doc.warnings;

  try {
    const PlotBox box = detect_plot_box(doc, config.axis);
    overlay.box = box;
    const std::vector<TickMark> ticks = detect_ticks(doc, box, config.axis);
    overlay.ticks = ticks;

    std::vector<TickLabel> labels;
    for (const TextRun& run : compose_text_runs(doc.texts, config.svg))
      if (auto label = parse_numeric_label(run)) labels.push_back(std::move(*label));

    std::vector<TickMark> xticks;
    std::vector<TickMark> yticks;
    for (const TickMark& t : ticks) (t.side == AxisSide::X ? xticks : yticks).push_back(t);

    auto calibrate = [&](const std::vector<TickMark>& side_ticks, AxisSide side) {
      if (side_ticks.size() < 2)
        throw Error(Errc::TooFewTicks, "fewer than two tick marks on the " +
                                           std::string(to_string(side)));
      const auto pairs = match_ticks_to_labels(side_ticks, labels, box, config.axis);
      for (const auto& p : pairs) overlay.labels.push_back(p.second);
      return calibrate_axis(pairs, side, config.axis);
    };
    report.x_calibration = calibrate(xticks, AxisSide::X);
    report.x_reversed = report.x_calibration->reversed;
    report.y_calibration = calibrate(yticks, AxisSide::Y);
    report.y_reversed = report.y_calibration->reversed;

    if (detect_raster_body(doc, box, config.extraction))
      return fail(Status::RasterBody, "plot body is an embedded raster image");

    const RadiusCluster cluster = select_data_glyphs(doc, box, config.extraction);
    overlay.glyphs = cluster.members;
    result.points = map_to_data(cluster, *report.x_calibration, *report.y_calibration);
  } catch (const Error& e) {
    return fail(status_for(e.code()), e.what());
  }

  report.status = Status::Ok;
  report.n_points = static_cast<int>(result.points.size());
  result.annotated_svg = annotate_svg(svg, overlay, config);
  return result;
}

FigureResult extract_figure(const fs::path& svg, const PipelineConfig& config) {
  return extract_figure_svg(read_file(svg), config);
}

std::string format_number(double v) { return detail::significant(v, 9); }

std::string format_csv(const std::vector<DataPoint>& points,
                       const std::vector<std::string>& columns) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const DataPoint& p : points) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      const std::string& c = columns[i];
      if (c == "x") out += format_number(p.x);
      else if (c == "y") out += format_number(p.y);
      else if (c == "device_radius") out += format_number(p.device_radius);
      else if (c == "source_id") out += csv_field(p.source_id);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::vector<DataPoint>& points, const fs::path& destination,
               const std::vector<std::string>& columns) {
  write_file(destination, format_csv(points, columns));
}

std::string report_json(const ExtractionReport& report) {
  nlohmann::ordered_json j;
  j["tree_id"] = report.tree_id;
  j["figure_index"] = report.figure_index;
  j["source"] = report.source;
  j["status"] = std::string(to_string(report.status));
  j["n_points"] = report.n_points;
  j["x_reversed"] = report.x_reversed;
  j["y_reversed"] = report.y_reversed;
  j["x_residual"] = report.x_residual();
  j["y_residual"] = report.y_residual();
  j["x_calibration"] = calibration_json(report.x_calibration);
  j["y_calibration"] = calibration_json(report.y_calibration);
  j["message"] = report.message;
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

OutputNames output_names(const fs::path& svg) {
  const std::string stem = svg.stem().string();
  OutputNames names{stem + ".csv", stem + "_annotated.svg", "report.json"};
  if (stem != "figure")
    names.report = stem.starts_with("figure") ? "report" + stem.substr(6) + ".json"
                                              : stem + "_report.json";
  return names;
}

std::vector<ExtractionReport> run_project(const CorpusProject& project,
                                          std::string_view figure_filter,
                                          const PipelineConfig& config,
                                          const fs::path& output_root, int jobs) {
  const std::vector<FigureEntry> entries = enumerate_figures(project, figure_filter);
  std::vector<ExtractionReport> reports(entries.size());

  auto process = [&](std::size_t i) {
    const FigureEntry& entry = entries[i];
    const fs::path rel = entry.svg.lexically_relative(project.root);
    FigureResult result;
    try {
      result = extract_figure(entry.svg, config);
    } catch (const Error& e) {
      result.report.status = Status::ParseError;
      result.report.message = e.what();
    }
    ExtractionReport& report = result.report;
    report.tree_id = entry.tree_id;
    report.figure_index = entry.index;
    report.source = rel.generic_string();

    const fs::path dir = output_root / rel.parent_path();
    const OutputNames names = output_names(entry.svg);
    try {
      write_file(dir / names.csv, format_csv(result.points, config.columns));
      if (!result.annotated_svg.empty()) write_file(dir / names.annotated, result.annotated_svg);
      write_file(dir / names.report, report_json(report));
    } catch (const Error& e) {
      report.warnings.push_back(e.what());
    }
    reports[i] = std::move(report);
  };

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), entries.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < entries.size(); ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) process(i);
      });
  }

  nlohmann::ordered_json summary;
  std::map<std::string, int> counts;
  for (Status s : {Status::Ok, Status::NoAxes, Status::NonlinearScale, Status::TooFewTicks,
                   Status::RasterBody, Status::NoDataGlyphs, Status::ParseError})
    counts[std::string(to_string(s))] = 0;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const ExtractionReport& r : reports) {
    ++counts[std::string(to_string(r.status))];
    nlohmann::ordered_json item;
    item["tree_id"] = r.tree_id;
    item["figure_index"] = r.figure_index;
    item["source"] = r.source;
    item["status"] = std::string(to_string(r.status));
    item["n_points"] = r.n_points;
    list.push_back(std::move(item));
  }
  summary["figures"] = reports.size();
  summary["status_counts"] = counts;
  summary["reports"] = std::move(list);
  write_file(output_root / "summary.json", summary.dump(2) + "\n");
  return reports;
}

}  // namespace svgscatter
