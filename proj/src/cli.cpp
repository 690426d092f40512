#include "svgscatter/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "svgscatter/config.hpp"
#include "svgscatter/error.hpp"
#include "svgscatter/evaluate.hpp"
#include "svgscatter/pipeline.hpp"
#include "svgscatter/project.hpp"
#include "svgscatter/synth.hpp"

namespace svgscatter::cli {

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  f.close();
  if (!f) throw Error(Errc::IoFailure, "cannot write " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoFailure, "cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Options {
  std::string project;
  std::string file_filter;
  std::string make_project;
  std::string output_dir;
  std::string config;
  int jobs = 1;
  double tolerance = 0.005;
  std::string spec;
  std::uint64_t seed = 1;
  int count = 1;
  std::string style = "standard";
};

int do_make_project(const Options& o, std::ostream& out) {
  const CorpusProject project = make_project(o.project, o.file_filter, o.make_project);
  for (const CTree& tree : project.trees)
    out << tree.id << ": " << tree.figures.size() << " figures"
        << (tree.fulltext ? ", fulltext.pdf" : "") << "\n";
  return 0;
}

int do_extract(const Options& o, std::ostream& out) {
  const PipelineConfig config = o.config.empty() ? PipelineConfig{} : load_config(o.config);
  const CorpusProject project = scan_project(o.project);
  const fs::path output = o.output_dir.empty() ? fs::path(o.project) : fs::path(o.output_dir);
  const std::vector<ExtractionReport> reports =
      run_project(project, o.file_filter, config, output, o.jobs);
  bool all_ok = true;
  for (const ExtractionReport& r : reports) {
    out << r.tree_id << "/figure" << r.figure_index;
    if (const std::string stem = fs::path(r.source).stem().string(); stem != "figure")
      out << "/" << stem;
    out << ": " << to_string(r.status) << " (" << r.n_points << " points)\n";
    all_ok = all_ok && r.status == Status::Ok;
  }
  return all_ok ? 0 : 2;
}

int do_generate(const Options& o, std::ostream& out) {
  const auto style = parse_axis_style(o.style);
  if (!style) throw Error(Errc::BadConfig, "unknown style '" + o.style + "'");
  const std::optional<SyntheticSpec> base =
      o.spec.empty() ? std::nullopt : std::optional(parse_synthetic_spec(read_text(o.spec)));
  for (int i = 0; i < o.count; ++i) {
    const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
    SyntheticSpec spec = base ? *base : random_spec(seed, *style);
    spec.seed = seed;
    const SyntheticFigure fig = generate_scatter_svg(spec);
    const fs::path dir =
        fs::path(o.output_dir) / ("synth-" + std::to_string(seed)) / "figures" / "figure1";
    write_text(dir / "figure.svg", fig.svg);
    write_text(dir / "truth.csv", format_truth_csv(fig.truth));
    out << (dir / "figure.svg").generic_string() << ": " << to_string(spec.axis_style) << " ("
        << fig.truth.size() << " points)\n";
  }
  return 0;
}

int do_evaluate(const Options& o, std::ostream& out) {
  const fs::path output = o.output_dir.empty() ? fs::path(o.project) : fs::path(o.output_dir);
  const Evaluation ev = evaluate_project(o.project, output, o.tolerance, o.file_filter);
  const std::string table = format_eval_table(ev.records);
  const std::string summary = format_eval_summary(ev.summary);
  write_text(output / "evaluation.csv", table);
  write_text(output / "evaluation_summary.json", summary);
  out << table << summary;
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extract data points from vector scatter plots", "svgscatter"};
  app.require_subcommand(1);
  Options o;

  auto* mk = app.add_subcommand("make-project", "Move loose files into a corpus project");
  mk->add_option("--project", o.project, "Project root")->required();
  mk->add_option("--fileFilter", o.file_filter, "Regex over file paths, with capture groups")
      ->required();
  mk->add_option("--makeProject", o.make_project, "Destination template using (\\N) groups")
      ->required();

  auto* ex = app.add_subcommand("extract", "Extract points from every figure in a project");
  o.file_filter = std::string(kDefaultFigureFilter);
  ex->add_option("--project", o.project, "Project root")->required();
  ex->add_option("--fileFilter", o.file_filter, "Figure regex; group 1 is the figure index")
      ->capture_default_str();
  ex->add_option("--outputDir", o.output_dir, "Output root (defaults to the project)");
  ex->add_option("--config", o.config, "key = value pipeline configuration");
  ex->add_option("--jobs", o.jobs, "Parallel figure workers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* gen = app.add_subcommand("generate", "Write synthetic figures with ground truth");
  gen->add_option("--outputDir", o.output_dir, "Project root to write into")->required();
  gen->add_option("--spec", o.spec, "key = value synthetic spec (seed is overridden)");
  gen->add_option("--seed", o.seed, "First seed")->capture_default_str();
  gen->add_option("--count", o.count, "Number of figures")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--style", o.style,
                  "standard, reversed_x, reversed_y, log_x or raster_body (without --spec)")
      ->capture_default_str();

  auto* eva = app.add_subcommand("evaluate", "Compare extracted CSVs with truth.csv files");
  eva->add_option("--project", o.project, "Project root holding truth.csv files")->required();
  eva->add_option("--outputDir", o.output_dir, "Extraction output root (defaults to project)");
  eva->add_option("--fileFilter", o.file_filter, "Figure regex")->capture_default_str();
  eva->add_option("--tolerance", o.tolerance, "Fraction of each axis span")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* pdf = app.add_subcommand("pdf2svg", "Not provided");
  pdf->allow_extras();
  pdf->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (*pdf) {
      err << "error: pdf2svg is delegated to external converter; convert PDFs to SVG first\n";
      return 1;
    }
    if (*mk) return do_make_project(o, out);
    if (*ex) return do_extract(o, out);
    if (*gen) return do_generate(o, out);
    if (*eva) return do_evaluate(o, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace svgscatter::cli
