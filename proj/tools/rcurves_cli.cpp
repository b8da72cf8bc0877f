// rcurves: sample -> radii -> curve -> verify / plot pipeline.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rcurves/rcurves.hpp"

namespace {

using namespace rcurves;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;

struct SampleArgs {
  std::string dist;
  std::string mode = "finite";
  std::string side = "outside";
  std::size_t d = 0;
  double eta = 0.0;
  double p = 0.95;
  double delta = 1.0;
  double t_min = -1.0;
  double t_max = 1.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct RadiiArgs {
  std::string in;
  std::string classifier;
  std::string out;
};

struct CurveArgs {
  std::string in;
  std::string kind = "robustness";
  std::string norm = "all";
  std::string out;
};

struct VerifyArgs {
  std::string in;
  std::string classifier;
  std::string data;
  bool brute_force = false;
  int grid = 4096;
  double eps_max = 0.0;
  std::size_t eps_points = 512;
  std::size_t d = 0;
  std::size_t n = 0;
};

struct PlotArgs {
  std::vector<std::string> in;
  std::vector<std::string> labels;
  std::string out;
  double eps_max = 0.0;
  std::string title;
};

struct ClassifierArgs {
  std::string preset;
  std::size_t d = 0;
  std::string out;
};

bool given(const CLI::App* app, const std::string& name) { return app->count(name) > 0; }

void require(bool cond, const std::string& message) {
  if (!cond) throw InvalidInput(message);
}

void require_distinct_paths(const std::vector<std::string>& inputs, const std::vector<std::string>& outputs) {
  std::set<std::string> seen;
  for (const auto* group : {&inputs, &outputs}) {
    for (const auto& p : *group) {
      if (p.empty()) continue;
      const auto key = fs::weakly_canonical(p).string();
      require(seen.insert(key).second, "file path '" + p + "' is used twice in one run");
    }
  }
}

/// Applies a JSON config document to a parsed subcommand: keys are long option
/// names without dashes; options already given on the command line win.
void apply_config(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config JSON: ") + e.what(), 0);
  }
  if (!doc.is_object()) throw ParseError("config JSON must be an object", 0);
  auto to_text = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [key, value] : doc.items()) {
    if (key == "config") continue;
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) throw InvalidInput("config key '" + key + "' is not an option of '" + sub->get_name() + "'");
    if (opt->count() > 0) continue;
    if (value.is_array()) {
      for (const auto& v : value) opt->add_result(to_text(v));
    } else {
      opt->add_result(to_text(value));
    }
    opt->run_callback();
  }
}

std::string curve_output_path(const std::string& out, Norm tag, bool fan_out) {
  if (!fan_out) return out;
  std::string stem = out;
  if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv") stem.resize(stem.size() - 4);
  return stem + "_" + std::string(to_string(tag)) + ".csv";
}

std::string infer_label(const std::string& path) {
  const std::string stem = fs::path(path).stem().string();
  for (const char* suffix : {"_linf", "_l1", "_l2"}) {
    const std::string s(suffix);
    if (stem.size() >= s.size() && stem.compare(stem.size() - s.size(), s.size(), s) == 0) return s.substr(1);
  }
  return stem;
}

// ---------------------------------------------------------------------------

int run_sample(const CLI::App* sub, SampleArgs a) {
  require(!a.dist.empty(), "sample: --dist is required");
  require(given(sub, "--seed"), "sample: --seed is required");
  require(!a.out.empty(), "sample: --out is required");

  LabeledDataset ds;
  if (a.dist == "p1") {
    P1Params params;
    if (given(sub, "--d")) params.d = a.d;
    params.eta = given(sub, "--eta") ? a.eta : 2.0 / std::sqrt(static_cast<double>(params.d));
    if (given(sub, "--p")) params.p = a.p;
    ds = sample_p1(params, given(sub, "--n") ? a.n : 100000, a.seed);
  } else if (a.dist == "p2") {
    P2Params params;
    if (given(sub, "--d")) params.d = a.d;
    ds = sample_p2(params, given(sub, "--n") ? a.n : 100000, a.seed);
  } else if (a.dist == "parabola") {
    ParabolaDatasetParams params;
    params.mode = parabola_mode_from_string(a.mode);
    params.side = shell_side_from_string(a.side);
    params.delta = a.delta;
    params.t_min = a.t_min;
    params.t_max = a.t_max;
    params.count = given(sub, "--n") ? a.n : (params.mode == ParabolaMode::FiniteL2Shell ? 9 : 1000);
    if (given(sub, "--d")) require(a.d == 2, "sample: parabola datasets are 2-D");
    ds = make_parabola_dataset(params, a.seed);
  } else {
    throw InvalidInput("sample: unknown --dist '" + a.dist + "' (expected p1, p2 or parabola)");
  }

  const std::string text = dataset_to_csv(ds);
  csv::write_text(a.out, text);
  std::cout << "fingerprint " << fnv1a_hex(text) << "\n"
            << "seed " << a.seed << "\n"
            << "rows " << ds.size() << "\n"
            << "dimension " << ds.dimension() << "\n";
  return kExitOk;
}

int run_radii(RadiiArgs a) {
  require(!a.in.empty() && !a.classifier.empty() && !a.out.empty(), "radii: --in, --classifier and --out are required");
  require_distinct_paths({a.in, a.classifier}, {a.out});
  const Classifier f = load_classifier(a.classifier);
  const LabeledDataset ds = load_dataset_csv(a.in);
  require_same_dimension(dimension(f), ds.dimension());
  const RadiusTable table = build_radius_table(ds, f);
  save_radius_table_csv(table, a.out);
  std::cout << "rows " << table.records.size() << "\n"
            << "dataset " << table.dataset_fingerprint << "\n"
            << "standard_loss " << csv::format_double(standard_loss(table)) << "\n";
  return kExitOk;
}

int run_curve(CurveArgs a) {
  require(!a.in.empty() && !a.out.empty(), "curve: --in and --out are required");
  const CurveKind kind = curve_kind_from_string(a.kind);
  std::vector<Norm> norms;
  if (a.norm == "all") {
    norms.assign(kAllNorms.begin(), kAllNorms.end());
  } else {
    norms.push_back(norm_from_string(a.norm));
  }
  const bool fan_out = a.norm == "all";
  std::vector<std::string> outputs;
  for (Norm n : norms) outputs.push_back(curve_output_path(a.out, n, fan_out));
  require_distinct_paths({a.in}, outputs);

  const RadiusTable table = load_radius_table_csv(a.in);
  std::vector<std::string> texts;
  for (Norm n : norms) texts.push_back(curve_to_csv(make_curve(table, n, kind)));
  for (std::size_t i = 0; i < norms.size(); ++i) {
    csv::write_text(outputs[i], texts[i]);
    std::cout << to_string(norms[i]) << " " << outputs[i] << "\n";
  }
  return kExitOk;
}

int run_verify(VerifyArgs a) {
  require(!a.in.empty(), "verify: --in is required");
  const RadiusTable table = load_radius_table_csv(a.in);
  std::optional<Classifier> f;
  if (!a.classifier.empty()) f = load_classifier(a.classifier);
  std::optional<LabeledDataset> ds;
  if (!a.data.empty()) ds = load_dataset_csv(a.data);

  std::size_t d = a.d;
  if (d == 0 && f) d = dimension(*f);
  if (d == 0 && ds) d = ds->dimension();
  require(d > 0, "verify: dimension unknown; pass --d, --classifier or --data");
  if (f) require_same_dimension(dimension(*f), d);
  if (ds) {
    require_same_dimension(ds->dimension(), d);
    require(ds->size() == table.records.size(), "verify: dataset and radius table have different row counts");
  }
  require(!a.brute_force || (f && ds), "verify: --brute-force needs --classifier and --data");
  require(!a.brute_force || d == 2, "verify: --brute-force is only available for 2-D classifiers");
  require(a.grid >= 64, "verify: --grid must be at least 64");

  const double largest = max_radius(table);
  const double eps_max = a.eps_max > 0.0 ? a.eps_max : (largest > 0.0 ? 1.25 * largest : 1.0);

  VerificationReport report;
  report.checks.push_back(check_record_ordering(table, d));
  report.append(verify_norm_ordering(table, d, make_eps_grid(0.0, eps_max, a.eps_points)));

  if (f) {
    if (const auto* lin = std::get_if<LinearClassifier>(&*f)) report.append(verify_linear_scaling(table, *lin));
  }

  if (f && ds) {
    const RadiusTable fresh = build_radius_table(*ds, *f);
    double radius_dev = 0.0;
    double other_dev = 0.0;
    for (std::size_t i = 0; i < fresh.records.size(); ++i) {
      const auto& x = fresh.records[i];
      const auto& y = table.records[i];
      for (Norm n : kAllNorms) radius_dev = std::max(radius_dev, std::abs(x.radius(n) - y.radius(n)));
      other_dev = std::max({other_dev, std::abs(x.weight - y.weight), x.misclassified != y.misclassified ? 1.0 : 0.0,
                            x.sample_index != y.sample_index ? 1.0 : 0.0});
    }
    report.add("table: radii match exact solver", radius_dev, 1e-9);
    report.add("table: labels, weights, indices match", other_dev, 1e-15);
  }

  if (a.brute_force) {
    const BlackBoxClassifier box = as_black_box(*f);
    const std::size_t count = a.n > 0 ? std::min(a.n, ds->size()) : ds->size();
    const double bf_eps_max = a.eps_max > 0.0 ? a.eps_max : 2.0 * largest + 1.0;
    std::vector<double> dev(count, 0.0);
    parallel_for(count, default_workers(), [&](std::size_t i) {
      for (Norm n : kAllNorms) {
        const auto r = brute_force_radius(box, ds->point(i), n, bf_eps_max, a.grid);
        const double ref = table.records[i].radius(n);
        dev[i] = std::max(dev[i], r ? std::abs(*r - ref) : INFINITY);
      }
    });
    double worst = 0.0;
    for (double v : dev) worst = std::max(worst, v);
    report.add("brute force vs table (" + std::to_string(count) + " samples)", worst, 5e-3);
  }

  std::cout << report.to_text();
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

int run_plot(PlotArgs a) {
  require(!a.in.empty() && !a.out.empty(), "plot: --in and --out are required");
  require(a.labels.empty() || a.labels.size() == a.in.size(), "plot: give one --label per --in or none");
  require_distinct_paths(a.in, {a.out});
  std::vector<PlotSeries> series;
  for (std::size_t i = 0; i < a.in.size(); ++i) {
    series.push_back({a.labels.empty() ? infer_label(a.in[i]) : a.labels[i], load_curve_csv(a.in[i])});
  }
  PlotOptions opt;
  opt.eps_max = a.eps_max;
  opt.title = a.title;
  csv::write_text(a.out, render_svg(series, opt));
  std::cout << "wrote " << a.out << "\n";
  return kExitOk;
}

int run_classifier(const CLI::App* sub, ClassifierArgs a) {
  require(!a.preset.empty() && !a.out.empty(), "classifier: --preset and --out are required");
  Classifier f = ParabolaClassifier{};
  if (a.preset == "parabola") {
    if (given(sub, "--d")) require(a.d == 2, "classifier: the parabola is 2-D");
  } else {
    require(a.d >= 1, "classifier: --d is required for linear presets");
    if (a.preset == "f_avg") {
      std::vector<double> w(a.d + 1, 1.0 / static_cast<double>(a.d));
      w[0] = 0.0;
      f = LinearClassifier(std::move(w));
    } else if (a.preset == "f_rob") {
      std::vector<double> w(a.d + 1, 0.0);
      w[0] = 1.0;
      f = LinearClassifier(std::move(w));
    } else if (a.preset == "f_s") {
      f = LinearClassifier(std::vector<double>(a.d, 1.0));
    } else {
      throw InvalidInput("classifier: unknown --preset '" + a.preset + "' (expected f_avg, f_rob, f_s or parabola)");
    }
  }
  csv::write_text(a.out, to_json(f).dump() + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robustness and margin curves under l1 / l2 / linf"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rcurves 1.0.0");
  std::string config;

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Draw a dataset (P1, P2 or a parabola construction) to CSV");
  sample->add_option("--dist", sa.dist, "p1, p2 or parabola");
  sample->add_option("--mode", sa.mode, "parabola construction: finite, continuous or apex");
  sample->add_option("--side", sa.side, "parabola offset side: outside, inside or both");
  sample->add_option("--d", sa.d, "P1 noise dimension (total d+1) / P2 dimension");
  sample->add_option("--eta", sa.eta, "P1 Gaussian mean scale (default 2/sqrt(d))");
  sample->add_option("--p", sa.p, "P1 probability that x1 = y");
  sample->add_option("--delta", sa.delta, "parabola offset distance");
  sample->add_option("--t-min", sa.t_min, "parabola parameter range start");
  sample->add_option("--t-max", sa.t_max, "parabola parameter range end");
  sample->add_option("--n", sa.n, "number of samples / points");
  sample->add_option("--seed", sa.seed, "random seed");
  sample->add_option("--out", sa.out, "output dataset CSV");
  sample->add_option("--config", config, "JSON config (flags win on conflict)");

  RadiiArgs ra;
  auto* radii = app.add_subcommand("radii", "Compute per-sample boundary distances");
  radii->add_option("--in", ra.in, "dataset CSV");
  radii->add_option("--classifier", ra.classifier, "classifier JSON");
  radii->add_option("--out", ra.out, "output radius CSV");
  radii->add_option("--config", config, "JSON config (flags win on conflict)");

  CurveArgs ca;
  auto* curve = app.add_subcommand("curve", "Build robustness or margin curves from a radius table");
  curve->add_option("--in", ca.in, "radius CSV");
  curve->add_option("--kind", ca.kind, "robustness or margin");
  curve->add_option("--norm", ca.norm, "l1, l2, linf or all (all: writes <out>_<norm>.csv)");
  curve->add_option("--out", ca.out, "output curve CSV");
  curve->add_option("--config", config, "JSON config (flags win on conflict)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check scaling, ordering and brute-force agreement");
  verify->add_option("--in", va.in, "radius CSV");
  verify->add_option("--classifier", va.classifier, "classifier JSON");
  verify->add_option("--data", va.data, "dataset CSV the table was built from");
  verify->add_flag("--brute-force", va.brute_force, "cross-check radii with the black-box search");
  verify->add_option("--grid", va.grid, "brute-force samples per sphere");
  verify->add_option("--eps-max", va.eps_max, "upper end of the epsilon grid / search range");
  verify->add_option("--eps-points", va.eps_points, "epsilon grid size for the ordering check");
  verify->add_option("--d", va.d, "input dimension");
  verify->add_option("--n", va.n, "brute-force only the first n samples");
  verify->add_option("--config", config, "JSON config (flags win on conflict)");

  PlotArgs pa;
  auto* plot = app.add_subcommand("plot", "Render curve CSVs as an SVG step plot");
  plot->add_option("--in", pa.in, "curve CSV (repeatable)");
  plot->add_option("--label", pa.labels, "legend label per --in (default: inferred from file name)");
  plot->add_option("--out", pa.out, "output SVG");
  plot->add_option("--eps-max", pa.eps_max, "epsilon axis limit");
  plot->add_option("--title", pa.title, "plot title");
  plot->add_option("--config", config, "JSON config (flags win on conflict)");

  ClassifierArgs ka;
  auto* classifier = app.add_subcommand("classifier", "Write a preset classifier JSON");
  classifier->add_option("--preset", ka.preset, "f_avg, f_rob (P1, dimension d+1), f_s (P2) or parabola");
  classifier->add_option("--d", ka.d, "dimension parameter");
  classifier->add_option("--out", ka.out, "output JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!config.empty()) apply_config(sub, config);
    if (sub == sample) return run_sample(sample, sa);
    if (sub == radii) return run_radii(ra);
    if (sub == curve) return run_curve(ca);
    if (sub == verify) return run_verify(va);
    if (sub == plot) return run_plot(pa);
    return run_classifier(classifier, ka);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitInvalid;
}
