#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wscale/classify.hpp"
#include "wscale/csv.hpp"
#include "wscale/cv.hpp"
#include "wscale/de.hpp"
#include "wscale/digest.hpp"
#include "wscale/errors.hpp"
#include "wscale/manifest.hpp"
#include "wscale/matrix.hpp"
#include "wscale/scaling.hpp"
#include "wscale/svg.hpp"
#include "wscale/synth.hpp"
#include "wscale/version.hpp"

namespace fs = std::filesystem;

namespace {

using namespace wscale;

std::string fmt(double v) { return format_value(v); }
const char* bool_str(bool b) { return b ? "true" : "false"; }

// "out/scaled.csv" + ".flags.csv" -> "out/scaled.flags.csv"
std::string sibling_path(const std::string& primary, const std::string& suffix) {
  const fs::path p(primary);
  return (p.parent_path() / p.stem()).string() + suffix;
}

// Percent tag for per-rate file names: 0.01 -> "1", 0.015 -> "1.5".
std::string pct_tag(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", rate * 100.0);
  return buf;
}

double parse_auto_or_positive(const std::string& text, const char* flag) {
  if (text == "auto") return 0.0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !(v > 0.0))
    throw schema_error(std::string(flag) + " must be 'auto' or a positive real, got '" +
                       text + "'");
  return v;
}

RunManifest base_manifest(const char* command) {
  RunManifest m;
  m.tool = kToolName;
  m.version = kVersion;
  m.command = command;
  return m;
}

void add_input(RunManifest& m, const std::string& path) {
  m.inputs.emplace_back(path, sha256_file(path));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw io_error("failed writing '" + path + "'");
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

// ---------------------------------------------------------------- scale ----

struct ScaleArgs {
  std::string method;
  std::string input;
  std::string labels;
  std::string output = "scaled.csv";
  double mad_constant = 0.6754;
  double alpha = 0.05;
  bool transpose_input = false;
};

void run_scale(const ScaleArgs& a) {
  const ScaleMethod tag = parse_scale_method(a.method);
  MetaboliteMatrix m = read_matrix_csv(a.input);
  if (a.transpose_input) {
    m.values = transpose(m.values);
    std::swap(m.metabolite_ids, m.sample_ids);
    m.validate();
  }
  if (!a.labels.empty()) (void)align_labels(m, read_labels_csv(a.labels));

  const ScalingMethod method{tag, RobustParams::make(a.alpha, a.mad_constant)};
  const ScaledMatrix scaled = scale(m, method);
  const std::string flags_path = sibling_path(a.output, ".flags.csv");
  write_scaled_csv(a.output, scaled);
  write_flags_csv(flags_path, scaled);
  if (!scaled.flags.empty())
    std::cerr << "warning: " << scaled.flags.size() << " degenerate row(s) emitted as zeros; see "
              << flags_path << "\n";

  RunManifest man = base_manifest("scale");
  man.args.emplace_back("--method", a.method);
  man.args.emplace_back("--input", a.input);
  if (!a.labels.empty()) man.args.emplace_back("--labels", a.labels);
  man.args.emplace_back("--output", a.output);
  man.args.emplace_back("--mad-constant", fmt(a.mad_constant));
  man.args.emplace_back("--z-alpha", fmt(a.alpha));
  man.args.emplace_back("--transpose-input", bool_str(a.transpose_input));
  add_input(man, a.input);
  if (!a.labels.empty()) add_input(man, a.labels);
  man.outputs = {a.output, flags_path};
  write_manifest(man, manifest_path_for(a.output));
}

void setup_scale(CLI::App& app) {
  auto a = std::make_shared<ScaleArgs>();
  CLI::App* c = app.add_subcommand("scale", "Apply a per-metabolite scaling to a matrix CSV");
  c->add_option("--method", a->method, "one of: auto range pareto vast level weighted")
      ->required();
  c->add_option("--input", a->input, "matrix CSV, metabolites in rows")->required();
  c->add_option("--labels", a->labels, "labels CSV, verified against the sample ids");
  c->add_option("--output", a->output, "scaled matrix CSV")->capture_default_str();
  c->add_option("--mad-constant", a->mad_constant, "MAD consistency constant")
      ->capture_default_str();
  c->add_option("--z-alpha", a->alpha, "alpha level behind the z_alpha weight cutoff")
      ->capture_default_str();
  c->add_flag("--transpose-input", a->transpose_input,
              "input holds samples in rows; transpose before scaling");
  c->callback([a] { run_scale(*a); });
}

// ------------------------------------------------------------- simulate ----

struct SimulateArgs {
  std::size_t n_case = 106;
  std::size_t n_control = 91;
  std::size_t metabolites = 236;
  std::size_t de = 118;
  double nb_r_control = 10.0;
  double nb_p_control = 0.5;
  double nb_r_case = 30.0;
  double nb_p_case = 0.5;
  std::uint64_t seed = 0;
  std::string prefix = "synth";
};

void run_simulate(const SimulateArgs& a) {
  SynthConfig cfg;
  cfg.n_case = a.n_case;
  cfg.n_control = a.n_control;
  cfg.n_metabolites = a.metabolites;
  cfg.n_de = a.de;
  cfg.nb_control = {a.nb_r_control, a.nb_p_control};
  cfg.nb_case_de = {a.nb_r_case, a.nb_p_case};
  cfg.seed = a.seed;
  const SynthResult res = generate(cfg);

  const std::string data_path = a.prefix + ".data.csv";
  const std::string labels_path = a.prefix + ".labels.csv";
  const std::string truth_path = a.prefix + ".truth.json";
  write_matrix_csv(data_path, res.matrix);
  write_labels_csv(labels_path, res.matrix.sample_ids, res.labels);

  nlohmann::ordered_json truth;
  truth["de_ids"] = res.truth.de_metabolite_ids;
  truth["outlier_cells"] = nlohmann::ordered_json::object();
  write_text(truth_path, truth.dump(2) + "\n");

  RunManifest man = base_manifest("simulate");
  man.args.emplace_back("--subjects-case", std::to_string(a.n_case));
  man.args.emplace_back("--subjects-control", std::to_string(a.n_control));
  man.args.emplace_back("--metabolites", std::to_string(a.metabolites));
  man.args.emplace_back("--de", std::to_string(a.de));
  man.args.emplace_back("--nb-r-control", fmt(a.nb_r_control));
  man.args.emplace_back("--nb-p-control", fmt(a.nb_p_control));
  man.args.emplace_back("--nb-r-case", fmt(a.nb_r_case));
  man.args.emplace_back("--nb-p-case", fmt(a.nb_p_case));
  man.args.emplace_back("--seed", std::to_string(a.seed));
  man.args.emplace_back("--output-prefix", a.prefix);
  man.seed = a.seed;
  man.outputs = {data_path, labels_path, truth_path};
  write_manifest(man, a.prefix + ".manifest.json");
}

void setup_simulate(CLI::App& app) {
  auto a = std::make_shared<SimulateArgs>();
  CLI::App* c = app.add_subcommand(
      "simulate", "Generate a negative-binomial matrix with planted differential rows");
  c->add_option("--subjects-case", a->n_case, "case sample count")->capture_default_str();
  c->add_option("--subjects-control", a->n_control, "control sample count")
      ->capture_default_str();
  c->add_option("--metabolites", a->metabolites, "metabolite (row) count")
      ->capture_default_str();
  c->add_option("--de", a->de, "differential metabolite count")->capture_default_str();
  c->add_option("--nb-r-control", a->nb_r_control, "NB r for background cells")
      ->capture_default_str();
  c->add_option("--nb-p-control", a->nb_p_control, "NB p for background cells")
      ->capture_default_str();
  c->add_option("--nb-r-case", a->nb_r_case, "NB r for case cells of differential rows")
      ->capture_default_str();
  c->add_option("--nb-p-case", a->nb_p_case, "NB p for case cells of differential rows")
      ->capture_default_str();
  c->add_option("--seed", a->seed, "RNG seed")->capture_default_str();
  c->add_option("--output-prefix", a->prefix, "prefix for .data.csv/.labels.csv/.truth.json")
      ->capture_default_str();
  c->callback([a] { run_simulate(*a); });
}

// ----------------------------------------------------------- contaminate ----

struct ContaminateArgs {
  std::string input;
  std::vector<double> rates{0.01, 0.03, 0.05, 0.07};
  std::string mu = "auto";
  std::string sigma = "auto";
  bool cumulative = true;
  std::uint64_t seed = 0;
  std::string prefix = "contaminated";
};

void run_contaminate(const ContaminateArgs& a) {
  const MetaboliteMatrix m = read_matrix_csv(a.input);

  ContaminationPlan plan;
  plan.rates = a.rates;
  const double mu = parse_auto_or_positive(a.mu, "--mu");
  const double sigma = parse_auto_or_positive(a.sigma, "--sigma");
  plan.mu = mu > 0.0 ? mu : default_contamination_mu(m);
  plan.sigma = sigma > 0.0 ? sigma : default_contamination_sigma(m);
  plan.seed = a.seed;
  plan.cumulative = a.cumulative;

  const ContaminationResult res = contaminate(m, plan);
  print_warnings(res.warnings);

  std::vector<std::string> outputs;
  nlohmann::ordered_json cells = nlohmann::ordered_json::object();
  for (const auto& cm : res.by_rate) {
    const std::string path = a.prefix + ".rate" + pct_tag(cm.rate) + "pct.csv";
    write_matrix_csv(path, cm.matrix);
    outputs.push_back(path);
    auto list = nlohmann::ordered_json::array();
    for (const auto& [row, col] : cm.cells) list.push_back({row, col});
    char key[32];
    std::snprintf(key, sizeof key, "%g", cm.rate);
    cells[key] = std::move(list);
  }
  nlohmann::ordered_json truth;
  truth["de_ids"] = nlohmann::ordered_json::array();
  truth["outlier_cells"] = std::move(cells);
  const std::string truth_path = a.prefix + ".outliers.json";
  write_text(truth_path, truth.dump(2) + "\n");
  outputs.push_back(truth_path);

  RunManifest man = base_manifest("contaminate");
  man.args.emplace_back("--input", a.input);
  std::string joined;
  for (double r : a.rates) {
    if (!joined.empty()) joined += ',';
    joined += fmt(r);
  }
  man.args.emplace_back("--rates", joined);
  man.args.emplace_back("--mu", fmt(plan.mu));
  man.args.emplace_back("--sigma", fmt(plan.sigma));
  man.args.emplace_back("--cumulative", bool_str(a.cumulative));
  man.args.emplace_back("--seed", std::to_string(a.seed));
  man.args.emplace_back("--output-prefix", a.prefix);
  man.seed = a.seed;
  add_input(man, a.input);
  man.outputs = std::move(outputs);
  write_manifest(man, a.prefix + ".manifest.json");
}

void setup_contaminate(CLI::App& app) {
  auto a = std::make_shared<ContaminateArgs>();
  CLI::App* c = app.add_subcommand(
      "contaminate", "Replace random cells with draws from a high-location normal");
  c->add_option("--input", a->input, "matrix CSV to contaminate")->required();
  c->add_option("--rates", a->rates, "outlier fractions, ascending")
      ->delimiter(',')
      ->capture_default_str();
  c->add_option("--mu", a->mu, "outlier mean; 'auto' = 1.5 x matrix max")
      ->capture_default_str();
  c->add_option("--sigma", a->sigma, "outlier sd; 'auto' = all-cells sample sd")
      ->capture_default_str();
  c->add_flag("--cumulative,!--no-cumulative", a->cumulative,
              "later rates extend earlier cell sets (default on)");
  c->add_option("--seed", a->seed, "RNG seed")->capture_default_str();
  c->add_option("--output-prefix", a->prefix, "prefix for per-rate CSVs + outliers.json")
      ->capture_default_str();
  c->callback([a] { run_contaminate(*a); });
}

// -------------------------------------------------------------- evaluate ----

struct EvaluateArgs {
  std::string input;
  std::string labels;
  std::string scaling;
  std::string classifier;
  std::size_t folds = 5;
  std::size_t iterations = 100;
  std::uint64_t seed = 0;
  std::size_t knn_k = 5;
  double svm_c = 1.0;
  std::string svm_gamma = "auto";
  double svm_tol = 1e-3;
  std::string svm_kernel = "rbf";
  std::size_t plsda_q = 2;
  double nb_var_floor = 1e-9;
  bool scale_inside_folds = false;
  bool stratified = true;
  double contamination_rate = 0.0;
  double mad_constant = 0.6754;
  double alpha = 0.05;
  std::string output = "report.json";
  std::string roc_output;  // default: <output stem>.roc.csv
};

void run_evaluate(const EvaluateArgs& a) {
  if (a.scaling.empty()) {
    std::string msg = "missing --scaling; expected one of:";
    for (const auto& n : scale_method_names()) msg += " " + n;
    throw schema_error(msg);
  }
  if (a.classifier.empty()) {
    std::string msg = "missing --classifier; expected one of:";
    for (const auto& n : classifier_family_names()) msg += " " + n;
    throw schema_error(msg);
  }

  const auto [m, y] = ingest_csv(a.input, a.labels);
  const ScalingMethod method{parse_scale_method(a.scaling),
                             RobustParams::make(a.alpha, a.mad_constant)};

  ClassifierSpec spec;
  spec.family = parse_classifier_family(a.classifier);
  spec.knn_k = a.knn_k;
  spec.svm_c = a.svm_c;
  spec.svm_gamma = parse_auto_or_positive(a.svm_gamma, "--svm-gamma");
  spec.svm_tol = a.svm_tol;
  if (a.svm_kernel == "rbf")
    spec.svm_kernel = SvmKernel::Rbf;
  else if (a.svm_kernel == "linear")
    spec.svm_kernel = SvmKernel::Linear;
  else
    throw schema_error("--svm-kernel must be 'rbf' or 'linear', got '" + a.svm_kernel + "'");
  spec.plsda_components = a.plsda_q;
  spec.nb_var_floor = a.nb_var_floor;

  CvPlan plan;
  plan.folds = a.folds;
  plan.iterations = a.iterations;
  plan.seed = a.seed;
  plan.stratified = a.stratified;
  plan.scaling_inside_folds = a.scale_inside_folds;

  MetricReport report = run_cv(m, y, method, spec, plan);
  report.contamination_rate = a.contamination_rate;
  if (report.svm_nonconverged_fits > 0)
    std::cerr << "warning: " << report.svm_nonconverged_fits
              << " SVM fit(s) hit the sweep cap before converging\n";

  const std::string roc_path =
      a.roc_output.empty() ? sibling_path(a.output, ".roc.csv") : a.roc_output;
  write_text(a.output, report_to_json(report));
  std::vector<std::pair<double, double>> pts;
  pts.reserve(report.roc_points.size());
  for (const auto& pt : report.roc_points) pts.emplace_back(pt.fpr, pt.tpr);
  write_roc_csv(roc_path, pts);

  std::cout << "accuracy_pct=" << fmt(report.accuracy_pct) << " f1=" << fmt(report.f1)
            << " auc=" << fmt(report.auc) << " mcc=" << fmt(report.mcc) << "\n";

  RunManifest man = base_manifest("evaluate");
  man.args.emplace_back("--input", a.input);
  man.args.emplace_back("--labels", a.labels);
  man.args.emplace_back("--scaling", a.scaling);
  man.args.emplace_back("--classifier", a.classifier);
  man.args.emplace_back("--folds", std::to_string(a.folds));
  man.args.emplace_back("--iterations", std::to_string(a.iterations));
  man.args.emplace_back("--seed", std::to_string(a.seed));
  man.args.emplace_back("--knn-k", std::to_string(a.knn_k));
  man.args.emplace_back("--svm-c", fmt(a.svm_c));
  man.args.emplace_back("--svm-gamma",
                        spec.svm_gamma > 0.0 ? fmt(spec.svm_gamma) : std::string("auto"));
  man.args.emplace_back("--svm-tol", fmt(a.svm_tol));
  man.args.emplace_back("--svm-kernel", a.svm_kernel);
  man.args.emplace_back("--plsda-q", std::to_string(a.plsda_q));
  man.args.emplace_back("--nb-var-floor", fmt(a.nb_var_floor));
  man.args.emplace_back("--scale-inside-folds", bool_str(a.scale_inside_folds));
  man.args.emplace_back("--stratified", bool_str(a.stratified));
  man.args.emplace_back("--contamination-rate", fmt(a.contamination_rate));
  man.args.emplace_back("--mad-constant", fmt(a.mad_constant));
  man.args.emplace_back("--z-alpha", fmt(a.alpha));
  man.args.emplace_back("--output", a.output);
  man.args.emplace_back("--roc-output", roc_path);
  man.seed = a.seed;
  add_input(man, a.input);
  add_input(man, a.labels);
  man.outputs = {a.output, roc_path};
  write_manifest(man, manifest_path_for(a.output));
}

void setup_evaluate(CLI::App& app) {
  auto a = std::make_shared<EvaluateArgs>();
  CLI::App* c = app.add_subcommand(
      "evaluate", "Repeated stratified k-fold CV of a classifier over a scaled matrix");
  c->add_option("--input", a->input, "matrix CSV, metabolites in rows")->required();
  c->add_option("--labels", a->labels, "labels CSV: sample_id,case|control")->required();
  c->add_option("--scaling", a->scaling, "one of: auto range pareto vast level weighted");
  c->add_option("--classifier", a->classifier, "one of: knn nb svm plsda");
  c->add_option("--folds", a->folds, "CV folds")->capture_default_str();
  c->add_option("--iterations", a->iterations, "CV repetitions")->capture_default_str();
  c->add_option("--seed", a->seed, "RNG seed")->capture_default_str();
  c->add_option("--knn-k", a->knn_k, "kNN neighbor count (odd)")->capture_default_str();
  c->add_option("--svm-c", a->svm_c, "SVM box constraint")->capture_default_str();
  c->add_option("--svm-gamma", a->svm_gamma, "RBF gamma; 'auto' = 1/features")
      ->capture_default_str();
  c->add_option("--svm-tol", a->svm_tol, "SMO KKT tolerance")->capture_default_str();
  c->add_option("--svm-kernel", a->svm_kernel, "rbf or linear")->capture_default_str();
  c->add_option("--plsda-q", a->plsda_q, "PLS-DA component count")->capture_default_str();
  c->add_option("--nb-var-floor", a->nb_var_floor, "naive Bayes variance floor")
      ->capture_default_str();
  c->add_flag("--scale-inside-folds", a->scale_inside_folds,
              "refit row scalers on training folds only (leak-free mode)");
  c->add_flag("--stratified,!--non-stratified", a->stratified,
              "stratify folds by class (default on)");
  c->add_option("--contamination-rate", a->contamination_rate,
                "annotation echoed into the report config")
      ->capture_default_str();
  c->add_option("--mad-constant", a->mad_constant, "MAD consistency constant")
      ->capture_default_str();
  c->add_option("--z-alpha", a->alpha, "alpha level behind the z_alpha weight cutoff")
      ->capture_default_str();
  c->add_option("--output", a->output, "MetricReport JSON path")->capture_default_str();
  c->add_option("--roc-output", a->roc_output, "averaged ROC CSV (default <output>.roc.csv)");
  c->callback([a] { run_evaluate(*a); });
}

// -------------------------------------------------------------------- de ----

struct DeCliArgs {
  std::string input;
  std::string labels;
  std::string output = "de.csv";
  double alpha = 0.05;
  double fc = 1.5;
  bool use_welch = true;
  bool log_fc = false;
};

void run_de(const DeCliArgs& a) {
  const auto [m, y] = ingest_csv(a.input, a.labels);
  DeConfig cfg;
  cfg.alpha = a.alpha;
  cfg.fc_threshold = a.fc;
  cfg.use_welch = a.use_welch;
  cfg.log_fc = a.log_fc;

  const DeResult res = de_call(m, y, cfg);
  print_warnings(res.warnings);
  write_de_csv(a.output, res, cfg);

  std::size_t flagged = 0;
  for (const auto& r : res.rows) flagged += r.de_flag;
  std::cout << "flagged=" << flagged << " of " << res.rows.size() << "\n";

  RunManifest man = base_manifest("de");
  man.args.emplace_back("--input", a.input);
  man.args.emplace_back("--labels", a.labels);
  man.args.emplace_back("--alpha", fmt(a.alpha));
  man.args.emplace_back("--fc", fmt(a.fc));
  man.args.emplace_back("--welch", bool_str(a.use_welch));
  man.args.emplace_back("--log-fc", bool_str(a.log_fc));
  man.args.emplace_back("--output", a.output);
  add_input(man, a.input);
  add_input(man, a.labels);
  man.outputs = {a.output};
  write_manifest(man, manifest_path_for(a.output));
}

void setup_de(CLI::App& app) {
  auto a = std::make_shared<DeCliArgs>();
  CLI::App* c = app.add_subcommand(
      "de", "Call differential metabolites by two-sample t-test + fold change");
  c->add_option("--input", a->input, "matrix CSV, metabolites in rows")->required();
  c->add_option("--labels", a->labels, "labels CSV: sample_id,case|control")->required();
  c->add_option("--alpha", a->alpha, "significance level")->capture_default_str();
  c->add_option("--fc", a->fc, "fold-change threshold (raw ratio scale)")
      ->capture_default_str();
  c->add_flag("--welch,!--pooled", a->use_welch,
              "Welch t-test (default); --pooled for pooled variance");
  c->add_flag("--log-fc", a->log_fc, "report log2 fold change (flags stay on the raw rule)");
  c->add_option("--output", a->output, "result CSV path")->capture_default_str();
  c->callback([a] { run_de(*a); });
}

// -------------------------------------------------------------- roc-plot ----

struct RocPlotArgs {
  std::vector<std::string> inputs;
  std::string output = "roc.svg";
};

void run_roc_plot(const RocPlotArgs& a) {
  std::vector<RocCurve> curves;
  curves.reserve(a.inputs.size());
  for (const auto& path : a.inputs) {
    RocCurve curve;
    curve.name = fs::path(path).stem().string();
    for (const auto& [fpr, tpr] : read_roc_csv(path)) curve.points.push_back({fpr, tpr});
    curves.push_back(std::move(curve));
  }
  write_text(a.output, render_roc_svg(curves));

  RunManifest man = base_manifest("roc-plot");
  for (const auto& path : a.inputs) {
    man.args.emplace_back("--input", path);
    add_input(man, path);
  }
  man.args.emplace_back("--output", a.output);
  man.outputs = {a.output};
  write_manifest(man, manifest_path_for(a.output));
}

void setup_roc_plot(CLI::App& app) {
  auto a = std::make_shared<RocPlotArgs>();
  CLI::App* c = app.add_subcommand("roc-plot", "Render ROC curve CSVs as a standalone SVG");
  c->add_option("--input", a->inputs, "fpr,tpr curve CSV (repeat for several curves)")
      ->required();
  c->add_option("--output", a->output, "SVG path")->capture_default_str();
  c->callback([a] { run_roc_plot(*a); });
}

// ------------------------------------------------------------- dispatch ----

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"weighted (outlier-robust) metabolomics scaling toolkit"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(0, 1);

  std::string manifest_file;
  app.add_option("--manifest", manifest_file,
                 "replay a recorded run manifest (inputs are digest-checked)");

  setup_scale(app);
  setup_simulate(app);
  setup_contaminate(app);
  setup_evaluate(app);
  setup_de(app);
  setup_roc_plot(app);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back(kToolName);
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage error
    return 2;
  }

  if (!manifest_file.empty()) {
    if (!app.get_subcommands().empty())
      throw schema_error("--manifest cannot be combined with a subcommand");
    const RunManifest man = manifest_from_json_file(manifest_file);
    if (man.tool != kToolName)
      throw schema_error("manifest is for tool '" + man.tool + "', not " + kToolName);
    verify_manifest_inputs(man);
    return dispatch(manifest_argv(man));
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(args);
  } catch (const schema_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
