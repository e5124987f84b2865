// seqx: event-stream denoising toolkit.
//
//   seqx generate  synthetic labeled scene -> stream (+ label sidecar)
//   seqx denoise   stream -> filtered stream (+ verdict sidecar)
//   seqx frames    stream -> fixed-count binary PGM frames
//   seqx metrics   two frame directories -> PSNR/SSIM CSV
//   seqx analyze   labeled stream -> per-function histograms + rule verdict
//
// Exit codes: 0 success, 1 usage, 2 input format error, 3 processing error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "seqx/seqx.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFormat = 2;
constexpr int kExitProcessing = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

seqx::StreamFormat resolve_format(const std::string& flag, const std::string& path) {
  if (flag == "text") return seqx::StreamFormat::Text;
  if (flag == "binary") return seqx::StreamFormat::Binary;
  return seqx::format_for_path(path);
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad value \"" + item + "\" in " + what);
    }
  }
  return out;
}

seqx::EventStream load_valid_stream(const std::string& path, const std::string& format) {
  auto stream = seqx::load_stream(path, resolve_format(format, path));
  const auto report = seqx::validate_stream(stream.events, stream.geometry);
  if (!report.valid()) {
    throw InputError(path + ": event " + std::to_string(*report.first_violation) + ": " +
                     seqx::to_string(report.kind));
  }
  return stream;
}

void require_parent_dir(const std::string& path) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw UsageError("output directory " + parent.string() + " does not exist");
  }
}

std::string fmt_double(double v, int precision = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

json json_number(double v) {
  if (std::isinf(v)) return "inf";
  if (std::isnan(v)) return nullptr;
  return v;
}

// ----------------------------------------------------------------- generate

struct GenerateArgs {
  std::string output;
  std::string labels;
  std::string format = "auto";
  std::uint32_t width = 128;
  std::uint32_t height = 128;
  std::uint64_t duration_us = 5'000'000;
  double signal_rate = 20'000;
  double noise_rate = 20'000;
  std::string trajectory = "pendulum";
  std::string center;
  double amplitude = 40;
  double period_us = 2'000'000;
  std::string start = "0,0";
  std::string velocity = "0,0";
  std::uint32_t radius = 1;
  std::uint64_t seed = 1;
  bool json = false;
};

int run_generate(const GenerateArgs& a) {
  seqx::SceneConfig cfg;
  try {
    cfg.geom = seqx::SensorGeometry(a.width, a.height);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.duration_us = a.duration_us;
  cfg.signal_rate = a.signal_rate;
  cfg.noise_rate = a.noise_rate;
  cfg.cluster_radius = a.radius;
  cfg.seed = a.seed;
  if (a.trajectory == "pendulum") {
    seqx::PendulumTrajectory p;
    p.center_x = a.width / 2.0;
    p.center_y = a.height / 2.0;
    if (!a.center.empty()) {
      const auto c = parse_list(a.center, "--center");
      if (c.size() != 2) throw UsageError("--center takes x,y");
      p.center_x = c[0];
      p.center_y = c[1];
    }
    p.amplitude = a.amplitude;
    p.period_us = a.period_us;
    cfg.trajectory = p;
  } else {
    const auto s = parse_list(a.start, "--start");
    const auto v = parse_list(a.velocity, "--velocity");
    if (s.size() != 2 || v.size() != 2) throw UsageError("--start and --velocity take x,y");
    cfg.trajectory = seqx::LinearTrajectory{s[0], s[1], v[0], v[1]};
  }
  require_parent_dir(a.output);

  std::vector<seqx::LabeledEvent> labeled;
  try {
    labeled = seqx::generate(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto events = seqx::strip_labels(labeled);
  seqx::save_stream(a.output, cfg.geom, events, resolve_format(a.format, a.output));
  if (!a.labels.empty()) seqx::save_labels(a.labels, seqx::labels_of(labeled));

  const auto real = static_cast<std::size_t>(std::count_if(
      labeled.begin(), labeled.end(), [](const auto& le) { return le.label == seqx::Label::Real; }));
  if (a.json) {
    std::cout << json{{"events", labeled.size()},
                      {"real", real},
                      {"noise", labeled.size() - real},
                      {"width", a.width},
                      {"height", a.height},
                      {"seed", a.seed}}
                     .dump()
              << '\n';
  } else {
    std::cout << "events: " << labeled.size() << " (real " << real << ", noise "
              << labeled.size() - real << ")\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------ denoise

struct DenoiseArgs {
  std::string input;
  std::string output;
  std::string format = "auto";
  std::string out_format = "auto";
  std::string filter = "seqx";
  std::size_t window = 2;
  std::optional<double> sigma;
  std::string agg = "min";
  std::string weights;
  bool scaled = false;
  bool update_on_real = false;
  std::uint64_t dt_us = 1000;
  std::uint32_t subsample = 2;
  std::string verdicts;
  std::string truth;
  bool json = false;
};

template <seqx::EventFilter F>
std::vector<seqx::Label> judge(F filter, const std::vector<seqx::Event>& events) {
  return seqx::verdicts(filter, events);
}

int run_denoise(const DenoiseArgs& a, const CLI::App& sub) {
  const bool seqx_family = a.filter == "seqx";
  const bool seqx_flags = sub.count("--window") || sub.count("--sigma") || sub.count("--agg") ||
                          sub.count("--weights") || sub.count("--scaled") ||
                          sub.count("--update-on-real");
  const bool nnb_flags = sub.count("--dt-us") > 0;
  if (!seqx_family && seqx_flags) {
    throw UsageError("window/sigma/aggregation flags apply to --filter seqx only");
  }
  if (seqx_family && (nnb_flags || sub.count("--subsample"))) {
    throw UsageError("--dt-us/--subsample apply to the bs1/bs2/bs3 filters only");
  }
  if (a.filter != "bs2" && sub.count("--subsample")) {
    throw UsageError("--subsample applies to --filter bs2 only");
  }
  require_parent_dir(a.output);
  if (!a.verdicts.empty()) require_parent_dir(a.verdicts);

  const auto stream = load_valid_stream(a.input, a.format);
  const auto& geom = stream.geometry;
  std::optional<std::vector<seqx::Label>> truth;
  if (!a.truth.empty()) truth = seqx::load_labels(a.truth, stream.events.size());

  std::vector<seqx::Label> labels;
  json params;
  if (seqx_family) {
    auto cfg = seqx::default_seqx_config(geom);
    cfg.window_length = a.window;
    if (a.sigma) cfg.sigma = *a.sigma;
    try {
      cfg.aggregation.mode = seqx::parse_aggregation_mode(a.agg);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (cfg.aggregation.mode == seqx::AggregationMode::WeightedAvg) {
      cfg.aggregation.weights =
          a.weights.empty() && cfg.window_length == 2 ? std::vector<double>{3, 1}
                                                      : parse_list(a.weights, "--weights");
    } else if (!a.weights.empty()) {
      throw UsageError("--weights requires --agg wavg");
    }
    cfg.update_on_real = a.update_on_real;
    if (a.scaled && cfg.aggregation.mode != seqx::AggregationMode::Min) {
      throw UsageError("--scaled requires --agg min");
    }
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    labels = a.scaled ? judge(seqx::ScaledSeqXFilter(geom, cfg), stream.events)
                      : judge(seqx::SeqXFilter(geom, cfg), stream.events);
    params = {{"window", cfg.window_length},
              {"sigma", cfg.sigma},
              {"aggregation", seqx::to_string(cfg.aggregation.mode)},
              {"scaled", a.scaled},
              {"update_on_real", cfg.update_on_real}};
  } else if (a.filter == "bs1") {
    labels = judge(seqx::Bs1Filter(geom, a.dt_us), stream.events);
    params = {{"dt_us", a.dt_us}};
  } else if (a.filter == "bs2") {
    if (a.subsample == 0) throw UsageError("--subsample must be >= 1");
    labels = judge(seqx::Bs2Filter(geom, a.subsample, a.dt_us), stream.events);
    params = {{"dt_us", a.dt_us}, {"subsample", a.subsample}};
  } else {
    labels = judge(seqx::Bs3Filter(geom, a.dt_us), stream.events);
    params = {{"dt_us", a.dt_us}};
  }

  std::vector<seqx::Event> kept;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == seqx::Label::Real) kept.push_back(stream.events[i]);
  }
  seqx::save_stream(a.output, geom, kept, resolve_format(a.out_format, a.output));
  if (!a.verdicts.empty()) seqx::save_labels(a.verdicts, labels);

  const auto n = stream.events.size();
  const double pass_rate = n == 0 ? 0.0 : static_cast<double>(kept.size()) / n;
  json summary{{"filter", a.filter},
               {"params", params},
               {"input_events", n},
               {"passed", kept.size()},
               {"dropped", n - kept.size()},
               {"pass_rate", pass_rate}};
  if (truth) {
    std::vector<seqx::LabeledEvent> truth_events(n);
    for (std::size_t i = 0; i < n; ++i) truth_events[i] = {stream.events[i], (*truth)[i]};
    const auto r = seqx::score(truth_events, labels);
    summary["recall"] = r.recall;
    summary["false_positive_rate"] = r.false_positive_rate;
    summary["precision"] = r.precision;
  }
  if (a.json) {
    std::cout << summary.dump() << '\n';
  } else {
    std::cout << "filter: " << a.filter << '\n'
              << "input events: " << n << '\n'
              << "passed: " << kept.size() << '\n'
              << "dropped: " << n - kept.size() << '\n'
              << "pass rate: " << fmt_double(pass_rate, 4) << '\n';
    if (truth) {
      std::cout << "recall: " << fmt_double(summary["recall"].get<double>(), 4) << '\n'
                << "false positive rate: "
                << fmt_double(summary["false_positive_rate"].get<double>(), 4) << '\n'
                << "precision: " << fmt_double(summary["precision"].get<double>(), 4) << '\n';
    }
  }
  return kExitOk;
}

// ------------------------------------------------------------------- frames

struct FramesArgs {
  std::string input;
  std::string format = "auto";
  std::string outdir = "frames";
  std::size_t count = 0;
  bool keep_partial = false;
  bool parallel = false;
  bool json = false;
};

std::string frame_name(std::size_t i) {
  std::ostringstream os;
  os << "frame_" << std::setw(6) << std::setfill('0') << i << ".pgm";
  return os.str();
}

int run_frames(const FramesArgs& a, const CLI::App& sub) {
  if (sub.count("--count") && a.count == 0) throw UsageError("--count must be >= 1");
  const auto stream = load_valid_stream(a.input, a.format);
  const std::size_t count =
      a.count == 0 ? seqx::default_bundle_sizes(stream.geometry)[0] : a.count;
  const auto frames = seqx::accumulate(stream.events, stream.geometry, count, {a.keep_partial, a.parallel});
  fs::create_directories(a.outdir);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    std::ofstream out(fs::path(a.outdir) / frame_name(i), std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot create frame in " + a.outdir);
    seqx::write_pgm(frames[i], out);
  }
  if (a.json) {
    std::cout << json{{"frames", frames.size()}, {"events_per_frame", count}}.dump() << '\n';
  } else {
    std::cout << "frames: " << frames.size() << " (" << count << " events each) -> " << a.outdir
              << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------------ metrics

struct MetricsArgs {
  std::string reference_dir;
  std::string test_dir;
  std::string out;
  bool parallel = false;
  bool json = false;
};

std::vector<seqx::BinaryFrame> load_frames(const std::string& dir) {
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.starts_with("frame_") && name.ends_with(".pgm")) {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<seqx::BinaryFrame> frames;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    try {
      frames.push_back(seqx::read_pgm(in));
    } catch (const std::runtime_error& e) {
      throw InputError(p.string() + ": " + e.what());
    }
  }
  return frames;
}

int run_metrics(const MetricsArgs& a) {
  if (!a.out.empty()) require_parent_dir(a.out);
  const auto ref = load_frames(a.reference_dir);
  const auto test = load_frames(a.test_dir);
  if (ref.size() != test.size()) {
    throw std::runtime_error("frame count mismatch: " + a.reference_dir + " has " +
                             std::to_string(ref.size()) + " frames, " + a.test_dir + " has " +
                             std::to_string(test.size()));
  }
  const auto report = seqx::compare_pipelines(ref, test, a.parallel);
  if (!a.out.empty()) {
    std::ofstream out(a.out, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot create " + a.out);
    seqx::write_report_csv(report, out);
  }
  if (a.json) {
    json frames = json::array();
    for (const auto& m : report.per_frame) {
      frames.push_back({{"psnr_db", json_number(m.psnr_db)}, {"ssim", json_number(m.ssim)}});
    }
    std::cout << json{{"frames", frames},
                      {"mean_psnr_db", json_number(report.mean_psnr)},
                      {"mean_ssim", json_number(report.mean_ssim)},
                      {"identical_frames", report.identical_frames}}
                     .dump()
              << '\n';
  } else if (a.out.empty()) {
    seqx::write_report_csv(report, std::cout);
  }
  return kExitOk;
}

// ------------------------------------------------------------------ analyze

struct AnalyzeArgs {
  std::string input;
  std::string format = "auto";
  std::string labels;
  std::string label_with;
  std::uint64_t dt_us = 1000;
  std::size_t window = 2;
  std::string modes = "min,max,avg,wavg";
  std::string weights;
  std::size_t bins = 20;
  double range_hi = 0.5;
  double tie_tol = 0.05;
  std::size_t max_events = 0;
  std::string hist_dir;
  bool json = false;
};

int run_analyze(const AnalyzeArgs& a, const CLI::App& sub) {
  if (a.labels.empty() == a.label_with.empty()) {
    throw UsageError("give exactly one of --labels or --label-with");
  }
  if (!a.label_with.empty() && a.label_with != "bs1") {
    throw UsageError("--label-with supports bs1 only");
  }
  if (!a.labels.empty() && sub.count("--dt-us")) {
    throw UsageError("--dt-us applies to --label-with bs1 only");
  }
  if (a.window == 0) throw UsageError("--window must be >= 1");

  std::map<std::string, seqx::Aggregation> aggs;
  std::stringstream ss(a.modes);
  std::string name;
  while (std::getline(ss, name, ',')) {
    seqx::Aggregation agg;
    try {
      agg.mode = seqx::parse_aggregation_mode(name);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (agg.mode == seqx::AggregationMode::WeightedAvg) {
      agg.weights = a.weights.empty() && a.window == 2 ? std::vector<double>{3, 1}
                                                       : parse_list(a.weights, "--weights");
      if (agg.weights.size() != a.window) throw UsageError("--weights needs one weight per slot");
      for (double w : agg.weights) {
        if (!(w > 0)) throw UsageError("--weights must be positive");
      }
    }
    aggs[name] = agg;
  }
  if (aggs.empty()) throw UsageError("--modes is empty");
  seqx::HistogramSpec spec{a.bins, 0.0, a.range_hi};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  auto stream = load_valid_stream(a.input, a.format);
  std::vector<seqx::Label> labels;
  if (!a.labels.empty()) {
    labels = seqx::load_labels(a.labels, stream.events.size());
  } else {
    seqx::Bs1Filter bs1(stream.geometry, a.dt_us);
    labels = seqx::verdicts(bs1, stream.events);
  }
  std::size_t n = stream.events.size();
  if (a.max_events > 0) n = std::min(n, a.max_events);
  std::vector<seqx::LabeledEvent> labeled(n);
  for (std::size_t i = 0; i < n; ++i) labeled[i] = {stream.events[i], labels[i]};

  std::map<std::string, seqx::SplitHistogram> hists;
  for (const auto& [mode, agg] : aggs) {
    hists[mode] = seqx::build_histogram(labeled, stream.geometry, a.window, agg, spec);
  }
  const auto verdict = seqx::select_function(hists, a.tie_tol);

  if (!a.hist_dir.empty()) {
    fs::create_directories(a.hist_dir);
    for (const auto& [mode, h] : hists) {
      std::ofstream out(fs::path(a.hist_dir) / ("hist_" + mode + ".csv"), std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write histogram to " + a.hist_dir);
      seqx::write_histogram_csv(h, out);
    }
  }
  if (a.json) {
    json funcs = json::object();
    for (const auto& [mode, f] : verdict.per_function) {
      funcs[mode] = {{"first_bin_real", f.first_bin_real},
                     {"first_bin_noise", f.first_bin_noise},
                     {"real_ratio", json_number(f.real_ratio)},
                     {"rule1_pass", f.rule1_pass},
                     {"rule2_rank", f.rule2_rank},
                     {"rule3_rank", f.rule3_rank}};
    }
    std::cout << json{{"selected", verdict.selected},
                      {"rule1_fallback", verdict.rule1_fallback},
                      {"tie_tolerance", verdict.tie_tolerance},
                      {"events", n},
                      {"functions", funcs}}
                     .dump()
              << '\n';
  } else {
    seqx::write_verdict_report(verdict, std::cout);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seqx: spatio-temporal denoising for event-camera streams"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a labeled synthetic scene");
  g->add_option("output", gen.output, "Output stream (.evn/.bin binary, otherwise text)")
      ->required();
  g->add_option("--labels", gen.labels, "Write label sidecar here");
  g->add_option("--format", gen.format)->check(CLI::IsMember({"auto", "text", "binary"}));
  g->add_option("--width", gen.width);
  g->add_option("--height", gen.height);
  g->add_option("--duration-us", gen.duration_us);
  g->add_option("--signal-rate", gen.signal_rate, "Object events per second");
  g->add_option("--noise-rate", gen.noise_rate, "Background events per second");
  g->add_option("--trajectory", gen.trajectory)->check(CLI::IsMember({"pendulum", "linear"}));
  g->add_option("--center", gen.center, "Pendulum rest position x,y (default: sensor center)");
  g->add_option("--amplitude", gen.amplitude, "Pendulum half-swing in pixels");
  g->add_option("--period-us", gen.period_us, "Pendulum period");
  g->add_option("--start", gen.start, "Linear start x,y");
  g->add_option("--velocity", gen.velocity, "Linear velocity vx,vy in pixels/s");
  g->add_option("--radius", gen.radius, "Cluster radius in pixels (Chebyshev)");
  g->add_option("--seed", gen.seed);
  g->add_flag("--json", gen.json);

  DenoiseArgs den;
  auto* d = app.add_subcommand("denoise", "Filter a stream with SeqXFilter or an NNb baseline");
  d->add_option("input", den.input)->required()->check(CLI::ExistingFile);
  d->add_option("output", den.output)->required();
  d->add_option("--filter", den.filter)
      ->check(CLI::IsMember({"seqx", "bs1", "bs2", "bs3"}));
  d->add_option("--format", den.format, "Input format")
      ->check(CLI::IsMember({"auto", "text", "binary"}));
  d->add_option("--out-format", den.out_format)->check(CLI::IsMember({"auto", "text", "binary"}));
  d->add_option("--window", den.window, "Past event window length X");
  d->add_option("--sigma", den.sigma, "Spatial threshold");
  d->add_option("--agg", den.agg, "Aggregation: min, max, avg, wavg");
  d->add_option("--weights", den.weights, "wavg weights w1,..,wX (most recent first)");
  d->add_flag("--scaled", den.scaled, "Use the division-free integer path");
  d->add_flag("--update-on-real", den.update_on_real, "Only REAL events enter the window");
  d->add_option("--dt-us", den.dt_us, "NNb time threshold in microseconds");
  d->add_option("--subsample", den.subsample, "bs2 sub-sampling factor");
  d->add_option("--verdicts", den.verdicts, "Write per-event verdict sidecar");
  d->add_option("--truth", den.truth, "Ground-truth label sidecar to score against")
      ->check(CLI::ExistingFile);
  d->add_flag("--json", den.json);

  FramesArgs fr;
  auto* f = app.add_subcommand("frames", "Accumulate fixed-count binary frames as PGM");
  f->add_option("input", fr.input)->required()->check(CLI::ExistingFile);
  f->add_option("--format", fr.format)->check(CLI::IsMember({"auto", "text", "binary"}));
  f->add_option("--outdir", fr.outdir);
  f->add_option("--count", fr.count, "Events per frame (default 1000, x10 above 300k pixels)");
  f->add_flag("--keep-partial", fr.keep_partial);
  f->add_flag("--parallel", fr.parallel, "Build frames on several threads");
  f->add_flag("--json", fr.json);

  MetricsArgs met;
  auto* m = app.add_subcommand("metrics", "PSNR/SSIM between two frame directories");
  m->add_option("reference", met.reference_dir)->required()->check(CLI::ExistingDirectory);
  m->add_option("test", met.test_dir)->required()->check(CLI::ExistingDirectory);
  m->add_option("--out", met.out, "CSV path (default: stdout)");
  m->add_flag("--parallel", met.parallel);
  m->add_flag("--json", met.json);

  AnalyzeArgs an;
  auto* z = app.add_subcommand("analyze", "Aggregation-function histograms and selection");
  z->add_option("input", an.input)->required()->check(CLI::ExistingFile);
  z->add_option("--format", an.format)->check(CLI::IsMember({"auto", "text", "binary"}));
  z->add_option("--labels", an.labels, "Label sidecar")->check(CLI::ExistingFile);
  z->add_option("--label-with", an.label_with, "Label events with a baseline filter (bs1)");
  z->add_option("--dt-us", an.dt_us);
  z->add_option("--window", an.window);
  z->add_option("--modes", an.modes);
  z->add_option("--weights", an.weights);
  z->add_option("--bins", an.bins);
  z->add_option("--range-hi", an.range_hi);
  z->add_option("--tie-tol", an.tie_tol);
  z->add_option("--max-events", an.max_events, "Event budget (0 = all)");
  z->add_option("--hist-dir", an.hist_dir, "Write hist_<mode>.csv files here");
  z->add_flag("--json", an.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*g) return run_generate(gen);
    if (*d) return run_denoise(den, *d);
    if (*f) return run_frames(fr, *f);
    if (*m) return run_metrics(met);
    if (*z) return run_analyze(an, *z);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const seqx::FormatError& e) {
    std::cerr << "input format error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const InputError& e) {
    std::cerr << "input format error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitProcessing;
  }
  return kExitUsage;
}
