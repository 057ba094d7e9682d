// Copyright 2026 The mctrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Command-line front end: synth, pairs, train, track, eval, bench.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mctrack/cost_model.hpp"
#include "mctrack/error.hpp"
#include "mctrack/evaluation.hpp"
#include "mctrack/io.hpp"
#include "mctrack/multicut.hpp"
#include "mctrack/pipeline.hpp"
#include "mctrack/synth.hpp"
#include "mctrack/text.hpp"
#include "mctrack/track_builder.hpp"

namespace {

using namespace mctrack;

struct CliError : std::runtime_error {
  CliError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind(std::move(kind)) {}
  std::string kind;
};

std::ofstream open_out(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw CliError("io", "cannot write '" + path + "'");
  return out;
}

FeatureScheme scheme_of(const std::string& s) { return parse_scheme(s); }

std::vector<SequenceBundle> load_all(const std::vector<std::string>& dirs) {
  std::vector<SequenceBundle> out;
  for (const std::string& d : dirs) out.push_back(load_sequence(d));
  return out;
}

// Options shared by the subcommands that build tracking graphs.
struct GraphOptions {
  int tau_max = kDefaultTauMax;
  std::optional<double> score_min;
  std::string scheme = "dm";
  double iou_assign = 0.5;

  void attach(CLI::App* app, bool with_assign) {
    app->add_option("--tau-max", tau_max, "Largest frame gap connected in the graph")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app->add_option("--score-min", score_min, "Drop detections scoring below this");
    app->add_option("--scheme", scheme, "Pair features: dm (matches) or st (geometry)")
        ->capture_default_str()
        ->check(CLI::IsMember({"dm", "st"}));
    if (with_assign) {
      app->add_option("--iou-assign", iou_assign, "IoU needed to give a detection a GT identity")
          ->capture_default_str()
          ->check(CLI::Range(0.0, 1.0));
    }
  }

  PipelineConfig config() const {
    PipelineConfig c;
    c.tau_max = tau_max;
    c.score_min = score_min;
    c.scheme = scheme_of(scheme);
    c.iou_assign = iou_assign;
    return c;
  }
};

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
  std::optional<std::uint64_t> seed;
  std::string out;
  SynthConfig config;
  bool noiseless = false;
  bool no_stagger = false;
  std::vector<std::string> occlusions;
};

void run_synth(const SynthArgs& a) {
  SynthConfig c = a.config;
  c.staggered = !a.no_stagger;
  if (a.noiseless) {
    SynthConfig quiet = noiseless_config();
    quiet.persons = c.persons;
    quiet.frames = c.frames;
    quiet.image_width = c.image_width;
    quiet.image_height = c.image_height;
    quiet.camera_jitter = c.camera_jitter;
    quiet.staggered = c.staggered;
    c = quiet;
  }
  for (const std::string& spec : a.occlusions) {
    if (spec.empty()) continue;  // an empty list round-trips through --config as ""
    const auto fields = split_fields(spec, ':');
    std::optional<long long> p, s, l;
    if (fields.size() == 3) {
      p = parse_int(fields[0]);
      s = parse_int(fields[1]);
      l = parse_int(fields[2]);
    }
    if (!p || !s || !l) throw CliError("usage", "--occlusion expects person:start:length, got '" + spec + "'");
    c.occlusions.push_back({static_cast<int>(*p), static_cast<int>(*s), static_cast<int>(*l)});
  }
  const SequenceBundle b = synth_sequence(c, *a.seed);
  save_sequence(a.out, b);
  std::cout << "wrote " << a.out << ": " << b.detections.size() << " detections, " << b.gt.size()
            << " persons, " << b.matches.size() << " matches\n";
}

// ---- pairs ----------------------------------------------------------------

struct PairsArgs {
  std::vector<std::string> seqs;
  GraphOptions graph;
  std::string out;
};

void run_pairs(const PairsArgs& a) {
  const auto pairs = harvest_bundles(load_all(a.seqs), a.graph.config());
  std::map<int, std::pair<long, long>> counts;
  for (const LabeledPair& p : pairs) {
    auto& [pos, all] = counts[p.dt];
    pos += p.label;
    ++all;
  }
  if (!a.out.empty()) {
    auto out = open_out(a.out);
    out << "v,w,dt,label,scheme,features\n";
    for (const LabeledPair& p : pairs) {
      out << p.v << ',' << p.w << ',' << p.dt << ',' << p.label << ','
          << scheme_name(p.features.scheme) << ',';
      for (Eigen::Index i = 0; i < p.features.values.size(); ++i)
        out << (i ? " " : "") << format_double(p.features.values(i));
      out << '\n';
    }
  }
  std::cout << "dt,positives,pairs\n";
  for (const auto& [dt, c] : counts) std::cout << dt << ',' << c.first << ',' << c.second << '\n';
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
  std::vector<std::string> seqs;
  GraphOptions graph;
  std::string out;
  TrainConfig train;
};

void run_train(const TrainArgs& a) {
  const auto bundles = load_all(a.seqs);
  const PipelineConfig cfg = a.graph.config();
  const auto pairs = harvest_bundles(bundles, cfg);
  const PairModel model = train_pair_model(pairs, cfg.scheme, cfg.tau_max, a.train);
  save_model(a.out, model);
  const AccuracyTable acc = pair_accuracy(model, pairs);
  std::cout << "dt,scheme,pairs,train_accuracy\n";
  for (int dt = 0; dt <= model.tau_max; ++dt) {
    auto it = acc.find(dt);
    std::cout << dt << ',' << scheme_name(model.bins[dt].scheme) << ','
              << (it == acc.end() ? 0 : it->second.support) << ','
              << (it == acc.end() ? std::string("-") : format_double(it->second.accuracy)) << '\n';
  }
}

// ---- track ----------------------------------------------------------------

struct TrackArgs {
  std::string seq;
  std::string model;
  std::string out;
  std::string diagnostics;
  GraphOptions graph;
  int min_cluster_size = kDefaultMinClusterSize;
  std::string init = "gaec";
  int max_passes = 100;
  bool no_interpolate = false;
  std::uint64_t seed = 0;
};

void run_track(const TrackArgs& a) {
  const SequenceBundle b = load_sequence(a.seq);
  const PairModel model = load_model(a.model);
  PipelineConfig cfg = a.graph.config();
  cfg.min_cluster_size = a.min_cluster_size;
  cfg.init = parse_init(a.init);
  cfg.max_passes = a.max_passes;
  cfg.interpolate = !a.no_interpolate;
  cfg.seed = a.seed;
  const TrackingResult r = run_tracking(b, model, cfg);
  auto out = open_out(a.out);
  write_tracks(out, r.tracks);

  const Diagnostics& d = r.diagnostics;
  std::ostringstream diag;
  diag << "nodes," << d.nodes << "\nedges," << d.edges << "\npasses," << d.passes
       << "\nobjective," << format_double(d.objective) << "\nclusters," << d.clusters
       << "\ntracks," << d.tracks << "\nsolver_seconds," << d.solver_seconds << "\nseconds,"
       << d.seconds << '\n';
  if (!a.diagnostics.empty()) open_out(a.diagnostics) << diag.str();
  std::cout << diag.str();
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string tracks;
  std::string gt;
  std::string seq;
  std::string model;
  std::string out;
  double iou_thresh = kDefaultIouThreshold;
  GraphOptions graph;
};

void run_eval(const EvalArgs& a) {
  if (a.tracks.empty() && a.model.empty())
    throw CliError("usage", "eval needs --tracks (CLEAR MOT) or --model (pair accuracy)");
  if (!a.tracks.empty()) {
    std::vector<Track> gt;
    if (!a.gt.empty()) {
      gt = load_gt(a.gt);
    } else if (!a.seq.empty()) {
      gt = load_sequence(a.seq).gt;
    } else {
      throw CliError("usage", "eval --tracks needs --gt or --seq");
    }
    const EvalReport r = clear_mot(load_tracks(a.tracks), gt, a.iou_thresh);
    print_report_table(std::cout, r);
    if (!a.out.empty()) {
      auto out = open_out(a.out);
      print_report_csv(out, r);
    }
  }
  if (!a.model.empty()) {
    if (a.seq.empty()) throw CliError("usage", "eval --model needs --seq");
    const PairModel model = load_model(a.model);
    PipelineConfig cfg = a.graph.config();
    cfg.scheme = model.scheme;
    cfg.tau_max = std::min(cfg.tau_max, model.tau_max);
    const auto pairs = harvest_bundles({load_sequence(a.seq)}, cfg);
    std::cout << "dt,accuracy,support\n";
    for (const auto& [dt, bin] : pair_accuracy(model, pairs))
      std::cout << dt << ',' << format_double(bin.accuracy) << ',' << bin.support << '\n';
  }
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::optional<std::uint64_t> seed;
  InstanceConfig instance;
  std::string init = "gaec";
  int max_passes = 100;
  std::string out;
};

void run_bench(const BenchArgs& a) {
  using Clock = std::chrono::steady_clock;
  const MulticutInstance g = synth_tracking_instance(a.instance, *a.seed);
  if (!a.out.empty()) {
    auto out = open_out(a.out);
    write_instance(out, g);
  }
  const auto start = Clock::now();
  const Partition init = parse_init(a.init) == InitMode::kGreedy ? greedy_contract(g)
                                                                   : singletons(g.num_nodes());
  const auto mid = Clock::now();
  const KljResult r = klj_solve(g, init, a.max_passes);
  const auto end = Clock::now();
  std::cout << "nodes," << g.num_nodes() << "\nedges," << g.edges().size() << "\ninit_objective,"
            << format_double(r.objective_trace.front()) << "\nobjective,"
            << format_double(r.objective_trace.back()) << "\nclusters,"
            << r.partition.num_clusters() << "\npasses," << r.passes << "\ninit_seconds,"
            << std::chrono::duration<double>(mid - start).count() << "\nsolver_seconds,"
            << std::chrono::duration<double>(end - mid).count() << '\n';
}

// Effective configuration of the chosen subcommand, loadable with --config.
std::string effective_config(const CLI::App& app, const CLI::App& sub) {
  std::istringstream all(app.config_to_str(true, false));
  const std::string prefix = sub.get_name() + ".";
  std::string line, out;
  while (std::getline(all, line))
    if (line.rfind(prefix, 0) == 0) out += line + '\n';
  return out;
}

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

int fail(const std::string& kind, const std::string& what) {
  std::cerr << "error: " << kind << ": " << one_line(what) << '\n';
  return kind == "usage" ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mctrack: detection linking with minimum-cost multicuts"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a TOML/INI file");
  std::string dump_path;
  app.add_option("--dump-config", dump_path, "Write the effective configuration to this file");

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate a synthetic sequence directory");
  s->add_option("--seed", synth.seed, "Random seed")->required();
  s->add_option("--out", synth.out, "Output directory")->required();
  s->add_option("--persons", synth.config.persons)->capture_default_str();
  s->add_option("--frames", synth.config.frames)->capture_default_str();
  s->add_option("--image-width", synth.config.image_width)->capture_default_str();
  s->add_option("--image-height", synth.config.image_height)->capture_default_str();
  s->add_option("--camera-jitter", synth.config.camera_jitter)->capture_default_str();
  s->add_option("--fp-rate", synth.config.fp_rate)->capture_default_str();
  s->add_option("--fn-rate", synth.config.fn_rate)->capture_default_str();
  s->add_option("--duplicate-rate", synth.config.duplicate_rate)->capture_default_str();
  s->add_option("--clutter", synth.config.clutter)->capture_default_str();
  s->add_option("--box-jitter", synth.config.box_jitter)->capture_default_str();
  s->add_option("--match-density", synth.config.matches.density, "Matches per frame pair")
      ->capture_default_str();
  s->add_option("--match-noise", synth.config.matches.noise, "Share of background matches")
      ->capture_default_str();
  s->add_option("--match-window", synth.config.match_window)->capture_default_str();
  s->add_flag("--no-stagger", synth.no_stagger, "All persons span the whole sequence");
  s->add_flag("--noiseless", synth.noiseless, "Perfect detections and matches");
  s->add_option("--occlusion", synth.occlusions, "person:start:length (repeatable)");

  PairsArgs pairs;
  auto* p = app.add_subcommand("pairs", "Harvest labeled detection pairs");
  p->add_option("--seq", pairs.seqs, "Sequence directory (repeatable)")->required();
  pairs.graph.attach(p, true);
  p->add_option("--out", pairs.out, "Write the labeled pairs as CSV");

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Fit the per-gap logistic pair model");
  t->add_option("--seq", train.seqs, "Training sequence directory (repeatable)")->required();
  train.graph.attach(t, true);
  t->add_option("--lambda", train.train.lambda, "L2 weight")->capture_default_str();
  t->add_option("--max-iterations", train.train.max_iterations)->capture_default_str();
  t->add_option("--model,--out", train.out, "Model file to write")->required();

  TrackArgs track;
  auto* k = app.add_subcommand("track", "Track one sequence");
  k->add_option("--seq", track.seq, "Sequence directory")->required();
  k->add_option("--model", track.model, "Trained model file")->required();
  k->add_option("--out", track.out, "Track file to write")->required();
  track.graph.attach(k, false);
  k->add_option("--min-cluster-size", track.min_cluster_size, "Smallest cluster kept as a track")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  k->add_option("--init", track.init, "Solver start: gaec or singleton")
      ->capture_default_str()
      ->check(CLI::IsMember({"gaec", "singleton"}));
  k->add_option("--max-passes", track.max_passes)->capture_default_str()->check(CLI::PositiveNumber);
  k->add_flag("--no-interpolate", track.no_interpolate, "Leave gaps inside tracks empty");
  k->add_option("--seed", track.seed, "Recorded for reproducibility; tracking is deterministic")
      ->capture_default_str();
  k->add_option("--diagnostics", track.diagnostics, "Write solver diagnostics as CSV");

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "CLEAR MOT metrics or pair accuracy");
  e->add_option("--tracks", eval.tracks, "Track file to score");
  e->add_option("--gt", eval.gt, "Ground-truth file");
  e->add_option("--seq", eval.seq, "Sequence directory (ground truth and pairs)");
  e->add_option("--model", eval.model, "Report per-gap pair accuracy of this model");
  e->add_option("--iou-thresh", eval.iou_thresh, "IoU needed for a match")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  eval.graph.attach(e, true);
  e->add_option("--out", eval.out, "Write the CLEAR MOT report as CSV");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time the solver on a synthetic tracking-shaped instance");
  b->add_option("--seed", bench.seed, "Random seed")->required();
  b->add_option("--frames", bench.instance.frames)->capture_default_str();
  b->add_option("--persons", bench.instance.persons)->capture_default_str();
  b->add_option("--tau-max", bench.instance.tau_max)->capture_default_str();
  b->add_option("--signal", bench.instance.signal)->capture_default_str();
  b->add_option("--noise", bench.instance.noise)->capture_default_str();
  b->add_option("--init", bench.init)->capture_default_str()->check(CLI::IsMember({"gaec", "singleton"}));
  b->add_option("--max-passes", bench.max_passes)->capture_default_str()->check(CLI::PositiveNumber);
  b->add_option("--out", bench.out, "Also write the instance to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForVersion& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    return fail("usage", ex.what());
  }

  try {
    if (!dump_path.empty()) open_out(dump_path) << effective_config(app, *app.get_subcommands().front());
    if (*s) run_synth(synth);
    else if (*p) run_pairs(pairs);
    else if (*t) run_train(train);
    else if (*k) run_track(track);
    else if (*e) run_eval(eval);
    else if (*b) run_bench(bench);
  } catch (const CliError& ex) {
    return fail(ex.kind, ex.what());
  } catch (const ParseError& ex) {
    return fail("parse", ex.what());
  } catch (const InvalidInput& ex) {
    return fail("input", ex.what());
  } catch (const std::exception& ex) {
    return fail("internal", ex.what());
  }
  return 0;
}
