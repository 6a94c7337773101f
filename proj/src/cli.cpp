#include "actrack/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "actrack/coa.hpp"
#include "actrack/eval.hpp"
#include "actrack/media_io.hpp"
#include "actrack/motion.hpp"
#include "actrack/pipeline.hpp"
#include "actrack/synth.hpp"

namespace actrack::cli {

namespace fs = std::filesystem;

namespace {

/// Input problems detected before any work starts.
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_file(const fs::path& p, const char* flag) {
  if (p.empty()) throw ValidationError(std::string(flag) + " is required");
  if (!fs::is_regular_file(p)) throw ValidationError(std::string(flag) + ": file not found: " + p.string());
}

void require_dir(const fs::path& p, const char* flag) {
  if (p.empty()) throw ValidationError(std::string(flag) + " is required");
  if (!fs::is_directory(p)) throw ValidationError(std::string(flag) + ": directory not found: " + p.string());
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Expands `--config FILE` into `--key=value` arguments for every key the
// command line does not already set, so explicit flags win.
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
  fs::path config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (config.empty()) return args;
  std::ifstream in(config);
  if (!in) throw ValidationError("--config: file not found: " + config.string());
  std::set<std::string> given;
  for (const auto& a : args) {
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError(config.string(), line_no, "", "expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string value = trim(line.substr(eq + 1));
    if (given.count(key)) continue;
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

struct TrackerFlags {
  double ft = 0.90;
  std::size_t packs = 5;
  std::size_t coyotes = 8;
  std::size_t iterations = 40;
  double expansion = 2.0;
  double max_expansion = 8.0;
  double size_tolerance = 0.2;
  bool freeze_size = false;
  double spawn_iou = 0.3;
  int max_targets = 16;

  void add(CLI::App* app) {
    app->add_option("--ft", ft, "Occlusion threshold on window fitness")->capture_default_str();
    app->add_option("--packs", packs, "Packs per target swarm")->capture_default_str();
    app->add_option("--coyotes", coyotes, "Coyotes per pack")->capture_default_str();
    app->add_option("--iterations", iterations, "Swarm iterations per frame")->capture_default_str();
    app->add_option("--expansion", expansion, "Search window growth per occluded frame")->capture_default_str();
    app->add_option("--max-expansion", max_expansion, "Search window cap, multiple of target size")->capture_default_str();
    app->add_option("--size-tolerance", size_tolerance, "Width/height search range (fraction)")->capture_default_str();
    app->add_flag("--freeze-size", freeze_size, "Search position only");
    app->add_option("--spawn-iou", spawn_iou, "Max IOU with tracked boxes for a detection to start a target")->capture_default_str();
    app->add_option("--max-targets", max_targets, "Maximum simultaneous targets")->capture_default_str();
  }

  pipeline::TrackOptions options(std::uint64_t seed) const {
    pipeline::TrackOptions o;
    o.tracker.ft_threshold = ft;
    o.tracker.n_packs = packs;
    o.tracker.n_coyotes = coyotes;
    o.tracker.iterations_per_frame = iterations;
    o.tracker.expansion_factor = expansion;
    o.tracker.max_expansion = max_expansion;
    o.tracker.size_tolerance = size_tolerance;
    o.tracker.freeze_size = freeze_size;
    o.tracker.seed = seed;
    o.spawn_iou = spawn_iou;
    o.max_targets = max_targets;
    o.tracker.validate();
    return o;
  }
};

struct FusionFlags {
  std::string method = "mean";
  double iou_threshold = 0.3;
  std::string motion_basis = "x";

  void add(CLI::App* app) {
    app->add_option("--method", method, "Final fusion: mean or max")
        ->check(CLI::IsMember({"mean", "max"}))
        ->capture_default_str();
    app->add_option("--iou-threshold", iou_threshold, "Match threshold t")->capture_default_str();
    app->add_option("--motion-basis", motion_basis, "Motion stream iterated when fusing X/Y motion")
        ->check(CLI::IsMember({"x", "y"}))
        ->capture_default_str();
  }

  FusionConfig config() const {
    FusionConfig c;
    c.method = parse_fusion_method(method);
    c.iou_threshold = iou_threshold;
    c.motion_basis = motion_basis == "y" ? MotionBasis::YOverX : MotionBasis::XOverY;
    c.validate();
    return c;
  }
};

FrameDetections read_optional(const fs::path& p) {
  return p.empty() ? FrameDetections{} : read_detections(p);
}

// ---- objective functions for coa-bench -------------------------------------

struct Benchmark {
  coa::Objective f;
  double bound;
};

Benchmark benchmark(const std::string& name) {
  if (name == "sphere") {
    return {[](std::span<const double> x) {
              double s = 0.0;
              for (double v : x) s += v * v;
              return s;
            },
            5.0};
  }
  if (name == "rastrigin") {
    return {[](std::span<const double> x) {
              double s = 10.0 * static_cast<double>(x.size());
              for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
              return s;
            },
            5.12};
  }
  if (name == "rosenbrock") {
    return {[](std::span<const double> x) {
              double s = 0.0;
              for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                s += 100.0 * std::pow(x[i + 1] - x[i] * x[i], 2) + std::pow(1.0 - x[i], 2);
              }
              return s;
            },
            5.0};
  }
  if (name == "ackley") {
    return {[](std::span<const double> x) {
              const double n = static_cast<double>(x.size());
              double sq = 0.0, cs = 0.0;
              for (double v : x) {
                sq += v * v;
                cs += std::cos(2.0 * std::numbers::pi * v);
              }
              return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 +
                     std::numbers::e;
            },
            32.768};
  }
  throw ValidationError("unknown function '" + name + "' (sphere, rastrigin, rosenbrock, ackley)");
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Action localization and COA tracking toolkit", "actrack"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");
  app.footer("Any command accepts --config FILE with key=value lines; flags override it.");

  // synth
  std::string s_scenario = "linear";
  int s_frames = 0;
  std::uint64_t seed = 0;
  fs::path out_path;
  double s_jitter = 2.0, s_drop = 0.0, s_motion_jitter = 4.0, s_motion_drop = 0.1;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic scene with ground truth and detections");
  synth_cmd->add_option("--scenario", s_scenario, "Preset name or key=value scenario file")->capture_default_str();
  synth_cmd->add_option("--frames", s_frames, "Frame count (0 = preset default)");
  synth_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--out", out_path, "Output directory")->required();
  synth_cmd->add_option("--jitter", s_jitter, "Appearance detection jitter (px)")->capture_default_str();
  synth_cmd->add_option("--drop", s_drop, "Appearance detection drop rate")->capture_default_str();
  synth_cmd->add_option("--motion-jitter", s_motion_jitter, "Motion detection jitter (px)")->capture_default_str();
  synth_cmd->add_option("--motion-drop", s_motion_drop, "Motion detection drop rate")->capture_default_str();

  // fuse
  fs::path appearance, mvx, mvy, frames_dir;
  FusionFlags fusion_flags;
  auto* fuse_cmd = app.add_subcommand("fuse", "Fuse appearance and X/Y motion detection streams");
  fuse_cmd->add_option("--appearance", appearance, "Appearance detections (JSON Lines)")->required();
  fuse_cmd->add_option("--mvx", mvx, "X-motion detections (JSON Lines)");
  fuse_cmd->add_option("--mvy", mvy, "Y-motion detections (JSON Lines)");
  fuse_cmd->add_option("--frames", frames_dir, "Frame directory, used to clip boxes to the frame");
  fuse_cmd->add_option("--out", out_path, "Output directory (writes fused.jsonl)")->required();
  fusion_flags.add(fuse_cmd);

  // track
  fs::path detections;
  TrackerFlags tracker_flags;
  auto* track_cmd = app.add_subcommand("track", "Track targets started from (fused) detections");
  track_cmd->add_option("--frames", frames_dir, "Frame directory")->required();
  track_cmd->add_option("--detections", detections, "Detections that start targets (JSON Lines)")->required();
  track_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  track_cmd->add_option("--out", out_path, "Output directory (writes tracks.jsonl)")->required();
  tracker_flags.add(track_cmd);

  // mv-estimate
  int block_size = 16, search_radius = 8;
  bool mv_render = false, mv_detections = false;
  auto* mv_cmd = app.add_subcommand("mv-estimate", "Block-matching motion vectors for a frame sequence");
  mv_cmd->add_option("--frames", frames_dir, "Frame directory")->required();
  mv_cmd->add_option("--block-size", block_size, "Macro-block size (px)")->capture_default_str();
  mv_cmd->add_option("--search-radius", search_radius, "Search radius (px)")->capture_default_str();
  mv_cmd->add_option("--out", out_path, "Output directory (writes mv.txt)")->required();
  mv_cmd->add_flag("--render", mv_render, "Also write X/Y motion images to mvx/ and mvy/");
  mv_cmd->add_flag("--detections", mv_detections, "Also write motion blob detections mvx.jsonl / mvy.jsonl");

  // eval-det
  fs::path pred, gt_path;
  std::vector<double> deltas = {0.2};
  std::string method_label = "pred";
  auto* evald_cmd = app.add_subcommand("eval-det", "Frame-AP / mAP of detections against ground truth");
  evald_cmd->add_option("--pred", pred, "Predicted detections (JSON Lines)")->required();
  evald_cmd->add_option("--gt", gt_path, "Ground truth (JSON Lines)")->required();
  evald_cmd->add_option("--delta", deltas, "IOU threshold(s)")->capture_default_str();
  evald_cmd->add_option("--label", method_label, "Row label in the table")->capture_default_str();
  evald_cmd->add_option("--out", out_path, "Output directory (writes eval_det.jsonl)");

  // eval-track
  fs::path tracks_path;
  std::vector<int> target_ids;
  double iou_floor = 0.5;
  auto* evalt_cmd = app.add_subcommand("eval-track", "Tracking success against ground truth");
  evalt_cmd->add_option("--tracks", tracks_path, "Track records (JSON Lines)")->required();
  evalt_cmd->add_option("--gt", gt_path, "Ground truth (JSON Lines)")->required();
  evalt_cmd->add_option("--target-id", target_ids, "Target id(s); default every id in the ground truth");
  evalt_cmd->add_option("--iou-floor", iou_floor, "IOU counted as tracked")->capture_default_str();
  evalt_cmd->add_option("--out", out_path, "Output directory (writes eval_track.jsonl)");

  // coa-bench
  std::string function = "sphere";
  std::size_t dim = 10, packs = 5, coyotes = 5, iterations = 500, runs = 1;
  double bound = 0.0, target = 1e-3;
  auto* bench_cmd = app.add_subcommand("coa-bench", "Run the coyote optimizer on a benchmark function");
  bench_cmd->add_option("--function", function, "sphere, rastrigin, rosenbrock or ackley")->capture_default_str();
  bench_cmd->add_option("--dim", dim, "Dimension")->capture_default_str();
  bench_cmd->add_option("--packs", packs, "Packs")->capture_default_str();
  bench_cmd->add_option("--coyotes", coyotes, "Coyotes per pack")->capture_default_str();
  bench_cmd->add_option("--iterations", iterations, "Iterations")->capture_default_str();
  bench_cmd->add_option("--runs", runs, "Independent runs with seeds seed, seed+1, ...")->capture_default_str();
  bench_cmd->add_option("--bound", bound, "Symmetric box bound (0 = function default)");
  bench_cmd->add_option("--target", target, "Success threshold on best fitness")->capture_default_str();
  bench_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();

  // pipeline
  bool live_motion = false;
  fs::path mv_sidecar;
  std::string detector;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Fuse streams and track, frame by frame");
  pipe_cmd->add_option("--frames", frames_dir, "Frame directory")->required();
  pipe_cmd->add_option("--appearance", appearance, "Appearance detections (JSON Lines)");
  pipe_cmd->add_option("--mvx", mvx, "X-motion detections (JSON Lines)");
  pipe_cmd->add_option("--mvy", mvy, "Y-motion detections (JSON Lines)");
  pipe_cmd->add_flag("--mv-live", live_motion, "Derive motion streams by block matching");
  pipe_cmd->add_option("--mv-sidecar", mv_sidecar, "Motion fields file (frame bx by dx dy)");
  pipe_cmd->add_option("--block-size", block_size, "Macro-block size (px)")->capture_default_str();
  pipe_cmd->add_option("--search-radius", search_radius, "Search radius (px)")->capture_default_str();
  pipe_cmd->add_option("--detector", detector, "External appearance detector: CMD FRAMES_DIR OUT_JSONL");
  pipe_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  pipe_cmd->add_option("--out", out_path, "Output directory")->required();
  fusion_flags.add(pipe_cmd);
  tracker_flags.add(pipe_cmd);

  try {
    if (!raw_args.empty() && raw_args.front().rfind("-", 0) != 0 &&
        app.get_subcommand_no_throw(raw_args.front()) == nullptr) {
      throw ValidationError("unknown command '" + raw_args.front() +
                            "' (see actrack --help for the list)");
    }
    std::vector<std::string> args = apply_config_file(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kOk : kValidationError;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kOk : kValidationError;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    const std::string help = subs.empty() ? "actrack --help" : "actrack " + subs.front()->get_name() + " --help";
    err << "actrack: error: " << e.what() << " (see " << help << ")\n";
    return kValidationError;
  } catch (const std::exception& e) {
    err << "actrack: error: " << e.what() << '\n';
    return kValidationError;
  }

  try {
    if (*synth_cmd) {
      fs::path scenario_path(s_scenario);
      synth::Scenario sc = fs::is_regular_file(scenario_path) ? synth::load_scenario(scenario_path)
                                                             : synth::preset(s_scenario, s_frames, seed);
      if (fs::is_regular_file(scenario_path)) {
        if (s_frames > 0) sc.n_frames = s_frames;
        if (synth_cmd->count("--seed")) sc.seed = seed;
      }
      const synth::Scene scene = synth::generate(sc);
      write_frames(out_path / "frames", scene.frames);
      write_ground_truth(out_path / "gt.jsonl", scene.ground_truth);
      write_detections(out_path / "appearance.jsonl",
                       synth::corrupt_detections(scene.ground_truth, s_jitter, s_drop, derive_seed(sc.seed, 101), true));
      write_detections(out_path / "mvx.jsonl",
                       synth::corrupt_detections(scene.ground_truth, s_motion_jitter, s_motion_drop, derive_seed(sc.seed, 102), true));
      write_detections(out_path / "mvy.jsonl",
                       synth::corrupt_detections(scene.ground_truth, s_motion_jitter, s_motion_drop, derive_seed(sc.seed, 103), true));
      out << "wrote " << scene.frames.size() << " frames and " << scene.ground_truth.size()
          << " ground-truth records to " << out_path.string() << '\n';
      return kOk;
    }

    if (*fuse_cmd) {
      require_file(appearance, "--appearance");
      if (!mvx.empty()) require_file(mvx, "--mvx");
      if (!mvy.empty()) require_file(mvy, "--mvy");
      int w = 0, h = 0;
      if (!frames_dir.empty()) {
        require_dir(frames_dir, "--frames");
        const FrameSequence seq = read_frames(frames_dir);
        w = seq.width();
        h = seq.height();
      }
      const FusionConfig cfg = fusion_flags.config();
      const FrameDetections fused =
          pipeline::fuse_sequence(read_detections(appearance), read_optional(mvx), read_optional(mvy), cfg, w, h);
      write_detections(out_path / "fused.jsonl", fused);
      std::size_t n = 0;
      for (const auto& [f, d] : fused) n += d.size();
      out << "fused " << n << " detections over " << fused.size() << " frames -> "
          << (out_path / "fused.jsonl").string() << '\n';
      return kOk;
    }

    if (*track_cmd) {
      require_dir(frames_dir, "--frames");
      require_file(detections, "--detections");
      const auto options = tracker_flags.options(seed);
      const FrameSequence seq = read_frames(frames_dir);
      const auto tracks = pipeline::track_sequence(seq, read_detections(detections), options);
      write_tracks(out_path / "tracks.jsonl", tracks);
      out << "wrote " << tracks.size() << " track records -> " << (out_path / "tracks.jsonl").string() << '\n';
      return kOk;
    }

    if (*mv_cmd) {
      require_dir(frames_dir, "--frames");
      if (block_size < 1 || search_radius < 0) throw ValidationError("--block-size must be >= 1 and --search-radius >= 0");
      const FrameSequence seq = read_frames(frames_dir);
      std::map<int, MotionField> fields;
      std::vector<Detection> dx_dets, dy_dets;
      Image prev = seq.load(0);
      for (std::size_t f = 1; f < seq.size(); ++f) {
        Image curr = seq.load(f);
        MotionField field = estimate_motion(prev, curr, block_size, search_radius);
        const int index = static_cast<int>(f);
        if (mv_render) {
          auto [xi, yi] = render_motion(field, seq.width(), seq.height());
          write_pnm(out_path / "mvx" / frame_file_name(f, 1), xi);
          write_pnm(out_path / "mvy" / frame_file_name(f, 1), yi);
        }
        if (mv_detections) {
          auto a = pipeline::motion_detections(field, true, index, seq.width(), seq.height());
          auto b = pipeline::motion_detections(field, false, index, seq.width(), seq.height());
          dx_dets.insert(dx_dets.end(), a.begin(), a.end());
          dy_dets.insert(dy_dets.end(), b.begin(), b.end());
        }
        fields.emplace(index, std::move(field));
        prev = std::move(curr);
      }
      write_mv_sidecar(out_path / "mv.txt", fields);
      if (mv_detections) {
        write_detections(out_path / "mvx.jsonl", dx_dets);
        write_detections(out_path / "mvy.jsonl", dy_dets);
      }
      out << "estimated " << fields.size() << " motion fields -> " << (out_path / "mv.txt").string() << '\n';
      return kOk;
    }

    if (*evald_cmd) {
      require_file(pred, "--pred");
      require_file(gt_path, "--gt");
      const auto p = read_detection_records(pred);
      const auto g = read_ground_truth(gt_path);
      std::vector<eval::DetEvalReport> reports;
      for (double d : deltas) reports.push_back(eval::evaluate_detections(p, g, d));
      out << eval::format_map_table({{method_label, reports}});
      std::ostringstream lines;
      for (const auto& r : reports) lines << eval::to_json(r, method_label) << '\n';
      for (const auto& r : reports) {
        for (const auto& c : r.classes_without_ground_truth) {
          err << "actrack: warning: class '" << c << "' has predictions but no ground truth (AP 0)\n";
        }
      }
      if (!out_path.empty()) {
        fs::create_directories(out_path);
        std::ofstream(out_path / "eval_det.jsonl") << lines.str();
      } else {
        out << lines.str();
      }
      return kOk;
    }

    if (*evalt_cmd) {
      require_file(tracks_path, "--tracks");
      require_file(gt_path, "--gt");
      const auto t = read_tracks(tracks_path);
      const auto g = read_ground_truth(gt_path);
      std::vector<int> ids = target_ids;
      if (ids.empty()) {
        std::set<int> seen;
        for (const auto& r : g) seen.insert(r.target_id);
        ids.assign(seen.begin(), seen.end());
      }
      std::ostringstream lines;
      for (int id : ids) lines << eval::to_json(eval::evaluate_tracks(t, g, id, iou_floor)) << '\n';
      if (!out_path.empty()) {
        fs::create_directories(out_path);
        std::ofstream(out_path / "eval_track.jsonl") << lines.str();
      }
      out << lines.str();
      return kOk;
    }

    if (*bench_cmd) {
      if (dim < 1) throw ValidationError("--dim must be >= 1");
      const Benchmark b = benchmark(function);
      const double bnd = bound > 0.0 ? bound : b.bound;
      std::size_t successes = 0;
      double overall = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < runs; ++r) {
        coa::Config cfg;
        cfg.n_packs = packs;
        cfg.n_coyotes_per_pack = coyotes;
        cfg.lower_bounds.assign(dim, -bnd);
        cfg.upper_bounds.assign(dim, bnd);
        cfg.max_iterations = iterations;
        cfg.rng_seed = seed + r;
        const coa::Result res = coa::run(cfg, b.f);
        if (res.best_fitness < target) ++successes;
        overall = std::min(overall, res.best_fitness);
        out << "{\"function\":\"" << function << "\",\"dim\":" << dim << ",\"seed\":" << cfg.rng_seed
            << ",\"iterations\":" << res.iterations_run << ",\"best_fitness\":" << res.best_fitness << "}\n";
      }
      out << "best_fitness " << overall << '\n'
          << "success " << successes << "/" << runs << " below " << target << '\n';
      return kOk;
    }

    if (*pipe_cmd) {
      require_dir(frames_dir, "--frames");
      if (detector.empty()) require_file(appearance, "--appearance");
      if (!mvx.empty()) require_file(mvx, "--mvx");
      if (!mvy.empty()) require_file(mvy, "--mvy");
      if (!mv_sidecar.empty()) require_file(mv_sidecar, "--mv-sidecar");
      pipeline::PipelineConfig pc;
      pc.frames_dir = frames_dir;
      pc.appearance = appearance;
      pc.mvx = mvx;
      pc.mvy = mvy;
      pc.live_motion = live_motion;
      pc.mv_sidecar = mv_sidecar;
      pc.block_size = block_size;
      pc.search_radius = search_radius;
      pc.detector_command = detector;
      pc.fusion = fusion_flags.config();
      pc.track = tracker_flags.options(seed);
      pc.out_dir = out_path;
      const auto result = pipeline::run_pipeline(pc);
      out << eval::format_speed_table(result.speed);
      out << "outputs in " << out_path.string() << '\n';
      return kOk;
    }
  } catch (const ValidationError& e) {
    err << "actrack: error: " << e.what() << '\n';
    return kValidationError;
  } catch (const FormatError& e) {
    err << "actrack: error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    err << "actrack: error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    err << "actrack: runtime error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace actrack::cli
