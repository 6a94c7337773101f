#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "actrack/fusion.hpp"
#include "actrack/image.hpp"
#include "actrack/media_io.hpp"

namespace actrack::synth {

enum class Trajectory { Linear, Sinusoidal, Piecewise };
enum class Background { Noise, Constant };

struct Waypoint {
  int frame = 0;
  double x = 0.0;
  double y = 0.0;
};

/// A textured rectangle moving over the background. Positions are top-left
/// corners and are rounded to whole pixels before drawing.
struct Actor {
  int target_id = 0;
  std::string class_id = "actor";
  std::uint64_t texture_seed = 1;
  int width = 40;
  int height = 60;
  Trajectory trajectory = Trajectory::Linear;
  double x0 = 0.0;
  double y0 = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  /// Sinusoidal: y += amplitude * sin(2 pi t / period) on top of the linear drift.
  double amplitude = 0.0;
  double period = 50.0;
  /// Piecewise: linear interpolation between waypoints, held past the ends.
  std::vector<Waypoint> waypoints;
};

struct Occluder {
  PixelRect rect;
  std::uint8_t fill = 40;
};

struct Scenario {
  int width = 320;
  int height = 240;
  int channels = 1;
  int n_frames = 100;
  std::uint64_t seed = 0;
  Background background = Background::Noise;
  std::uint8_t background_level = 96;
  /// Per-frame uniform noise amplitude added to every pixel (0 = none).
  int sensor_noise = 0;
  std::vector<Actor> actors;
  std::vector<Occluder> occluders;

  void validate() const;
};

struct Scene {
  std::vector<Image> frames;
  /// One record per actor per frame, frame-major, actors in scenario order.
  std::vector<GroundTruthRecord> ground_truth;
};

/// Integer top-left position of an actor at frame t.
std::pair<int, int> actor_position(const Actor& actor, int t);

/// Seeded multi-octave value noise stretched to the full 0..255 range.
Image make_texture(int width, int height, int channels, std::uint64_t seed);

Scene generate(const Scenario& scenario);

/// Named presets: "linear", "occlusion", "multi", "sinusoidal", "static".
/// n_frames <= 0 keeps the preset's own frame count.
Scenario preset(const std::string& name, int n_frames, std::uint64_t seed);

/// Flat key=value scenario file (see README for keys).
Scenario load_scenario(const std::filesystem::path& path);

/// Simulated detector output: each gt box is dropped with probability
/// drop_rate, otherwise every coordinate is jittered by up to +-jitter and a
/// score is drawn from [0.5, 1].
std::vector<Detection> corrupt_detections(const std::vector<GroundTruthRecord>& gt, double jitter,
                                          double drop_rate, std::uint64_t seed,
                                          bool visible_only = false);

}  // namespace actrack::synth
