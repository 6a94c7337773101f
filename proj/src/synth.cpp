#include "actrack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "actrack/random.hpp"

namespace actrack::synth {

void Scenario::validate() const {
  if (width <= 0 || height <= 0) throw std::invalid_argument("scenario: empty frame size");
  if (channels != 1 && channels != 3) throw std::invalid_argument("scenario: channels must be 1 or 3");
  if (n_frames < 1) throw std::invalid_argument("scenario: need at least one frame");
  if (sensor_noise < 0 || sensor_noise > 255) throw std::invalid_argument("scenario: bad sensor noise");
  for (const Actor& a : actors) {
    const std::string who = "scenario: actor " + std::to_string(a.target_id);
    if (a.width <= 0 || a.height <= 0) throw std::invalid_argument(who + " has empty size");
    if (a.width > width || a.height > height) throw std::invalid_argument(who + " is larger than the frame");
    if (a.trajectory == Trajectory::Linear) {
      for (int t : {0, n_frames - 1}) {
        const auto [x, y] = actor_position(a, t);
        if (x < 0 || y < 0 || x + a.width > width || y + a.height > height) {
          throw std::invalid_argument(who + " leaves the frame at frame " + std::to_string(t));
        }
      }
    }
    if (a.trajectory == Trajectory::Sinusoidal && !(a.period > 0.0)) {
      throw std::invalid_argument(who + " needs a positive period");
    }
    if (a.trajectory == Trajectory::Piecewise && a.waypoints.empty()) {
      throw std::invalid_argument(who + " needs waypoints");
    }
  }
}

std::pair<int, int> actor_position(const Actor& a, int t) {
  double x = a.x0 + a.vx * t;
  double y = a.y0 + a.vy * t;
  switch (a.trajectory) {
    case Trajectory::Linear:
      break;
    case Trajectory::Sinusoidal:
      y += a.amplitude * std::sin(2.0 * std::numbers::pi * t / a.period);
      break;
    case Trajectory::Piecewise: {
      const auto& w = a.waypoints;
      if (t <= w.front().frame) {
        x = w.front().x;
        y = w.front().y;
      } else if (t >= w.back().frame) {
        x = w.back().x;
        y = w.back().y;
      } else {
        for (std::size_t i = 1; i < w.size(); ++i) {
          if (t <= w[i].frame) {
            const double span = w[i].frame - w[i - 1].frame;
            const double f = span > 0 ? (t - w[i - 1].frame) / span : 1.0;
            x = w[i - 1].x + f * (w[i].x - w[i - 1].x);
            y = w[i - 1].y + f * (w[i].y - w[i - 1].y);
            break;
          }
        }
      }
      break;
    }
  }
  return {static_cast<int>(std::lround(x)), static_cast<int>(std::lround(y))};
}

Image make_texture(int width, int height, int channels, std::uint64_t seed) {
  struct Octave {
    int cell;
    int weight;
  };
  constexpr Octave octaves[] = {{32, 8}, {16, 4}, {8, 2}, {4, 1}};

  Image tex(width, height, channels);
  std::vector<int> acc(static_cast<std::size_t>(width) * height);
  for (int c = 0; c < channels; ++c) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t o = 0; o < std::size(octaves); ++o) {
      const int s = octaves[o].cell;
      const int gw = width / s + 2;
      const int gh = height / s + 2;
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c * 16 + o)));
      std::vector<int> lattice(static_cast<std::size_t>(gw) * gh);
      for (int& v : lattice) v = static_cast<int>(rng.next() >> 56);
      for (int y = 0; y < height; ++y) {
        const int gy = y / s;
        const int fy = y % s;
        for (int x = 0; x < width; ++x) {
          const int gx = x / s;
          const int fx = x % s;
          const int a = lattice[static_cast<std::size_t>(gy) * gw + gx];
          const int b = lattice[static_cast<std::size_t>(gy) * gw + gx + 1];
          const int d = lattice[static_cast<std::size_t>(gy + 1) * gw + gx];
          const int e = lattice[static_cast<std::size_t>(gy + 1) * gw + gx + 1];
          const int v = ((s - fx) * (s - fy) * a + fx * (s - fy) * b + (s - fx) * fy * d + fx * fy * e);
          acc[static_cast<std::size_t>(y) * width + x] += octaves[o].weight * v / (s * s);
        }
      }
    }
    const auto [lo_it, hi_it] = std::minmax_element(acc.begin(), acc.end());
    const int lo = *lo_it;
    const int span = std::max(1, *hi_it - lo);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const int v = acc[static_cast<std::size_t>(y) * width + x];
        tex.at(x, y, c) = static_cast<std::uint8_t>((v - lo) * 255 / span);
      }
    }
  }
  return tex;
}

namespace {

Image make_background(const Scenario& sc) {
  Image bg(sc.width, sc.height, sc.channels, sc.background_level);
  if (sc.background == Background::Noise) {
    Rng rng(derive_seed(sc.seed, 0xb6u));
    for (auto& v : bg.data()) {
      const int n = static_cast<int>(rng.below(129)) - 64;
      v = static_cast<std::uint8_t>(std::clamp(sc.background_level + n, 0, 255));
    }
  }
  return bg;
}

int covered_pixels(const PixelRect& actor, const std::vector<Occluder>& occluders, int width,
                   int height) {
  int covered = 0;
  for (int y = std::max(0, actor.y); y < std::min(height, actor.y + actor.h); ++y) {
    for (int x = std::max(0, actor.x); x < std::min(width, actor.x + actor.w); ++x) {
      for (const Occluder& o : occluders) {
        if (x >= o.rect.x && x < o.rect.x + o.rect.w && y >= o.rect.y && y < o.rect.y + o.rect.h) {
          ++covered;
          break;
        }
      }
    }
  }
  return covered;
}

}  // namespace

Scene generate(const Scenario& sc) {
  sc.validate();
  const Image background = make_background(sc);
  std::vector<Image> textures;
  for (const Actor& a : sc.actors) {
    textures.push_back(make_texture(a.width, a.height, sc.channels, a.texture_seed));
  }

  Scene scene;
  scene.frames.reserve(static_cast<std::size_t>(sc.n_frames));
  for (int t = 0; t < sc.n_frames; ++t) {
    Image frame = background;
    for (std::size_t i = 0; i < sc.actors.size(); ++i) {
      const Actor& a = sc.actors[i];
      const auto [ax, ay] = actor_position(a, t);
      for (int y = std::max(0, ay); y < std::min(sc.height, ay + a.height); ++y) {
        for (int x = std::max(0, ax); x < std::min(sc.width, ax + a.width); ++x) {
          for (int c = 0; c < sc.channels; ++c) frame.at(x, y, c) = textures[i].at(x - ax, y - ay, c);
        }
      }
      const PixelRect rect{ax, ay, a.width, a.height};
      const int covered = covered_pixels(rect, sc.occluders, sc.width, sc.height);
      GroundTruthRecord g;
      g.frame = t;
      g.class_id = a.class_id;
      g.target_id = a.target_id;
      g.box = clip(BoundingBox{static_cast<double>(ax), static_cast<double>(ay),
                               static_cast<double>(ax + a.width), static_cast<double>(ay + a.height)},
                   sc.width, sc.height);
      g.visible = 2 * covered < a.width * a.height;
      scene.ground_truth.push_back(std::move(g));
    }
    for (const Occluder& o : sc.occluders) {
      for (int y = std::max(0, o.rect.y); y < std::min(sc.height, o.rect.y + o.rect.h); ++y) {
        for (int x = std::max(0, o.rect.x); x < std::min(sc.width, o.rect.x + o.rect.w); ++x) {
          for (int c = 0; c < sc.channels; ++c) frame.at(x, y, c) = o.fill;
        }
      }
    }
    if (sc.sensor_noise > 0) {
      Rng rng(derive_seed(sc.seed, 0x10000u + static_cast<std::uint64_t>(t)));
      const auto span = static_cast<std::uint64_t>(2 * sc.sensor_noise + 1);
      for (auto& v : frame.data()) {
        const int n = static_cast<int>(rng.below(span)) - sc.sensor_noise;
        v = static_cast<std::uint8_t>(std::clamp(static_cast<int>(v) + n, 0, 255));
      }
    }
    scene.frames.push_back(std::move(frame));
  }
  return scene;
}

Scenario preset(const std::string& name, int n_frames, std::uint64_t seed) {
  Scenario sc;
  sc.seed = seed;
  Actor a;
  a.target_id = 0;
  a.class_id = "walk";
  a.texture_seed = derive_seed(seed, 1);
  if (name == "linear") {
    sc.n_frames = 100;
    a.width = 40;
    a.height = 60;
    a.x0 = 30;
    a.y0 = 60;
    a.vx = 2;
    a.vy = 1;
    sc.actors.push_back(a);
  } else if (name == "static") {
    sc.n_frames = 20;
    a.width = 40;
    a.height = 60;
    a.x0 = 140;
    a.y0 = 90;
    sc.actors.push_back(a);
  } else if (name == "sinusoidal") {
    sc.n_frames = 100;
    a.trajectory = Trajectory::Sinusoidal;
    a.width = 40;
    a.height = 60;
    a.x0 = 30;
    a.y0 = 90;
    a.vx = 2;
    a.amplitude = 20;
    a.period = 50;
    sc.actors.push_back(a);
  } else if (name == "occlusion") {
    // Moving at 6 px/frame, the 32 px actor is completely behind the 86 px
    // occluder for frames 20..29.
    sc.n_frames = 45;
    sc.background = Background::Constant;
    a.width = 32;
    a.height = 48;
    a.x0 = 20;
    a.y0 = 96;
    a.vx = 6;
    sc.actors.push_back(a);
    sc.occluders.push_back({PixelRect{140, 0, 86, 240}, 40});
  } else if (name == "multi") {
    sc.n_frames = 100;
    a.width = 36;
    a.height = 54;
    a.x0 = 20;
    a.y0 = 20;
    a.vx = 2;
    a.vy = 1;
    sc.actors.push_back(a);
    Actor b = a;
    b.target_id = 1;
    b.class_id = "run";
    b.texture_seed = derive_seed(seed, 2);
    b.x0 = 250;
    b.y0 = 150;
    b.vx = -2;
    b.vy = 0;
    sc.actors.push_back(b);
  } else {
    throw std::invalid_argument("unknown scenario preset '" + name +
                                "' (linear, occlusion, multi, sinusoidal, static)");
  }
  if (n_frames > 0) sc.n_frames = n_frames;
  sc.validate();
  return sc;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream is(s);
  while (std::getline(is, part, sep)) out.push_back(part);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario " + path.string());
  const std::string file = path.string();
  Scenario sc;
  sc.actors.clear();
  std::map<int, Actor> actors;
  std::map<int, Occluder> occluders;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError(file, line_no, "", "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      const auto nums = [&](std::size_t n, char sep) {
        const auto parts = split(value, sep);
        if (parts.size() != n) throw std::invalid_argument("expected " + std::to_string(n) + " values");
        std::vector<double> v;
        for (const auto& p : parts) v.push_back(std::stod(p));
        return v;
      };
      if (key == "width") sc.width = std::stoi(value);
      else if (key == "height") sc.height = std::stoi(value);
      else if (key == "channels") sc.channels = std::stoi(value);
      else if (key == "frames") sc.n_frames = std::stoi(value);
      else if (key == "seed") sc.seed = std::stoull(value);
      else if (key == "background") {
        if (value == "noise") sc.background = Background::Noise;
        else if (value == "constant") sc.background = Background::Constant;
        else throw std::invalid_argument("expected noise or constant");
      } else if (key == "background_level") sc.background_level = static_cast<std::uint8_t>(std::stoi(value));
      else if (key == "sensor_noise") sc.sensor_noise = std::stoi(value);
      else if (key.rfind("actor.", 0) == 0 || key.rfind("occluder.", 0) == 0) {
        const auto parts = split(key, '.');
        if (parts.size() != 3) throw std::invalid_argument("expected <kind>.<index>.<property>");
        const int idx = std::stoi(parts[1]);
        const std::string& prop = parts[2];
        if (parts[0] == "occluder") {
          Occluder& o = occluders[idx];
          if (prop == "rect") {
            const auto v = nums(4, ',');
            o.rect = {static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]), static_cast<int>(v[3])};
          } else if (prop == "fill") o.fill = static_cast<std::uint8_t>(std::stoi(value));
          else throw std::invalid_argument("unknown occluder property");
          continue;
        }
        auto [it, fresh] = actors.try_emplace(idx);
        Actor& a = it->second;
        if (fresh) {
          a.target_id = idx;
          a.texture_seed = derive_seed(sc.seed, static_cast<std::uint64_t>(idx) + 1);
        }
        if (prop == "size") {
          const auto v = nums(2, 'x');
          a.width = static_cast<int>(v[0]);
          a.height = static_cast<int>(v[1]);
        } else if (prop == "trajectory") {
          if (value == "linear") a.trajectory = Trajectory::Linear;
          else if (value == "sinusoidal") a.trajectory = Trajectory::Sinusoidal;
          else if (value == "piecewise") a.trajectory = Trajectory::Piecewise;
          else throw std::invalid_argument("expected linear, sinusoidal or piecewise");
        } else if (prop == "start") {
          const auto v = nums(2, ',');
          a.x0 = v[0];
          a.y0 = v[1];
        } else if (prop == "velocity") {
          const auto v = nums(2, ',');
          a.vx = v[0];
          a.vy = v[1];
        } else if (prop == "amplitude") a.amplitude = std::stod(value);
        else if (prop == "period") a.period = std::stod(value);
        else if (prop == "texture_seed") a.texture_seed = std::stoull(value);
        else if (prop == "class") a.class_id = value;
        else if (prop == "waypoints") {
          a.waypoints.clear();
          for (const auto& wp : split(value, ';')) {
            const auto f = split(wp, ':');
            if (f.size() != 3) throw std::invalid_argument("waypoint must be frame:x:y");
            a.waypoints.push_back({std::stoi(f[0]), std::stod(f[1]), std::stod(f[2])});
          }
        } else throw std::invalid_argument("unknown actor property");
      } else {
        throw std::invalid_argument("unknown key");
      }
    } catch (const FormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw FormatError(file, line_no, key, e.what());
    }
  }
  for (auto& [idx, a] : actors) sc.actors.push_back(a);
  for (auto& [idx, o] : occluders) sc.occluders.push_back(o);
  sc.validate();
  return sc;
}

std::vector<Detection> corrupt_detections(const std::vector<GroundTruthRecord>& gt, double jitter,
                                          double drop_rate, std::uint64_t seed, bool visible_only) {
  Rng rng(seed);
  std::vector<Detection> out;
  for (const GroundTruthRecord& g : gt) {
    // Fixed number of draws per record keeps streams aligned across settings.
    const double drop = rng.uniform();
    double c[4] = {g.box.x_min, g.box.y_min, g.box.x_max, g.box.y_max};
    for (double& v : c) v += jitter * (2.0 * rng.uniform() - 1.0);
    const double score = 0.5 + 0.5 * rng.uniform();
    if (visible_only && !g.visible) continue;
    if (drop < drop_rate) continue;
    if (c[0] > c[2]) std::swap(c[0], c[2]);
    if (c[1] > c[3]) std::swap(c[1], c[3]);
    out.push_back(Detection{g.frame, g.class_id, score, BoundingBox{c[0], c[1], c[2], c[3]}});
  }
  return out;
}

}  // namespace actrack::synth
