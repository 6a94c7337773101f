#include "actrack/media_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace actrack {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

FormatError::FormatError(const std::string& file, std::size_t line, const std::string& field,
                         const std::string& detail)
    : std::runtime_error(file + (line ? ":" + std::to_string(line) : std::string()) +
                         (field.empty() ? std::string() : ": field '" + field + "'") + ": " +
                         detail),
      file_(file),
      line_(line),
      field_(field) {}

// ---- rasters ---------------------------------------------------------------

namespace {

struct PnmHeader {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::streamoff data_offset = 0;
};

// Reads the next header integer, skipping whitespace and '#' comments.
int read_header_int(std::istream& in, const std::string& file, const char* field) {
  int c = in.get();
  while (in && (std::isspace(c) || c == '#')) {
    if (c == '#') {
      while (in && c != '\n') c = in.get();
    }
    c = in.get();
  }
  if (!in || !std::isdigit(c)) throw FormatError(file, 0, field, "expected an integer in PNM header");
  long v = 0;
  while (in && std::isdigit(c)) {
    v = v * 10 + (c - '0');
    if (v > 1'000'000) throw FormatError(file, 0, field, "value too large");
    c = in.get();
  }
  if (!std::isspace(c)) throw FormatError(file, 0, field, "header value not followed by whitespace");
  return static_cast<int>(v);
}

PnmHeader read_pnm_header(std::istream& in, const std::string& file) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6')) {
    throw FormatError(file, 0, "magic", "not a binary PGM (P5) or PPM (P6) file");
  }
  PnmHeader h;
  h.channels = magic[1] == '5' ? 1 : 3;
  h.width = read_header_int(in, file, "width");
  h.height = read_header_int(in, file, "height");
  const int maxval = read_header_int(in, file, "maxval");
  if (maxval != 255) throw FormatError(file, 0, "maxval", "only maxval 255 is supported");
  if (h.width <= 0 || h.height <= 0) throw FormatError(file, 0, "width", "empty image");
  h.data_offset = in.tellg();
  return h;
}

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

Image read_pnm(const fs::path& path) {
  std::ifstream in = open_in(path, std::ios::binary);
  const PnmHeader h = read_pnm_header(in, path.string());
  Image img(h.width, h.height, h.channels);
  in.read(reinterpret_cast<char*>(img.data().data()), static_cast<std::streamsize>(img.data().size()));
  if (in.gcount() != static_cast<std::streamsize>(img.data().size())) {
    throw FormatError(path.string(), 0, "pixels", "truncated pixel data");
  }
  return img;
}

void write_pnm(const fs::path& path, const Image& img) {
  std::ofstream out = open_out(path, std::ios::binary);
  out << (img.channels() == 1 ? "P5" : "P6") << '\n'
      << img.width() << ' ' << img.height() << '\n'
      << 255 << '\n';
  out.write(reinterpret_cast<const char*>(img.data().data()),
            static_cast<std::streamsize>(img.data().size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

FrameSequence::FrameSequence(fs::path dir, std::vector<fs::path> files, int width, int height,
                             int channels)
    : dir_(std::move(dir)), files_(std::move(files)), width_(width), height_(height),
      channels_(channels) {}

Image FrameSequence::load(std::size_t i) const {
  Image img = read_pnm(files_.at(i));
  if (img.width() != width_ || img.height() != height_ || img.channels() != channels_) {
    throw FormatError(files_[i].string(), 0, "dims", "frame changed shape since the sequence was opened");
  }
  return img;
}

FrameSequence read_frames(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("frame directory not found: " + dir.string());
  std::map<long, fs::path> indexed;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext != ".pgm" && ext != ".ppm") continue;
    const std::string stem = entry.path().stem().string();
    std::size_t start = stem.size();
    while (start > 0 && std::isdigit(static_cast<unsigned char>(stem[start - 1]))) --start;
    if (start == stem.size()) {
      throw FormatError(entry.path().string(), 0, "index", "frame file name has no trailing index");
    }
    const long index = std::stol(stem.substr(start));
    if (!indexed.emplace(index, entry.path()).second) {
      throw FormatError(entry.path().string(), 0, "index",
                        "duplicate frame index " + std::to_string(index));
    }
  }
  if (indexed.empty()) throw std::runtime_error("no .pgm/.ppm frames in " + dir.string());

  std::vector<fs::path> files;
  long expected = 0;
  for (const auto& [index, path] : indexed) {
    if (index != expected) {
      throw FormatError(dir.string(), 0, "index",
                        "frame indices not contiguous: missing " + std::to_string(expected) +
                            (index - 1 > expected ? ".." + std::to_string(index - 1) : std::string()));
    }
    files.push_back(path);
    ++expected;
  }

  int width = 0, height = 0, channels = 0;
  for (const auto& path : files) {
    std::ifstream in = open_in(path, std::ios::binary);
    const PnmHeader h = read_pnm_header(in, path.string());
    if (width == 0) {
      width = h.width;
      height = h.height;
      channels = h.channels;
    } else if (h.width != width || h.height != height || h.channels != channels) {
      throw FormatError(path.string(), 0, "dims",
                        "frame is " + std::to_string(h.width) + "x" + std::to_string(h.height) +
                            "x" + std::to_string(h.channels) + ", sequence is " +
                            std::to_string(width) + "x" + std::to_string(height) + "x" +
                            std::to_string(channels));
    }
  }
  return FrameSequence(dir, std::move(files), width, height, channels);
}

fs::path frame_file_name(std::size_t index, int channels) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06zu.%s", index, channels == 1 ? "pgm" : "ppm");
  return buf;
}

void write_frames(const fs::path& dir, const std::vector<Image>& frames) {
  fs::create_directories(dir);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    write_pnm(dir / frame_file_name(i, frames[i].channels()), frames[i]);
  }
}

// ---- records ---------------------------------------------------------------

namespace {

struct LineContext {
  const std::string& file;
  std::size_t line;
};

const ojson& require_key(const ojson& obj, const char* key, const LineContext& ctx) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(ctx.file, ctx.line, key, "missing");
  return *it;
}

int get_index(const ojson& obj, const char* key, const LineContext& ctx) {
  const ojson& v = require_key(obj, key, ctx);
  if (!v.is_number_integer()) throw FormatError(ctx.file, ctx.line, key, "expected an integer");
  const auto i = v.get<long long>();
  if (i < 0 || i > 1'000'000'000) throw FormatError(ctx.file, ctx.line, key, "must be >= 0");
  return static_cast<int>(i);
}

double get_number(const ojson& obj, const char* key, const LineContext& ctx) {
  const ojson& v = require_key(obj, key, ctx);
  if (!v.is_number()) throw FormatError(ctx.file, ctx.line, key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw FormatError(ctx.file, ctx.line, key, "not finite");
  return d;
}

double get_unit(const ojson& obj, const char* key, const LineContext& ctx) {
  const double d = get_number(obj, key, ctx);
  if (d < 0.0 || d > 1.0) {
    throw FormatError(ctx.file, ctx.line, key, "value " + std::to_string(d) + " outside [0,1]");
  }
  return d;
}

std::string get_string(const ojson& obj, const char* key, const LineContext& ctx) {
  const ojson& v = require_key(obj, key, ctx);
  if (!v.is_string()) throw FormatError(ctx.file, ctx.line, key, "expected a string");
  return v.get<std::string>();
}

bool get_bool(const ojson& obj, const char* key, const LineContext& ctx, bool fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) throw FormatError(ctx.file, ctx.line, key, "expected true or false");
  return it->get<bool>();
}

BoundingBox get_box(const ojson& obj, const LineContext& ctx) {
  const ojson& v = require_key(obj, "box", ctx);
  if (!v.is_array() || v.size() != 4) {
    throw FormatError(ctx.file, ctx.line, "box", "expected [x_min, y_min, x_max, y_max]");
  }
  double c[4];
  for (std::size_t i = 0; i < 4; ++i) {
    if (!v[i].is_number()) throw FormatError(ctx.file, ctx.line, "box", "coordinates must be numbers");
    c[i] = v[i].get<double>();
  }
  const BoundingBox b{c[0], c[1], c[2], c[3]};
  if (!b.valid()) {
    throw FormatError(ctx.file, ctx.line, "box", "invalid box " + to_string(b) +
                                                     " (needs finite x_min<=x_max, y_min<=y_max)");
  }
  return b;
}

ojson box_json(const BoundingBox& b) { return ojson::array({b.x_min, b.y_min, b.x_max, b.y_max}); }

// Calls parse(object, ctx) for every non-blank line.
template <typename Record, typename Parse>
std::vector<Record> read_json_lines(const fs::path& path, Parse parse) {
  std::ifstream in = open_in(path);
  const std::string file = path.string();
  std::vector<Record> out;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    ojson obj;
    try {
      obj = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(file, line_no, "", std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw FormatError(file, line_no, "", "expected a JSON object");
    out.push_back(parse(obj, LineContext{file, line_no}));
  }
  return out;
}

template <typename Record>
void write_json_lines(const fs::path& path, const std::vector<Record>& records) {
  std::ofstream out = open_out(path);
  for (const auto& r : records) out << to_json_line(r) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string to_json_line(const Detection& d) {
  ojson o;
  o["frame"] = d.frame;
  o["class"] = d.class_id;
  o["score"] = d.score;
  o["box"] = box_json(d.box);
  return o.dump();
}

std::string to_json_line(const GroundTruthRecord& g) {
  ojson o;
  o["frame"] = g.frame;
  o["class"] = g.class_id;
  o["box"] = box_json(g.box);
  o["target_id"] = g.target_id;
  o["visible"] = g.visible;
  return o.dump();
}

std::string to_json_line(const TrackRecord& t) {
  ojson o;
  o["frame"] = t.frame;
  o["class"] = t.class_id;
  o["score"] = t.score;
  o["box"] = box_json(t.box);
  o["target_id"] = t.target_id;
  o["fitness"] = t.fitness;
  o["occluded"] = t.occluded;
  return o.dump();
}

std::vector<Detection> read_detection_records(const fs::path& path) {
  return read_json_lines<Detection>(path, [](const ojson& o, const LineContext& ctx) {
    Detection d;
    d.frame = get_index(o, "frame", ctx);
    d.class_id = get_string(o, "class", ctx);
    d.score = get_unit(o, "score", ctx);
    d.box = get_box(o, ctx);
    return d;
  });
}

FrameDetections group_by_frame(const std::vector<Detection>& records) {
  FrameDetections out;
  for (const auto& d : records) out[d.frame].push_back(d);
  return out;
}

FrameDetections read_detections(const fs::path& path) {
  return group_by_frame(read_detection_records(path));
}

void write_detections(const fs::path& path, const std::vector<Detection>& records) {
  write_json_lines(path, records);
}

void write_detections(const fs::path& path, const FrameDetections& by_frame) {
  std::vector<Detection> flat;
  for (const auto& [frame, dets] : by_frame) flat.insert(flat.end(), dets.begin(), dets.end());
  write_json_lines(path, flat);
}

std::vector<GroundTruthRecord> read_ground_truth(const fs::path& path) {
  return read_json_lines<GroundTruthRecord>(path, [](const ojson& o, const LineContext& ctx) {
    GroundTruthRecord g;
    g.frame = get_index(o, "frame", ctx);
    g.class_id = get_string(o, "class", ctx);
    g.box = get_box(o, ctx);
    g.target_id = o.contains("target_id") ? get_index(o, "target_id", ctx) : 0;
    g.visible = get_bool(o, "visible", ctx, true);
    return g;
  });
}

void write_ground_truth(const fs::path& path, const std::vector<GroundTruthRecord>& records) {
  write_json_lines(path, records);
}

std::vector<TrackRecord> read_tracks(const fs::path& path) {
  return read_json_lines<TrackRecord>(path, [](const ojson& o, const LineContext& ctx) {
    TrackRecord t;
    t.frame = get_index(o, "frame", ctx);
    t.class_id = get_string(o, "class", ctx);
    t.score = get_unit(o, "score", ctx);
    t.box = get_box(o, ctx);
    t.target_id = get_index(o, "target_id", ctx);
    t.fitness = get_unit(o, "fitness", ctx);
    t.occluded = get_bool(o, "occluded", ctx, false);
    return t;
  });
}

void write_tracks(const fs::path& path, const std::vector<TrackRecord>& records) {
  write_json_lines(path, records);
}

// ---- motion-vector sidecars --------------------------------------------------

void write_mv_sidecar(const fs::path& path, const std::map<int, MotionField>& fields) {
  std::ofstream out = open_out(path);
  out << std::setprecision(9);
  out << "# frame bx by dx dy\n";
  for (const auto& [frame, f] : fields) {
    for (int by = 0; by < f.grid_h; ++by) {
      for (int bx = 0; bx < f.grid_w; ++bx) {
        out << frame << ' ' << bx << ' ' << by << ' ' << f.dx(bx, by) << ' ' << f.dy(bx, by) << '\n';
      }
    }
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::map<int, MotionField> read_mv_sidecar(const fs::path& path, int frame_width, int frame_height,
                                           int block_size, int search_radius) {
  std::ifstream in = open_in(path);
  const std::string file = path.string();
  const MotionField blank = make_motion_field(frame_width, frame_height, block_size, search_radius);
  std::map<int, MotionField> fields;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    const auto hash = text.find('#');
    if (hash != std::string::npos) text.erase(hash);
    std::istringstream ls(text);
    long frame = 0, bx = 0, by = 0;
    double dx = 0.0, dy = 0.0;
    if (!(ls >> frame)) {
      if (ls.eof()) continue;  // blank or comment line
      throw FormatError(file, line_no, "frame", "expected an integer");
    }
    if (!(ls >> bx)) throw FormatError(file, line_no, "bx", "expected an integer");
    if (!(ls >> by)) throw FormatError(file, line_no, "by", "expected an integer");
    if (!(ls >> dx)) throw FormatError(file, line_no, "dx", "expected a number");
    if (!(ls >> dy)) throw FormatError(file, line_no, "dy", "expected a number");
    std::string rest;
    if (ls >> rest) throw FormatError(file, line_no, "", "unexpected trailing text '" + rest + "'");
    if (frame < 0) throw FormatError(file, line_no, "frame", "must be >= 0");
    if (bx < 0 || bx >= blank.grid_w) throw FormatError(file, line_no, "bx", "outside block grid");
    if (by < 0 || by >= blank.grid_h) throw FormatError(file, line_no, "by", "outside block grid");
    if (!std::isfinite(dx) || std::abs(dx) > search_radius) {
      throw FormatError(file, line_no, "dx", "magnitude exceeds search radius");
    }
    if (!std::isfinite(dy) || std::abs(dy) > search_radius) {
      throw FormatError(file, line_no, "dy", "magnitude exceeds search radius");
    }
    auto [it, inserted] = fields.try_emplace(static_cast<int>(frame), blank);
    it->second.dx(static_cast<int>(bx), static_cast<int>(by)) = static_cast<float>(dx);
    it->second.dy(static_cast<int>(bx), static_cast<int>(by)) = static_cast<float>(dy);
  }
  return fields;
}

}  // namespace actrack
