#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "actrack/fusion.hpp"
#include "actrack/image.hpp"
#include "actrack/motion.hpp"

namespace actrack {

/// Parse or validation failure in an input file. The message names the file,
/// the 1-based line (0 when not line oriented) and the offending field.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& file, std::size_t line, const std::string& field,
              const std::string& detail);

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string file_;
  std::size_t line_;
  std::string field_;
};

// ---- rasters ---------------------------------------------------------------

/// Binary P5 (gray) or P6 (RGB), maxval 255.
Image read_pnm(const std::filesystem::path& path);
void write_pnm(const std::filesystem::path& path, const Image& img);

/// Frame files in a directory, indexed by the trailing digits of the stem
/// (e.g. frame_000042.pgm). Indices must be contiguous from 0 and all frames
/// must share dimensions and channel count.
class FrameSequence {
 public:
  FrameSequence() = default;
  FrameSequence(std::filesystem::path dir, std::vector<std::filesystem::path> files, int width,
                int height, int channels);

  const std::filesystem::path& directory() const { return dir_; }
  std::size_t size() const { return files_.size(); }
  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  const std::filesystem::path& file(std::size_t i) const { return files_.at(i); }
  Image load(std::size_t i) const;

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> files_;
  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
};

FrameSequence read_frames(const std::filesystem::path& dir);

/// Writes frame_%06d.pgm / .ppm; creates the directory.
void write_frames(const std::filesystem::path& dir, const std::vector<Image>& frames);
std::filesystem::path frame_file_name(std::size_t index, int channels);

// ---- records ---------------------------------------------------------------

struct GroundTruthRecord {
  int frame = 0;
  std::string class_id;
  BoundingBox box;
  int target_id = 0;
  bool visible = true;

  friend bool operator==(const GroundTruthRecord&, const GroundTruthRecord&) = default;
};

struct TrackRecord {
  int frame = 0;
  std::string class_id;
  double score = 0.0;
  BoundingBox box;
  int target_id = 0;
  double fitness = 0.0;
  bool occluded = false;

  friend bool operator==(const TrackRecord&, const TrackRecord&) = default;
};

using FrameDetections = std::map<int, std::vector<Detection>>;

std::vector<Detection> read_detection_records(const std::filesystem::path& path);
FrameDetections read_detections(const std::filesystem::path& path);
FrameDetections group_by_frame(const std::vector<Detection>& records);
void write_detections(const std::filesystem::path& path, const std::vector<Detection>& records);
void write_detections(const std::filesystem::path& path, const FrameDetections& by_frame);

std::vector<GroundTruthRecord> read_ground_truth(const std::filesystem::path& path);
void write_ground_truth(const std::filesystem::path& path,
                        const std::vector<GroundTruthRecord>& records);

std::vector<TrackRecord> read_tracks(const std::filesystem::path& path);
void write_tracks(const std::filesystem::path& path, const std::vector<TrackRecord>& records);

/// Single-line JSON encodings, exposed for tests and streaming writers.
std::string to_json_line(const Detection& d);
std::string to_json_line(const GroundTruthRecord& g);
std::string to_json_line(const TrackRecord& t);

// ---- motion-vector sidecars --------------------------------------------------

/// Text records "frame bx by dx dy", one block per line; '#' starts a comment.
/// The field of frame k describes motion from frame k-1 to frame k.
void write_mv_sidecar(const std::filesystem::path& path, const std::map<int, MotionField>& fields);
std::map<int, MotionField> read_mv_sidecar(const std::filesystem::path& path, int frame_width,
                                           int frame_height, int block_size, int search_radius);

}  // namespace actrack
