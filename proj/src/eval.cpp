#include "actrack/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace actrack::eval {

using ojson = nlohmann::ordered_json;

double interpolated_ap(const std::vector<PrPoint>& curve) {
  std::vector<double> envelope(curve.size());
  double running = 0.0;
  for (std::size_t i = curve.size(); i-- > 0;) {
    running = std::max(running, curve[i].precision);
    envelope[i] = running;
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    ap += (curve[i].recall - prev_recall) * envelope[i];
    prev_recall = curve[i].recall;
  }
  return ap;
}

DetEvalReport evaluate_detections(const std::vector<Detection>& predictions,
                                  const std::vector<GroundTruthRecord>& ground_truth, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("eval: delta must be in (0,1]");
  DetEvalReport report;
  report.delta = delta;

  // Visible ground truth per (class, frame).
  std::map<std::string, std::map<int, std::vector<BoundingBox>>> gt;
  std::map<std::string, int> gt_count;
  for (const auto& g : ground_truth) {
    if (!g.visible) continue;
    gt[g.class_id][g.frame].push_back(g.box);
    ++gt_count[g.class_id];
  }
  std::map<std::string, std::vector<const Detection*>> preds;
  for (const auto& p : predictions) preds[p.class_id].push_back(&p);

  std::set<std::string> classes;
  for (const auto& [c, n] : gt_count) classes.insert(c);
  for (const auto& [c, v] : preds) classes.insert(c);

  double ap_sum = 0.0;
  for (const std::string& cls : classes) {
    ClassCounts counts;
    counts.ground_truth = gt_count.count(cls) ? gt_count[cls] : 0;
    auto& ranked = preds[cls];
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const Detection* a, const Detection* b) { return a->score > b->score; });

    std::map<int, std::vector<char>> used;
    std::vector<PrPoint> curve;
    curve.reserve(ranked.size());
    for (const Detection* p : ranked) {
      int best = -1;
      double best_iou = 0.0;
      const auto cls_it = gt.find(cls);
      if (cls_it != gt.end()) {
        const auto frame_it = cls_it->second.find(p->frame);
        if (frame_it != cls_it->second.end()) {
          auto& taken = used[p->frame];
          taken.resize(frame_it->second.size(), 0);
          for (std::size_t j = 0; j < frame_it->second.size(); ++j) {
            if (taken[j]) continue;
            const double v = iou(p->box, frame_it->second[j]);
            if (best < 0 || v > best_iou) {
              best = static_cast<int>(j);
              best_iou = v;
            }
          }
          if (best >= 0 && best_iou >= delta) {
            taken[static_cast<std::size_t>(best)] = 1;
          } else {
            best = -1;
          }
        }
      }
      if (best >= 0) ++counts.true_positives;
      else ++counts.false_positives;
      if (counts.ground_truth > 0) {
        curve.push_back({static_cast<double>(counts.true_positives) / counts.ground_truth,
                         static_cast<double>(counts.true_positives) /
                             (counts.true_positives + counts.false_positives)});
      }
    }
    counts.false_negatives = counts.ground_truth - counts.true_positives;
    report.counts[cls] = counts;
    if (counts.ground_truth == 0) {
      report.average_precision[cls] = 0.0;
      report.classes_without_ground_truth.push_back(cls);
      continue;
    }
    const double ap = interpolated_ap(curve);
    report.average_precision[cls] = ap;
    ap_sum += ap;
  }
  report.mean_ap = gt_count.empty() ? 0.0 : ap_sum / static_cast<double>(gt_count.size());
  return report;
}

TrackEvalReport evaluate_tracks(const std::vector<TrackRecord>& tracks,
                                const std::vector<GroundTruthRecord>& ground_truth, int target_id,
                                double iou_floor) {
  std::map<int, BoundingBox> gt_box;
  std::map<int, bool> gt_visible;
  for (const auto& g : ground_truth) {
    if (g.target_id != target_id) continue;
    gt_box[g.frame] = g.box;
    gt_visible[g.frame] = g.visible;
  }
  if (gt_box.empty()) {
    throw std::invalid_argument("eval: no ground truth for target id " + std::to_string(target_id));
  }
  std::map<int, BoundingBox> track_box;
  for (const auto& t : tracks) {
    if (t.target_id == target_id) track_box[t.frame] = t.box;
  }

  TrackEvalReport r;
  r.target_id = target_id;
  std::map<int, double> frame_iou;
  double iou_sum = 0.0;
  for (const auto& [frame, box] : gt_box) {
    const auto it = track_box.find(frame);
    const double v = it == track_box.end() ? 0.0 : iou(it->second, box);
    frame_iou[frame] = v;
    if (!gt_visible[frame]) continue;
    ++r.frames_total;
    iou_sum += v;
    if (v >= iou_floor) ++r.frames_tracked;
  }
  r.mean_iou = r.frames_total ? iou_sum / r.frames_total : 0.0;

  bool prev_visible = true;
  for (auto it = gt_box.begin(); it != gt_box.end(); ++it) {
    const int frame = it->first;
    const bool visible = gt_visible[frame];
    if (visible && !prev_visible) {
      int latency = 0;
      bool recovered = false;
      for (auto j = it; j != gt_box.end(); ++j, ++latency) {
        if (gt_visible[j->first] && frame_iou[j->first] >= iou_floor) {
          recovered = true;
          break;
        }
      }
      if (!recovered) r.all_reacquired = false;
      r.reacquisition_events.push_back(latency);
      r.reacquisition_latency = std::max(r.reacquisition_latency, latency);
    }
    prev_visible = visible;
  }
  return r;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

SpeedReport summarize_timings(const std::vector<std::string>& names,
                              const std::vector<std::vector<double>>& per_stage_ms,
                              std::size_t warmup) {
  if (names.size() != per_stage_ms.size()) throw std::invalid_argument("speed: name/timing mismatch");
  SpeedReport r;
  for (std::size_t s = 0; s < names.size(); ++s) {
    const auto& t = per_stage_ms[s];
    if (t.empty()) throw std::invalid_argument("speed: no frames to measure");
    const std::size_t skip = std::min(warmup, t.size() - 1);
    const std::vector<double> kept(t.begin() + static_cast<std::ptrdiff_t>(skip), t.end());
    r.frames_measured = kept.size();
    r.stages.push_back({names[s], median(kept)});
    r.total_ms += r.stages.back().median_ms;
  }
  r.fps = 1000.0 / std::max(r.total_ms, 1e-6);
  return r;
}

SpeedReport measure_speed(const std::vector<Stage>& stages, std::size_t n_frames, std::size_t warmup) {
  if (n_frames == 0) throw std::invalid_argument("speed: empty frame list");
  if (stages.empty()) throw std::invalid_argument("speed: no stages");
  std::vector<std::vector<double>> ms(stages.size());
  std::vector<std::string> names;
  for (const auto& s : stages) names.push_back(s.name);
  for (std::size_t f = 0; f < n_frames; ++f) {
    for (std::size_t s = 0; s < stages.size(); ++s) {
      const auto t0 = std::chrono::steady_clock::now();
      stages[s].run(f);
      const auto t1 = std::chrono::steady_clock::now();
      ms[s].push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
  }
  return summarize_timings(names, ms, warmup);
}

std::string to_json(const DetEvalReport& r, const std::string& method) {
  ojson o;
  o["metric"] = "frame-AP";
  if (!method.empty()) o["method"] = method;
  o["delta"] = r.delta;
  o["mAP"] = r.mean_ap;
  ojson per = ojson::object();
  for (const auto& [cls, ap] : r.average_precision) {
    const ClassCounts& c = r.counts.at(cls);
    per[cls] = {{"ap", ap}, {"tp", c.true_positives}, {"fp", c.false_positives},
                {"fn", c.false_negatives}, {"gt", c.ground_truth}};
  }
  o["classes"] = per;
  o["classes_without_ground_truth"] = r.classes_without_ground_truth;
  return o.dump();
}

std::string to_json(const TrackEvalReport& r) {
  ojson o;
  o["target_id"] = r.target_id;
  o["frames_tracked"] = r.frames_tracked;
  o["frames_total"] = r.frames_total;
  o["mean_iou"] = r.mean_iou;
  o["reacquisition_latency"] = r.reacquisition_latency;
  o["reacquisition_events"] = r.reacquisition_events;
  o["all_reacquired"] = r.all_reacquired;
  return o.dump();
}

std::string to_json(const SpeedReport& r) {
  ojson o;
  ojson stages = ojson::array();
  for (const auto& s : r.stages) stages.push_back({{"stage", s.name}, {"median_ms", s.median_ms}});
  o["stages"] = stages;
  o["total_ms"] = r.total_ms;
  o["fps"] = r.fps;
  o["frames_measured"] = r.frames_measured;
  return o.dump();
}

std::string format_map_table(
    const std::vector<std::pair<std::string, std::vector<DetEvalReport>>>& rows) {
  std::ostringstream os;
  char buf[64];
  os << "frame-mAP (%)\n";
  std::snprintf(buf, sizeof buf, "%-20s", "method \\ delta");
  os << buf;
  if (!rows.empty()) {
    for (const auto& r : rows.front().second) {
      std::snprintf(buf, sizeof buf, "%10.2f", r.delta);
      os << buf;
    }
  }
  os << '\n';
  for (const auto& [method, reports] : rows) {
    std::snprintf(buf, sizeof buf, "%-20s", method.c_str());
    os << buf;
    for (const auto& r : reports) {
      std::snprintf(buf, sizeof buf, "%10.2f", 100.0 * r.mean_ap);
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

std::string format_speed_table(const SpeedReport& r) {
  std::ostringstream os;
  char buf[96];
  for (const auto& s : r.stages) {
    std::snprintf(buf, sizeof buf, "%-24s%10.3f ms/frame\n", s.name.c_str(), s.median_ms);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "%-24s%10.3f ms/frame\n%-24s%10.1f fps\n", "total", r.total_ms,
                "overall speed", r.fps);
  os << buf;
  return os.str();
}

}  // namespace actrack::eval
