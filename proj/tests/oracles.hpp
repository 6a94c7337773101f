// Independent reference implementations shared by the unit and acceptance
// tests. They are written for clarity, not speed, and deliberately avoid
// calling the library code they check.
#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "actrack/fusion.hpp"
#include "actrack/media_io.hpp"

namespace oracle {

inline double area(double x0, double y0, double x1, double y1) {
  return std::max(0.0, x1 - x0) * std::max(0.0, y1 - y0);
}

inline double overlap(const actrack::BoundingBox& a, const actrack::BoundingBox& b) {
  const double inter = area(std::max(a.x_min, b.x_min), std::max(a.y_min, b.y_min),
                            std::min(a.x_max, b.x_max), std::min(a.y_max, b.y_max));
  const double uni = area(a.x_min, a.y_min, a.x_max, a.y_max) +
                     area(b.x_min, b.y_min, b.x_max, b.y_max) - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

// Exhaustive argmax matching: collect every IOU, take the largest, first
// index wins among equals.
inline std::vector<actrack::Detection> fuse(const std::vector<actrack::Detection>& basis,
                                            const std::vector<actrack::Detection>& others,
                                            double t, bool use_max) {
  std::vector<actrack::Detection> out;
  for (const auto& d : basis) {
    std::vector<double> scores;
    for (const auto& o : others) scores.push_back(overlap(d.box, o.box));
    if (scores.empty()) {
      out.push_back(d);
      continue;
    }
    const auto it = std::max_element(scores.begin(), scores.end());
    const std::size_t k = static_cast<std::size_t>(it - scores.begin());
    if (!(*it > t)) {
      out.push_back(d);
      continue;
    }
    const auto& p = others[k].box;
    actrack::Detection f = d;
    if (use_max) {
      f.box = {std::max(d.box.x_min, p.x_min), std::max(d.box.y_min, p.y_min),
               std::max(d.box.x_max, p.x_max), std::max(d.box.y_max, p.y_max)};
    } else {
      f.box = {(d.box.x_min + p.x_min) / 2, (d.box.y_min + p.y_min) / 2,
               (d.box.x_max + p.x_max) / 2, (d.box.y_max + p.y_max) / 2};
    }
    f.score = (d.score + others[k].score) / 2;
    out.push_back(f);
  }
  return out;
}

// Random boxes on a coarse grid so exact IOU ties happen.
inline std::vector<actrack::Detection> random_stream(std::mt19937& gen, int max_boxes,
                                                     const std::string& cls) {
  std::uniform_int_distribution<int> count(0, max_boxes);
  std::uniform_int_distribution<int> pos(0, 20);
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  std::vector<actrack::Detection> out;
  const int n = count(gen);
  for (int i = 0; i < n; ++i) {
    const double x = pos(gen) * 4.0, y = pos(gen) * 4.0;
    out.push_back({0, cls, score(gen), {x, y, x + size(gen) * 4.0, y + size(gen) * 4.0}});
  }
  return out;
}

// All-points AP over one class, greedy matching in descending score order.
// Reference for evaluate_detections on small instances.
inline double class_ap(std::vector<actrack::Detection> preds,
                       const std::vector<actrack::GroundTruthRecord>& gt, const std::string& cls,
                       double delta) {
  std::vector<actrack::GroundTruthRecord> g;
  for (const auto& r : gt) {
    if (r.class_id == cls && r.visible) g.push_back(r);
  }
  std::vector<actrack::Detection> p;
  for (const auto& d : preds) {
    if (d.class_id == cls) p.push_back(d);
  }
  std::stable_sort(p.begin(), p.end(),
                   [](const auto& a, const auto& b) { return a.score > b.score; });
  if (g.empty()) return 0.0;
  std::vector<bool> used(g.size(), false);
  std::vector<double> rec, prec;
  int tp = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    int best = -1;
    double best_iou = -1.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (used[j] || g[j].frame != p[i].frame) continue;
      const double v = overlap(p[i].box, g[j].box);
      if (v >= delta && v > best_iou) {
        best = static_cast<int>(j);
        best_iou = v;
      }
    }
    if (best >= 0) {
      used[static_cast<std::size_t>(best)] = true;
      ++tp;
    }
    rec.push_back(static_cast<double>(tp) / g.size());
    prec.push_back(static_cast<double>(tp) / (i + 1));
  }
  // area under the precision envelope, summed at every recall step
  double ap = 0.0, prev_recall = 0.0;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    double envelope = 0.0;
    for (std::size_t k = i; k < prec.size(); ++k) envelope = std::max(envelope, prec[k]);
    ap += (rec[i] - prev_recall) * envelope;
    prev_recall = rec[i];
  }
  return ap;
}

}  // namespace oracle
