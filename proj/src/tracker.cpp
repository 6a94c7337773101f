#include "actrack/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <stdexcept>
#include <string>

#include "actrack/coa.hpp"

namespace actrack {

void TrackerConfig::validate() const {
  if (!(ft_threshold > 0.0 && ft_threshold < 1.0)) {
    throw std::invalid_argument("tracker: ft threshold must be in (0,1)");
  }
  if (iterations_per_frame < 1) throw std::invalid_argument("tracker: need >= 1 iteration");
  if (n_packs < 1 || n_coyotes < 3) throw std::invalid_argument("tracker: swarm too small");
  if (!(expansion_factor > 1.0)) throw std::invalid_argument("tracker: expansion factor must be > 1");
  if (!(max_expansion >= 1.0)) throw std::invalid_argument("tracker: max expansion must be >= 1");
  if (!(size_tolerance >= 0.0 && size_tolerance < 1.0)) {
    throw std::invalid_argument("tracker: size tolerance must be in [0,1)");
  }
}

Histogram build_histogram(const Image& patch) {
  const int ch = patch.channels();
  Histogram h(static_cast<std::size_t>(256) * ch, 0.0);
  if (patch.pixel_count() == 0) return h;
  const auto& d = patch.data();
  for (std::size_t i = 0; i < d.size(); ++i) {
    h[(i % ch) * 256 + d[i]] += 1.0;
  }
  const double n = static_cast<double>(patch.pixel_count());
  for (double& v : h) v /= n;
  return h;
}

double histogram_intersection(const Histogram& a, const Histogram& b) {
  if (a.size() != b.size() || a.empty()) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::min(a[i], b[i]);
  return std::clamp(s / static_cast<double>(a.size() / 256), 0.0, 1.0);
}

namespace {

PixelRect round_rect(const BoundingBox& b) {
  const int x0 = static_cast<int>(std::lround(b.x_min));
  const int y0 = static_cast<int>(std::lround(b.y_min));
  const int x1 = static_cast<int>(std::lround(b.x_max));
  const int y1 = static_cast<int>(std::lround(b.y_max));
  return {x0, y0, x1 - x0, y1 - y0};
}

// Sum of squared differences between the template and the nearest-neighbour
// resampling of rect onto the template grid.
std::uint64_t window_ssd(const Image& frame, const PixelRect& rect, const Image& templ) {
  const int tw = templ.width();
  const int th = templ.height();
  const int ch = templ.channels();
  std::uint64_t ssd = 0;
  if (rect.w == tw && rect.h == th) {
    const std::size_t row_bytes = static_cast<std::size_t>(tw) * ch;
    for (int y = 0; y < th; ++y) {
      const std::uint8_t* a = frame.row(rect.y + y) + static_cast<std::size_t>(rect.x) * ch;
      const std::uint8_t* b = templ.row(y);
      std::uint32_t row_sum = 0;
      for (std::size_t i = 0; i < row_bytes; ++i) {
        const int diff = static_cast<int>(a[i]) - static_cast<int>(b[i]);
        row_sum += static_cast<std::uint32_t>(diff * diff);
      }
      ssd += row_sum;
    }
    return ssd;
  }
  std::vector<std::size_t> offsets(static_cast<std::size_t>(tw));
  for (int x = 0; x < tw; ++x) {
    const int sx = rect.x + static_cast<int>((2LL * x + 1) * rect.w / (2LL * tw));
    offsets[static_cast<std::size_t>(x)] = static_cast<std::size_t>(sx) * ch;
  }
  for (int y = 0; y < th; ++y) {
    const int sy = rect.y + static_cast<int>((2LL * y + 1) * rect.h / (2LL * th));
    const std::uint8_t* a = frame.row(sy);
    const std::uint8_t* b = templ.row(y);
    std::uint32_t row_sum = 0;
    for (int x = 0; x < tw; ++x) {
      const std::uint8_t* pa = a + offsets[static_cast<std::size_t>(x)];
      for (int c = 0; c < ch; ++c) {
        const int diff = static_cast<int>(pa[c]) - static_cast<int>(*b++);
        row_sum += static_cast<std::uint32_t>(diff * diff);
      }
    }
    ssd += row_sum;
  }
  return ssd;
}

double window_fitness(const PixelRect& rect, const Image& frame, const Image& templ) {
  if (rect.empty()) return 0.0;
  const std::uint64_t ssd = window_ssd(frame, rect, templ);
  const std::size_t samples = templ.pixel_count() * static_cast<std::size_t>(templ.channels());
  return fitness_from_distance(std::sqrt(static_cast<double>(ssd)), samples);
}

}  // namespace

TrackerState init_tracker(const Image& frame, const BoundingBox& box, const TrackerConfig& cfg,
                          int target_id) {
  cfg.validate();
  require_valid(box, "tracker init box");
  if (box.x_min < 0.0 || box.y_min < 0.0 || box.x_max > frame.width() ||
      box.y_max > frame.height()) {
    throw std::invalid_argument("tracker init box " + to_string(box) + " lies outside the " +
                                std::to_string(frame.width()) + "x" +
                                std::to_string(frame.height()) + " frame");
  }
  const PixelRect rect = round_rect(box);
  if (rect.empty()) {
    throw std::invalid_argument("tracker init box " + to_string(box) + " has zero pixel area");
  }
  TrackerState s;
  s.target_id = target_id;
  s.frame_width = frame.width();
  s.frame_height = frame.height();
  s.template_patch = crop(frame, rect);
  s.position = to_center(box);
  s.search_space = s.position;
  s.model_histogram = build_histogram(s.template_patch);
  s.model_frames = 1;
  s.rng = Rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(target_id)));
  return s;
}

CenterBox advance_search_space(const TrackerState& state) {
  const double steps = static_cast<double>(state.lost_frames + 1);
  CenterBox next = state.search_space;
  next.cx = std::clamp(state.position.cx + state.velocity.vx * steps, 0.0,
                       static_cast<double>(state.frame_width));
  next.cy = std::clamp(state.position.cy + state.velocity.vy * steps, 0.0,
                       static_cast<double>(state.frame_height));
  return next;
}

double patch_distance(const Image& candidate, const Image& templ) {
  if (!candidate.same_shape(templ)) {
    throw std::logic_error("patch_distance: patch shapes differ");
  }
  double sum = 0.0;
  const auto& a = candidate.data();
  const auto& b = templ.data();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

double fitness_from_distance(double distance, std::size_t samples, double range) {
  if (samples == 0) return 0.0;
  const double rms = distance / std::sqrt(static_cast<double>(samples));
  return 1.0 - std::min(1.0, rms / range);
}

PixelRect window_rect(const CenterBox& window, int frame_width, int frame_height) {
  PixelRect r = round_rect(to_corner(window));
  const int x0 = std::clamp(r.x, 0, frame_width);
  const int y0 = std::clamp(r.y, 0, frame_height);
  const int x1 = std::clamp(r.x + r.w, 0, frame_width);
  const int y1 = std::clamp(r.y + r.h, 0, frame_height);
  return {x0, y0, std::max(0, x1 - x0), std::max(0, y1 - y0)};
}

double fitness(const CenterBox& candidate_window, const Image& frame, const TrackerState& state) {
  const PixelRect rect = window_rect(candidate_window, frame.width(), frame.height());
  return window_fitness(rect, frame, state.template_patch);
}

void handle_occlusion(TrackerState& state, const TrackerConfig& cfg) {
  state.occluded = true;
  ++state.occluded_frames;
  const double w_cap = std::min(cfg.max_expansion * state.position.w,
                                static_cast<double>(state.frame_width));
  const double h_cap = std::min(cfg.max_expansion * state.position.h,
                                static_cast<double>(state.frame_height));
  state.search_space.w = std::max(state.search_space.w,
                                  std::min(state.search_space.w * cfg.expansion_factor, w_cap));
  state.search_space.h = std::max(state.search_space.h,
                                  std::min(state.search_space.h * cfg.expansion_factor, h_cap));
}

TrackStep track_frame(TrackerState& state, const Image& frame, const TrackerConfig& cfg) {
  if (frame.width() != state.frame_width || frame.height() != state.frame_height ||
      frame.channels() != state.template_patch.channels()) {
    throw std::invalid_argument("track_frame: frame shape differs from the initial frame");
  }
  const CenterBox search = advance_search_space(state);
  state.search_space = search;

  const double tw = state.template_patch.width();
  const double th = state.template_patch.height();
  const double fw = frame.width();
  const double fh = frame.height();
  const double tol = cfg.freeze_size ? 0.0 : cfg.size_tolerance;

  coa::Config coa_cfg;
  coa_cfg.n_packs = cfg.n_packs;
  coa_cfg.n_coyotes_per_pack = cfg.n_coyotes;
  coa_cfg.max_iterations = cfg.iterations_per_frame;
  coa_cfg.rng_seed = state.rng.next();
  coa_cfg.lower_bounds = {std::max(0.0, search.cx - search.w / 2.0),
                          std::max(0.0, search.cy - search.h / 2.0), tw * (1.0 - tol),
                          th * (1.0 - tol)};
  coa_cfg.upper_bounds = {std::min(fw, search.cx + search.w / 2.0),
                          std::min(fh, search.cy + search.h / 2.0), tw * (1.0 + tol),
                          th * (1.0 + tol)};

  const Image& templ = state.template_patch;
  const auto objective = [&](std::span<const double> v) {
    const PixelRect rect = window_rect(CenterBox{v[0], v[1], v[2], v[3]}, frame.width(),
                                       frame.height());
    return 1.0 - window_fitness(rect, frame, templ);
  };

  // Warm start at the predicted location and at the last accepted one.
  const std::vector<std::vector<double>> seeds = {
      {search.cx, search.cy, tw, th},
      {state.position.cx, state.position.cy, tw, th},
  };
  const coa::Result result = coa::run(coa_cfg, objective,
                                      coa::stop_at_fitness(1.0 - cfg.early_exit_fitness), seeds);

  const auto& best = result.best_solution;
  const PixelRect rect = window_rect(CenterBox{best[0], best[1], best[2], best[3]},
                                     frame.width(), frame.height());
  const double best_fit = 1.0 - result.best_fitness;
  state.best_fitness = best_fit;
  state.histogram_similarity =
      rect.empty() ? 0.0
                   : histogram_intersection(state.model_histogram,
                                            build_histogram(resample(frame, rect, templ.width(),
                                                                     templ.height())));

  if (best_fit >= cfg.ft_threshold) {
    const CenterBox accepted = to_center(BoundingBox{
        static_cast<double>(rect.x), static_cast<double>(rect.y),
        static_cast<double>(rect.x + rect.w), static_cast<double>(rect.y + rect.h)});
    const double steps = static_cast<double>(state.lost_frames + 1);
    state.velocity = {(accepted.cx - state.position.cx) / steps,
                      (accepted.cy - state.position.cy) / steps};
    state.position = accepted;
    state.search_space = {accepted.cx, accepted.cy, accepted.w, accepted.h};
    state.occluded = false;
    state.occluded_frames = 0;
    state.lost_frames = 0;
    ++state.model_frames;
    const Histogram h = build_histogram(resample(frame, rect, templ.width(), templ.height()));
    const double weight = 1.0 / state.model_frames;
    for (std::size_t i = 0; i < h.size(); ++i) {
      state.model_histogram[i] += (h[i] - state.model_histogram[i]) * weight;
    }
  } else {
    ++state.lost_frames;
    if (state.histogram_similarity < cfg.ft_threshold) {
      handle_occlusion(state, cfg);
    } else {
      state.occluded = false;
    }
  }
  return {state.target_id, to_corner(state.position), best_fit, state.occluded};
}

std::vector<TrackStep> track_multi(std::span<TrackerState> states, const Image& frame,
                                   const TrackerConfig& cfg) {
  std::set<int> ids;
  for (const auto& s : states) {
    if (!ids.insert(s.target_id).second) {
      throw std::invalid_argument("track_multi: duplicate target id " + std::to_string(s.target_id));
    }
  }
  std::vector<TrackStep> steps(states.size());
  if (states.size() <= 1) {
    for (std::size_t i = 0; i < states.size(); ++i) steps[i] = track_frame(states[i], frame, cfg);
    return steps;
  }
  std::vector<std::future<TrackStep>> pending;
  pending.reserve(states.size());
  for (auto& s : states) {
    pending.push_back(std::async(std::launch::async,
                                 [&s, &frame, &cfg] { return track_frame(s, frame, cfg); }));
  }
  for (std::size_t i = 0; i < pending.size(); ++i) steps[i] = pending[i].get();
  return steps;
}

}  // namespace actrack
