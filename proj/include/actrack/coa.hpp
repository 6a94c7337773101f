#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "actrack/random.hpp"

/// Coyote Optimization Algorithm, simplified form: fixed packs, no solitary
/// coyotes, no birth/death, no pack exchange. Minimizes the objective.
namespace actrack::coa {

struct Config {
  std::size_t n_packs = 5;
  std::size_t n_coyotes_per_pack = 5;
  std::vector<double> lower_bounds;
  std::vector<double> upper_bounds;
  std::size_t max_iterations = 100;
  std::uint64_t rng_seed = 0;

  std::size_t dimension() const { return lower_bounds.size(); }
};

struct Coyote {
  std::vector<double> social_condition;
  double fitness = 0.0;
};

struct Pack {
  std::vector<Coyote> coyotes;
  std::size_t alpha_index = 0;
};

using Population = std::vector<Pack>;
using Objective = std::function<double(std::span<const double>)>;

struct Progress {
  std::size_t iteration = 0;  // 0 = after initialization
  double best_fitness = 0.0;
};

/// Returns true to stop the run early.
using StopRule = std::function<bool(const Progress&)>;

StopRule stop_at_fitness(double target);

struct Result {
  std::vector<double> best_solution;
  double best_fitness = 0.0;
  std::size_t iterations_run = 0;
  /// Entry 0 is the initial population's best, then one entry per iteration.
  std::vector<double> fitness_history;
};

/// Throws std::invalid_argument on Np < 1, Nc < 3, D < 1, mismatched or
/// inverted bounds.
void validate(const Config& config);

/// lb_j + r_j (ub_j - lb_j) for each dimension.
std::vector<double> sample_social_condition(std::span<const double> lower,
                                            std::span<const double> upper,
                                            std::span<const double> r);

void clamp_to_bounds(std::vector<double>& soc, const Config& config);

/// Random initial packs. Optional seed solutions (clamped) replace the first
/// coyotes in pack order, which lets callers warm-start from a known guess.
Population initialize_population(const Config& config, const Objective& objective, Rng& rng,
                                 std::span<const std::vector<double>> seeds = {});

/// Index of the minimum-fitness coyote; ties go to the lowest index.
std::size_t select_alpha(const Pack& pack);

/// Per-dimension median of the pack's social conditions.
std::vector<double> cultural_tendency(const Pack& pack);

/// Random choices behind one social update: two partner coyotes distinct from
/// each other and from the updated one, and the two influence weights.
struct UpdateDraw {
  std::size_t cr1 = 0;
  std::size_t cr2 = 0;
  double r1 = 0.0;
  double r2 = 0.0;
};

UpdateDraw draw_update(std::size_t n_coyotes, std::size_t c, Rng& rng);

/// soc_c + r1 (alpha - soc_cr1) + r2 (cult - soc_cr2), clamped to bounds.
std::vector<double> propose_social_condition(const Pack& pack, std::size_t c,
                                             std::span<const double> cult,
                                             const UpdateDraw& draw, const Config& config);

/// Draws, proposes and evaluates a candidate replacement for coyote c.
Coyote update_coyote(const Pack& pack, std::size_t c, std::span<const double> cult,
                     const Config& config, const Objective& objective, Rng& rng);

/// Candidate wins only on strict improvement.
const Coyote& greedy_accept(const Coyote& current, const Coyote& candidate);

Result run(const Config& config, const Objective& objective, const StopRule& stop = {},
           std::span<const std::vector<double>> seeds = {});

}  // namespace actrack::coa
