#include "actrack/coa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace actrack::coa {

StopRule stop_at_fitness(double target) {
  return [target](const Progress& p) { return p.best_fitness <= target; };
}

void validate(const Config& config) {
  if (config.n_packs < 1) throw std::invalid_argument("coa: need at least one pack");
  if (config.n_coyotes_per_pack < 3) {
    throw std::invalid_argument("coa: need at least 3 coyotes per pack, got " +
                                std::to_string(config.n_coyotes_per_pack));
  }
  if (config.lower_bounds.empty()) throw std::invalid_argument("coa: dimension must be >= 1");
  if (config.lower_bounds.size() != config.upper_bounds.size()) {
    throw std::invalid_argument("coa: lower/upper bound lengths differ");
  }
  for (std::size_t j = 0; j < config.lower_bounds.size(); ++j) {
    const double lb = config.lower_bounds[j];
    const double ub = config.upper_bounds[j];
    if (!std::isfinite(lb) || !std::isfinite(ub) || lb > ub) {
      throw std::invalid_argument("coa: invalid bounds in dimension " + std::to_string(j));
    }
  }
}

std::vector<double> sample_social_condition(std::span<const double> lower,
                                            std::span<const double> upper,
                                            std::span<const double> r) {
  std::vector<double> soc(lower.size());
  for (std::size_t j = 0; j < lower.size(); ++j) {
    soc[j] = lower[j] + r[j] * (upper[j] - lower[j]);
  }
  return soc;
}

void clamp_to_bounds(std::vector<double>& soc, const Config& config) {
  for (std::size_t j = 0; j < soc.size(); ++j) {
    soc[j] = std::clamp(soc[j], config.lower_bounds[j], config.upper_bounds[j]);
  }
}

Population initialize_population(const Config& config, const Objective& objective, Rng& rng,
                                 std::span<const std::vector<double>> seeds) {
  validate(config);
  const std::size_t dim = config.dimension();
  std::vector<double> r(dim);
  std::size_t seed_index = 0;
  Population population(config.n_packs);
  for (auto& pack : population) {
    pack.coyotes.resize(config.n_coyotes_per_pack);
    for (auto& coyote : pack.coyotes) {
      // Always consume the draws so seeding does not shift later streams.
      for (auto& v : r) v = rng.uniform();
      if (seed_index < seeds.size()) {
        if (seeds[seed_index].size() != dim) {
          throw std::invalid_argument("coa: seed solution has wrong dimension");
        }
        coyote.social_condition = seeds[seed_index++];
        clamp_to_bounds(coyote.social_condition, config);
      } else {
        coyote.social_condition =
            sample_social_condition(config.lower_bounds, config.upper_bounds, r);
      }
      coyote.fitness = objective(coyote.social_condition);
    }
    pack.alpha_index = select_alpha(pack);
  }
  return population;
}

std::size_t select_alpha(const Pack& pack) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < pack.coyotes.size(); ++c) {
    if (pack.coyotes[c].fitness < pack.coyotes[best].fitness) best = c;
  }
  return best;
}

std::vector<double> cultural_tendency(const Pack& pack) {
  if (pack.coyotes.empty()) throw std::invalid_argument("coa: empty pack");
  const std::size_t n = pack.coyotes.size();
  const std::size_t dim = pack.coyotes.front().social_condition.size();
  std::vector<double> cult(dim);
  std::vector<double> column(n);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t c = 0; c < n; ++c) column[c] = pack.coyotes[c].social_condition[j];
    const auto mid = column.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(column.begin(), mid, column.end());
    if (n % 2 == 1) {
      cult[j] = *mid;
    } else {
      const double upper = *mid;
      const double lower = *std::max_element(column.begin(), mid);
      cult[j] = (lower + upper) / 2.0;
    }
  }
  return cult;
}

UpdateDraw draw_update(std::size_t n_coyotes, std::size_t c, Rng& rng) {
  UpdateDraw d;
  do {
    d.cr1 = rng.below(n_coyotes);
  } while (d.cr1 == c);
  do {
    d.cr2 = rng.below(n_coyotes);
  } while (d.cr2 == c || d.cr2 == d.cr1);
  d.r1 = rng.uniform();
  d.r2 = rng.uniform();
  return d;
}

std::vector<double> propose_social_condition(const Pack& pack, std::size_t c,
                                             std::span<const double> cult,
                                             const UpdateDraw& draw, const Config& config) {
  const auto& soc = pack.coyotes[c].social_condition;
  const auto& alpha = pack.coyotes[pack.alpha_index].social_condition;
  const auto& soc_cr1 = pack.coyotes[draw.cr1].social_condition;
  const auto& soc_cr2 = pack.coyotes[draw.cr2].social_condition;
  std::vector<double> next(soc.size());
  for (std::size_t j = 0; j < soc.size(); ++j) {
    const double alpha_influence = alpha[j] - soc_cr1[j];
    const double pack_influence = cult[j] - soc_cr2[j];
    next[j] = soc[j] + draw.r1 * alpha_influence + draw.r2 * pack_influence;
  }
  clamp_to_bounds(next, config);
  return next;
}

Coyote update_coyote(const Pack& pack, std::size_t c, std::span<const double> cult,
                     const Config& config, const Objective& objective, Rng& rng) {
  const UpdateDraw draw = draw_update(pack.coyotes.size(), c, rng);
  Coyote candidate;
  candidate.social_condition = propose_social_condition(pack, c, cult, draw, config);
  candidate.fitness = objective(candidate.social_condition);
  return candidate;
}

const Coyote& greedy_accept(const Coyote& current, const Coyote& candidate) {
  return candidate.fitness < current.fitness ? candidate : current;
}

namespace {

// Global best scanned in pack/coyote order so ties resolve deterministically.
const Coyote& global_best(const Population& population) {
  const Coyote* best = &population.front().coyotes[population.front().alpha_index];
  for (const auto& pack : population) {
    const Coyote& alpha = pack.coyotes[pack.alpha_index];
    if (alpha.fitness < best->fitness) best = &alpha;
  }
  return *best;
}

}  // namespace

Result run(const Config& config, const Objective& objective, const StopRule& stop,
           std::span<const std::vector<double>> seeds) {
  Rng rng(config.rng_seed);
  Population population = initialize_population(config, objective, rng, seeds);

  Result result;
  const Coyote* best = &global_best(population);
  result.best_solution = best->social_condition;
  result.best_fitness = best->fitness;
  result.fitness_history.push_back(result.best_fitness);
  if (stop && stop(Progress{0, result.best_fitness})) return result;

  for (std::size_t iter = 1; iter <= config.max_iterations; ++iter) {
    for (auto& pack : population) {
      pack.alpha_index = select_alpha(pack);
      const std::vector<double> cult = cultural_tendency(pack);
      for (std::size_t c = 0; c < pack.coyotes.size(); ++c) {
        Coyote candidate = update_coyote(pack, c, cult, config, objective, rng);
        if (&greedy_accept(pack.coyotes[c], candidate) == &candidate) {
          pack.coyotes[c] = std::move(candidate);
        }
      }
      pack.alpha_index = select_alpha(pack);
    }
    best = &global_best(population);
    if (best->fitness < result.best_fitness) {
      result.best_fitness = best->fitness;
      result.best_solution = best->social_condition;
    }
    result.fitness_history.push_back(result.best_fitness);
    result.iterations_run = iter;
    if (stop && stop(Progress{iter, result.best_fitness})) break;
  }
  return result;
}

}  // namespace actrack::coa
