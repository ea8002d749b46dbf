#include "sipd/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sipd {

Grid::Grid(int width, int height) : width_(width), height_(height) {
  if (width < 3 || height < 3) {
    throw std::invalid_argument("grid dimensions must be at least 3x3, got " +
                                std::to_string(width) + "x" +
                                std::to_string(height));
  }
  cells_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
}

int Grid::index_of(CellCoord c) const {
  if (c.row < 0 || c.row >= height_ || c.col < 0 || c.col >= width_) {
    throw std::out_of_range("cell (" + std::to_string(c.row) + "," +
                            std::to_string(c.col) + ") outside " +
                            std::to_string(width_) + "x" + std::to_string(height_));
  }
  return c.row * width_ + c.col;
}

CellCoord Grid::coord_of(int index) const {
  check(index);
  return CellCoord{index / width_, index % width_};
}

std::size_t Grid::check(int index) const {
  if (index < 0 || index >= size()) {
    throw std::out_of_range("cell index " + std::to_string(index) +
                            " outside population of " + std::to_string(size()));
  }
  return static_cast<std::size_t>(index);
}

void EvolutionConfig::validate() const {
  if (rounds_per_pair < 1) {
    throw std::invalid_argument("rounds_per_pair must be >= 1");
  }
  if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) {
    throw std::invalid_argument("crossover_probability must be in [0,1]");
  }
  if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) {
    throw std::invalid_argument("mutation_probability must be in [0,1]");
  }
  if (!(scaling_multiple > 1.0)) {
    throw std::invalid_argument("scaling_multiple must be > 1");
  }
}

std::array<CellCoord, 8> neighbors(const Grid& g, CellCoord cell) {
  g.index_of(cell);  // range check
  const int w = g.width();
  const int h = g.height();
  std::array<CellCoord, 8> out;
  int n = 0;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      out[static_cast<std::size_t>(n++)] =
          CellCoord{(cell.row + dr + h) % h, (cell.col + dc + w) % w};
    }
  }
  return out;
}

std::vector<Edge> edges(const Grid& g) {
  // Half of the Moore offsets; the other half are their negations, so each
  // unordered adjacent pair appears exactly once.
  static constexpr int kHalf[4][2] = {{0, 1}, {1, -1}, {1, 0}, {1, 1}};
  const int w = g.width();
  const int h = g.height();
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(g.size()) * 4);
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      const int from = row * w + col;
      for (const auto& d : kHalf) {
        const int to = ((row + d[0]) % h) * w + (col + d[1] + w) % w;
        out.push_back(Edge{from, to});
      }
    }
  }
  return out;
}

FitnessVector evaluate_fitness(const Grid& g, const EvolutionConfig& cfg,
                               const PayoffMatrix& m) {
  cfg.validate();
  FitnessVector fitness(static_cast<std::size_t>(g.size()), 0);
  for (const Edge& e : edges(g)) {
    const MatchResult r =
        play_match(g.cell(e.a), g.cell(e.b), cfg.rounds_per_pair, m);
    fitness[static_cast<std::size_t>(e.a)] += r.payoff_a;
    fitness[static_cast<std::size_t>(e.b)] += r.payoff_b;
  }
  return fitness;
}

std::vector<double> linear_scale(std::span<const double> f,
                                 double scaling_multiple) {
  if (f.empty()) {
    throw std::invalid_argument("linear_scale requires a non-empty vector");
  }
  const double n = static_cast<double>(f.size());
  double mean = std::accumulate(f.begin(), f.end(), 0.0) / n;
  const auto [min_it, max_it] = std::minmax_element(f.begin(), f.end());
  double min = *min_it;
  double max = *max_it;

  std::vector<double> out(f.begin(), f.end());
  if (mean <= 0.0) {
    // Goldberg scaling assumes non-negative fitness; shift so min lands on 0.
    for (double& v : out) v -= min;
    mean -= min;
    max -= min;
    min = 0.0;
  }
  if (max == mean) {
    return out;  // degenerate: every value equals the mean
  }

  // Preferred line: mean fixed, max mapped to scaling_multiple*mean.
  const double a_top = (scaling_multiple - 1.0) * mean / (max - mean);
  if (a_top * (min - mean) + mean >= 0.0) {
    for (double& v : out) v = a_top * (v - mean) + mean;
  } else {
    // Fallback line: mean fixed, min mapped to 0.
    const double a_floor = mean / (mean - min);
    for (double& v : out) v = a_floor * (v - min);
  }
  return out;
}

RouletteWheel::RouletteWheel(std::span<const double> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("roulette wheel requires at least one weight");
  }
  cumulative_.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (w < 0.0 || !std::isfinite(w)) {
      throw std::invalid_argument("roulette weights must be finite and >= 0");
    }
    total_ += w;
    cumulative_.push_back(total_);
    if (w > 0.0) last_positive_ = i;
  }
}

std::size_t RouletteWheel::draw(Rng& rng) const {
  if (total_ <= 0.0) {
    return rng.uniform_below(cumulative_.size());  // all-zero fallback
  }
  const double u = rng.uniform() * total_;
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) return last_positive_;  // u == total_ edge
  return static_cast<std::size_t>(it - cumulative_.begin());
}

std::size_t select_parent(std::span<const double> scaled, Rng& rng) {
  return RouletteWheel(scaled).draw(rng);
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& p1,
                                            const Chromosome& p2, Rng& rng,
                                            double pc) {
  if (!(pc >= 0.0 && pc <= 1.0)) {
    throw std::invalid_argument("crossover probability must be in [0,1]");
  }
  if (!rng.bernoulli(pc)) return {p1, p2};
  const int cut =
      1 + static_cast<int>(rng.uniform_below(Chromosome::kLoci - 1));  // [1,70]
  Chromosome c1 = p1;
  Chromosome c2 = p2;
  for (int i = cut; i < Chromosome::kLoci; ++i) {
    c1.set_locus(i, p2.locus(i));
    c2.set_locus(i, p1.locus(i));
  }
  return {c1, c2};
}

Chromosome mutate(const Chromosome& c, Rng& rng, double pm) {
  if (!(pm >= 0.0 && pm <= 1.0)) {
    throw std::invalid_argument("mutation probability must be in [0,1]");
  }
  Chromosome out = c;
  for (int i = 0; i < Chromosome::kLoci; ++i) {
    if (rng.bernoulli(pm)) {
      out.set_locus(i, out.locus(i) == Action::Cooperate ? Action::Defect
                                                         : Action::Cooperate);
    }
  }
  return out;
}

Grid next_generation(const Grid& g, const FitnessVector& f,
                     const EvolutionConfig& cfg, Rng& rng) {
  if (static_cast<int>(f.size()) != g.size()) {
    throw std::invalid_argument("fitness vector size " +
                                std::to_string(f.size()) +
                                " does not match population " +
                                std::to_string(g.size()));
  }
  cfg.validate();
  const std::vector<double> raw(f.begin(), f.end());
  const std::vector<double> scaled = linear_scale(raw, cfg.scaling_multiple);

  Grid next(g.width(), g.height());
  if (cfg.selection_scope == SelectionScope::Global) {
    const RouletteWheel wheel(scaled);
    int produced = 0;
    while (produced < g.size()) {
      const int i = static_cast<int>(wheel.draw(rng));
      const int j = static_cast<int>(wheel.draw(rng));
      auto [c1, c2] = crossover(g.cell(i), g.cell(j), rng,
                                cfg.crossover_probability);
      c1 = mutate(c1, rng, cfg.mutation_probability);
      c2 = mutate(c2, rng, cfg.mutation_probability);
      next.cell(produced++) = c1;
      if (produced < g.size()) next.cell(produced++) = c2;
    }
  } else {
    for (int idx = 0; idx < g.size(); ++idx) {
      const auto nbrs = neighbors(g, g.coord_of(idx));
      std::array<int, 9> candidates;
      std::array<double, 9> weights;
      candidates[0] = idx;
      weights[0] = scaled[static_cast<std::size_t>(idx)];
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        candidates[k + 1] = g.index_of(nbrs[k]);
        weights[k + 1] = scaled[static_cast<std::size_t>(candidates[k + 1])];
      }
      const RouletteWheel wheel(weights);
      const int i = candidates[wheel.draw(rng)];
      const int j = candidates[wheel.draw(rng)];
      auto [c1, c2] = crossover(g.cell(i), g.cell(j), rng,
                                cfg.crossover_probability);
      next.cell(idx) = mutate(c1, rng, cfg.mutation_probability);
    }
  }
  return next;
}

GenerationStats generation_stats(const Grid& g, const FitnessVector& f,
                                 const ClassificationThresholds& t,
                                 int generation) {
  if (static_cast<int>(f.size()) != g.size()) {
    throw std::invalid_argument("fitness vector size does not match population");
  }
  GenerationStats stats;
  stats.generation = generation;
  int cooperators = 0, defectors = 0, top_defectors = 0, neutral = 0;
  for (int i = 0; i < g.size(); ++i) {
    switch (classify(g.cell(i), t)) {
      case StrategyClass::Cooperator: ++cooperators; break;
      case StrategyClass::TopDefector: ++top_defectors; ++defectors; break;
      case StrategyClass::Defector: ++defectors; break;
      case StrategyClass::Neutral: ++neutral; break;
    }
  }
  const double n = g.size();
  stats.fraction_cooperator = cooperators / n;
  stats.fraction_defector = defectors / n;
  stats.fraction_top_defector = top_defectors / n;
  stats.fraction_neutral = neutral / n;
  const auto [min_it, max_it] = std::minmax_element(f.begin(), f.end());
  stats.fitness_min = static_cast<double>(*min_it);
  stats.fitness_max = static_cast<double>(*max_it);
  stats.fitness_mean =
      std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
  return stats;
}

}  // namespace sipd
