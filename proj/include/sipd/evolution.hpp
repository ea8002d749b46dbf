#ifndef SIPD_EVOLUTION_HPP
#define SIPD_EVOLUTION_HPP

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sipd/game.hpp"
#include "sipd/rng.hpp"
#include "sipd/strategy.hpp"

namespace sipd {

struct CellCoord {
  int row = 0;
  int col = 0;

  bool operator==(const CellCoord&) const = default;
};

// Toroidal player grid, cells in row-major order. Both dimensions must be
// at least 3 so the 8 Moore neighbors of any cell are distinct.
class Grid {
 public:
  Grid(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  int size() const { return width_ * height_; }

  Chromosome& cell(int index) { return cells_[check(index)]; }
  const Chromosome& cell(int index) const { return cells_[check(index)]; }
  Chromosome& cell(CellCoord c) { return cell(index_of(c)); }
  const Chromosome& cell(CellCoord c) const { return cell(index_of(c)); }

  int index_of(CellCoord c) const;
  CellCoord coord_of(int index) const;

 private:
  std::size_t check(int index) const;

  int width_;
  int height_;
  std::vector<Chromosome> cells_;
};

enum class SelectionScope { Global, Local };

struct EvolutionConfig {
  int rounds_per_pair = 200;
  double crossover_probability = 0.98;
  double mutation_probability = 0.01;   // per bit
  double scaling_multiple = 2.0;        // linear-scaling fitness cap
  SelectionScope selection_scope = SelectionScope::Global;

  // Requires probabilities in [0,1], scaling_multiple > 1,
  // rounds_per_pair >= 1.
  void validate() const;
};

// Raw per-player payoff totals, indexed like Grid cells.
using FitnessVector = std::vector<Currency>;

struct GenerationStats {
  int generation = 0;
  double fraction_cooperator = 0.0;
  double fraction_defector = 0.0;      // includes top defectors
  double fraction_top_defector = 0.0;  // also counted in fraction_defector
  double fraction_neutral = 0.0;
  double fitness_mean = 0.0;
  double fitness_max = 0.0;
  double fitness_min = 0.0;
};

struct Edge {
  int a = 0;
  int b = 0;
};

// The 8 Moore-neighborhood coordinates with toroidal wraparound, in fixed
// order: NW, N, NE, W, E, SW, S, SE. Throws on an out-of-range cell.
std::array<CellCoord, 8> neighbors(const Grid& g, CellCoord cell);

// Every Moore-adjacent unordered pair exactly once (4 per cell, offsets
// E, SW, S, SE from each cell in row-major order). |edges| = 4*width*height.
std::vector<Edge> edges(const Grid& g);

// One match per edge at rounds_per_pair rounds; each endpoint accrues its
// side's total, so fitness[i] sums player i's 8 matches. Deterministic.
FitnessVector evaluate_fitness(const Grid& g, const EvolutionConfig& cfg,
                               const PayoffMatrix& m);

// Goldberg linear scaling. If mean(f) <= 0 the vector is first shifted by
// -min(f). Then f' = a*f + b with mean preserved and max(f') =
// scaling_multiple*mean; if that line would take min(f) below zero, a,b are
// chosen so min(f') = 0 instead. A degenerate vector (max == mean) is
// returned unchanged after any shift. All outputs are >= 0.
std::vector<double> linear_scale(std::span<const double> f,
                                 double scaling_multiple);

// Roulette wheel over non-negative weights. All-zero weights fall back to
// a uniform draw. One Rng draw per selection.
class RouletteWheel {
 public:
  explicit RouletteWheel(std::span<const double> weights);

  std::size_t draw(Rng& rng) const;

 private:
  std::vector<double> cumulative_;
  double total_ = 0.0;
  std::size_t last_positive_ = 0;
};

// Single roulette draw proportional to scaled fitness.
std::size_t select_parent(std::span<const double> scaled, Rng& rng);

// Same-point single-point crossover: with probability pc, a cut k uniform
// in [1,70] swaps the suffixes [k,71) of both parents; otherwise the
// children are exact copies. Draw order: crossover coin, then the cut.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& p1,
                                            const Chromosome& p2, Rng& rng,
                                            double pc);

// Independent per-bit flips with probability pm; consumes one draw per
// locus, locus 0 first.
Chromosome mutate(const Chromosome& c, Rng& rng, double pm);

// Replaces the whole population. Fitness is linear-scaled, parents are
// roulette-selected (Global: over the whole population, children stream
// into cells row-major, both children of the final pair are mutated even
// when an odd population discards the surplus one; Local: per target cell
// over its 9-cell neighborhood, keeping the first crossover child), then
// crossover and mutation are applied. Population size is preserved.
Grid next_generation(const Grid& g, const FitnessVector& f,
                     const EvolutionConfig& cfg, Rng& rng);

// Class fractions over all cells plus fitness mean/max/min.
GenerationStats generation_stats(const Grid& g, const FitnessVector& f,
                                 const ClassificationThresholds& t,
                                 int generation);

}  // namespace sipd

#endif  // SIPD_EVOLUTION_HPP
