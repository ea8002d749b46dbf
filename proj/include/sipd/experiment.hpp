#ifndef SIPD_EXPERIMENT_HPP
#define SIPD_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sipd/evolution.hpp"
#include "sipd/game.hpp"

namespace sipd {

enum class CaseId { CaseI, CaseIIA, CaseIIB, Custom };

std::string case_name(CaseId id);

// One payoff case: gamma = reward_value, delta per the case rule
// (I: 0, IIA: R/2, IIB: R, Custom: explicit_compensation).
struct CaseSpec {
  CaseId id = CaseId::CaseI;
  Currency reward_value = 10;
  std::optional<Currency> explicit_compensation;  // Custom only

  static CaseSpec case_i(Currency reward = 10);
  static CaseSpec case_iia(Currency reward = 10);
  static CaseSpec case_iib(Currency reward = 10);
  static CaseSpec custom(Currency reward, Currency compensation);
};

struct RunConfig {
  int grid_width = 50;
  int grid_height = 50;
  int generations = 1000;
  int runs = 5;
  std::uint64_t base_seed = 1;
  EvolutionConfig evolution;
  ClassificationThresholds thresholds;
  double initial_cooperator_share = 0.80;

  void validate() const;
};

// Per-generation population snapshots; entry 0 is the initial population,
// so a finished run holds generations+1 entries.
using TimeSeries = std::vector<GenerationStats>;

struct PeakResult {
  double value = 0.0;
  int generation = 0;  // earliest generation attaining the peak
};

struct CaseSummary {
  PeakResult peak_defector;
  PeakResult peak_top_defector;
  double final_window_mean_defector = 0.0;  // mean over the last 10%
};

enum class SeriesField { Defector, TopDefector };

// gamma/delta for a case. Throws on a Custom spec without an explicit
// compensation, and on an IIA reward that is not evenly halvable.
PayoffConfig build_case(const CaseSpec& spec);

// Exactly round(share*N) Cooperator-class cells, the rest Defector-class.
// Draw order: one Fisher-Yates shuffle of the class labels, then
// sample_class_member per cell in row-major order.
Grid init_population(Rng& rng, const RunConfig& cfg);

// Full seeded run: init, then per generation evaluate fitness, record
// stats, reproduce. The final population is recorded too, so the series
// has generations+1 entries. Deterministic per (spec, cfg, seed).
TimeSeries run_simulation(const CaseSpec& spec, const RunConfig& cfg,
                          std::uint64_t seed);

// cfg.runs independent runs with seeds base_seed + 0 .. base_seed + runs-1,
// evaluated concurrently, returned in seed order.
std::vector<TimeSeries> run_case(const CaseSpec& spec, const RunConfig& cfg);

// Element-wise arithmetic mean of every numeric field. All series must
// have equal length.
TimeSeries average_runs(std::span<const TimeSeries> series);

// Maximum of the chosen fraction and the earliest generation attaining it.
PeakResult peak(const TimeSeries& series, SeriesField field);

// Peaks plus the final-window mean defector fraction, where the window is
// the last max(1, length/10) entries.
CaseSummary summarize(const TimeSeries& series);

}  // namespace sipd

#endif  // SIPD_EXPERIMENT_HPP
