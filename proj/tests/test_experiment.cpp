#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "sipd/experiment.hpp"

using namespace sipd;

namespace {

RunConfig tiny_config() {
  RunConfig cfg;
  cfg.grid_width = 6;
  cfg.grid_height = 6;
  cfg.generations = 4;
  cfg.runs = 2;
  cfg.base_seed = 42;
  cfg.evolution.rounds_per_pair = 10;
  return cfg;
}

GenerationStats stats_with(int gen, double defector, double top) {
  GenerationStats s;
  s.generation = gen;
  s.fraction_defector = defector;
  s.fraction_top_defector = top;
  s.fraction_cooperator = 1.0 - defector;
  return s;
}

}  // namespace

TEST_CASE("case specs map to the published payoff parameters") {
  const PayoffConfig i = build_case(CaseSpec::case_i());
  CHECK(i.goods_price == 10);
  CHECK(i.compensation == 0);

  CHECK(build_case(CaseSpec::case_iia()).compensation == 5);
  CHECK(build_case(CaseSpec::case_iib()).compensation == 10);
  CHECK(build_case(CaseSpec::custom(10, 3)).compensation == 3);

  CHECK_THROWS_AS(build_case(CaseSpec{CaseId::Custom, 10, std::nullopt}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_case(CaseSpec::case_iia(9)), std::invalid_argument);
  CHECK_THROWS_AS(build_case(CaseSpec::case_i(0)), std::invalid_argument);
}

TEST_CASE("initial population splits classes exactly") {
  RunConfig cfg;  // 50x50, share 0.80
  cfg.validate();
  Rng rng(7);
  const Grid g = init_population(rng, cfg);

  int cooperators = 0, defectors = 0;
  for (int i = 0; i < g.size(); ++i) {
    switch (classify(g.cell(i), cfg.thresholds)) {
      case StrategyClass::Cooperator: ++cooperators; break;
      case StrategyClass::Defector:
      case StrategyClass::TopDefector: ++defectors; break;
      default: break;
    }
  }
  CHECK(cooperators == 2000);
  CHECK(defectors == 500);

  const FitnessVector zeros(static_cast<std::size_t>(g.size()), 0);
  const GenerationStats s = generation_stats(g, zeros, cfg.thresholds, 0);
  CHECK(s.fraction_defector == 0.20);
}

TEST_CASE("initial population is deterministic per seed") {
  RunConfig cfg = tiny_config();
  Rng a(11), b(11), c(12);
  const Grid ga = init_population(a, cfg);
  const Grid gb = init_population(b, cfg);
  const Grid gc = init_population(c, cfg);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < ga.size(); ++i) {
    all_equal = all_equal && ga.cell(i) == gb.cell(i);
    any_diff = any_diff || !(ga.cell(i) == gc.cell(i));
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("a full cooperator share fills the grid with cooperators") {
  RunConfig cfg = tiny_config();
  cfg.initial_cooperator_share = 1.0;
  Rng rng(3);
  const Grid g = init_population(rng, cfg);
  for (int i = 0; i < g.size(); ++i) {
    CHECK(classify(g.cell(i), cfg.thresholds) == StrategyClass::Cooperator);
  }
}

TEST_CASE("run_simulation records generations+1 snapshots deterministically") {
  const RunConfig cfg = tiny_config();
  const TimeSeries s1 = run_simulation(CaseSpec::case_i(), cfg, 5);
  const TimeSeries s2 = run_simulation(CaseSpec::case_i(), cfg, 5);
  REQUIRE(s1.size() == 5);  // generations + 1
  REQUIRE(s2.size() == 5);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    CHECK(s1[i].generation == static_cast<int>(i));
    CHECK(s1[i].fraction_cooperator == s2[i].fraction_cooperator);
    CHECK(s1[i].fraction_defector == s2[i].fraction_defector);
    CHECK(s1[i].fraction_top_defector == s2[i].fraction_top_defector);
    CHECK(s1[i].fraction_neutral == s2[i].fraction_neutral);
    CHECK(s1[i].fitness_mean == s2[i].fitness_mean);
    CHECK(s1[i].fitness_max == s2[i].fitness_max);
    CHECK(s1[i].fitness_min == s2[i].fitness_min);
    CHECK(s1[i].fraction_cooperator + s1[i].fraction_defector +
              s1[i].fraction_neutral == doctest::Approx(1.0).epsilon(1e-12));
  }

  RunConfig snapshot_only = cfg;
  snapshot_only.generations = 0;
  CHECK(run_simulation(CaseSpec::case_i(), snapshot_only, 5).size() == 1);
}

TEST_CASE("run_case produces one series per seed, in seed order") {
  const RunConfig cfg = tiny_config();
  const std::vector<TimeSeries> runs = run_case(CaseSpec::case_iib(), cfg);
  REQUIRE(runs.size() == 2);
  const TimeSeries direct0 = run_simulation(CaseSpec::case_iib(), cfg, 42);
  const TimeSeries direct1 = run_simulation(CaseSpec::case_iib(), cfg, 43);
  CHECK(runs[0].size() == direct0.size());
  CHECK(runs[1].size() == direct1.size());
  for (std::size_t i = 0; i < direct0.size(); ++i) {
    CHECK(runs[0][i].fraction_defector == direct0[i].fraction_defector);
    CHECK(runs[1][i].fraction_defector == direct1[i].fraction_defector);
  }

  // The mean's peak cannot exceed the largest per-run peak.
  const TimeSeries avg = average_runs(runs);
  const double max_run_peak =
      std::max(peak(runs[0], SeriesField::Defector).value,
               peak(runs[1], SeriesField::Defector).value);
  CHECK(peak(avg, SeriesField::Defector).value <= max_run_peak + 1e-12);
}

TEST_CASE("average_runs takes the element-wise mean of every field") {
  TimeSeries a{stats_with(0, 0.2, 0.1), stats_with(1, 0.4, 0.2)};
  TimeSeries b{stats_with(0, 0.4, 0.3), stats_with(1, 0.8, 0.4)};
  a[0].fitness_mean = 10;
  b[0].fitness_mean = 30;

  const std::vector<TimeSeries> one{a};
  const TimeSeries identity = average_runs(one);
  CHECK(identity[1].fraction_defector == 0.4);

  const std::vector<TimeSeries> both{a, b};
  const TimeSeries avg = average_runs(both);
  CHECK(avg[0].fraction_defector == doctest::Approx(0.3));
  CHECK(avg[0].fraction_top_defector == doctest::Approx(0.2));
  CHECK(avg[0].fitness_mean == doctest::Approx(20.0));
  CHECK(avg[1].fraction_defector == doctest::Approx(0.6));
  CHECK(avg[0].generation == 0);
  CHECK(avg[1].generation == 1);

  const std::vector<TimeSeries> swapped{b, a};
  const TimeSeries avg2 = average_runs(swapped);
  CHECK(avg2[1].fraction_defector == avg[1].fraction_defector);

  TimeSeries shorter{stats_with(0, 0.2, 0.1)};
  const std::vector<TimeSeries> mismatched{a, shorter};
  CHECK_THROWS_AS(average_runs(mismatched), std::invalid_argument);
}

TEST_CASE("peak finds the maximum and its earliest generation") {
  TimeSeries series{stats_with(0, 0.2, 0.1), stats_with(1, 0.5, 0.2),
                    stats_with(2, 0.74, 0.2), stats_with(3, 0.6, 0.1)};
  const PeakResult p = peak(series, SeriesField::Defector);
  CHECK(p.value == 0.74);
  CHECK(p.generation == 2);

  TimeSeries flat{stats_with(0, 0.3, 0.3), stats_with(1, 0.3, 0.3)};
  CHECK(peak(flat, SeriesField::Defector).generation == 0);
  CHECK(peak(flat, SeriesField::TopDefector).value == 0.3);

  CHECK_THROWS_AS(peak(TimeSeries{}, SeriesField::Defector),
                  std::invalid_argument);
}

TEST_CASE("summaries report peaks and the final-window mean") {
  TimeSeries series;
  for (int gen = 0; gen < 20; ++gen) {
    series.push_back(stats_with(gen, gen == 7 ? 0.9 : 0.5, 0.1));
  }
  series[18].fraction_defector = 0.7;
  series[19].fraction_defector = 0.8;

  const CaseSummary s = summarize(series);
  CHECK(s.peak_defector.value == 0.9);
  CHECK(s.peak_defector.generation == 7);
  CHECK(s.final_window_mean_defector == doctest::Approx(0.75));  // last 2 of 20
}

TEST_CASE("desk-scale strong dilemma runs breed a defector majority") {
  RunConfig cfg;
  cfg.grid_width = 20;
  cfg.grid_height = 20;
  cfg.generations = 300;
  cfg.runs = 5;
  cfg.base_seed = 1;
  cfg.evolution.rounds_per_pair = 50;

  const std::vector<TimeSeries> runs = run_case(CaseSpec::case_i(), cfg);
  const TimeSeries avg = average_runs(runs);
  CHECK(avg[0].fraction_defector == doctest::Approx(0.20).epsilon(1e-12));
  CHECK(peak(avg, SeriesField::Defector).value > 0.50);
}
