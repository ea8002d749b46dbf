#include "sipd/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>

namespace sipd {

std::string case_name(CaseId id) {
  switch (id) {
    case CaseId::CaseI: return "I";
    case CaseId::CaseIIA: return "IIA";
    case CaseId::CaseIIB: return "IIB";
    case CaseId::Custom: return "custom";
  }
  return "?";
}

CaseSpec CaseSpec::case_i(Currency reward) {
  return CaseSpec{CaseId::CaseI, reward, std::nullopt};
}

CaseSpec CaseSpec::case_iia(Currency reward) {
  return CaseSpec{CaseId::CaseIIA, reward, std::nullopt};
}

CaseSpec CaseSpec::case_iib(Currency reward) {
  return CaseSpec{CaseId::CaseIIB, reward, std::nullopt};
}

CaseSpec CaseSpec::custom(Currency reward, Currency compensation) {
  return CaseSpec{CaseId::Custom, reward, compensation};
}

void RunConfig::validate() const {
  if (grid_width < 3 || grid_height < 3) {
    throw std::invalid_argument("grid dimensions must be at least 3x3");
  }
  if (generations < 0) {
    throw std::invalid_argument("generations must be >= 0");
  }
  if (runs < 1) {
    throw std::invalid_argument("runs must be >= 1");
  }
  if (!(initial_cooperator_share >= 0.0 && initial_cooperator_share <= 1.0)) {
    throw std::invalid_argument("initial_cooperator_share must be in [0,1]");
  }
  evolution.validate();
  thresholds.validate();
}

PayoffConfig build_case(const CaseSpec& spec) {
  if (spec.reward_value <= 0) {
    throw std::invalid_argument("case reward value must be positive");
  }
  PayoffConfig cfg;
  cfg.goods_price = spec.reward_value;
  switch (spec.id) {
    case CaseId::CaseI:
      cfg.compensation = 0;
      break;
    case CaseId::CaseIIA:
      if (spec.reward_value % 2 != 0) {
        throw std::invalid_argument(
            "case IIA needs an even reward so the half compensation stays a "
            "whole currency amount");
      }
      cfg.compensation = spec.reward_value / 2;
      break;
    case CaseId::CaseIIB:
      cfg.compensation = spec.reward_value;
      break;
    case CaseId::Custom:
      if (!spec.explicit_compensation) {
        throw std::invalid_argument("custom case requires an explicit compensation");
      }
      cfg.compensation = *spec.explicit_compensation;
      break;
  }
  cfg.validate();
  return cfg;
}

Grid init_population(Rng& rng, const RunConfig& cfg) {
  cfg.validate();
  Grid grid(cfg.grid_width, cfg.grid_height);
  const int n = grid.size();
  const int n_coop = static_cast<int>(
      std::llround(cfg.initial_cooperator_share * static_cast<double>(n)));

  std::vector<StrategyClass> labels(static_cast<std::size_t>(n),
                                    StrategyClass::Defector);
  std::fill_n(labels.begin(), n_coop, StrategyClass::Cooperator);
  for (int i = n - 1; i > 0; --i) {  // Fisher-Yates
    const int j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(j)]);
  }
  for (int i = 0; i < n; ++i) {
    grid.cell(i) =
        sample_class_member(rng, labels[static_cast<std::size_t>(i)], cfg.thresholds);
  }
  return grid;
}

TimeSeries run_simulation(const CaseSpec& spec, const RunConfig& cfg,
                          std::uint64_t seed) {
  cfg.validate();
  const PayoffMatrix matrix = payoff_matrix_from(build_case(spec));
  Rng rng(seed);
  Grid grid = init_population(rng, cfg);

  TimeSeries series;
  series.reserve(static_cast<std::size_t>(cfg.generations) + 1);
  for (int gen = 0; gen <= cfg.generations; ++gen) {
    const FitnessVector fitness = evaluate_fitness(grid, cfg.evolution, matrix);
    series.push_back(generation_stats(grid, fitness, cfg.thresholds, gen));
    if (gen < cfg.generations) {
      grid = next_generation(grid, fitness, cfg.evolution, rng);
    }
  }
  return series;
}

std::vector<TimeSeries> run_case(const CaseSpec& spec, const RunConfig& cfg) {
  cfg.validate();
  std::vector<std::future<TimeSeries>> futures;
  futures.reserve(static_cast<std::size_t>(cfg.runs));
  for (int run = 0; run < cfg.runs; ++run) {
    futures.push_back(std::async(std::launch::async, [&spec, &cfg, run] {
      return run_simulation(spec, cfg, cfg.base_seed + static_cast<std::uint64_t>(run));
    }));
  }
  std::vector<TimeSeries> out;
  out.reserve(futures.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

TimeSeries average_runs(std::span<const TimeSeries> series) {
  if (series.empty()) {
    throw std::invalid_argument("average_runs requires at least one series");
  }
  const std::size_t length = series.front().size();
  for (const TimeSeries& s : series) {
    if (s.size() != length) {
      throw std::invalid_argument("cannot average series of different lengths");
    }
  }
  TimeSeries out(length);
  const double n = static_cast<double>(series.size());
  for (std::size_t i = 0; i < length; ++i) {
    GenerationStats& acc = out[i];
    acc.generation = series.front()[i].generation;
    for (const TimeSeries& s : series) {
      acc.fraction_cooperator += s[i].fraction_cooperator;
      acc.fraction_defector += s[i].fraction_defector;
      acc.fraction_top_defector += s[i].fraction_top_defector;
      acc.fraction_neutral += s[i].fraction_neutral;
      acc.fitness_mean += s[i].fitness_mean;
      acc.fitness_max += s[i].fitness_max;
      acc.fitness_min += s[i].fitness_min;
    }
    acc.fraction_cooperator /= n;
    acc.fraction_defector /= n;
    acc.fraction_top_defector /= n;
    acc.fraction_neutral /= n;
    acc.fitness_mean /= n;
    acc.fitness_max /= n;
    acc.fitness_min /= n;
  }
  return out;
}

PeakResult peak(const TimeSeries& series, SeriesField field) {
  if (series.empty()) {
    throw std::invalid_argument("peak requires a non-empty series");
  }
  PeakResult best{-1.0, 0};
  for (const GenerationStats& s : series) {
    const double value = field == SeriesField::Defector
                             ? s.fraction_defector
                             : s.fraction_top_defector;
    if (value > best.value) {
      best.value = value;
      best.generation = s.generation;
    }
  }
  return best;
}

CaseSummary summarize(const TimeSeries& series) {
  CaseSummary summary;
  summary.peak_defector = peak(series, SeriesField::Defector);
  summary.peak_top_defector = peak(series, SeriesField::TopDefector);
  const std::size_t window =
      std::max<std::size_t>(1, series.size() / 10);
  double sum = 0.0;
  for (std::size_t i = series.size() - window; i < series.size(); ++i) {
    sum += series[i].fraction_defector;
  }
  summary.final_window_mean_defector = sum / static_cast<double>(window);
  return summary;
}

}  // namespace sipd
