#include "sipd/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace sipd::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

void append_fixed6(std::string& out, double value) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 6);
  out.append(buf, res.ptr);
}

long long parse_int(const std::string& text, const std::string& what) {
  long long value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument(what + ": expected an integer, got '" + text + "'");
  }
  return value;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument(what + ": expected a non-negative integer, got '" +
                                text + "'");
  }
  return value;
}

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument(what + ": expected a number, got '" + text + "'");
  }
  return value;
}

struct RunOptions {
  std::string case_selector = "I";
  RunConfig config;
  std::string out_dir = "results";
};

std::vector<CaseSpec> selected_cases(const std::string& selector) {
  if (selector == "I") return {CaseSpec::case_i()};
  if (selector == "IIA") return {CaseSpec::case_iia()};
  if (selector == "IIB") return {CaseSpec::case_iib()};
  if (selector == "all") {
    return {CaseSpec::case_i(), CaseSpec::case_iia(), CaseSpec::case_iib()};
  }
  throw std::invalid_argument("--case must be one of I, IIA, IIB, all (got '" +
                              selector + "')");
}

// Every run option is applied from text so the config file and the command
// line share one parser. Precedence: defaults < DF_SEED < --preset < config
// file < explicit flags.
void apply_run_option(RunOptions& opt, const std::string& key,
                      const std::string& value) {
  if (key == "case") {
    selected_cases(value);  // validate only
    opt.case_selector = value;
  } else if (key == "grid") {
    const auto sep = value.find_first_of("xX");
    if (sep == std::string::npos) {
      throw std::invalid_argument("--grid expects WxH, got '" + value + "'");
    }
    opt.config.grid_width =
        static_cast<int>(parse_int(value.substr(0, sep), "--grid width"));
    opt.config.grid_height =
        static_cast<int>(parse_int(value.substr(sep + 1), "--grid height"));
  } else if (key == "generations") {
    opt.config.generations = static_cast<int>(parse_int(value, "--generations"));
  } else if (key == "rounds") {
    opt.config.evolution.rounds_per_pair =
        static_cast<int>(parse_int(value, "--rounds"));
  } else if (key == "runs") {
    opt.config.runs = static_cast<int>(parse_int(value, "--runs"));
  } else if (key == "seed") {
    opt.config.base_seed = parse_u64(value, "--seed");
  } else if (key == "crossover") {
    opt.config.evolution.crossover_probability =
        parse_double(value, "--crossover");
  } else if (key == "mutation") {
    opt.config.evolution.mutation_probability = parse_double(value, "--mutation");
  } else if (key == "scaling") {
    opt.config.evolution.scaling_multiple = parse_double(value, "--scaling");
  } else if (key == "selection") {
    if (value == "global") {
      opt.config.evolution.selection_scope = SelectionScope::Global;
    } else if (value == "local") {
      opt.config.evolution.selection_scope = SelectionScope::Local;
    } else {
      throw std::invalid_argument("--selection must be global or local");
    }
  } else if (key == "coop-share") {
    opt.config.initial_cooperator_share = parse_double(value, "--coop-share");
  } else if (key == "out") {
    opt.out_dir = value;
  } else if (key == "preset") {
    if (value != "desk") {
      throw std::invalid_argument("unknown preset '" + value + "' (supported: desk)");
    }
    opt.config.grid_width = 20;
    opt.config.grid_height = 20;
    opt.config.generations = 300;
    opt.config.evolution.rounds_per_pair = 50;
    opt.config.runs = 5;
  } else {
    throw std::invalid_argument("unknown option '" + key + "'");
  }
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file '" + path + "'");
  }
  std::map<std::string, std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config file line is not key=value: '" + line + "'");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return entries;
}

std::string format_currency(Currency v) { return std::to_string(v); }

void write_file(const fs::path& path, const std::string& contents,
                std::vector<fs::path>& written) {
  written.push_back(path);  // recorded first so a partial file gets removed
  std::ofstream out(path, std::ios::binary);
  out << contents;
  out.close();
  if (!out) {
    throw std::runtime_error("failed to write " + path.string());
  }
}

ordered_json summary_json(const CaseSpec& spec, const RunOptions& opt,
                          const CaseSummary& summary) {
  ordered_json j;
  j["case"] = case_name(spec.id);
  j["grid"] = std::to_string(opt.config.grid_width) + "x" +
              std::to_string(opt.config.grid_height);
  j["generations"] = opt.config.generations;
  j["rounds_per_pair"] = opt.config.evolution.rounds_per_pair;
  j["runs"] = opt.config.runs;
  j["base_seed"] = opt.config.base_seed;
  j["crossover_probability"] = opt.config.evolution.crossover_probability;
  j["mutation_probability"] = opt.config.evolution.mutation_probability;
  j["scaling_multiple"] = opt.config.evolution.scaling_multiple;
  j["selection"] = opt.config.evolution.selection_scope == SelectionScope::Global
                       ? "global"
                       : "local";
  j["initial_cooperator_share"] = opt.config.initial_cooperator_share;
  j["peak_defector"] = {{"fraction", summary.peak_defector.value},
                        {"generation", summary.peak_defector.generation}};
  j["peak_top_defector"] = {{"fraction", summary.peak_top_defector.value},
                            {"generation", summary.peak_top_defector.generation}};
  j["final_window_mean_defector"] = summary.final_window_mean_defector;
  return j;
}

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  const std::vector<CaseSpec> cases = selected_cases(opt.case_selector);
  std::vector<fs::path> written;
  try {
    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);

    ordered_json combined;
    std::vector<std::pair<std::string, double>> peaks;
    for (const CaseSpec& spec : cases) {
      const std::string name = "case" + case_name(spec.id);
      const std::vector<TimeSeries> runs = run_case(spec, opt.config);
      for (std::size_t i = 0; i < runs.size(); ++i) {
        write_file(dir / (name + "_run" + std::to_string(i) + ".csv"),
                   format_csv(runs[i]), written);
      }
      const TimeSeries averaged = average_runs(runs);
      write_file(dir / (name + "_avg.csv"), format_csv(averaged), written);

      const CaseSummary summary = summarize(averaged);
      const ordered_json j = summary_json(spec, opt, summary);
      write_file(dir / (name + "_summary.json"), j.dump(2) + "\n", written);
      combined["cases"][case_name(spec.id)] = j;
      peaks.emplace_back(case_name(spec.id), summary.peak_defector.value);

      std::string line = "case " + case_name(spec.id) + ": peak defector ";
      append_fixed6(line, summary.peak_defector.value);
      line += " @ generation " + std::to_string(summary.peak_defector.generation);
      out << line << "\n";
    }
    if (cases.size() > 1) {
      std::stable_sort(peaks.begin(), peaks.end(),
                       [](const auto& a, const auto& b) { return a.second > b.second; });
      for (const auto& [name, value] : peaks) {
        combined["peak_defector_order"].push_back(name);
      }
      write_file(dir / "summary.json", combined.dump(2) + "\n", written);
    }
    out << "wrote " << written.size() << " files to " << opt.out_dir << "\n";
    return kExitSuccess;
  } catch (const std::exception& e) {
    for (const fs::path& p : written) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

int cmd_validate_payoffs(const std::string& selector, std::ostream& out) {
  for (const CaseSpec& spec : selected_cases(selector)) {
    const PayoffMatrix m = payoff_matrix_from(build_case(spec));
    const DilemmaClass d = classify_dilemma(m);
    out << "case " << case_name(spec.id) << ": T=" << format_currency(m.temptation)
        << " R=" << format_currency(m.reward)
        << " P=" << format_currency(m.punishment)
        << " S=" << format_currency(m.sucker) << "  ";
    switch (d.kind) {
      case DilemmaKind::Strong: out << "Strong dilemma"; break;
      case DilemmaKind::Weak: out << "Weak dilemma"; break;
      case DilemmaKind::None: out << "no dilemma"; break;
    }
    if (d.iterated_condition_holds) {
      out << "; 2R>T+S holds";
    } else if (2 * m.reward == m.temptation + m.sucker) {
      out << "; 2R>T+S fails (equality)";
    } else {
      out << "; 2R>T+S fails";
    }
    out << "\n";
  }
  return kExitSuccess;
}

int cmd_inspect_chromosome(const std::string& hex, std::ostream& out) {
  const Chromosome c = decode_hex(hex);
  const ClassificationThresholds thresholds;

  std::string fraction;
  {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, cooperation_fraction(c),
                                   std::chars_format::fixed, 3);
    fraction.assign(buf, res.ptr);
  }
  out << "chromosome " << encode_hex(c) << "\n";
  out << "class=" << to_string(classify(c, thresholds))
      << ", fraction=" << fraction << "\n";
  out << "opening: first=" << action_char(c.locus(Chromosome::kFirstMoveLocus))
      << " second[C]=" << action_char(c.locus(Chromosome::kSecondMoveBase))
      << " second[D]=" << action_char(c.locus(Chromosome::kSecondMoveBase + 1));
  static constexpr const char* kPairs[] = {"CC", "CD", "DC", "DD"};
  for (int p = 0; p < 4; ++p) {
    out << " third[" << kPairs[p]
        << "]=" << action_char(c.locus(Chromosome::kThirdMoveBase + p));
  }
  out << "\n";
  out << "table[0..63]: ";
  for (int i = 0; i < Chromosome::kTableLoci; ++i) out << action_char(c.locus(i));
  out << "\n";
  return kExitSuccess;
}

}  // namespace

std::string format_csv(const TimeSeries& series) {
  std::string out =
      "generation,frac_cooperator,frac_defector,frac_top_defector,"
      "frac_neutral,fitness_mean,fitness_max,fitness_min\n";
  for (const GenerationStats& s : series) {
    out += std::to_string(s.generation);
    for (const double v : {s.fraction_cooperator, s.fraction_defector,
                           s.fraction_top_defector, s.fraction_neutral,
                           s.fitness_mean, s.fitness_max, s.fitness_min}) {
      out += ',';
      append_fixed6(out, v);
    }
    out += '\n';
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Spatial iterated prisoner's dilemma simulator for "
               "compensated online-business games"};
  app.name("sipd");

  auto* run = app.add_subcommand(
      "run", "Run the evolution experiment and write CSV/summary files");
  std::string case_sel, grid, generations, rounds, runs, seed, crossover,
      mutation, scaling, selection, coop_share, out_dir, preset, config_file;
  run->add_option("--case", case_sel, "Payoff case: I, IIA, IIB or all (default I)");
  run->add_option("--grid", grid, "Grid size WxH (default 50x50)");
  run->add_option("--generations", generations, "Generations to evolve (default 1000)");
  run->add_option("--rounds", rounds, "Rounds per neighbor pairing (default 200)");
  run->add_option("--runs", runs, "Independent runs to average (default 5)");
  run->add_option("--seed", seed, "Base seed; run k uses seed+k (default 1)");
  run->add_option("--crossover", crossover, "Crossover probability (default 0.98)");
  run->add_option("--mutation", mutation, "Per-bit mutation probability (default 0.01)");
  run->add_option("--scaling", scaling, "Linear-scaling multiple (default 2.0)");
  run->add_option("--selection", selection, "Parent selection scope: global or local");
  run->add_option("--coop-share", coop_share,
                  "Initial cooperator share (default 0.80)");
  run->add_option("--out", out_dir, "Output directory (default results)");
  run->add_option("--preset", preset,
                  "Named preset: desk = 20x20 grid, 300 generations, 50 "
                  "rounds, 5 runs");
  run->add_option("--config", config_file, "Flat key=value config file");

  auto* validate = app.add_subcommand(
      "validate-payoffs", "Print payoff matrices and dilemma classes per case");
  std::string vp_case = "all";
  validate->add_option("--case", vp_case, "Payoff case: I, IIA, IIB or all");

  auto* inspect = app.add_subcommand("inspect-chromosome",
                                     "Describe a hex-encoded chromosome");
  std::string hex;
  inspect->add_option("hex", hex, "18 hex digits")->required();

  app.require_subcommand(1);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("sipd");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      RunOptions opt;
      if (const char* env_seed = std::getenv("DF_SEED")) {
        opt.config.base_seed = parse_u64(env_seed, "DF_SEED");
      }
      std::map<std::string, std::string> file_entries;
      if (!config_file.empty()) file_entries = read_config_file(config_file);

      // Preset first (flag beats config file), then config file, then flags.
      if (!preset.empty()) {
        apply_run_option(opt, "preset", preset);
      } else if (const auto it = file_entries.find("preset");
                 it != file_entries.end()) {
        apply_run_option(opt, "preset", it->second);
      }
      for (const auto& [key, value] : file_entries) {
        if (key == "preset") continue;
        apply_run_option(opt, key, value);
      }
      const std::pair<const char*, const std::string*> flags[] = {
          {"case", &case_sel},         {"grid", &grid},
          {"generations", &generations}, {"rounds", &rounds},
          {"runs", &runs},             {"seed", &seed},
          {"crossover", &crossover},   {"mutation", &mutation},
          {"scaling", &scaling},       {"selection", &selection},
          {"coop-share", &coop_share}, {"out", &out_dir},
      };
      for (const auto& [key, value] : flags) {
        if (run->count(std::string("--") + key) > 0) {
          apply_run_option(opt, key, *value);
        }
      }
      opt.config.validate();
      selected_cases(opt.case_selector);  // validate before any run starts
      return cmd_run(opt, out, err);
    }
    if (validate->parsed()) {
      return cmd_validate_payoffs(vp_case, out);
    }
    return cmd_inspect_chromosome(hex, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace sipd::cli
