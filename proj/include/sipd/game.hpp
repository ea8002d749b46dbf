#ifndef SIPD_GAME_HPP
#define SIPD_GAME_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "sipd/strategy.hpp"

namespace sipd {

// Whole currency units (pounds). Payoffs stay exact integers so fitness
// totals carry no floating-point drift.
using Currency = std::int64_t;

// Business-game inputs: goods price (gamma) and loss compensation (delta).
struct PayoffConfig {
  Currency goods_price = 10;
  Currency compensation = 0;

  // Requires goods_price > 0 and 0 <= compensation <= goods_price.
  void validate() const;
};

struct PayoffMatrix {
  Currency temptation = 0;  // T
  Currency reward = 0;      // R
  Currency punishment = 0;  // P
  Currency sucker = 0;      // S
};

enum class DilemmaKind { Strong, Weak, None };

struct DilemmaClass {
  DilemmaKind kind = DilemmaKind::None;
  bool iterated_condition_holds = false;  // strict 2R > T+S
};

const char* to_string(DilemmaKind k);

struct MatchResult {
  Currency payoff_a = 0;
  Currency payoff_b = 0;
  int cooperations_a = 0;
  int cooperations_b = 0;
  int rounds = 0;

  bool operator==(const MatchResult&) const = default;
};

// R = gamma, T = 2*gamma, P = 0, S = -gamma + delta.
PayoffMatrix payoff_matrix_from(const PayoffConfig& cfg);

// Strong iff the chain T>R>P>S holds with no compensation (S <= P-R, the
// uncompensated business game); any compensated chain T>R>P>=S is Weak.
// The iterated condition (2R > T+S) is reported separately: a fully
// compensated game is still a weak dilemma even though 2R = T+S there.
DilemmaClass classify_dilemma(const PayoffMatrix& m);

// (C,C)->(R,R), (C,D)->(S,T), (D,C)->(T,S), (D,D)->(P,P).
std::pair<Currency, Currency> payoffs(Action a, Action b,
                                      const PayoffMatrix& m);

// Per-round move pairs (a's move, b's move), filled when a trace sink is
// passed to play_match.
using MatchTrace = std::vector<std::pair<Action, Action>>;

// Iterated match between two chromosomes. Both sides start with an empty
// pair history, move simultaneously each round, and see only the most
// recent <= 3 rounds of this pairing. Deterministic. Throws if rounds < 1.
MatchResult play_match(const Chromosome& a, const Chromosome& b, int rounds,
                       const PayoffMatrix& m, MatchTrace* trace = nullptr);

}  // namespace sipd

#endif  // SIPD_GAME_HPP
