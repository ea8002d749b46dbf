#ifndef SIPD_TESTS_MATCH_ORACLE_HPP
#define SIPD_TESTS_MATCH_ORACLE_HPP

// Test-only reference interpreter for iterated matches. Keeps both players'
// full move lists and re-derives the locus for every round from first
// principles (positional base-4 arithmetic over the trailing three rounds),
// independently of the engine's sliding-window state.

#include <vector>

#include "sipd/game.hpp"
#include "sipd/strategy.hpp"

namespace sipd::testing {

struct OracleMatch {
  std::vector<Action> moves_a;
  std::vector<Action> moves_b;
  Currency total_a = 0;
  Currency total_b = 0;
  int cooperations_a = 0;
  int cooperations_b = 0;
};

inline Action oracle_decide(const Chromosome& c, const std::vector<Action>& own,
                            const std::vector<Action>& opp) {
  const std::size_t played = own.size();
  if (played == 0) return c.locus(64);
  if (played == 1) return c.locus(65 + action_bit(opp[0]));
  if (played == 2) return c.locus(67 + 2 * action_bit(opp[0]) + action_bit(opp[1]));
  int index = 0;
  for (std::size_t k = played - 3; k < played; ++k) {
    index = index * 4 + 2 * action_bit(own[k]) + action_bit(opp[k]);
  }
  return c.locus(index);
}

inline OracleMatch oracle_match(const Chromosome& a, const Chromosome& b,
                                int rounds, const PayoffMatrix& m) {
  OracleMatch out;
  for (int round = 0; round < rounds; ++round) {
    const Action move_a = oracle_decide(a, out.moves_a, out.moves_b);
    const Action move_b = oracle_decide(b, out.moves_b, out.moves_a);
    out.moves_a.push_back(move_a);
    out.moves_b.push_back(move_b);
    const bool a_coop = move_a == Action::Cooperate;
    const bool b_coop = move_b == Action::Cooperate;
    if (a_coop && b_coop) {
      out.total_a += m.reward;
      out.total_b += m.reward;
    } else if (a_coop && !b_coop) {
      out.total_a += m.sucker;
      out.total_b += m.temptation;
    } else if (!a_coop && b_coop) {
      out.total_a += m.temptation;
      out.total_b += m.sucker;
    } else {
      out.total_a += m.punishment;
      out.total_b += m.punishment;
    }
    out.cooperations_a += a_coop ? 1 : 0;
    out.cooperations_b += b_coop ? 1 : 0;
  }
  return out;
}

}  // namespace sipd::testing

#endif  // SIPD_TESTS_MATCH_ORACLE_HPP
