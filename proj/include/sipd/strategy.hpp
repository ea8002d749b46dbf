#ifndef SIPD_STRATEGY_HPP
#define SIPD_STRATEGY_HPP

#include <bitset>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "sipd/rng.hpp"

namespace sipd {

// Bit convention: 0 = Cooperate, 1 = Defect, everywhere (loci, history
// codes, hex serialization).
enum class Action : std::uint8_t { Cooperate = 0, Defect = 1 };

constexpr int action_bit(Action a) { return a == Action::Defect ? 1 : 0; }
constexpr Action action_from_bit(int bit) {
  return bit ? Action::Defect : Action::Cooperate;
}
constexpr char action_char(Action a) {
  return a == Action::Cooperate ? 'C' : 'D';
}

// One round of a pairing, seen from one player's side.
struct JointOutcome {
  Action own;
  Action opponent;

  bool operator==(const JointOutcome&) const = default;
};

// CC=0, CD=1, DC=2, DD=3 (own move is the high bit).
constexpr int outcome_code(JointOutcome o) {
  return 2 * action_bit(o.own) + action_bit(o.opponent);
}

// A memory-3 strategy as a 71-locus bitstring.
//
// Loci 0..63 are the history table: locus history_index(h) holds the reply
// to the 3-round history h. Loci 64..70 encode the opening moves relative
// to the opponent's observed moves:
//   64      first move (unconditional)
//   65, 66  second move after the opponent opened C / D
//   67..70  third move after the opponent opened CC / CD / DC / DD
class Chromosome {
 public:
  static constexpr int kLoci = 71;
  static constexpr int kTableLoci = 64;
  static constexpr int kFirstMoveLocus = 64;
  static constexpr int kSecondMoveBase = 65;
  static constexpr int kThirdMoveBase = 67;

  // All loci Cooperate.
  Chromosome() = default;

  Action locus(int i) const {
    check_index(i);
    return action_from_bit(defect_bits_[static_cast<std::size_t>(i)]);
  }

  void set_locus(int i, Action a) {
    check_index(i);
    defect_bits_[static_cast<std::size_t>(i)] = (a == Action::Defect);
  }

  int cooperate_count() const {
    return kLoci - static_cast<int>(defect_bits_.count());
  }

  bool operator==(const Chromosome&) const = default;

  static Chromosome all_cooperate() { return Chromosome{}; }
  static Chromosome all_defect();
  // Canonical tit-for-tat: open C, then mirror the opponent's last move.
  static Chromosome tit_for_tat();

 private:
  static void check_index(int i);

  std::bitset<kLoci> defect_bits_;  // set bit = Defect
};

struct ClassificationThresholds {
  double cooperator_min = 0.60;    // Cooperator iff fraction > this
  double defector_max = 0.40;      // Defector iff fraction < this
  double top_defector_max = 0.25;  // TopDefector iff fraction < this

  // Requires 0 <= top_defector_max <= defector_max <= cooperator_min <= 1.
  void validate() const;
};

enum class StrategyClass { Cooperator, Defector, TopDefector, Neutral };

const char* to_string(StrategyClass c);

// Base-4 positional code of a 3-round history, oldest round most
// significant: code(h[0])*16 + code(h[1])*4 + code(h[2]). Bijection onto
// [0,63]. Throws unless h has exactly 3 entries.
int history_index(std::span<const JointOutcome> h);

// Next action for a pairing whose most recent rounds (oldest first) are h.
// |h| selects the locus: 0 -> 64; 1 -> 65/66 by the opponent's move;
// 2 -> 67 + 2*bit(opp[0]) + bit(opp[1]); 3 -> history_index(h). Opening
// moves condition on opponent moves only. Throws if |h| > 3.
Action decide(const Chromosome& c, std::span<const JointOutcome> h);

// Cooperate loci / 71, all loci weighted equally.
double cooperation_fraction(const Chromosome& c);

// Most specific class wins; comparisons are strict, so exact threshold
// hits fall through (fraction == defector_max classifies Neutral,
// fraction == top_defector_max classifies Defector).
StrategyClass classify(const Chromosome& c, const ClassificationThresholds& t);

// Each locus independently Cooperate with the given probability; consumes
// one draw per locus, locus 0 first.
Chromosome random_chromosome(Rng& rng, double bit_cooperate_probability);

// Rejection-samples random_chromosome with per-bit bias 0.8 (Cooperator
// target) or 0.2 (Defector target) until classify matches; a Defector
// target accepts TopDefector. Target must be Cooperator or Defector.
// If given, *rejections receives the number of discarded draws.
Chromosome sample_class_member(Rng& rng, StrategyClass target,
                               const ClassificationThresholds& t,
                               int* rejections = nullptr);

// 18 uppercase hex digits holding 72 bits: a leading 0 pad bit, then loci
// 0..70 most-significant-first (the pad is the top bit of the first digit,
// locus 0 the next bit down). decode accepts either case and rejects
// malformed text, wrong length, and a set pad bit.
std::string encode_hex(const Chromosome& c);
Chromosome decode_hex(std::string_view text);

}  // namespace sipd

#endif  // SIPD_STRATEGY_HPP
