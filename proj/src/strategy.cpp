#include "sipd/strategy.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace sipd {

void Chromosome::check_index(int i) {
  if (i < 0 || i >= kLoci) {
    throw std::out_of_range("Chromosome locus index " + std::to_string(i) +
                            " outside [0," + std::to_string(kLoci - 1) + "]");
  }
}

Chromosome Chromosome::all_defect() {
  Chromosome c;
  for (int i = 0; i < kLoci; ++i) c.set_locus(i, Action::Defect);
  return c;
}

Chromosome Chromosome::tit_for_tat() {
  Chromosome c;
  // Table reply = opponent's move in the most recent round, which is the
  // low bit of the history index.
  for (int i = 0; i < kTableLoci; ++i) {
    c.set_locus(i, action_from_bit(i & 1));
  }
  c.set_locus(kFirstMoveLocus, Action::Cooperate);
  c.set_locus(kSecondMoveBase + 0, Action::Cooperate);  // opponent opened C
  c.set_locus(kSecondMoveBase + 1, Action::Defect);     // opponent opened D
  for (int pair = 0; pair < 4; ++pair) {                // CC, CD, DC, DD
    c.set_locus(kThirdMoveBase + pair, action_from_bit(pair & 1));
  }
  return c;
}

void ClassificationThresholds::validate() const {
  const bool ordered = 0.0 <= top_defector_max &&
                       top_defector_max <= defector_max &&
                       defector_max <= cooperator_min && cooperator_min <= 1.0;
  if (!ordered) {
    throw std::invalid_argument(
        "classification thresholds must satisfy 0 <= top_defector_max <= "
        "defector_max <= cooperator_min <= 1");
  }
}

const char* to_string(StrategyClass c) {
  switch (c) {
    case StrategyClass::Cooperator: return "Cooperator";
    case StrategyClass::Defector: return "Defector";
    case StrategyClass::TopDefector: return "TopDefector";
    case StrategyClass::Neutral: return "Neutral";
  }
  return "?";
}

int history_index(std::span<const JointOutcome> h) {
  if (h.size() != 3) {
    throw std::invalid_argument("history_index expects exactly 3 rounds, got " +
                                std::to_string(h.size()));
  }
  return outcome_code(h[0]) * 16 + outcome_code(h[1]) * 4 + outcome_code(h[2]);
}

Action decide(const Chromosome& c, std::span<const JointOutcome> h) {
  switch (h.size()) {
    case 0:
      return c.locus(Chromosome::kFirstMoveLocus);
    case 1:
      return c.locus(Chromosome::kSecondMoveBase + action_bit(h[0].opponent));
    case 2:
      return c.locus(Chromosome::kThirdMoveBase +
                     2 * action_bit(h[0].opponent) + action_bit(h[1].opponent));
    case 3:
      return c.locus(history_index(h));
    default:
      throw std::invalid_argument("decide expects at most 3 rounds of history, got " +
                                  std::to_string(h.size()));
  }
}

double cooperation_fraction(const Chromosome& c) {
  return static_cast<double>(c.cooperate_count()) / Chromosome::kLoci;
}

StrategyClass classify(const Chromosome& c, const ClassificationThresholds& t) {
  t.validate();
  const double f = cooperation_fraction(c);
  if (f > t.cooperator_min) return StrategyClass::Cooperator;
  if (f < t.top_defector_max) return StrategyClass::TopDefector;
  if (f < t.defector_max) return StrategyClass::Defector;
  return StrategyClass::Neutral;
}

Chromosome random_chromosome(Rng& rng, double bit_cooperate_probability) {
  if (!(bit_cooperate_probability >= 0.0 && bit_cooperate_probability <= 1.0)) {
    throw std::invalid_argument("bit_cooperate_probability must be in [0,1]");
  }
  Chromosome c;
  for (int i = 0; i < Chromosome::kLoci; ++i) {
    c.set_locus(i, rng.bernoulli(bit_cooperate_probability)
                       ? Action::Cooperate
                       : Action::Defect);
  }
  return c;
}

Chromosome sample_class_member(Rng& rng, StrategyClass target,
                               const ClassificationThresholds& t,
                               int* rejections) {
  if (target != StrategyClass::Cooperator && target != StrategyClass::Defector) {
    throw std::invalid_argument(
        "sample_class_member target must be Cooperator or Defector");
  }
  const double bias = target == StrategyClass::Cooperator ? 0.8 : 0.2;
  if (rejections) *rejections = 0;
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    Chromosome c = random_chromosome(rng, bias);
    const StrategyClass got = classify(c, t);
    if (got == target ||
        (target == StrategyClass::Defector && got == StrategyClass::TopDefector)) {
      return c;
    }
    if (rejections) ++*rejections;
  }
  throw std::runtime_error(
      "sample_class_member: thresholds leave the target class unreachable");
}

std::string encode_hex(const Chromosome& c) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out(18, '0');
  for (int j = 0; j < 18; ++j) {
    int nibble = 0;
    for (int k = 0; k < 4; ++k) {
      const int bit_pos = 4 * j + k;  // 0 is the pad, then locus bit_pos-1
      if (bit_pos == 0) continue;
      nibble |= action_bit(c.locus(bit_pos - 1)) << (3 - k);
    }
    out[static_cast<std::size_t>(j)] = kDigits[nibble];
  }
  return out;
}

Chromosome decode_hex(std::string_view text) {
  if (text.size() != 18) {
    throw std::invalid_argument("chromosome hex must be exactly 18 digits, got " +
                                std::to_string(text.size()));
  }
  Chromosome c;
  for (int j = 0; j < 18; ++j) {
    const char ch = text[static_cast<std::size_t>(j)];
    int value;
    if (ch >= '0' && ch <= '9') {
      value = ch - '0';
    } else if (ch >= 'A' && ch <= 'F') {
      value = ch - 'A' + 10;
    } else if (ch >= 'a' && ch <= 'f') {
      value = ch - 'a' + 10;
    } else {
      throw std::invalid_argument(std::string("invalid hex digit '") + ch +
                                  "' in chromosome text");
    }
    for (int k = 0; k < 4; ++k) {
      const int bit = (value >> (3 - k)) & 1;
      const int bit_pos = 4 * j + k;
      if (bit_pos == 0) {
        if (bit) throw std::invalid_argument("chromosome hex pad bit must be 0");
        continue;
      }
      c.set_locus(bit_pos - 1, action_from_bit(bit));
    }
  }
  return c;
}

}  // namespace sipd
