#include "sipd/game.hpp"

#include <stdexcept>
#include <string>

namespace sipd {

void PayoffConfig::validate() const {
  if (goods_price <= 0) {
    throw std::invalid_argument("goods_price must be positive");
  }
  if (compensation < 0 || compensation > goods_price) {
    throw std::invalid_argument("compensation must lie in [0, goods_price]");
  }
}

const char* to_string(DilemmaKind k) {
  switch (k) {
    case DilemmaKind::Strong: return "Strong";
    case DilemmaKind::Weak: return "Weak";
    case DilemmaKind::None: return "None";
  }
  return "?";
}

PayoffMatrix payoff_matrix_from(const PayoffConfig& cfg) {
  cfg.validate();
  return PayoffMatrix{
      .temptation = 2 * cfg.goods_price,
      .reward = cfg.goods_price,
      .punishment = 0,
      .sucker = -cfg.goods_price + cfg.compensation,
  };
}

DilemmaClass classify_dilemma(const PayoffMatrix& m) {
  DilemmaClass out;
  out.iterated_condition_holds = 2 * m.reward > m.temptation + m.sucker;
  const bool chain = m.temptation > m.reward && m.reward > m.punishment &&
                     m.punishment >= m.sucker;
  // The uncompensated business game has S = P - R; anything above that is a
  // compensated (weak) variant.
  const Currency compensation = m.sucker - (m.punishment - m.reward);
  if (chain && m.punishment > m.sucker && compensation <= 0) {
    out.kind = DilemmaKind::Strong;
  } else if (chain) {
    out.kind = DilemmaKind::Weak;
  } else {
    out.kind = DilemmaKind::None;
  }
  return out;
}

std::pair<Currency, Currency> payoffs(Action a, Action b,
                                      const PayoffMatrix& m) {
  if (a == Action::Cooperate) {
    return b == Action::Cooperate ? std::pair{m.reward, m.reward}
                                  : std::pair{m.sucker, m.temptation};
  }
  return b == Action::Cooperate ? std::pair{m.temptation, m.sucker}
                                : std::pair{m.punishment, m.punishment};
}

namespace {

// Rolling per-pair state for one side: the opening round count and, once
// three rounds exist, the base-4 history index over the sliding window.
struct PairView {
  int index = 0;  // low 6 bits hold the last three outcome codes

  void push(Action own, Action opp) {
    index = ((index << 2) | (2 * action_bit(own) + action_bit(opp))) & 63;
  }
};

Action opening_move(const Chromosome& c, int round, Action opp_first,
                    Action opp_second) {
  switch (round) {
    case 0:
      return c.locus(Chromosome::kFirstMoveLocus);
    case 1:
      return c.locus(Chromosome::kSecondMoveBase + action_bit(opp_first));
    default:
      return c.locus(Chromosome::kThirdMoveBase + 2 * action_bit(opp_first) +
                     action_bit(opp_second));
  }
}

}  // namespace

MatchResult play_match(const Chromosome& a, const Chromosome& b, int rounds,
                       const PayoffMatrix& m, MatchTrace* trace) {
  if (rounds < 1) {
    throw std::invalid_argument("play_match requires rounds >= 1, got " +
                                std::to_string(rounds));
  }
  MatchResult result;
  result.rounds = rounds;
  if (trace) {
    trace->clear();
    trace->reserve(static_cast<std::size_t>(rounds));
  }

  PairView view_a, view_b;
  Action a_first{}, a_second{}, b_first{}, b_second{};
  for (int round = 0; round < rounds; ++round) {
    Action move_a, move_b;
    if (round < 3) {
      move_a = opening_move(a, round, b_first, b_second);
      move_b = opening_move(b, round, a_first, a_second);
      if (round == 0) {
        a_first = move_a;
        b_first = move_b;
      } else if (round == 1) {
        a_second = move_a;
        b_second = move_b;
      }
    } else {
      move_a = a.locus(view_a.index);
      move_b = b.locus(view_b.index);
    }

    view_a.push(move_a, move_b);
    view_b.push(move_b, move_a);

    const auto [pay_a, pay_b] = payoffs(move_a, move_b, m);
    result.payoff_a += pay_a;
    result.payoff_b += pay_b;
    result.cooperations_a += move_a == Action::Cooperate ? 1 : 0;
    result.cooperations_b += move_b == Action::Cooperate ? 1 : 0;
    if (trace) trace->emplace_back(move_a, move_b);
  }
  return result;
}

}  // namespace sipd
