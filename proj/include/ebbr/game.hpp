// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef EBBR_GAME_HPP
#define EBBR_GAME_HPP

#include <string>
#include <vector>

#include "ebbr/types.hpp"

namespace ebbr {

/// One-shot imperfect-information game: the opponent is dealt a private state
/// i ~ pi, takes a public action j, and we respond with action k after seeing
/// j but never i. Payoffs are to us.
struct GameSpec {
  int n_states = 0;
  int n_opp_actions = 0;
  int n_our_actions = 0;
  std::vector<double> pi;        // length n_states
  std::vector<double> payoff;    // [state][opp action][our action], row-major
  std::vector<std::string> state_labels;
  std::vector<std::string> opp_action_labels;
  std::vector<std::string> our_action_labels;

  double payoff_at(int state, int opp_action, int our_action) const {
    return payoff[(static_cast<std::size_t>(state) * n_opp_actions + opp_action) * n_our_actions +
                  our_action];
  }
  double& payoff_at(int state, int opp_action, int our_action) {
    return payoff[(static_cast<std::size_t>(state) * n_opp_actions + opp_action) * n_our_actions +
                  our_action];
  }

  double max_abs_payoff() const;

  /// Throws if pi is not a probability vector or the payoff table is not
  /// fully populated.
  void validate() const;
};

/// The two-card betting game: opponent holds K or J with probability 1/2,
/// bets big ($10) or small ($1), we call or fold holding Q. Folding loses our
/// $1 ante; calling wins or loses ante plus bet depending on the cards.
GameSpec make_motivating_game();

/// Equilibrium opponent for the motivating game: always big with K, big with
/// probability 5/6 with J.
OpponentStrategy motivating_nash_opponent();

/// Equilibrium plan for us: call a big bet with probability 1/4, always call
/// a small bet.
OurStrategy motivating_nash_strategy();

/// Sum over states, opponent actions, and our actions of
/// pi_i * q(i,j) * r(j,k) * payoff(i,j,k). Linear in the opponent model.
double expected_payoff(const GameSpec& g, const OurStrategy& ours, const OpponentStrategy& opp);

std::string game_to_json(const GameSpec& g);
GameSpec game_from_json(const std::string& text);

}  // namespace ebbr

#endif  // EBBR_GAME_HPP
