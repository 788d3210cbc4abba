// Apache License, Version 2.0, refer to LICENSE.txt

#include "ebbr/game.hpp"

#include <cmath>
#include <cstddef>

#include "json.hpp"

namespace ebbr {

double GameSpec::max_abs_payoff() const {
  double m = 0.0;
  for (double v : payoff) m = std::max(m, std::abs(v));
  return m;
}

void GameSpec::validate() const {
  if (n_states <= 0 || n_opp_actions <= 0 || n_our_actions <= 0)
    throw Error(ErrorCode::kInvalidArgument, "game dimensions must be positive");
  if (static_cast<int>(pi.size()) != n_states)
    throw Error(ErrorCode::kDimensionMismatch, "pi length does not match state count");
  double s = 0.0;
  for (double p : pi) {
    if (p < 0.0) throw Error(ErrorCode::kInvalidArgument, "pi entries must be non-negative");
    s += p;
  }
  if (std::abs(s - 1.0) > 1e-12)
    throw Error(ErrorCode::kInvalidArgument, "pi must sum to 1");
  const std::size_t want = static_cast<std::size_t>(n_states) * n_opp_actions * n_our_actions;
  if (payoff.size() != want)
    throw Error(ErrorCode::kDimensionMismatch, "payoff table size mismatch");
  for (double v : payoff) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "payoff entries must be finite");
  }
}

GameSpec make_motivating_game() {
  GameSpec g;
  g.n_states = 2;       // K, J
  g.n_opp_actions = 2;  // b, s
  g.n_our_actions = 2;  // call, fold
  g.pi = {0.5, 0.5};
  g.state_labels = {"K", "J"};
  g.opp_action_labels = {"b", "s"};
  g.our_action_labels = {"call", "fold"};
  g.payoff.assign(8, 0.0);
  // Folding always loses the $1 ante. Calling a big bet swings ante plus $10,
  // calling a small bet ante plus $1, won by the higher card.
  g.payoff_at(0, 0, 0) = -11.0;  // call big vs K
  g.payoff_at(0, 0, 1) = -1.0;
  g.payoff_at(0, 1, 0) = -2.0;   // call small vs K
  g.payoff_at(0, 1, 1) = -1.0;
  g.payoff_at(1, 0, 0) = 11.0;   // call big vs J
  g.payoff_at(1, 0, 1) = -1.0;
  g.payoff_at(1, 1, 0) = 2.0;    // call small vs J
  g.payoff_at(1, 1, 1) = -1.0;
  return g;
}

OpponentStrategy motivating_nash_opponent() {
  OpponentStrategy opp;
  opp.q = Matrix(2, 2);
  opp.q(0, 0) = 1.0;
  opp.q(0, 1) = 0.0;
  opp.q(1, 0) = 5.0 / 6.0;
  opp.q(1, 1) = 1.0 - 5.0 / 6.0;
  return opp;
}

OurStrategy motivating_nash_strategy() {
  OurStrategy ours;
  ours.r = Matrix(2, 2);
  ours.r(0, 0) = 0.25;  // call a big bet 1/4
  ours.r(0, 1) = 0.75;
  ours.r(1, 0) = 1.0;   // always call a small bet
  ours.r(1, 1) = 0.0;
  return ours;
}

double expected_payoff(const GameSpec& g, const OurStrategy& ours, const OpponentStrategy& opp) {
  if (opp.q.rows() != g.n_states || opp.q.cols() != g.n_opp_actions)
    throw Error(ErrorCode::kDimensionMismatch, "opponent strategy shape does not match game");
  if (ours.r.rows() != g.n_opp_actions || ours.r.cols() != g.n_our_actions)
    throw Error(ErrorCode::kDimensionMismatch, "our strategy shape does not match game");

  // Innermost sum first so per-observation response values combine exactly.
  double total = 0.0;
  for (int i = 0; i < g.n_states; ++i) {
    double state_value = 0.0;
    for (int j = 0; j < g.n_opp_actions; ++j) {
      double response_value = 0.0;
      for (int k = 0; k < g.n_our_actions; ++k)
        response_value += ours.r(j, k) * g.payoff_at(i, j, k);
      state_value += opp.q(i, j) * response_value;
    }
    total += g.pi[i] * state_value;
  }
  return total;
}

std::string game_to_json(const GameSpec& g) {
  nlohmann::json j;
  j["pi"] = g.pi;
  auto payoff = nlohmann::json::array();
  for (int i = 0; i < g.n_states; ++i) {
    auto per_state = nlohmann::json::array();
    for (int a = 0; a < g.n_opp_actions; ++a) {
      auto per_action = nlohmann::json::array();
      for (int k = 0; k < g.n_our_actions; ++k) per_action.push_back(g.payoff_at(i, a, k));
      per_state.push_back(per_action);
    }
    payoff.push_back(per_state);
  }
  j["payoff"] = payoff;
  j["state_labels"] = g.state_labels;
  j["opp_action_labels"] = g.opp_action_labels;
  j["our_action_labels"] = g.our_action_labels;
  return j.dump(2);
}

GameSpec game_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad game JSON: ") + e.what());
  }
  GameSpec g;
  try {
    g.pi = j.at("pi").get<std::vector<double>>();
    const auto& payoff = j.at("payoff");
    g.n_states = static_cast<int>(payoff.size());
    if (g.n_states == 0) throw Error(ErrorCode::kInvalidArgument, "empty payoff table");
    g.n_opp_actions = static_cast<int>(payoff.at(0).size());
    g.n_our_actions = static_cast<int>(payoff.at(0).at(0).size());
    g.payoff.reserve(static_cast<std::size_t>(g.n_states) * g.n_opp_actions * g.n_our_actions);
    for (const auto& per_state : payoff) {
      if (static_cast<int>(per_state.size()) != g.n_opp_actions)
        throw Error(ErrorCode::kDimensionMismatch, "ragged payoff table");
      for (const auto& per_action : per_state) {
        if (static_cast<int>(per_action.size()) != g.n_our_actions)
          throw Error(ErrorCode::kDimensionMismatch, "ragged payoff table");
        for (const auto& v : per_action) g.payoff.push_back(v.get<double>());
      }
    }
    if (j.contains("state_labels")) g.state_labels = j["state_labels"].get<std::vector<std::string>>();
    if (j.contains("opp_action_labels"))
      g.opp_action_labels = j["opp_action_labels"].get<std::vector<std::string>>();
    if (j.contains("our_action_labels"))
      g.our_action_labels = j["our_action_labels"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad game JSON: ") + e.what());
  }
  g.validate();
  return g;
}

}  // namespace ebbr
