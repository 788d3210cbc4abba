// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef EBBR_RESPOND_HPP
#define EBBR_RESPOND_HPP

#include <functional>
#include <vector>

#include "ebbr/game.hpp"
#include "ebbr/posterior.hpp"
#include "ebbr/types.hpp"

namespace ebbr {

/// Pluggable response function: maps an opponent model to a plan for us.
using Responder = std::function<OurStrategy(const GameSpec&, const OpponentStrategy&)>;

struct BestResponse {
  OurStrategy strategy;
  double value = 0.0;  // expected payoff of `strategy` against the model
};

/// Pure best response against a fixed opponent model. For each observed
/// action, weights the private states by pi_i * q(i,j) and picks the action
/// maximizing the weighted payoff; ties and zero-probability observations
/// resolve to the lowest action index.
BestResponse best_response(const GameSpec& g, const OpponentStrategy& model);

/// Finite distribution over opponent strategies.
struct StrategyDistribution {
  std::vector<OpponentStrategy> support;
  std::vector<double> weights;
};

/// Probability-weighted average of the support. Payoffs against the mean
/// equal weighted payoffs against the full distribution.
OpponentStrategy mean_strategy(const StrategyDistribution& d);

/// One step of the exploitation loop: recompute the posterior mean from the
/// original prior plus cumulative counts, then respond to it.
OurStrategy meta_agent_step(const GameSpec& g, const DirichletPrior& prior,
                            const ObservationCounts& cumulative_obs, const Responder& responder,
                            const PosteriorOptions& opts = {});

Responder best_responder();
Responder fixed_responder(OurStrategy strategy);

}  // namespace ebbr

#endif  // EBBR_RESPOND_HPP
