// Apache License, Version 2.0, refer to LICENSE.txt

#include "ebbr/respond.hpp"

#include <cmath>

namespace ebbr {

BestResponse best_response(const GameSpec& g, const OpponentStrategy& model) {
  if (model.q.rows() != g.n_states || model.q.cols() != g.n_opp_actions)
    throw Error(ErrorCode::kDimensionMismatch, "model shape does not match game");

  BestResponse out;
  out.strategy.r = Matrix(g.n_opp_actions, g.n_our_actions, 0.0);
  for (int j = 0; j < g.n_opp_actions; ++j) {
    // Posterior over private states given the observed action; when the
    // action has zero probability under the model any response is payoff
    // equivalent and the lowest index keeps traces reproducible.
    double mass = 0.0;
    for (int i = 0; i < g.n_states; ++i) mass += g.pi[i] * model.q(i, j);
    int best_k = 0;
    if (mass > 0.0) {
      double best_v = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < g.n_our_actions; ++k) {
        double v = 0.0;
        for (int i = 0; i < g.n_states; ++i)
          v += g.pi[i] * model.q(i, j) * g.payoff_at(i, j, k);
        if (v > best_v) {
          best_v = v;
          best_k = k;
        }
      }
    }
    out.strategy.r(j, best_k) = 1.0;
  }
  out.value = expected_payoff(g, out.strategy, model);
  return out;
}

OpponentStrategy mean_strategy(const StrategyDistribution& d) {
  if (d.support.empty()) throw Error(ErrorCode::kEmptySupport, "empty strategy distribution");
  if (d.support.size() != d.weights.size())
    throw Error(ErrorCode::kDimensionMismatch, "support/weight count mismatch");
  const Matrix& first = d.support.front().q;
  OpponentStrategy mean;
  mean.q = Matrix(first.rows(), first.cols(), 0.0);
  for (std::size_t s = 0; s < d.support.size(); ++s) {
    const Matrix& q = d.support[s].q;
    if (q.rows() != first.rows() || q.cols() != first.cols())
      throw Error(ErrorCode::kDimensionMismatch, "support strategies have mixed shapes");
    for (int i = 0; i < q.rows(); ++i)
      for (int j = 0; j < q.cols(); ++j) mean.q(i, j) += d.weights[s] * q(i, j);
  }
  return mean;
}

OurStrategy meta_agent_step(const GameSpec& g, const DirichletPrior& prior,
                            const ObservationCounts& cumulative_obs, const Responder& responder,
                            const PosteriorOptions& opts) {
  OpponentStrategy model = posterior_mean_multi_obs(prior, g.pi, cumulative_obs, opts);
  return responder(g, model);
}

Responder best_responder() {
  return [](const GameSpec& g, const OpponentStrategy& model) {
    return best_response(g, model).strategy;
  };
}

Responder fixed_responder(OurStrategy strategy) {
  return [strategy = std::move(strategy)](const GameSpec&, const OpponentStrategy&) {
    return strategy;
  };
}

}  // namespace ebbr
