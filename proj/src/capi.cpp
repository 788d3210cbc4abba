// Apache License, Version 2.0, refer to LICENSE.txt

#include "ebbr.h"

#include <cstring>
#include <new>
#include <string>

#include "ebbr/baselines.hpp"
#include "ebbr/betaprod.hpp"
#include "ebbr/game.hpp"
#include "ebbr/harness.hpp"
#include "ebbr/posterior.hpp"
#include "ebbr/respond.hpp"
#include "ebbr/uniform.hpp"

struct ebbr_game {
  ebbr::GameSpec spec;
};

struct ebbr_vertex_prior {
  ebbr::VertexPrior vp;
};

namespace {

thread_local std::string g_last_error;

ebbr_status status_from(const ebbr::Error& e) {
  using ebbr::ErrorCode;
  switch (e.code()) {
    case ErrorCode::kInvalidArgument: return EBBR_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch: return EBBR_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kHorizonExceeded: return EBBR_ERR_HORIZON_EXCEEDED;
    case ErrorCode::kCompositionOverflow: return EBBR_ERR_COMPOSITION_OVERFLOW;
    case ErrorCode::kImpossibleObservation: return EBBR_ERR_IMPOSSIBLE_OBSERVATION;
    case ErrorCode::kEmptySupport: return EBBR_ERR_EMPTY_SUPPORT;
    case ErrorCode::kDomainLimit: return EBBR_ERR_DOMAIN_LIMIT;
    case ErrorCode::kParse: return EBBR_ERR_PARSE;
    case ErrorCode::kIo: return EBBR_ERR_IO;
  }
  return EBBR_ERR_INTERNAL;
}

// Runs `fn`, routing exceptions into status codes and the thread-local
// message.
template <typename Fn>
ebbr_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return EBBR_OK;
  } catch (const ebbr::Error& e) {
    g_last_error = e.what();
    return status_from(e);
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return EBBR_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return EBBR_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return EBBR_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ebbr_status require(bool cond, const char* message) {
  if (cond) return EBBR_OK;
  g_last_error = message;
  return EBBR_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* ebbr_version(void) { return "1.0.0"; }

const char* ebbr_status_string(ebbr_status status) {
  switch (status) {
    case EBBR_OK: return "ok";
    case EBBR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case EBBR_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case EBBR_ERR_HORIZON_EXCEEDED: return "horizon exceeded";
    case EBBR_ERR_COMPOSITION_OVERFLOW: return "composition count overflow";
    case EBBR_ERR_IMPOSSIBLE_OBSERVATION: return "impossible observation";
    case EBBR_ERR_EMPTY_SUPPORT: return "empty support";
    case EBBR_ERR_DOMAIN_LIMIT: return "domain limit exceeded";
    case EBBR_ERR_PARSE: return "parse error";
    case EBBR_ERR_IO: return "io error";
    case EBBR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ebbr_last_error(void) { return g_last_error.c_str(); }

void ebbr_string_free(char* s) { delete[] s; }

ebbr_status ebbr_game_motivating(ebbr_game** out) {
  if (auto rc = require(out != nullptr, "null out pointer"); rc != EBBR_OK) return rc;
  return guarded([&] { *out = new ebbr_game{ebbr::make_motivating_game()}; });
}

ebbr_status ebbr_game_from_json(const char* json, ebbr_game** out) {
  if (auto rc = require(json && out, "null argument"); rc != EBBR_OK) return rc;
  return guarded([&] { *out = new ebbr_game{ebbr::game_from_json(json)}; });
}

ebbr_status ebbr_game_to_json(const ebbr_game* game, char** json_out) {
  if (auto rc = require(game && json_out, "null argument"); rc != EBBR_OK) return rc;
  return guarded([&] { *json_out = dup_string(ebbr::game_to_json(game->spec)); });
}

ebbr_status ebbr_game_dims(const ebbr_game* game, int32_t* n_states, int32_t* n_opp_actions,
                           int32_t* n_our_actions) {
  if (auto rc = require(game != nullptr, "null game"); rc != EBBR_OK) return rc;
  if (n_states) *n_states = game->spec.n_states;
  if (n_opp_actions) *n_opp_actions = game->spec.n_opp_actions;
  if (n_our_actions) *n_our_actions = game->spec.n_our_actions;
  return EBBR_OK;
}

void ebbr_game_free(ebbr_game* game) { delete game; }

ebbr_status ebbr_expected_payoff(const ebbr_game* game, const double* ours, const double* opp,
                                 double* value_out) {
  if (auto rc = require(game && ours && opp && value_out, "null argument"); rc != EBBR_OK)
    return rc;
  return guarded([&] {
    const auto& g = game->spec;
    ebbr::OurStrategy r;
    r.r = ebbr::Matrix(g.n_opp_actions, g.n_our_actions);
    std::memcpy(r.r.data().data(), ours, r.r.data().size() * sizeof(double));
    ebbr::OpponentStrategy q;
    q.q = ebbr::Matrix(g.n_states, g.n_opp_actions);
    std::memcpy(q.q.data().data(), opp, q.q.data().size() * sizeof(double));
    *value_out = ebbr::expected_payoff(g, r, q);
  });
}

ebbr_status ebbr_best_response(const ebbr_game* game, const double* opp, double* strategy_out,
                               double* value_out) {
  if (auto rc = require(game && opp && strategy_out, "null argument"); rc != EBBR_OK) return rc;
  return guarded([&] {
    const auto& g = game->spec;
    ebbr::OpponentStrategy q;
    q.q = ebbr::Matrix(g.n_states, g.n_opp_actions);
    std::memcpy(q.q.data().data(), opp, q.q.data().size() * sizeof(double));
    ebbr::BestResponse br = ebbr::best_response(g, q);
    std::memcpy(strategy_out, br.strategy.r.data().data(),
                br.strategy.r.data().size() * sizeof(double));
    if (value_out) *value_out = br.value;
  });
}

ebbr_status ebbr_posterior_mean(int32_t n_states, int32_t n_actions, const double* alpha,
                                const double* pi, const uint32_t* theta, ebbr_beta_mode mode,
                                uint32_t max_horizon, double* mean_out, int32_t* finite_out) {
  if (auto rc = require(alpha && pi && theta && mean_out, "null argument"); rc != EBBR_OK)
    return rc;
  if (auto rc = require(n_states > 0 && n_actions > 0, "dimensions must be positive");
      rc != EBBR_OK)
    return rc;
  return guarded([&] {
    ebbr::DirichletPrior prior;
    prior.alpha = ebbr::Matrix(n_states, n_actions);
    std::memcpy(prior.alpha.data().data(), alpha, prior.alpha.data().size() * sizeof(double));
    ebbr::ObservationCounts obs;
    obs.theta.assign(theta, theta + n_actions);
    ebbr::PosteriorOptions opts;
    opts.mode = mode == EBBR_BETA_DIRECT ? ebbr::BetaMode::kDirect : ebbr::BetaMode::kLog;
    if (max_horizon > 0) opts.max_horizon = max_horizon;
    std::span<const double> pi_span(pi, static_cast<std::size_t>(n_states));
    ebbr::OpponentStrategy mean = ebbr::posterior_mean_multi_obs(prior, pi_span, obs, opts);
    std::memcpy(mean_out, mean.q.data().data(), mean.q.data().size() * sizeof(double));
    if (finite_out) *finite_out = ebbr::is_finite(mean.q) ? 1 : 0;
  });
}

ebbr_status ebbr_run_experiment(const char* kind, const char* config_json, char** csv_out) {
  if (auto rc = require(kind && config_json && csv_out, "null argument"); rc != EBBR_OK) return rc;
  return guarded([&] {
    ebbr::ExperimentConfig cfg = ebbr::config_from_json(config_json);
    const std::string k = kind;
    std::string csv;
    if (k == "table1") csv = ebbr::run_table1(cfg);
    else if (k == "table2") csv = ebbr::run_table2(cfg);
    else if (k == "table3") csv = ebbr::run_table3(cfg);
    else if (k == "table4") csv = ebbr::run_table4(cfg);
    else if (k == "match") csv = ebbr::run_single_match(cfg);
    else throw ebbr::Error(ebbr::ErrorCode::kInvalidArgument, "unknown experiment kind: " + k);
    *csv_out = dup_string(csv);
  });
}

ebbr_status ebbr_vertex_prior_from_json(const char* json, ebbr_vertex_prior** out) {
  if (auto rc = require(json && out, "null argument"); rc != EBBR_OK) return rc;
  return guarded([&] { *out = new ebbr_vertex_prior{ebbr::vertex_prior_from_json(json)}; });
}

ebbr_status ebbr_vertex_prior_size(const ebbr_vertex_prior* vp, int32_t* n_vertices,
                                   int32_t* n_actions) {
  if (auto rc = require(vp != nullptr, "null vertex prior"); rc != EBBR_OK) return rc;
  if (n_vertices) *n_vertices = static_cast<int32_t>(vp->vp.vertices.size());
  if (n_actions)
    *n_actions = vp->vp.vertices.empty() ? 0 : static_cast<int32_t>(vp->vp.vertices.front().size());
  return EBBR_OK;
}

ebbr_status ebbr_vertex_prior_observe(ebbr_vertex_prior* vp, int32_t action) {
  if (auto rc = require(vp != nullptr, "null vertex prior"); rc != EBBR_OK) return rc;
  return guarded([&] { vp->vp = ebbr::vertex_posterior_update(vp->vp, action); });
}

ebbr_status ebbr_vertex_prior_weights(const ebbr_vertex_prior* vp, double* weights_out) {
  if (auto rc = require(vp && weights_out, "null argument"); rc != EBBR_OK) return rc;
  std::memcpy(weights_out, vp->vp.weights.data(), vp->vp.weights.size() * sizeof(double));
  return EBBR_OK;
}

ebbr_status ebbr_vertex_prior_mean(const ebbr_vertex_prior* vp, double* mean_out) {
  if (auto rc = require(vp && mean_out, "null argument"); rc != EBBR_OK) return rc;
  return guarded([&] {
    auto mean = ebbr::vertex_mean(vp->vp);
    std::memcpy(mean_out, mean.data(), mean.size() * sizeof(double));
  });
}

void ebbr_vertex_prior_free(ebbr_vertex_prior* vp) { delete vp; }

}  // extern "C"
