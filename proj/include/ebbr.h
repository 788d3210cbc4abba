/* Apache License, Version 2.0, refer to LICENSE.txt */

/*
 * C interface to the ebbr engine: exact Bayesian opponent exploitation in
 * one-shot imperfect-information games.
 *
 * All functions return EBBR_OK on success; on failure ebbr_last_error()
 * holds a message for the calling thread. Objects returned through out
 * parameters are owned by the caller and released with the matching _free
 * function. Matrices cross the boundary as dense row-major double arrays.
 */

#ifndef EBBR_H
#define EBBR_H

#include <stdint.h>

#if defined(_WIN32)
#define EBBR_API __declspec(dllexport)
#elif defined(__GNUC__) || defined(__clang__)
#define EBBR_API __attribute__((visibility("default")))
#else
#define EBBR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ebbr_status {
  EBBR_OK = 0,
  EBBR_ERR_INVALID_ARGUMENT = 1,
  EBBR_ERR_DIMENSION_MISMATCH = 2,
  EBBR_ERR_HORIZON_EXCEEDED = 3,
  EBBR_ERR_COMPOSITION_OVERFLOW = 4,
  EBBR_ERR_IMPOSSIBLE_OBSERVATION = 5,
  EBBR_ERR_EMPTY_SUPPORT = 6,
  EBBR_ERR_DOMAIN_LIMIT = 7,
  EBBR_ERR_PARSE = 8,
  EBBR_ERR_IO = 9,
  EBBR_ERR_INTERNAL = 10
} ebbr_status;

typedef enum ebbr_beta_mode {
  EBBR_BETA_LOG = 0,   /* log-space evaluation, stable */
  EBBR_BETA_DIRECT = 1 /* plain gamma products, may produce non-finite output */
} ebbr_beta_mode;

typedef struct ebbr_game ebbr_game;
typedef struct ebbr_vertex_prior ebbr_vertex_prior;

EBBR_API const char* ebbr_version(void);
EBBR_API const char* ebbr_status_string(ebbr_status status);
/* Message for the most recent failure on this thread; empty if none. */
EBBR_API const char* ebbr_last_error(void);

/* Frees strings returned through char** out parameters. */
EBBR_API void ebbr_string_free(char* s);

/* ---- games ---------------------------------------------------------- */

EBBR_API ebbr_status ebbr_game_motivating(ebbr_game** out);
EBBR_API ebbr_status ebbr_game_from_json(const char* json, ebbr_game** out);
EBBR_API ebbr_status ebbr_game_to_json(const ebbr_game* game, char** json_out);
EBBR_API ebbr_status ebbr_game_dims(const ebbr_game* game, int32_t* n_states,
                                    int32_t* n_opp_actions, int32_t* n_our_actions);
EBBR_API void ebbr_game_free(ebbr_game* game);

/* Expected payoff of plan `ours` (n_opp_actions x n_our_actions) against
 * opponent conditionals `opp` (n_states x n_opp_actions). */
EBBR_API ebbr_status ebbr_expected_payoff(const ebbr_game* game, const double* ours,
                                          const double* opp, double* value_out);

/* Best response to an opponent model. strategy_out must hold
 * n_opp_actions * n_our_actions doubles. */
EBBR_API ebbr_status ebbr_best_response(const ebbr_game* game, const double* opp,
                                        double* strategy_out, double* value_out);

/* ---- posterior ------------------------------------------------------- */

/* Exact posterior-mean opponent strategy under a Dirichlet prior with
 * unobserved private states.
 *   alpha:  n_states x n_actions positive pseudo-counts, row-major
 *   pi:     n_states state probabilities
 *   theta:  n_actions observed public action counts
 *   max_horizon: cap on total observations; 0 selects the default (1000)
 *   mean_out: n_states x n_actions, rows sum to 1
 * In EBBR_BETA_DIRECT mode the output may contain non-finite values; that is
 * reported through finite_out (may be NULL) rather than as an error. */
EBBR_API ebbr_status ebbr_posterior_mean(int32_t n_states, int32_t n_actions, const double* alpha,
                                         const double* pi, const uint32_t* theta,
                                         ebbr_beta_mode mode, uint32_t max_horizon,
                                         double* mean_out, int32_t* finite_out);

/* ---- experiments ----------------------------------------------------- */

/* kind: "table1", "table2", "table3", "table4", or "match". config_json
 * mirrors the experiment configuration (see README); pass "{}" for the
 * defaults. The resulting CSV is returned through csv_out and also written
 * to the configured output path when one is set. */
EBBR_API ebbr_status ebbr_run_experiment(const char* kind, const char* config_json,
                                         char** csv_out);

/* ---- vertex priors --------------------------------------------------- */

EBBR_API ebbr_status ebbr_vertex_prior_from_json(const char* json, ebbr_vertex_prior** out);
EBBR_API ebbr_status ebbr_vertex_prior_size(const ebbr_vertex_prior* vp, int32_t* n_vertices,
                                            int32_t* n_actions);
/* Bayes update in place for one observed action. */
EBBR_API ebbr_status ebbr_vertex_prior_observe(ebbr_vertex_prior* vp, int32_t action);
EBBR_API ebbr_status ebbr_vertex_prior_weights(const ebbr_vertex_prior* vp, double* weights_out);
EBBR_API ebbr_status ebbr_vertex_prior_mean(const ebbr_vertex_prior* vp, double* mean_out);
EBBR_API void ebbr_vertex_prior_free(ebbr_vertex_prior* vp);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EBBR_H */
