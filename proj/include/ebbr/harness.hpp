// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef EBBR_HARNESS_HPP
#define EBBR_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ebbr/baselines.hpp"
#include "ebbr/game.hpp"
#include "ebbr/posterior.hpp"
#include "ebbr/types.hpp"

namespace ebbr {

enum class AgentKind {
  kEbbr,      // exact posterior mean + best response
  kBbr,       // sample-bank posterior mean + best response
  kMap,       // best response to the max-likelihood sample
  kThompson,  // best response to one likelihood-weighted sample
  kFullBr,    // omniscient best response to the true strategy
  kNash,      // fixed equilibrium plan
};

const char* agent_name(AgentKind kind);
AgentKind agent_from_name(const std::string& name);

/// Scaled-down reproduction of the benchmark tables. `rounds` and
/// `opponents` are aligned per table column. JSON mirrors these fields by
/// name.
struct ExperimentConfig {
  std::string game = "motivating";
  Matrix alpha;                                 // defaults to all-2 when empty
  std::vector<AgentKind> agents;                // defaults to all six
  std::vector<int> rounds = {0, 10, 25};
  std::vector<int> opponents = {10000, 1000, 1000};
  int samples_k = 1000;
  std::uint64_t seed = 1;
  BetaMode beta_mode = BetaMode::kLog;
  std::string out;                              // optional output path
  std::uint32_t max_horizon = 1000;
  // timing-table knobs
  std::vector<int> sizes = {10, 20, 50, 100, 200, 500};
  int trials = 2000;
  // explicit true opponent for `match` runs; drawn from the prior when absent
  std::optional<Matrix> opponent;
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

struct MatchResult {
  AgentKind agent = AgentKind::kNash;
  int opponent_index = 0;
  double mean_payoff = 0.0;  // chips per hand, analytic against the true strategy
  int rounds = 0;
  bool nonfinite = false;    // model blew up (direct beta mode)
};

/// Opponent action sequence for one match; private states are drawn inside
/// and discarded, only the public actions are returned.
std::vector<int> sample_observation_sequence(const GameSpec& g, const OpponentStrategy& true_opp,
                                             int rounds, std::mt19937_64& env_rng);

/// Plays one match. Per round: the opponent's action is observed, cumulative
/// counts update, the agent responds, and the response is scored analytically
/// against the true strategy. The reported payoff averages the per-round
/// scores; zero rounds scores the prior response once.
MatchResult run_match(const GameSpec& g, const DirichletPrior& prior, AgentKind agent,
                      const OpponentStrategy& true_opp, std::span<const int> observations,
                      const SampleBank* bank, std::mt19937_64& agent_rng,
                      const PosteriorOptions& opts, int opponent_index = 0);

/// Mean winrate and 95% CI per (agent, round setting) over sampled opponents.
/// Returns CSV, and writes it to cfg.out when set. Deterministic for a fixed
/// seed; matches flagged non-finite are excluded from the mean and counted.
std::string run_match_table(const ExperimentConfig& cfg);

/// K=1000 and the degraded K=10 variants of the same comparison.
std::string run_table3(const ExperimentConfig& cfg);
std::string run_table4(const ExperimentConfig& cfg);

enum class TimingProtocol {
  kSingleObs,  // prior cells uniform in {1..n}, one observation
  kMultiObs,   // all-2 prior, per-action counts uniform in {1..n}
};

/// Mean wall time per posterior evaluation and non-finite rate for both beta
/// evaluation modes across problem sizes. All columns except the wall time
/// are deterministic for a fixed seed.
std::string run_timing(const ExperimentConfig& cfg, TimingProtocol protocol);
std::string run_table1(const ExperimentConfig& cfg);
std::string run_table2(const ExperimentConfig& cfg);

/// Single match through the same seeding scheme as the tables; one CSV row.
std::string run_single_match(const ExperimentConfig& cfg);

}  // namespace ebbr

#endif  // EBBR_HARNESS_HPP
