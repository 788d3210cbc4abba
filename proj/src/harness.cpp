// Apache License, Version 2.0, refer to LICENSE.txt

#include "ebbr/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "ebbr/respond.hpp"
#include "ebbr/rng.hpp"

namespace ebbr {

namespace {

// Substream purposes; opponent draws, observation sequences, sample banks,
// and per-agent randomness stay decorrelated so one agent's results never
// depend on another agent's configuration.
enum Stream : std::uint64_t {
  kStreamOpponent = 1,
  kStreamEnv = 2,
  kStreamBank = 3,
  kStreamAgent = 4,
  kStreamTiming = 5,
};

std::string fmt_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot open output file: " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "failed writing output file: " + path);
}

struct Summary {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double ci95 = std::numeric_limits<double>::quiet_NaN();
  double nonfinite_rate = 0.0;
};

Summary summarize(const std::vector<double>& payoffs, int flagged, int total) {
  Summary s;
  s.nonfinite_rate = total > 0 ? static_cast<double>(flagged) / total : 0.0;
  if (payoffs.empty()) return s;
  double mean = 0.0;
  for (double v : payoffs) mean += v;
  mean /= payoffs.size();
  double var = 0.0;
  for (double v : payoffs) var += (v - mean) * (v - mean);
  var = payoffs.size() > 1 ? var / (payoffs.size() - 1) : 0.0;
  s.mean = mean;
  s.ci95 = 1.96 * std::sqrt(var / payoffs.size());
  return s;
}

GameSpec game_for(const ExperimentConfig& cfg) {
  if (cfg.game != "motivating")
    throw Error(ErrorCode::kInvalidArgument, "unknown game id: " + cfg.game);
  return make_motivating_game();
}

DirichletPrior prior_for(const ExperimentConfig& cfg, const GameSpec& g) {
  DirichletPrior prior;
  if (cfg.alpha.empty()) {
    prior.alpha = Matrix(g.n_states, g.n_opp_actions, 2.0);
  } else {
    prior.alpha = cfg.alpha;
  }
  if (prior.alpha.rows() != g.n_states || prior.alpha.cols() != g.n_opp_actions)
    throw Error(ErrorCode::kDimensionMismatch, "alpha shape does not match game");
  return prior;
}

std::vector<AgentKind> agents_for(const ExperimentConfig& cfg) {
  if (!cfg.agents.empty()) return cfg.agents;
  return {AgentKind::kEbbr, AgentKind::kBbr,    AgentKind::kMap,
          AgentKind::kThompson, AgentKind::kFullBr, AgentKind::kNash};
}

bool uses_bank(AgentKind k) {
  return k == AgentKind::kBbr || k == AgentKind::kMap || k == AgentKind::kThompson;
}

OurStrategy respond_once(AgentKind kind, const GameSpec& g, const DirichletPrior& prior,
                         const ObservationCounts& counts, const SampleBank* bank,
                         const OpponentStrategy& true_opp, std::mt19937_64& agent_rng,
                         const PosteriorOptions& opts, bool& finite_ok) {
  finite_ok = true;
  switch (kind) {
    case AgentKind::kEbbr: {
      OpponentStrategy model = posterior_mean_multi_obs(prior, g.pi, counts, opts);
      if (!is_finite(model.q)) {
        finite_ok = false;
        return motivating_nash_strategy();
      }
      return best_response(g, model).strategy;
    }
    case AgentKind::kBbr:
      return best_response(g, bbr_model(*bank, g.pi, counts)).strategy;
    case AgentKind::kMap:
      return best_response(g, map_model(*bank, g.pi, counts, agent_rng)).strategy;
    case AgentKind::kThompson:
      return best_response(g, thompson_model(*bank, g.pi, counts, agent_rng)).strategy;
    case AgentKind::kFullBr:
      return best_response(g, true_opp).strategy;
    case AgentKind::kNash:
      return motivating_nash_strategy();
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown agent kind");
}

}  // namespace

const char* agent_name(AgentKind kind) {
  switch (kind) {
    case AgentKind::kEbbr: return "ebbr";
    case AgentKind::kBbr: return "bbr";
    case AgentKind::kMap: return "map";
    case AgentKind::kThompson: return "thompson";
    case AgentKind::kFullBr: return "fullbr";
    case AgentKind::kNash: return "nash";
  }
  return "?";
}

AgentKind agent_from_name(const std::string& name) {
  if (name == "ebbr") return AgentKind::kEbbr;
  if (name == "bbr") return AgentKind::kBbr;
  if (name == "map") return AgentKind::kMap;
  if (name == "thompson") return AgentKind::kThompson;
  if (name == "fullbr") return AgentKind::kFullBr;
  if (name == "nash") return AgentKind::kNash;
  throw Error(ErrorCode::kInvalidArgument, "unknown agent: " + name);
}

ExperimentConfig config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad config JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    if (j.contains("game")) cfg.game = j["game"].get<std::string>();
    if (j.contains("alpha")) {
      auto rows = j["alpha"].get<std::vector<std::vector<double>>>();
      cfg.alpha = Matrix(static_cast<int>(rows.size()),
                         rows.empty() ? 0 : static_cast<int>(rows.front().size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.front().size())
          throw Error(ErrorCode::kParse, "ragged alpha matrix");
        for (std::size_t c = 0; c < rows[i].size(); ++c)
          cfg.alpha(static_cast<int>(i), static_cast<int>(c)) = rows[i][c];
      }
    }
    if (j.contains("agents")) {
      cfg.agents.clear();
      for (const auto& name : j["agents"]) cfg.agents.push_back(agent_from_name(name));
    }
    if (j.contains("rounds")) cfg.rounds = j["rounds"].get<std::vector<int>>();
    if (j.contains("opponents")) cfg.opponents = j["opponents"].get<std::vector<int>>();
    if (j.contains("samples_k")) cfg.samples_k = j["samples_k"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("beta_mode")) {
      const std::string mode = j["beta_mode"].get<std::string>();
      if (mode == "log") cfg.beta_mode = BetaMode::kLog;
      else if (mode == "direct") cfg.beta_mode = BetaMode::kDirect;
      else throw Error(ErrorCode::kParse, "beta_mode must be \"log\" or \"direct\"");
    }
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("max_horizon")) cfg.max_horizon = j["max_horizon"].get<std::uint32_t>();
    if (j.contains("sizes")) cfg.sizes = j["sizes"].get<std::vector<int>>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("opponent")) {
      auto rows = j["opponent"].get<std::vector<std::vector<double>>>();
      Matrix q(static_cast<int>(rows.size()),
               rows.empty() ? 0 : static_cast<int>(rows.front().size()));
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < rows[i].size(); ++c)
          q(static_cast<int>(i), static_cast<int>(c)) = rows[i][c];
      cfg.opponent = std::move(q);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad config JSON: ") + e.what());
  }
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["game"] = cfg.game;
  if (!cfg.alpha.empty()) {
    auto rows = nlohmann::json::array();
    for (int i = 0; i < cfg.alpha.rows(); ++i)
      rows.push_back(std::vector<double>(cfg.alpha.row(i).begin(), cfg.alpha.row(i).end()));
    j["alpha"] = rows;
  }
  auto names = nlohmann::json::array();
  for (AgentKind a : agents_for(cfg)) names.push_back(agent_name(a));
  j["agents"] = names;
  j["rounds"] = cfg.rounds;
  j["opponents"] = cfg.opponents;
  j["samples_k"] = cfg.samples_k;
  j["seed"] = cfg.seed;
  j["beta_mode"] = cfg.beta_mode == BetaMode::kLog ? "log" : "direct";
  j["out"] = cfg.out;
  j["max_horizon"] = cfg.max_horizon;
  j["sizes"] = cfg.sizes;
  j["trials"] = cfg.trials;
  if (cfg.opponent) {
    auto rows = nlohmann::json::array();
    for (int i = 0; i < cfg.opponent->rows(); ++i)
      rows.push_back(std::vector<double>(cfg.opponent->row(i).begin(), cfg.opponent->row(i).end()));
    j["opponent"] = rows;
  }
  return j.dump(2);
}

std::vector<int> sample_observation_sequence(const GameSpec& g, const OpponentStrategy& true_opp,
                                             int rounds, std::mt19937_64& env_rng) {
  if (rounds < 0) throw Error(ErrorCode::kInvalidArgument, "rounds must be non-negative");
  std::vector<int> obs;
  obs.reserve(rounds);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < rounds; ++t) {
    // Private state drawn and immediately forgotten; only the action leaks.
    double r = unit(env_rng);
    int state = g.n_states - 1;
    double cum = 0.0;
    for (int i = 0; i < g.n_states; ++i) {
      cum += g.pi[i];
      if (r < cum) {
        state = i;
        break;
      }
    }
    double ra = unit(env_rng);
    int action = g.n_opp_actions - 1;
    cum = 0.0;
    for (int j = 0; j < g.n_opp_actions; ++j) {
      cum += true_opp.q(state, j);
      if (ra < cum) {
        action = j;
        break;
      }
    }
    obs.push_back(action);
  }
  return obs;
}

MatchResult run_match(const GameSpec& g, const DirichletPrior& prior, AgentKind agent,
                      const OpponentStrategy& true_opp, std::span<const int> observations,
                      const SampleBank* bank, std::mt19937_64& agent_rng,
                      const PosteriorOptions& opts, int opponent_index) {
  if (uses_bank(agent) && (bank == nullptr || bank->samples.empty()))
    throw Error(ErrorCode::kInvalidArgument, "sampling agent needs a sample bank");

  MatchResult res;
  res.agent = agent;
  res.opponent_index = opponent_index;
  res.rounds = static_cast<int>(observations.size());

  ObservationCounts counts;
  counts.theta.assign(g.n_opp_actions, 0);

  double sum = 0.0;
  int scored = 0;
  bool ok = true;
  if (observations.empty()) {
    OurStrategy s = respond_once(agent, g, prior, counts, bank, true_opp, agent_rng, opts, ok);
    if (ok) {
      sum += expected_payoff(g, s, true_opp);
      ++scored;
    }
  } else {
    for (int a : observations) {
      if (a < 0 || a >= g.n_opp_actions)
        throw Error(ErrorCode::kInvalidArgument, "observation out of range");
      ++counts.theta[a];
      OurStrategy s = respond_once(agent, g, prior, counts, bank, true_opp, agent_rng, opts, ok);
      if (!ok) break;
      sum += expected_payoff(g, s, true_opp);
      ++scored;
    }
  }

  if (!ok) {
    res.nonfinite = true;
    res.mean_payoff = std::numeric_limits<double>::quiet_NaN();
  } else {
    res.mean_payoff = sum / scored;
  }
  return res;
}

std::string run_match_table(const ExperimentConfig& cfg) {
  const GameSpec g = game_for(cfg);
  const DirichletPrior prior = prior_for(cfg, g);
  const std::vector<AgentKind> agents = agents_for(cfg);
  if (cfg.rounds.size() != cfg.opponents.size())
    throw Error(ErrorCode::kDimensionMismatch, "rounds and opponents lists must align");
  if (cfg.samples_k <= 0) throw Error(ErrorCode::kInvalidArgument, "samples_k must be positive");

  PosteriorOptions opts;
  opts.mode = cfg.beta_mode;
  opts.max_horizon = cfg.max_horizon;
  for (int r : cfg.rounds)
    opts.max_horizon = std::max<std::uint32_t>(opts.max_horizon, static_cast<std::uint32_t>(r));

  bool need_bank = false;
  for (AgentKind a : agents) need_bank = need_bank || uses_bank(a);

  std::ostringstream csv;
  csv << "# rng=" << rng_name() << "\n";
  csv << "agent,rounds,opponents,mean_payoff,ci95,nonfinite_rate,seed\n";

  std::vector<std::vector<double>> payoffs(agents.size());
  std::vector<int> flagged(agents.size());

  for (std::size_t col = 0; col < cfg.rounds.size(); ++col) {
    const int rounds = cfg.rounds[col];
    const int n_opp = cfg.opponents[col];
    if (rounds < 0 || n_opp < 1)
      throw Error(ErrorCode::kInvalidArgument, "invalid rounds/opponents setting");
    for (auto& p : payoffs) {
      p.clear();
      p.reserve(n_opp);
    }
    std::fill(flagged.begin(), flagged.end(), 0);

    for (int o = 0; o < n_opp; ++o) {
      auto opp_rng = make_stream(cfg.seed, {kStreamOpponent, static_cast<std::uint64_t>(o)});
      const OpponentStrategy true_opp = sample_opponent(prior, opp_rng);
      auto env_rng = make_stream(cfg.seed, {kStreamEnv, static_cast<std::uint64_t>(o)});
      const std::vector<int> obs = sample_observation_sequence(g, true_opp, rounds, env_rng);

      SampleBank bank;
      if (need_bank) {
        auto bank_rng = make_stream(cfg.seed, {kStreamBank, static_cast<std::uint64_t>(o)});
        bank = draw_sample_bank(prior, cfg.samples_k, bank_rng);
      }

      for (std::size_t a = 0; a < agents.size(); ++a) {
        auto agent_rng = make_stream(cfg.seed, {kStreamAgent, static_cast<std::uint64_t>(o),
                                                static_cast<std::uint64_t>(agents[a])});
        MatchResult res = run_match(g, prior, agents[a], true_opp, obs,
                                    need_bank ? &bank : nullptr, agent_rng, opts, o);
        if (res.nonfinite) {
          ++flagged[a];
        } else {
          payoffs[a].push_back(res.mean_payoff);
        }
      }
    }

    for (std::size_t a = 0; a < agents.size(); ++a) {
      Summary s = summarize(payoffs[a], flagged[a], n_opp);
      csv << agent_name(agents[a]) << ',' << rounds << ',' << n_opp << ',' << fmt_g6(s.mean)
          << ',' << fmt_g6(s.ci95) << ',' << fmt_g6(s.nonfinite_rate) << ',' << cfg.seed << "\n";
    }
  }

  const std::string text = csv.str();
  write_output(cfg.out, text);
  return text;
}

std::string run_table3(const ExperimentConfig& cfg) { return run_match_table(cfg); }

std::string run_table4(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  // Degraded-bank variant: only adjust knobs the caller left at the generic
  // defaults.
  if (c.samples_k == 1000) c.samples_k = 10;
  if (c.rounds == std::vector<int>{0, 10, 25}) {
    c.rounds = {0, 10, 25, 100};
    c.opponents = {10000, 1000, 1000, 300};
  }
  return run_match_table(c);
}

std::string run_timing(const ExperimentConfig& cfg, TimingProtocol protocol) {
  const GameSpec g = game_for(cfg);
  if (cfg.trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be positive");

  std::ostringstream csv;
  csv << "# rng=" << rng_name() << "\n";
  csv << "mode,n,trials,mean_time_ms,nonfinite_rate,seed\n";

  struct Row {
    BetaMode mode;
    int n;
    double mean_ms;
    double nonfinite;
  };
  std::vector<Row> rows;

  for (BetaMode mode : {BetaMode::kLog, BetaMode::kDirect}) {
    for (int n : cfg.sizes) {
      if (n < 1) throw Error(ErrorCode::kInvalidArgument, "protocol size must be positive");
      auto rng = make_stream(cfg.seed, {kStreamTiming, static_cast<std::uint64_t>(protocol),
                                        static_cast<std::uint64_t>(n)});
      std::uniform_int_distribution<int> unif(1, n);

      PosteriorOptions opts;
      opts.mode = mode;
      opts.max_horizon = std::max<std::uint32_t>(cfg.max_horizon, 2u * static_cast<std::uint32_t>(n));

      std::int64_t total_ns = 0;
      int nonfinite = 0;
      for (int t = 0; t < cfg.trials; ++t) {
        DirichletPrior prior;
        ObservationCounts obs;
        obs.theta.assign(2, 0);
        if (protocol == TimingProtocol::kSingleObs) {
          prior.alpha = Matrix(2, 2);
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) prior.alpha(i, j) = unif(rng);
        } else {
          prior.alpha = Matrix(2, 2, 2.0);
          obs.theta[0] = static_cast<std::uint32_t>(unif(rng));
          obs.theta[1] = static_cast<std::uint32_t>(unif(rng));
        }

        const auto t0 = std::chrono::steady_clock::now();
        OpponentStrategy mean = protocol == TimingProtocol::kSingleObs
                                    ? posterior_mean_single_obs(prior, g.pi, 0, opts)
                                    : posterior_mean_multi_obs(prior, g.pi, obs, opts);
        const auto t1 = std::chrono::steady_clock::now();
        total_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
        if (!is_finite(mean.q)) ++nonfinite;
      }
      rows.push_back({mode, n, total_ns / 1e6 / cfg.trials,
                      static_cast<double>(nonfinite) / cfg.trials});
    }
  }

  for (const Row& r : rows) {
    csv << (r.mode == BetaMode::kLog ? "log" : "direct") << ',' << r.n << ',' << cfg.trials << ','
        << fmt_g6(r.mean_ms) << ',' << fmt_g6(r.nonfinite) << ',' << cfg.seed << "\n";
  }

  const std::string text = csv.str();
  write_output(cfg.out, text);
  return text;
}

std::string run_table1(const ExperimentConfig& cfg) {
  return run_timing(cfg, TimingProtocol::kSingleObs);
}

std::string run_table2(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  if (c.trials == 2000) c.trials = 100;  // multi-obs evaluations are much heavier
  if (c.sizes == std::vector<int>{10, 20, 50, 100, 200, 500}) c.sizes.push_back(1000);
  return run_timing(c, TimingProtocol::kMultiObs);
}

std::string run_single_match(const ExperimentConfig& cfg) {
  const GameSpec g = game_for(cfg);
  const DirichletPrior prior = prior_for(cfg, g);
  const std::vector<AgentKind> agents = agents_for(cfg);
  const AgentKind agent = agents.front();
  const int rounds = cfg.rounds.empty() ? 0 : cfg.rounds.front();

  PosteriorOptions opts;
  opts.mode = cfg.beta_mode;
  opts.max_horizon = std::max<std::uint32_t>(cfg.max_horizon, static_cast<std::uint32_t>(rounds));

  OpponentStrategy true_opp;
  if (cfg.opponent) {
    true_opp.q = *cfg.opponent;
    if (true_opp.q.rows() != g.n_states || true_opp.q.cols() != g.n_opp_actions)
      throw Error(ErrorCode::kDimensionMismatch, "opponent shape does not match game");
    if (!is_row_stochastic(true_opp.q, 1e-9))
      throw Error(ErrorCode::kInvalidArgument, "opponent rows must be distributions");
  } else {
    auto opp_rng = make_stream(cfg.seed, {kStreamOpponent, 0});
    true_opp = sample_opponent(prior, opp_rng);
  }

  auto env_rng = make_stream(cfg.seed, {kStreamEnv, 0});
  const std::vector<int> obs = sample_observation_sequence(g, true_opp, rounds, env_rng);

  SampleBank bank;
  if (uses_bank(agent)) {
    auto bank_rng = make_stream(cfg.seed, {kStreamBank, 0});
    bank = draw_sample_bank(prior, cfg.samples_k, bank_rng);
  }
  auto agent_rng = make_stream(cfg.seed, {kStreamAgent, 0, static_cast<std::uint64_t>(agent)});
  MatchResult res = run_match(g, prior, agent, true_opp, obs, uses_bank(agent) ? &bank : nullptr,
                              agent_rng, opts, 0);

  std::ostringstream csv;
  csv << "# rng=" << rng_name() << "\n";
  csv << "agent,rounds,opponents,mean_payoff,ci95,nonfinite_rate,seed\n";
  csv << agent_name(agent) << ',' << rounds << ",1," << fmt_g6(res.mean_payoff) << ",0,"
      << fmt_g6(res.nonfinite ? 1.0 : 0.0) << ',' << cfg.seed << "\n";
  const std::string text = csv.str();
  write_output(cfg.out, text);
  return text;
}

}  // namespace ebbr
