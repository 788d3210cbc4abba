// Apache License, Version 2.0, refer to LICENSE.txt

#include "ebbr/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ebbr {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> likelihood_weights(const SampleBank& bank, std::span<const double> pi,
                                       const ObservationCounts& obs) {
  if (bank.samples.empty()) throw Error(ErrorCode::kEmptySupport, "empty sample bank");
  std::vector<double> logw(bank.samples.size());
  double max_lw = kNegInf;
  for (std::size_t k = 0; k < bank.samples.size(); ++k) {
    logw[k] = observation_log_likelihood(bank.samples[k], pi, obs);
    max_lw = std::max(max_lw, logw[k]);
  }
  if (max_lw == kNegInf)
    throw Error(ErrorCode::kImpossibleObservation,
                "observations impossible under every bank sample");
  double total = 0.0;
  for (auto& w : logw) {
    w = std::exp(w - max_lw);  // max shift keeps the weights representable
    total += w;
  }
  for (auto& w : logw) w /= total;
  return logw;
}
}  // namespace

std::vector<double> sample_dirichlet(std::span<const double> alpha_row, std::mt19937_64& rng) {
  if (alpha_row.empty()) throw Error(ErrorCode::kInvalidArgument, "empty alpha row");
  for (double a : alpha_row)
    if (!(a > 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha entries must be positive");

  std::vector<double> draw(alpha_row.size());
  double sum = 0.0;
  do {
    sum = 0.0;
    for (std::size_t i = 0; i < draw.size(); ++i) {
      std::gamma_distribution<double> gamma(alpha_row[i], 1.0);
      draw[i] = gamma(rng);
      sum += draw[i];
    }
  } while (sum <= 0.0);  // all-zero draw has probability zero; redraw
  for (auto& v : draw) v /= sum;
  return draw;
}

OpponentStrategy sample_opponent(const DirichletPrior& prior, std::mt19937_64& rng) {
  OpponentStrategy q;
  q.q = Matrix(prior.alpha.rows(), prior.alpha.cols());
  for (int i = 0; i < prior.alpha.rows(); ++i) {
    auto row = sample_dirichlet(prior.alpha.row(i), rng);
    for (int j = 0; j < prior.alpha.cols(); ++j) q.q(i, j) = row[j];
  }
  return q;
}

SampleBank draw_sample_bank(const DirichletPrior& prior, int k, std::mt19937_64& rng) {
  if (k <= 0) throw Error(ErrorCode::kInvalidArgument, "bank size must be positive");
  SampleBank bank;
  bank.samples.reserve(k);
  for (int s = 0; s < k; ++s) bank.samples.push_back(sample_opponent(prior, rng));
  return bank;
}

double observation_log_likelihood(const OpponentStrategy& q, std::span<const double> pi,
                                  const ObservationCounts& obs) {
  if (q.q.rows() != static_cast<int>(pi.size()))
    throw Error(ErrorCode::kDimensionMismatch, "pi length does not match strategy");
  if (static_cast<int>(obs.theta.size()) != q.q.cols())
    throw Error(ErrorCode::kDimensionMismatch, "theta length does not match strategy");
  double ll = 0.0;
  for (int j = 0; j < q.q.cols(); ++j) {
    if (obs.theta[j] == 0) continue;
    double marginal = 0.0;
    for (int i = 0; i < q.q.rows(); ++i) marginal += pi[i] * q.q(i, j);
    if (marginal <= 0.0) return kNegInf;
    ll += static_cast<double>(obs.theta[j]) * std::log(marginal);
  }
  return ll;
}

OpponentStrategy bbr_model(const SampleBank& bank, std::span<const double> pi,
                           const ObservationCounts& obs) {
  auto weights = likelihood_weights(bank, pi, obs);
  const Matrix& first = bank.samples.front().q;
  OpponentStrategy mean;
  mean.q = Matrix(first.rows(), first.cols(), 0.0);
  for (std::size_t k = 0; k < bank.samples.size(); ++k) {
    const Matrix& q = bank.samples[k].q;
    for (int i = 0; i < q.rows(); ++i)
      for (int j = 0; j < q.cols(); ++j) mean.q(i, j) += weights[k] * q(i, j);
  }
  return mean;
}

OpponentStrategy map_model(const SampleBank& bank, std::span<const double> pi,
                           const ObservationCounts& obs, std::mt19937_64& rng) {
  auto weights = likelihood_weights(bank, pi, obs);
  const double best = *std::max_element(weights.begin(), weights.end());
  std::vector<std::size_t> argmax;
  for (std::size_t k = 0; k < weights.size(); ++k)
    if (weights[k] == best) argmax.push_back(k);
  std::size_t pick = argmax.front();
  if (argmax.size() > 1) {
    std::uniform_int_distribution<std::size_t> tie(0, argmax.size() - 1);
    pick = argmax[tie(rng)];
  }
  return bank.samples[pick];
}

OpponentStrategy thompson_model(const SampleBank& bank, std::span<const double> pi,
                                const ObservationCounts& obs, std::mt19937_64& rng) {
  auto weights = likelihood_weights(bank, pi, obs);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = unit(rng);
  double cum = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    cum += weights[k];
    if (r < cum) return bank.samples[k];
  }
  return bank.samples.back();  // guard against rounding in the cumulative sum
}

}  // namespace ebbr
