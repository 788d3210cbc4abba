// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef EBBR_BASELINES_HPP
#define EBBR_BASELINES_HPP

#include <random>
#include <span>
#include <vector>

#include "ebbr/posterior.hpp"
#include "ebbr/types.hpp"

namespace ebbr {

/// Strategies drawn once from the prior and reused for a whole match.
struct SampleBank {
  std::vector<OpponentStrategy> samples;
};

/// One draw from Dirichlet(alpha_row) via normalized Gamma(alpha_i, 1) draws.
std::vector<double> sample_dirichlet(std::span<const double> alpha_row, std::mt19937_64& rng);

/// Row-wise Dirichlet draw of a full opponent strategy.
OpponentStrategy sample_opponent(const DirichletPrior& prior, std::mt19937_64& rng);

SampleBank draw_sample_bank(const DirichletPrior& prior, int k, std::mt19937_64& rng);

/// Log likelihood of the observed public action counts under strategy q:
/// sum_j theta_j * ln(sum_i pi_i q(i,j)). -inf when an observed action has
/// zero probability.
double observation_log_likelihood(const OpponentStrategy& q, std::span<const double> pi,
                                  const ObservationCounts& obs);

/// Likelihood-weighted average of the bank (posterior mean over the sampled
/// atoms). Throws when every sample has zero likelihood.
OpponentStrategy bbr_model(const SampleBank& bank, std::span<const double> pi,
                           const ObservationCounts& obs);

/// The sample with maximum likelihood; exact ties are broken uniformly at
/// random.
OpponentStrategy map_model(const SampleBank& bank, std::span<const double> pi,
                           const ObservationCounts& obs, std::mt19937_64& rng);

/// One sample drawn with probability proportional to its likelihood weight.
OpponentStrategy thompson_model(const SampleBank& bank, std::span<const double> pi,
                                const ObservationCounts& obs, std::mt19937_64& rng);

}  // namespace ebbr

#endif  // EBBR_BASELINES_HPP
