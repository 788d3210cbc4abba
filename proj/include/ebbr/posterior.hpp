// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef EBBR_POSTERIOR_HPP
#define EBBR_POSTERIOR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ebbr/types.hpp"

namespace ebbr {

/// Dirichlet pseudo-counts per (private state, action) cell; every row of
/// alpha parameterizes an independent Dirichlet over that state's actions.
struct DirichletPrior {
  Matrix alpha;

  /// alpha(i,j) / sum_j alpha(i,j).
  OpponentStrategy prior_mean() const;
};

/// Publicly observed opponent action counts; the generating private states
/// are never observed.
struct ObservationCounts {
  std::vector<std::uint32_t> theta;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto v : theta) t += v;
    return t;
  }
};

enum class BetaMode {
  kLog,     // log-space beta products, log-sum-exp accumulation
  kDirect,  // plain-double gamma products; can overflow to non-finite
};

struct PosteriorOptions {
  BetaMode mode = BetaMode::kLog;
  std::uint32_t max_horizon = 1000;  // cap on total observations
};

/// Streams the weak compositions of `total` into `parts` non-negative parts
/// in lexicographic order, one vector at a time.
///
///   Composition c(2, 2);
///   do { use(c.values()); } while (c.advance());
///
/// visits (0,2), (1,1), (2,0).
class Composition {
 public:
  Composition(std::uint32_t total, int parts);

  std::span<const std::uint32_t> values() const { return values_; }
  bool advance();

 private:
  std::uint32_t total_;
  std::vector<std::uint32_t> values_;
};

/// Number of weak compositions, C(total + parts - 1, parts - 1). Throws
/// ErrorCode::kCompositionOverflow when the count does not fit in 64 bits.
std::uint64_t composition_count(std::uint32_t total, int parts);

/// Materialized composition list in lexicographic order (small inputs; the
/// posterior itself streams).
std::vector<std::vector<std::uint32_t>> enumerate_compositions(std::uint32_t total, int parts);

/// Exact mean of the posterior over opponent strategies after one public
/// observation of `observed_action`, marginalizing the unobserved private
/// state. Rows of the result are distributions over actions.
OpponentStrategy posterior_mean_single_obs(const DirichletPrior& prior,
                                           std::span<const double> pi, int observed_action,
                                           const PosteriorOptions& opts = {});

/// Exact posterior mean given cumulative action counts. The sum runs over
/// every way of splitting each action's count among the private states,
/// weighted by the multinomial count of orderings and the state
/// probabilities. With all-zero counts this returns the prior mean.
OpponentStrategy posterior_mean_multi_obs(const DirichletPrior& prior, std::span<const double> pi,
                                          const ObservationCounts& obs,
                                          const PosteriorOptions& opts = {});

}  // namespace ebbr

#endif  // EBBR_POSTERIOR_HPP
