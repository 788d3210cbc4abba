// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef EBBR_ORACLE_HPP
#define EBBR_ORACLE_HPP

#include <span>

#include "ebbr/posterior.hpp"
#include "ebbr/types.hpp"

namespace ebbr {

/// Midpoint-rule integration grid. Cost grows as points^n_states, so this is
/// for tests and small instances only.
struct GridSpec {
  int points_per_dim = 2000;
};

/// Ground-truth posterior mean by numeric integration of the unnormalized
/// posterior density over a per-state probability grid. Requires exactly two
/// actions (each state's strategy is one-dimensional) and at most three
/// states.
OpponentStrategy oracle_posterior_mean(const Matrix& alpha, std::span<const double> pi,
                                       const ObservationCounts& obs, const GridSpec& grid = {});

}  // namespace ebbr

#endif  // EBBR_ORACLE_HPP
