// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef EBBR_BETAPROD_HPP
#define EBBR_BETAPROD_HPP

#include <span>
#include <vector>

#include "ebbr/types.hpp"

namespace ebbr {

/// log B(g_1,...,g_n) = sum_i lgamma(g_i) - lgamma(sum_i g_i).
/// All entries must be positive.
double log_beta(std::span<const double> gamma_col);

/// Sum of log_beta over the columns of gamma (entries positive).
double log_beta_product(const Matrix& gamma);

/// B evaluated by multiplying gamma-function values in plain double
/// arithmetic. Overflows/underflows are reported, not thrown; `finite` is
/// false when the result is inf or NaN.
struct DirectBeta {
  double value = 0.0;
  bool finite = true;
};
DirectBeta beta_direct(std::span<const double> gamma_col);

/// column_sum * entropy decomposition of a log beta product for integer
/// arguments, with the per-column additive constant d only known to lie in
/// [n/2*ln(2pi) - 1, n - 1/2*ln(2pi)]. `approx` pins d at the lower end of
/// that interval; log_beta_product of the same matrix always lies in
/// [lower, upper].
struct StirlingBracket {
  double approx = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};
StirlingBracket log_beta_product_stirling(const Matrix& gamma);

/// Column normalized to a distribution: p_i = g_i / sum(g).
std::vector<double> empirical_distribution(std::span<const double> gamma_col);

/// Shannon entropy in nats of a probability vector.
double entropy(std::span<const double> p);

}  // namespace ebbr

#endif  // EBBR_BETAPROD_HPP
