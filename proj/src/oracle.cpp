// Apache License, Version 2.0, refer to LICENSE.txt

#include "ebbr/oracle.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace ebbr {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Local log-sum-exp so the oracle shares nothing with the closed-form path
// it is used to check.
struct Lse {
  double max = kNegInf;
  double sum = 0.0;
  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max) {
      sum += std::exp(x - max);
    } else {
      sum = (max == kNegInf) ? 1.0 : sum * std::exp(max - x) + 1.0;
      max = x;
    }
  }
  double value() const { return (max == kNegInf) ? kNegInf : max + std::log(sum); }
};
}  // namespace

OpponentStrategy oracle_posterior_mean(const Matrix& alpha, std::span<const double> pi,
                                       const ObservationCounts& obs, const GridSpec& grid) {
  const int n = alpha.rows();
  if (alpha.cols() != 2)
    throw Error(ErrorCode::kDomainLimit, "oracle integration requires exactly two actions");
  if (n < 1 || n > 3)
    throw Error(ErrorCode::kDomainLimit, "oracle integration supports at most three states");
  if (grid.points_per_dim < 100)
    throw Error(ErrorCode::kInvalidArgument, "grid must have at least 100 points per dimension");
  if (static_cast<int>(pi.size()) != n)
    throw Error(ErrorCode::kDimensionMismatch, "pi length does not match state count");
  if (obs.theta.size() != 2)
    throw Error(ErrorCode::kDimensionMismatch, "theta length does not match action count");
  for (double a : alpha.data())
    if (!(a > 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha entries must be positive");

  const int g_pts = grid.points_per_dim;
  std::vector<double> x(g_pts), log_x(g_pts), log_1mx(g_pts);
  for (int g = 0; g < g_pts; ++g) {
    x[g] = (g + 0.5) / g_pts;
    log_x[g] = std::log(x[g]);
    log_1mx[g] = std::log1p(-x[g]);
  }

  // Unnormalized log density per state coordinate; the per-row Dirichlet
  // normalizers cancel between numerator and denominator.
  std::vector<std::vector<double>> log_kernel(n, std::vector<double>(g_pts));
  for (int i = 0; i < n; ++i)
    for (int g = 0; g < g_pts; ++g)
      log_kernel[i][g] = (alpha(i, 0) - 1.0) * log_x[g] + (alpha(i, 1) - 1.0) * log_1mx[g];

  const double t0 = static_cast<double>(obs.theta[0]);
  const double t1 = static_cast<double>(obs.theta[1]);

  Lse log_z;
  std::vector<Lse> log_num(n);

  std::vector<int> idx(n, 0);
  for (;;) {
    double logd = 0.0;
    double p0 = 0.0;
    for (int i = 0; i < n; ++i) {
      logd += log_kernel[i][idx[i]];
      p0 += pi[i] * x[idx[i]];
    }
    if (t0 > 0.0) logd += t0 * std::log(p0);
    if (t1 > 0.0) logd += t1 * std::log1p(-p0);
    log_z.add(logd);
    for (int i = 0; i < n; ++i) log_num[i].add(logd + log_x[idx[i]]);

    int d = n - 1;
    while (d >= 0 && ++idx[d] == g_pts) idx[d--] = 0;
    if (d < 0) break;
  }

  const double lz = log_z.value();
  OpponentStrategy out;
  out.q = Matrix(n, 2);
  for (int i = 0; i < n; ++i) {
    const double mean0 = std::exp(log_num[i].value() - lz);
    out.q(i, 0) = mean0;
    out.q(i, 1) = 1.0 - mean0;
  }
  return out;
}

}  // namespace ebbr
