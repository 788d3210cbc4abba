// Apache License, Version 2.0, refer to LICENSE.txt

#include "ebbr/betaprod.hpp"

#include <cmath>

namespace ebbr {

namespace {

// Thread-safe lgamma for strictly positive arguments.
double lgamma_pos(double x) {
#if defined(__GLIBC__) || defined(__APPLE__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

void check_positive(std::span<const double> col) {
  if (col.empty()) throw Error(ErrorCode::kInvalidArgument, "empty beta argument vector");
  for (double v : col) {
    if (!(v > 0.0))
      throw Error(ErrorCode::kInvalidArgument, "beta arguments must be positive");
  }
}

constexpr double kHalfLog2Pi = 0.9189385332046727;  // ln(2*pi)/2

}  // namespace

bool is_finite(const Matrix& m) {
  for (double v : m.data())
    if (!std::isfinite(v)) return false;
  return true;
}

bool is_row_stochastic(const Matrix& m, double tol) {
  for (int i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols(); ++j) {
      double v = m(i, j);
      if (!(v >= -tol && v <= 1.0 + tol)) return false;
      s += v;
    }
    if (std::abs(s - 1.0) > tol) return false;
  }
  return true;
}

double log_beta(std::span<const double> gamma_col) {
  check_positive(gamma_col);
  double sum = 0.0;
  double lg = 0.0;
  for (double v : gamma_col) {
    lg += lgamma_pos(v);
    sum += v;
  }
  return lg - lgamma_pos(sum);
}

double log_beta_product(const Matrix& gamma) {
  if (gamma.empty()) throw Error(ErrorCode::kInvalidArgument, "empty gamma matrix");
  double total = 0.0;
  std::vector<double> col(gamma.rows());
  for (int j = 0; j < gamma.cols(); ++j) {
    for (int i = 0; i < gamma.rows(); ++i) col[i] = gamma(i, j);
    total += log_beta(col);
  }
  return total;
}

DirectBeta beta_direct(std::span<const double> gamma_col) {
  check_positive(gamma_col);
  double num = 1.0;
  double sum = 0.0;
  for (double v : gamma_col) {
    num *= std::tgamma(v);
    sum += v;
  }
  DirectBeta out;
  out.value = num / std::tgamma(sum);
  out.finite = std::isfinite(out.value);
  return out;
}

std::vector<double> empirical_distribution(std::span<const double> gamma_col) {
  check_positive(gamma_col);
  double sum = 0.0;
  for (double v : gamma_col) sum += v;
  std::vector<double> p(gamma_col.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = gamma_col[i] / sum;
  return p;
}

double entropy(std::span<const double> p) {
  double e = 0.0;
  for (double v : p) {
    if (v > 0.0) e -= v * std::log(v);
  }
  return e;
}

StirlingBracket log_beta_product_stirling(const Matrix& gamma) {
  if (gamma.empty()) throw Error(ErrorCode::kInvalidArgument, "empty gamma matrix");
  const int n = gamma.rows();
  for (double v : gamma.data()) {
    if (!(v >= 1.0) || v != std::floor(v))
      throw Error(ErrorCode::kInvalidArgument,
                  "stirling bracket requires integer entries >= 1");
  }

  // Per column: sum_i lgamma(g_ij) - lgamma(g_j)
  //   = -g_j * E(phat_j) - (n-1)/2 * ln(g_j) - 1/2 * sum_i ln(phat_j(i)) + d_j
  // with d_j in [n/2*ln(2pi) - 1, n - 1/2*ln(2pi)] from the Stirling bounds.
  const double d_low = n * kHalfLog2Pi - 1.0;
  const double d_high = n - kHalfLog2Pi;

  StirlingBracket out;
  std::vector<double> col(n);
  for (int j = 0; j < gamma.cols(); ++j) {
    double colsum = 0.0;
    for (int i = 0; i < n; ++i) {
      col[i] = gamma(i, j);
      colsum += col[i];
    }
    double ent = 0.0;
    double sum_log_phat = 0.0;
    for (int i = 0; i < n; ++i) {
      double phat = col[i] / colsum;
      ent -= phat * std::log(phat);
      sum_log_phat += std::log(phat);
    }
    double form = -colsum * ent - 0.5 * (n - 1) * std::log(colsum) - 0.5 * sum_log_phat;
    out.approx += form + d_low;
    out.lower += form + d_low;
    out.upper += form + d_high;
  }
  return out;
}

}  // namespace ebbr
