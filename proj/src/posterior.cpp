// Apache License, Version 2.0, refer to LICENSE.txt

#include "ebbr/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "ebbr/betaprod.hpp"

namespace ebbr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Thread-safe lgamma for positive arguments.
double lgamma_pos(double x) {
#if defined(__GLIBC__) || defined(__APPLE__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

// Streaming log-sum-exp with a running max shift; insertion order fixed by
// the caller, so results are reproducible.
class LogSumExp {
 public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max_) {
      sum_ += std::exp(x - max_);
    } else {
      sum_ = (max_ == kNegInf) ? 1.0 : sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    }
  }
  double value() const { return (max_ == kNegInf) ? kNegInf : max_ + std::log(sum_); }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

void validate_prior_and_pi(const Matrix& alpha, std::span<const double> pi) {
  if (alpha.rows() <= 0 || alpha.cols() <= 0)
    throw Error(ErrorCode::kInvalidArgument, "empty Dirichlet prior");
  for (double a : alpha.data()) {
    if (!(a > 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha entries must be positive");
  }
  if (static_cast<int>(pi.size()) != alpha.rows())
    throw Error(ErrorCode::kDimensionMismatch, "pi length does not match state count");
  double s = 0.0;
  for (double p : pi) {
    if (!(p >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "pi entries must be non-negative");
    s += p;
  }
  if (std::abs(s - 1.0) > 1e-12) throw Error(ErrorCode::kInvalidArgument, "pi must sum to 1");
}

void normalize_rows(Matrix& m) {
  for (int i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += m(i, j);
    if (s > 0.0 && std::isfinite(s))
      for (int j = 0; j < m.cols(); ++j) m(i, j) /= s;
  }
}

// log B(gamma + delta) - log B(gamma) for small non-negative integer shifts,
// via the Gamma recurrence; gamma given as (row values, row sum).
double log_beta_shift(std::span<const double> row, double row_sum,
                      std::span<const std::uint32_t> delta) {
  double out = 0.0;
  std::uint32_t total = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    for (std::uint32_t t = 0; t < delta[j]; ++t) out += std::log(row[j] + t);
    total += delta[j];
  }
  for (std::uint32_t t = 0; t < total; ++t) out -= std::log(row_sum + t);
  return out;
}

double beta_direct_shifted(std::span<const double> row, std::span<const std::uint32_t> delta,
                           std::vector<double>& scratch) {
  scratch.assign(row.begin(), row.end());
  for (std::size_t j = 0; j < row.size(); ++j) scratch[j] += delta[j];
  return beta_direct(scratch).value;
}

}  // namespace

OpponentStrategy DirichletPrior::prior_mean() const {
  OpponentStrategy mean;
  mean.q = Matrix(alpha.rows(), alpha.cols());
  for (int i = 0; i < alpha.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < alpha.cols(); ++j) s += alpha(i, j);
    for (int j = 0; j < alpha.cols(); ++j) mean.q(i, j) = alpha(i, j) / s;
  }
  return mean;
}

Composition::Composition(std::uint32_t total, int parts) : total_(total) {
  if (parts < 1) throw Error(ErrorCode::kInvalidArgument, "composition needs at least one part");
  values_.assign(parts, 0);
  values_.back() = total;
}

bool Composition::advance() {
  const int n = static_cast<int>(values_.size());
  // Move one unit leftward: find the rightmost position before the last that
  // can absorb mass from the suffix.
  std::uint32_t suffix = values_[n - 1];
  for (int i = n - 2; i >= 0; --i) {
    if (suffix > 0) {
      ++values_[i];
      for (int k = i + 1; k < n - 1; ++k) values_[k] = 0;
      values_[n - 1] = suffix - 1;
      return true;
    }
    suffix += values_[i];
  }
  return false;
}

std::uint64_t composition_count(std::uint32_t total, int parts) {
  if (parts < 1) throw Error(ErrorCode::kInvalidArgument, "composition needs at least one part");
  // C(total + parts - 1, parts - 1) with 128-bit intermediates.
  unsigned __int128 acc = 1;
  const std::uint64_t k = static_cast<std::uint64_t>(parts) - 1;
  for (std::uint64_t t = 1; t <= k; ++t) {
    acc = acc * (total + t);
    acc /= t;
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw Error(ErrorCode::kCompositionOverflow,
                  "composition count exceeds 64-bit range for total " + std::to_string(total) +
                      ", parts " + std::to_string(parts));
  }
  return static_cast<std::uint64_t>(acc);
}

std::vector<std::vector<std::uint32_t>> enumerate_compositions(std::uint32_t total, int parts) {
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(composition_count(total, parts));
  Composition c(total, parts);
  do {
    out.emplace_back(c.values().begin(), c.values().end());
  } while (c.advance());
  return out;
}

OpponentStrategy posterior_mean_single_obs(const DirichletPrior& prior,
                                           std::span<const double> pi, int observed_action,
                                           const PosteriorOptions& opts) {
  const Matrix& alpha = prior.alpha;
  validate_prior_and_pi(alpha, pi);
  const int n = alpha.rows();
  const int m = alpha.cols();
  if (observed_action < 0 || observed_action >= m)
    throw Error(ErrorCode::kInvalidArgument, "observed action out of range");

  // Numerator for cell (i*, j'): sum over the hidden generating state c of
  //   pi_c * prod_i B(alpha_i + e[c, obs] + e[i*, j'])
  // normalized within each row.
  std::vector<double> row_sum(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) row_sum[i] += alpha(i, j);

  OpponentStrategy out;
  out.q = Matrix(n, m);
  std::vector<std::uint32_t> d_self(m, 0), d_other(m, 0);
  std::vector<double> scratch;

  if (opts.mode == BetaMode::kLog) {
    std::vector<double> lpi(n);
    for (int i = 0; i < n; ++i) lpi[i] = pi[i] > 0.0 ? std::log(pi[i]) : kNegInf;
    // Base product of row betas is common to every term and cancels; only
    // the shift ratios matter.
    Matrix lognum(n, m, kNegInf);
    for (int istar = 0; istar < n; ++istar) {
      for (int jprime = 0; jprime < m; ++jprime) {
        LogSumExp acc;
        for (int c = 0; c < n; ++c) {
          double t = lpi[c];
          if (c == istar) {
            std::fill(d_self.begin(), d_self.end(), 0u);
            d_self[observed_action] += 1;
            d_self[jprime] += 1;
            t += log_beta_shift(alpha.row(istar), row_sum[istar], d_self);
          } else {
            std::fill(d_self.begin(), d_self.end(), 0u);
            d_self[jprime] = 1;
            std::fill(d_other.begin(), d_other.end(), 0u);
            d_other[observed_action] = 1;
            t += log_beta_shift(alpha.row(istar), row_sum[istar], d_self);
            t += log_beta_shift(alpha.row(c), row_sum[c], d_other);
          }
          acc.add(t);
        }
        lognum(istar, jprime) = acc.value();
      }
    }
    for (int i = 0; i < n; ++i) {
      LogSumExp zrow;
      for (int j = 0; j < m; ++j) zrow.add(lognum(i, j));
      const double logz = zrow.value();
      for (int j = 0; j < m; ++j) out.q(i, j) = std::exp(lognum(i, j) - logz);
    }
    normalize_rows(out.q);
  } else {
    // Instability-reproduction path: plain-double beta products, linear sums.
    std::vector<double> base(n);
    for (int i = 0; i < n; ++i) base[i] = beta_direct(alpha.row(i)).value;
    Matrix num(n, m, 0.0);
    for (int istar = 0; istar < n; ++istar) {
      for (int jprime = 0; jprime < m; ++jprime) {
        double cell = 0.0;
        for (int c = 0; c < n; ++c) {
          double term = pi[c];
          for (int i = 0; i < n; ++i) {
            if (i == c || i == istar) {
              std::fill(d_self.begin(), d_self.end(), 0u);
              if (i == c) d_self[observed_action] += 1;
              if (i == istar) d_self[jprime] += 1;
              term *= beta_direct_shifted(alpha.row(i), d_self, scratch);
            } else {
              term *= base[i];
            }
          }
          cell += term;
        }
        num(istar, jprime) = cell;
      }
    }
    for (int i = 0; i < n; ++i) {
      double z = 0.0;
      for (int j = 0; j < m; ++j) z += num(i, j);
      for (int j = 0; j < m; ++j) out.q(i, j) = num(i, j) / z;
    }
  }
  return out;
}

OpponentStrategy posterior_mean_multi_obs(const DirichletPrior& prior, std::span<const double> pi,
                                          const ObservationCounts& obs,
                                          const PosteriorOptions& opts) {
  const Matrix& alpha = prior.alpha;
  validate_prior_and_pi(alpha, pi);
  const int n = alpha.rows();
  const int m = alpha.cols();
  if (static_cast<int>(obs.theta.size()) != m)
    throw Error(ErrorCode::kDimensionMismatch, "theta length does not match action count");

  const std::uint64_t total_obs = obs.total();
  if (total_obs > opts.max_horizon)
    throw Error(ErrorCode::kHorizonExceeded,
                "total observations " + std::to_string(total_obs) + " exceed horizon cap " +
                    std::to_string(opts.max_horizon));

  // Term count = prod_j C(theta_j + n - 1, n - 1); overflow is an error,
  // never a truncation.
  {
    unsigned __int128 terms = 1;
    for (int j = 0; j < m; ++j) {
      terms *= composition_count(obs.theta[j], n);
      if (terms > std::numeric_limits<std::uint64_t>::max())
        throw Error(ErrorCode::kCompositionOverflow, "composition term count exceeds 64-bit range");
    }
  }

  const std::uint32_t max_theta = *std::max_element(obs.theta.begin(), obs.theta.end());

  // Lookup tables over the integer shift ranges.
  //   lg_cell[i][j][k]  = lgamma(alpha(i,j) + k)        k in [0, theta_j]
  //   lg_cellv[i][j][k] = log(alpha(i,j) + k)
  //   lg_rows[i][r]     = lgamma(A_i + r), lo_rows log   r in [0, total]
  //   lfact[v]          = lgamma(v + 1)
  std::vector<double> row_sum(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) row_sum[i] += alpha(i, j);

  auto cell_index = [m](int i, int j) { return static_cast<std::size_t>(i) * m + j; };
  std::vector<std::vector<double>> lg_cell(static_cast<std::size_t>(n) * m);
  std::vector<std::vector<double>> lg_cellv(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      auto& lg = lg_cell[cell_index(i, j)];
      auto& lv = lg_cellv[cell_index(i, j)];
      lg.resize(obs.theta[j] + 1);
      lv.resize(obs.theta[j] + 1);
      for (std::uint32_t k = 0; k <= obs.theta[j]; ++k) {
        lg[k] = lgamma_pos(alpha(i, j) + k);
        lv[k] = std::log(alpha(i, j) + k);
      }
    }
  }
  std::vector<std::vector<double>> lg_rows(n), lo_rows(n);
  for (int i = 0; i < n; ++i) {
    lg_rows[i].resize(total_obs + 1);
    lo_rows[i].resize(total_obs + 1);
    for (std::uint64_t r = 0; r <= total_obs; ++r) {
      lg_rows[i][r] = lgamma_pos(row_sum[i] + r);
      lo_rows[i][r] = std::log(row_sum[i] + r);
    }
  }
  std::vector<double> lfact(max_theta + 2);
  for (std::uint32_t v = 0; v < lfact.size(); ++v) lfact[v] = lgamma_pos(v + 1.0);

  std::vector<double> lpi(n);
  for (int i = 0; i < n; ++i) lpi[i] = pi[i] > 0.0 ? std::log(pi[i]) : kNegInf;

  // Odometer over one composition stream per action.
  std::vector<Composition> comps;
  comps.reserve(m);
  for (int j = 0; j < m; ++j) comps.emplace_back(obs.theta[j], n);

  OpponentStrategy out;
  out.q = Matrix(n, m);
  std::vector<std::uint32_t> rho_row_total(n);
  std::vector<double> gamma_row(m);

  const bool log_mode = opts.mode == BetaMode::kLog;
  LogSumExp log_z;
  std::vector<LogSumExp> log_num(static_cast<std::size_t>(n) * m);
  double direct_z = 0.0;
  std::vector<double> direct_num(static_cast<std::size_t>(n) * m, 0.0);

  bool more = true;
  while (more) {
    // Weight of this split: orderings times state probabilities, always
    // accumulated in logs (it is a probability <= 1, safe to exponentiate).
    double logw = 0.0;
    std::fill(rho_row_total.begin(), rho_row_total.end(), 0u);
    for (int j = 0; j < m; ++j) {
      auto rho_j = comps[j].values();
      logw += lfact[obs.theta[j]];
      for (int i = 0; i < n; ++i) {
        logw -= lfact[rho_j[i]];
        rho_row_total[i] += rho_j[i];
      }
    }
    for (int i = 0; i < n; ++i) {
      if (rho_row_total[i] > 0) logw += static_cast<double>(rho_row_total[i]) * lpi[i];
    }

    if (log_mode) {
      double log_b = 0.0;
      for (int i = 0; i < n; ++i) {
        double row_lg = 0.0;
        for (int j = 0; j < m; ++j) row_lg += lg_cell[cell_index(i, j)][comps[j].values()[i]];
        log_b += row_lg - lg_rows[i][rho_row_total[i]];
      }
      const double t = logw + log_b;
      log_z.add(t);
      // Mean of the mixture component is gamma/rowsum; the +1 posterior
      // shift reduces to this ratio by the Gamma recurrence.
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
          log_num[cell_index(i, j)].add(t + lg_cellv[cell_index(i, j)][comps[j].values()[i]] -
                                        lo_rows[i][rho_row_total[i]]);
        }
      }
    } else {
      double term = std::exp(logw);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) gamma_row[j] = alpha(i, j) + comps[j].values()[i];
        term *= beta_direct(gamma_row).value;
      }
      direct_z += term;
      for (int i = 0; i < n; ++i) {
        const double s = row_sum[i] + rho_row_total[i];
        for (int j = 0; j < m; ++j)
          direct_num[cell_index(i, j)] += term * (alpha(i, j) + comps[j].values()[i]) / s;
      }
    }

    // Advance the odometer (last action fastest).
    more = false;
    for (int j = m - 1; j >= 0; --j) {
      if (comps[j].advance()) {
        more = true;
        break;
      }
      comps[j] = Composition(obs.theta[j], n);
    }
  }

  if (log_mode) {
    const double lz = log_z.value();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) out.q(i, j) = std::exp(log_num[cell_index(i, j)].value() - lz);
    normalize_rows(out.q);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) out.q(i, j) = direct_num[cell_index(i, j)] / direct_z;
  }
  return out;
}

}  // namespace ebbr
