#include "bayspn/leaf_models.hpp"

#include <cmath>
#include <limits>

namespace bayspn {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
}  // namespace

void ColumnSpec::validate() const {
  if (kind == Kind::Categorical && arity < 2)
    throw ConfigError("categorical column needs arity >= 2");
  if (!(a0 > 0) || !(b0 > 0) || !(lambda0 > 0) || !(gamma > 0))
    throw ConfigError("column prior hyperparameters must be positive");
  if (!(scale > 0)) throw ConfigError("column scale must be positive");
}

void SuffStats::merge(const SuffStats& o) {
  n += o.n;
  sum += o.sum;
  sum_sq += o.sum_sq;
  if (counts.size() < o.counts.size()) counts.resize(o.counts.size(), 0.0);
  for (size_t i = 0; i < o.counts.size(); ++i) counts[i] += o.counts[i];
}

void SuffStats::clear() {
  n = sum = sum_sq = 0.0;
  std::fill(counts.begin(), counts.end(), 0.0);
}

void accumulate(const ColumnSpec& col, SuffStats& stats, double x) {
  switch (col.kind) {
    case ColumnSpec::Kind::Bernoulli:
      stats.n += 1.0;
      stats.sum += x;
      break;
    case ColumnSpec::Kind::Gaussian: {
      const double z = (x - col.shift) / col.scale;
      stats.n += 1.0;
      stats.sum += z;
      stats.sum_sq += z * z;
      break;
    }
    case ColumnSpec::Kind::Categorical: {
      if (stats.counts.empty()) stats.counts.assign(col.arity, 0.0);
      const int s = static_cast<int>(x);
      if (s < 0 || s >= col.arity)
        throw DataError("categorical value out of range while accumulating");
      stats.n += 1.0;
      stats.counts[s] += 1.0;
      break;
    }
  }
}

double leaf_log_density(const ColumnSpec& col, const double* theta, double x) {
  switch (col.kind) {
    case ColumnSpec::Kind::Bernoulli: {
      const double p = theta[0];
      if (x != 0.0 && x != 1.0)
        throw DataError("Bernoulli leaf evaluated on a non-binary value");
      const double q = x > 0.5 ? p : 1.0 - p;
      return q > 0.0 ? std::log(q) : kNegInf;
    }
    case ColumnSpec::Kind::Gaussian: {
      const double mean = theta[0], var = theta[1];
      const double z = (x - col.shift) / col.scale;
      const double r = z - mean;
      return -0.5 * (kLog2Pi + std::log(var)) - 0.5 * r * r / var -
             std::log(col.scale);
    }
    case ColumnSpec::Kind::Categorical: {
      const int s = static_cast<int>(x);
      if (s < 0 || s >= col.arity || x != std::floor(x))
        throw DataError("categorical leaf evaluated on an out-of-range value");
      const double p = theta[s];
      return p > 0.0 ? std::log(p) : kNegInf;
    }
  }
  return kNegInf;
}

double stats_log_likelihood(const ColumnSpec& col, const SuffStats& stats,
                            const double* theta) {
  if (stats.n == 0.0) return 0.0;
  switch (col.kind) {
    case ColumnSpec::Kind::Bernoulli: {
      const double p = theta[0];
      const double s = stats.sum, f = stats.n - stats.sum;
      double out = 0.0;
      if (s > 0.0) out += p > 0.0 ? s * std::log(p) : kNegInf;
      if (f > 0.0) out += p < 1.0 ? f * std::log(1.0 - p) : kNegInf;
      return out;
    }
    case ColumnSpec::Kind::Gaussian: {
      const double mean = theta[0], var = theta[1];
      const double quad =
          stats.sum_sq - 2.0 * mean * stats.sum + stats.n * mean * mean;
      return -0.5 * stats.n * (kLog2Pi + std::log(var)) - 0.5 * quad / var -
             stats.n * std::log(col.scale);
    }
    case ColumnSpec::Kind::Categorical: {
      double out = 0.0;
      for (size_t s = 0; s < stats.counts.size(); ++s) {
        if (stats.counts[s] == 0.0) continue;
        out += theta[s] > 0.0 ? stats.counts[s] * std::log(theta[s]) : kNegInf;
      }
      return out;
    }
  }
  return kNegInf;
}

BetaPosterior beta_posterior(const ColumnSpec& col, const SuffStats& stats) {
  return {col.a0 + stats.sum, col.b0 + stats.n - stats.sum};
}

NormalGammaPosterior normal_gamma_posterior(const ColumnSpec& col,
                                            const SuffStats& stats) {
  const double n = stats.n;
  if (n == 0.0) return {col.mu0, col.lambda0, col.a0, col.b0};
  const double mean = stats.sum / n;
  const double ss = stats.sum_sq - n * mean * mean;
  const double lambda = col.lambda0 + n;
  const double mu = (col.lambda0 * col.mu0 + stats.sum) / lambda;
  const double a = col.a0 + 0.5 * n;
  const double dm = mean - col.mu0;
  const double b =
      col.b0 + 0.5 * std::max(ss, 0.0) + 0.5 * col.lambda0 * n * dm * dm / lambda;
  return {mu, lambda, a, b};
}

void prior_sample(const ColumnSpec& col, double* theta, Rng& rng) {
  posterior_sample(col, SuffStats{}, theta, rng);
}

void posterior_sample(const ColumnSpec& col, const SuffStats& stats,
                      double* theta, Rng& rng) {
  switch (col.kind) {
    case ColumnSpec::Kind::Bernoulli: {
      const BetaPosterior post = beta_posterior(col, stats);
      theta[0] = beta_draw(post.a, post.b, rng);
      break;
    }
    case ColumnSpec::Kind::Gaussian: {
      const NormalGammaPosterior post = normal_gamma_posterior(col, stats);
      const double tau = gamma_draw(post.a, rng) / post.b;
      const double var = 1.0 / tau;
      theta[0] = normal_draw(post.mu, std::sqrt(var / post.lambda), rng);
      theta[1] = var;
      break;
    }
    case ColumnSpec::Kind::Categorical: {
      std::vector<double> alpha(col.arity, col.gamma);
      for (size_t s = 0; s < stats.counts.size(); ++s)
        alpha[s] += stats.counts[s];
      dirichlet_draw(alpha, {theta, static_cast<size_t>(col.arity)}, rng);
      break;
    }
  }
}

ThetaTable::ThetaTable(int num_leaves, const std::vector<ColumnSpec>& columns)
    : num_leaves_(num_leaves) {
  offset_.resize(columns.size());
  int off = 0;
  for (size_t d = 0; d < columns.size(); ++d) {
    offset_[d] = off;
    off += columns[d].theta_width();
  }
  stride_ = off;
  values_.assign(static_cast<size_t>(num_leaves) * stride_, 0.0);
}

}  // namespace bayspn
