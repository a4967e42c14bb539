#pragma once

#include <string>
#include <vector>

#include "bayspn/rng.hpp"
#include "bayspn/util.hpp"

namespace bayspn {

// One likelihood family per data column, fixed for a run.
//  - Bernoulli with Beta(a0, b0) prior; theta slot: {p}
//  - Gaussian with Normal-Gamma(mu0, lambda0, a0, b0) prior on standardized
//    values; theta slot: {mean, variance}; shift/scale hold the train-split
//    standardization constants and the Jacobian is folded into the density
//    so reported likelihoods stay in raw-data units
//  - Categorical(arity) with symmetric Dirichlet(gamma) prior; theta slot:
//    {p_1..p_arity}
struct ColumnSpec {
  enum class Kind { Bernoulli, Gaussian, Categorical };
  Kind kind = Kind::Bernoulli;
  int arity = 2;  // categorical only
  double a0 = 1.0, b0 = 1.0;          // Beta / Normal-Gamma shape-rate
  double mu0 = 0.0, lambda0 = 1.0;    // Normal-Gamma location/precision scale
  double gamma = 1.0;                 // Dirichlet concentration
  double shift = 0.0, scale = 1.0;    // Gaussian standardization

  int theta_width() const {
    switch (kind) {
      case Kind::Bernoulli: return 1;
      case Kind::Gaussian: return 2;
      case Kind::Categorical: return arity;
    }
    return 1;
  }
  void validate() const;
};

// Additive sufficient statistics. Interpretation depends on the family:
// Bernoulli uses (n, sum=successes); Gaussian uses (n, sum, sum_sq) over
// standardized values; Categorical uses per-state counts.
struct SuffStats {
  double n = 0.0;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<double> counts;

  void merge(const SuffStats& o);
  void clear();
};

void accumulate(const ColumnSpec& col, SuffStats& stats, double x);

/// Exact log pmf/pdf of one observed value (raw units). -inf for zero mass.
double leaf_log_density(const ColumnSpec& col, const double* theta, double x);

/// Sum of log densities over all observations summarized in `stats`.
double stats_log_likelihood(const ColumnSpec& col, const SuffStats& stats,
                            const double* theta);

void prior_sample(const ColumnSpec& col, double* theta, Rng& rng);
void posterior_sample(const ColumnSpec& col, const SuffStats& stats,
                      double* theta, Rng& rng);

// Closed-form conjugate posterior hyperparameters (exposed so tests can pin
// them against quadrature oracles).
struct BetaPosterior {
  double a, b;
};
struct NormalGammaPosterior {
  double mu, lambda, a, b;
};
BetaPosterior beta_posterior(const ColumnSpec& col, const SuffStats& stats);
NormalGammaPosterior normal_gamma_posterior(const ColumnSpec& col,
                                            const SuffStats& stats);

// Flat per-(leaf, dimension) parameter storage; every leaf carries a slot for
// every dimension so scope changes never invalidate storage.
class ThetaTable {
 public:
  ThetaTable() = default;
  ThetaTable(int num_leaves, const std::vector<ColumnSpec>& columns);

  double* at(int leaf, int dim) {
    return values_.data() + static_cast<size_t>(leaf) * stride_ + offset_[dim];
  }
  const double* at(int leaf, int dim) const {
    return values_.data() + static_cast<size_t>(leaf) * stride_ + offset_[dim];
  }
  int num_leaves() const { return num_leaves_; }
  int stride() const { return stride_; }
  std::vector<double>& raw() { return values_; }
  const std::vector<double>& raw() const { return values_; }

 private:
  int num_leaves_ = 0;
  int stride_ = 0;
  std::vector<int> offset_;
  std::vector<double> values_;
};

}  // namespace bayspn
