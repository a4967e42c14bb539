#include "bayspn/rng.hpp"

#include <algorithm>
#include <cmath>

#include "bayspn/util.hpp"

namespace bayspn {

namespace {

// Marsaglia-Tsang squeeze for shape >= 1; boosting for shape < 1.
double gamma_ge1(double shape, Rng& rng) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal_draw(0.0, 1.0, rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v;
  }
}

}  // namespace

double gamma_draw(double shape, Rng& rng) {
  if (!(shape > 0.0)) throw NumericError("gamma_draw: shape must be positive");
  if (shape < 1.0) {
    // Gamma(a) = Gamma(a+1) * U^{1/a}
    const double g = gamma_ge1(shape + 1.0, rng);
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    return g * std::pow(u, 1.0 / shape);
  }
  return gamma_ge1(shape, rng);
}

double beta_draw(double a, double b, Rng& rng) {
  const double x = gamma_draw(a, rng);
  const double y = gamma_draw(b, rng);
  const double s = x + y;
  if (s <= 0.0) return 0.5;
  return x / s;
}

double normal_draw(double mean, double stddev, Rng& rng) {
  // Marsaglia polar method, one value per call (pair discarded for stream
  // simplicity; draws stay cheap at our volumes).
  for (;;) {
    const double u = 2.0 * rng.uniform() - 1.0;
    const double v = 2.0 * rng.uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0)
      return mean + stddev * u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

void dirichlet_draw(std::span<const double> alpha, std::span<double> out,
                    Rng& rng) {
  double total = 0.0;
  for (size_t k = 0; k < alpha.size(); ++k) {
    out[k] = gamma_draw(alpha[k], rng);
    total += out[k];
  }
  if (total <= 0.0) {
    const double u = 1.0 / static_cast<double>(alpha.size());
    for (auto& v : out) v = u;
    return;
  }
  for (auto& v : out) v /= total;
}

int categorical_from_weights(std::span<const double> weights, Rng& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0))
    throw NumericError("categorical draw: all weights are zero");
  double u = rng.uniform() * total;
  for (size_t k = 0; k + 1 < weights.size(); ++k) {
    u -= weights[k];
    if (u < 0.0) return static_cast<int>(k);
  }
  return static_cast<int>(weights.size()) - 1;
}

int categorical_from_logits(std::span<const double> logits, Rng& rng) {
  double m = -std::numeric_limits<double>::infinity();
  for (double l : logits) m = std::max(m, l);
  if (!std::isfinite(m))
    throw NumericError("categorical draw: all log probabilities are -inf");
  double total = 0.0;
  double u = rng.uniform();
  // two passes: normalizing constant, then inverse CDF
  for (double l : logits) total += std::exp(l - m);
  double acc = 0.0;
  for (size_t k = 0; k + 1 < logits.size(); ++k) {
    acc += std::exp(logits[k] - m);
    if (u * total < acc) return static_cast<int>(k);
  }
  return static_cast<int>(logits.size()) - 1;
}

void AliasTable::build(std::span<const double> weights) {
  const int n = static_cast<int>(weights.size());
  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw NumericError("alias table: zero total weight");

  std::vector<double> scaled(n);
  for (int i = 0; i < n; ++i) scaled[i] = weights[i] * n / total;
  std::vector<int> small, large;
  small.reserve(n);
  large.reserve(n);
  for (int i = 0; i < n; ++i)
    (scaled[i] < 1.0 ? small : large).push_back(i);

  while (!small.empty() && !large.empty()) {
    const int s = small.back();
    small.pop_back();
    const int l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (int i : large) prob_[i] = 1.0;
  for (int i : small) prob_[i] = 1.0;
}

int AliasTable::draw(Rng& rng) const {
  const int n = static_cast<int>(prob_.size());
  const double u = rng.uniform() * n;
  int i = static_cast<int>(u);
  if (i >= n) i = n - 1;
  return (u - i) < prob_[i] ? i : alias_[i];
}

}  // namespace bayspn
