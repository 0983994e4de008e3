#pragma once

#include <cmath>
#include <vector>

namespace dosefind::num {

inline double logit(double p) { return std::log(p / (1.0 - p)); }

// Stable for |s| up to ~700 either side.
inline double invlogit(double s) {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

// log(1 + exp(s)) without overflow.
inline double log1pexp(double s) {
  return s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
}

inline double log_invlogit(double s) { return -log1pexp(-s); }
inline double log1m_invlogit(double s) { return -log1pexp(s); }

double normal_cdf(double z);

// Inverse standard normal CDF (Wichura's AS 241, double precision).
double normal_quantile(double p);

// Nodes and weights for the rule  integral f(t) exp(-t^2) dt ~= sum w_i f(t_i).
struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
HermiteRule gauss_hermite(int n);

// Lower-triangular Cholesky factor of a row-major symmetric positive
// definite n x n matrix. Throws std::invalid_argument if not SPD.
std::vector<double> cholesky(const std::vector<double>& a, int n);

}  // namespace dosefind::num
