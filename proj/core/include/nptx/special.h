#pragma once

namespace nptx {

// Standard normal CDF, accurate in both tails (erfc based).
double norm_cdf(double z);

// Standard normal density.
double norm_pdf(double z);

// Inverse standard normal CDF (Wichura's PPND16), |error| < 1e-15 for
// p in (0,1). Throws ConfigError outside (0,1).
double norm_quantile(double p);

// KL divergence between Bernoulli(p) and Bernoulli(q), nats.
double bernoulli_kl(double p, double q);

}  // namespace nptx
