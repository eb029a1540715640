#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace heatlab {

// Fixed-order pairwise reduction.  The result depends only on the order of
// the input array, never on how the work that produced it was scheduled.
double pairwise_sum(std::span<const double> xs);

// Inverse standard normal CDF (Acklam's rational approximation, |err| < 1.2e-9).
double inverse_normal_cdf(double p);

// Two-sided confidence level -> z multiplier.
double z_for_confidence(double level);

struct MCEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t n_samples = 0;
  double level = 0.9973;  // z ~ 3
  double half_width() const { return z_for_confidence(level) * std_err; }
};

MCEstimate summarize(std::span<const double> samples, double level = 0.9973);

// Runs fn(begin, end) over a partition of [0, n).  Workers <= 1 runs inline.
// Callers write results by index into pre-sized storage, so output is
// identical for every worker count.
void parallel_for_chunks(std::size_t n, int workers,
                         const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace heatlab
