#include "heatlab/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace heatlab {

double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n <= 16) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("inverse_normal_cdf: p outside (0,1)");
  // Acklam's coefficients.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double q, r, x;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= phigh) {
    q = p - 0.5;
    r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  return x;
}

double z_for_confidence(double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("z_for_confidence: level outside (0,1)");
  return inverse_normal_cdf(0.5 * (1.0 + level));
}

MCEstimate summarize(std::span<const double> samples, double level) {
  MCEstimate e;
  e.level = level;
  e.n_samples = samples.size();
  if (samples.empty()) return e;
  e.mean = pairwise_sum(samples) / static_cast<double>(samples.size());
  if (samples.size() < 2) return e;
  std::vector<double> sq(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double d = samples[i] - e.mean;
    sq[i] = d * d;
  }
  const double var = pairwise_sum(sq) / static_cast<double>(samples.size() - 1);
  e.std_err = std::sqrt(var / static_cast<double>(samples.size()));
  return e;
}

void parallel_for_chunks(std::size_t n, int workers,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (workers <= 1) {
    fn(0, n);
    return;
  }
  const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  const std::size_t chunk = (n + nw - 1) / nw;
  for (std::size_t w = 0; w < nw; ++w) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace heatlab
