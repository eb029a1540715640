#include "heatlab/paths.hpp"

#include "heatlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heatlab {

Point PathRecord::point(std::size_t j) const {
  Point p;
  p.x.assign(points.begin() + j * ambient, points.begin() + (j + 1) * ambient);
  return p;
}

Frame PathRecord::frame(std::size_t j) const {
  Frame f;
  f.base = point(j);
  f.vecs.resize(n);
  const double* row = frames.data() + j * static_cast<std::size_t>(n) * ambient;
  for (int k = 0; k < n; ++k)
    f.vecs[k].assign(row + static_cast<std::size_t>(k) * ambient,
                     row + static_cast<std::size_t>(k + 1) * ambient);
  return f;
}

std::span<const double> PathRecord::increment(std::size_t j) const {
  return {increments.data() + j * n, static_cast<std::size_t>(n)};
}

PathRecord simulate_path(const ModelManifold& m, const Point& start, double T, double dt,
                         const std::optional<GeodesicBall>& ball, std::uint64_t seed,
                         std::uint64_t stream) {
  validate_point(m, start);
  if (!(T > 0.0) || !(dt > 0.0))
    throw std::invalid_argument("simulate_path: T and dt must be positive");
  if (ball) validate_ball(m, *ball);

  const std::size_t steps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(T / dt - 1e-9)));

  PathRecord rec;
  rec.step = T / static_cast<double>(steps);
  rec.seed = seed;
  rec.stream = stream;
  rec.n = m.n;
  rec.ambient = m.ambient_dim();
  const int amb = rec.ambient, n = m.n;
  rec.points.reserve((steps + 1) * amb);
  rec.increments.reserve(steps * n);
  rec.frames.reserve((steps + 1) * static_cast<std::size_t>(n) * amb);

  auto push_state = [&](const Point& p, const Frame& f) {
    rec.points.insert(rec.points.end(), p.x.begin(), p.x.end());
    for (const Vec& v : f.vecs) rec.frames.insert(rec.frames.end(), v.begin(), v.end());
  };

  Point X = start;
  Frame F = initial_frame(m, X);
  push_state(X, F);
  if (ball && distance(m, ball->center, X) >= ball->radius) {
    rec.exit_index = 0;
    return rec;
  }

  NormalStream rng(seed, stream);
  const double sdt = std::sqrt(rec.step);
  Vec v(amb);
  for (std::size_t j = 0; j < steps; ++j) {
    std::fill(v.begin(), v.end(), 0.0);
    for (int k = 0; k < n; ++k) {
      const double xi = rng.normal();
      rec.increments.push_back(xi);
      const Vec& fk = F.vecs[k];
      for (int d = 0; d < amb; ++d) v[d] += sdt * xi * fk[d];
    }
    F = transport_frame(m, X, v, F);
    X = F.base;
    push_state(X, F);
    if (ball && distance(m, ball->center, X) >= ball->radius) {
      rec.exit_index = j + 1;
      break;
    }
  }
  return rec;
}

ExitTimeStats exit_time_estimate(const ModelManifold& m, const Point& start,
                                 const GeodesicBall& ball, double dt, std::size_t n_paths,
                                 std::uint64_t seed, const WalkOptions& opts) {
  validate_point(m, start);
  validate_ball(m, ball);
  if (!(dt > 0.0)) throw std::invalid_argument("exit_time_estimate: dt must be positive");
  if (n_paths == 0) throw std::invalid_argument("exit_time_estimate: need at least one path");
  const double r0 = distance(m, ball.center, start);
  if (r0 >= ball.radius)
    throw std::invalid_argument("exit_time_estimate: start must be inside the ball");

  const double delta = ball.radius;
  const std::size_t cap_steps =
      static_cast<std::size_t>(std::ceil(20.0 * delta * delta / dt));

  std::vector<double> naive(n_paths), corrected(n_paths);
  std::vector<unsigned char> capped(n_paths, 0);

  parallel_for_chunks(n_paths, opts.workers, [&](std::size_t lo, std::size_t hi) {
    const int amb = m.ambient_dim(), n = m.n;
    Vec v(amb);
    const double sdt = std::sqrt(dt);
    for (std::size_t i = lo; i < hi; ++i) {
      NormalStream rng(seed, 2 * i);
      NormalStream bridge(seed, 2 * i + 1);
      Point X = start;
      Frame F = initial_frame(m, X);
      double gap = delta - r0;
      double tau_corr = -1.0, tau_naive = -1.0;
      for (std::size_t j = 0; j < cap_steps; ++j) {
        std::fill(v.begin(), v.end(), 0.0);
        for (int k = 0; k < n; ++k) {
          const double xi = rng.normal();
          const Vec& fk = F.vecs[k];
          for (int d = 0; d < amb; ++d) v[d] += sdt * xi * fk[d];
        }
        F = transport_frame(m, X, v, F);
        X = F.base;
        const double gap_next = delta - distance(m, ball.center, X);
        if (opts.bridge_correction && tau_corr < 0.0) {
          const double p = gap_next <= 0.0 ? 1.0 : std::exp(-2.0 * gap * gap_next / dt);
          if (bridge.uniform() < p) tau_corr = (j + 0.5) * dt;
        }
        if (gap_next <= 0.0) {
          tau_naive = (j + 1) * dt;
          break;
        }
        gap = gap_next;
      }
      if (tau_naive < 0.0) {
        tau_naive = cap_steps * dt;
        capped[i] = 1;
        if (tau_corr < 0.0) tau_corr = tau_naive;
      }
      naive[i] = tau_naive;
      corrected[i] = opts.bridge_correction ? tau_corr : tau_naive;
    }
  });

  ExitTimeStats out;
  out.naive = summarize(naive, opts.confidence);
  out.corrected = summarize(corrected, opts.confidence);
  for (unsigned char c : capped) out.n_capped += c;
  return out;
}

MCEstimate feynman_kac(const ModelManifold& m, const std::function<double(const Point&)>& f,
                       const Point& start, double T, double dt, std::size_t n_paths,
                       std::uint64_t seed, const std::optional<GeodesicBall>& ball,
                       const WalkOptions& opts) {
  if (!f) throw std::invalid_argument("feynman_kac: payoff must be callable");
  if (n_paths == 0) throw std::invalid_argument("feynman_kac: need at least one path");
  std::vector<double> payoff(n_paths);
  parallel_for_chunks(n_paths, opts.workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const PathRecord rec = simulate_path(m, start, T, dt, ball, seed, i);
      const std::size_t j = rec.exit_index ? *rec.exit_index : rec.last_index();
      payoff[i] = f(rec.point(j));
    }
  });
  return summarize(payoff, opts.confidence);
}

}  // namespace heatlab
