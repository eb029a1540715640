#pragma once

#include "heatlab/geometry.hpp"
#include "heatlab/stats.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace heatlab {

// One geodesic random walk X_{j+1} = exp_{X_j}(sqrt(step) sum_k xi_j[k] F_j[k])
// with the orthonormal frame parallel-transported along every step.  The
// stored increments are the raw standard normals xi_j; because the frame is
// transported, these coordinates double as the coordinates of the driving
// Brownian increments in the initial frame.
struct PathRecord {
  double step = 0.0;  // step actually used; divides the requested horizon
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  int n = 0;        // intrinsic dimension
  int ambient = 0;  // ambient dimension
  std::vector<double> points;             // (last_index()+1) x ambient, row-major
  std::vector<double> increments;         // last_index() x n
  std::vector<double> frames;             // (last_index()+1) x n x ambient
  std::optional<std::size_t> exit_index;  // first j with X_j outside the ball

  std::size_t last_index() const { return points.size() / ambient - 1; }
  double time_of(std::size_t j) const { return step * static_cast<double>(j); }
  Point point(std::size_t j) const;
  Frame frame(std::size_t j) const;
  std::span<const double> increment(std::size_t j) const;  // n entries
};

// Walks until ceil(T/dt) steps have been taken or the path leaves the ball,
// whichever is first.  A start on or outside the ball boundary yields
// exit_index = 0 with no steps.  Stream selects an independent replayable
// driver for the given seed.
PathRecord simulate_path(const ModelManifold& m, const Point& start, double T, double dt,
                         const std::optional<GeodesicBall>& ball, std::uint64_t seed,
                         std::uint64_t stream = 0);

struct WalkOptions {
  int workers = 1;
  bool bridge_correction = false;
  double confidence = 0.9973;
};

// Mean first-exit time from a geodesic ball.  The naive estimate detects the
// exit on the step grid, which is late by about 0.583 sqrt(step) on average.
// The corrected estimate additionally samples a Brownian-bridge crossing test
// on every step (crossing probability exp(-2 d0 d1 / step) for boundary gaps
// d0, d1) and places the exit at the midpoint of the offending step, so it is
// strictly below the naive estimate path by path.
struct ExitTimeStats {
  MCEstimate naive;
  MCEstimate corrected;      // equals naive when the correction is off
  std::size_t n_capped = 0;  // paths cut at the internal time cap
};

ExitTimeStats exit_time_estimate(const ModelManifold& m, const Point& start,
                                 const GeodesicBall& ball, double dt, std::size_t n_paths,
                                 std::uint64_t seed, const WalkOptions& opts = {});

// Monte Carlo E[f(X_{T ∧ tau})], tau the first exit from the optional ball.
// Path i uses stream i; the result is independent of the worker count.
MCEstimate feynman_kac(const ModelManifold& m, const std::function<double(const Point&)>& f,
                       const Point& start, double T, double dt, std::size_t n_paths,
                       std::uint64_t seed, const std::optional<GeodesicBall>& ball = std::nullopt,
                       const WalkOptions& opts = {});

}  // namespace heatlab
