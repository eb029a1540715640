#include "heatlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace heatlab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void check_dim(const ModelManifold& m, const Vec& x, const char* what) {
  if (static_cast<int>(x.size()) != m.ambient_dim())
    throw std::invalid_argument(std::string(what) + ": wrong ambient dimension");
}

}  // namespace

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec axpy(double a, const Vec& x, const Vec& y) {
  Vec r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = a * x[i] + y[i];
  return r;
}

Vec scaled(const Vec& x, double a) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i];
  return r;
}

double ModelManifold::curvature_scale() const { return std::sqrt(std::fabs(kappa)); }

double ModelManifold::injectivity_radius() const {
  if (kind == Kind::sphere) return kPi / std::sqrt(kappa);
  return std::numeric_limits<double>::infinity();
}

ModelManifold make_manifold(Kind kind, int n, double kappa) {
  if (n < 1) throw std::invalid_argument("make_manifold: dimension must be >= 1");
  switch (kind) {
    case Kind::euclidean:
      if (kappa != 0.0) throw std::invalid_argument("make_manifold: euclidean needs kappa = 0");
      break;
    case Kind::sphere:
      if (!(kappa > 0.0)) throw std::invalid_argument("make_manifold: sphere needs kappa > 0");
      if (n < 2) throw std::invalid_argument("make_manifold: sphere needs n >= 2");
      break;
    case Kind::hyperbolic:
      if (!(kappa < 0.0)) throw std::invalid_argument("make_manifold: hyperbolic needs kappa < 0");
      if (n < 2) throw std::invalid_argument("make_manifold: hyperbolic needs n >= 2");
      break;
  }
  return ModelManifold{kind, n, kappa};
}

Point base_point(const ModelManifold& m) {
  Point p;
  p.x.assign(m.ambient_dim(), 0.0);
  const double R = m.kind == Kind::euclidean ? 0.0 : 1.0 / m.curvature_scale();
  if (m.kind == Kind::sphere) p.x[m.n] = R;       // north pole
  if (m.kind == Kind::hyperbolic) p.x[0] = R;     // sheet vertex; x0 is the time coordinate
  return p;
}

double metric_dot(const ModelManifold& m, const Vec& a, const Vec& b) {
  if (m.kind == Kind::hyperbolic) {
    double s = -a[0] * b[0];
    for (std::size_t i = 1; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }
  return dot(a, b);
}

double metric_norm(const ModelManifold& m, const Vec& a) {
  const double q = metric_dot(m, a, a);
  return q > 0.0 ? std::sqrt(q) : 0.0;
}

void validate_point(const ModelManifold& m, const Point& p, double tol) {
  check_dim(m, p.x, "validate_point");
  if (m.kind == Kind::euclidean) return;
  const double want = 1.0 / m.kappa;
  const double got = metric_dot(m, p.x, p.x);
  if (std::fabs(got - want) > tol * std::max(1.0, std::fabs(want)))
    throw std::invalid_argument("validate_point: point off the model quadric");
  if (m.kind == Kind::hyperbolic && !(p.x[0] > 0.0))
    throw std::invalid_argument("validate_point: wrong hyperboloid sheet");
}

void validate_tangent(const ModelManifold& m, const Point& p, const Vec& v, double tol) {
  check_dim(m, v, "validate_tangent");
  if (m.kind == Kind::euclidean) return;
  const double scale = std::max(1.0, metric_norm(m, v)) / m.curvature_scale();
  if (std::fabs(metric_dot(m, p.x, v)) > tol * std::max(1.0, scale))
    throw std::invalid_argument("validate_tangent: vector not tangent at base point");
}

void validate_ball(const ModelManifold& m, const GeodesicBall& ball) {
  validate_point(m, ball.center);
  if (!(ball.radius > 0.0)) throw std::invalid_argument("validate_ball: radius must be positive");
  if (ball.radius >= m.injectivity_radius())
    throw std::invalid_argument("validate_ball: radius must stay below the injectivity radius");
}

Point project_point(const ModelManifold& m, Point p) {
  if (m.kind == Kind::euclidean) return p;
  if (m.kind == Kind::sphere) {
    const double R = 1.0 / m.curvature_scale();
    const double nrm = std::sqrt(dot(p.x, p.x));
    if (!(nrm > 0.0)) throw std::invalid_argument("project_point: zero vector");
    const double s = R / nrm;
    for (double& c : p.x) c *= s;
    return p;
  }
  // Hyperboloid: keep the spatial part, solve the constraint for x0.
  double s = 0.0;
  for (std::size_t i = 1; i < p.x.size(); ++i) s += p.x[i] * p.x[i];
  const double R = 1.0 / m.curvature_scale();
  p.x[0] = std::sqrt(R * R + s);
  return p;
}

Vec project_tangent(const ModelManifold& m, const Point& p, Vec v) {
  if (m.kind == Kind::euclidean) return v;
  // Subtract the component along p: v - kappa <v,p> p works for both models
  // since <p,p> = 1/kappa.
  const double c = m.kappa * metric_dot(m, v, p.x);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * p.x[i];
  return v;
}

Point exp_map(const ModelManifold& m, const Point& p, const Vec& v) {
  check_dim(m, v, "exp_map");
  validate_tangent(m, p, v, 1e-7);
  const double nrm = metric_norm(m, v);
  if (m.kind == Kind::euclidean) {
    Point q = p;
    for (std::size_t i = 0; i < q.x.size(); ++i) q.x[i] += v[i];
    return q;
  }
  if (nrm < 1e-300) return p;
  const double sk = m.curvature_scale();
  const double th = nrm * sk;
  Point q;
  q.x.resize(p.x.size());
  if (m.kind == Kind::sphere) {
    const double c = std::cos(th), s = std::sin(th) / sk;
    for (std::size_t i = 0; i < q.x.size(); ++i) q.x[i] = c * p.x[i] + s * (v[i] / nrm);
  } else {
    const double c = std::cosh(th), s = std::sinh(th) / sk;
    for (std::size_t i = 0; i < q.x.size(); ++i) q.x[i] = c * p.x[i] + s * (v[i] / nrm);
  }
  return project_point(m, std::move(q));
}

Vec parallel_transport(const ModelManifold& m, const Point& p, const Vec& v, const Vec& w) {
  check_dim(m, w, "parallel_transport");
  if (m.kind == Kind::euclidean) return w;
  const double nrm = metric_norm(m, v);
  if (nrm < 1e-300) return w;
  const double sk = m.curvature_scale();
  const double th = nrm * sk;
  Vec vh = scaled(v, 1.0 / nrm);
  const double a = metric_dot(m, w, vh);
  // w splits into a piece along the geodesic direction and a piece fixed by
  // the transport; only the former rotates in the (p, vh) plane.
  Vec out(w.size());
  if (m.kind == Kind::sphere) {
    const double c = std::cos(th), s = std::sin(th) * sk;
    for (std::size_t i = 0; i < w.size(); ++i)
      out[i] = (w[i] - a * vh[i]) + a * (c * vh[i] - s * p.x[i]);
  } else {
    const double c = std::cosh(th), s = std::sinh(th) * sk;
    for (std::size_t i = 0; i < w.size(); ++i)
      out[i] = (w[i] - a * vh[i]) + a * (c * vh[i] + s * p.x[i]);
  }
  return out;
}

double distance(const ModelManifold& m, const Point& p, const Point& q) {
  check_dim(m, p.x, "distance");
  check_dim(m, q.x, "distance");
  if (m.kind == Kind::euclidean) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.x.size(); ++i) {
      const double d = p.x[i] - q.x[i];
      s += d * d;
    }
    return std::sqrt(s);
  }
  const double sk = m.curvature_scale();
  if (m.kind == Kind::sphere) {
    const double c = std::clamp(metric_dot(m, p.x, q.x) * m.kappa, -1.0, 1.0);
    return std::acos(c) / sk;
  }
  const double c = std::max(1.0, -metric_dot(m, p.x, q.x) * (-m.kappa));
  return std::acosh(c) / sk;
}

Vec radial_direction(const ModelManifold& m, const Point& center, const Point& p) {
  const double r = distance(m, center, p);
  Vec out(p.x.size(), 0.0);
  if (r < 1e-12) return out;
  if (m.kind == Kind::euclidean) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (p.x[i] - center.x[i]) / r;
    return out;
  }
  const double sk = m.curvature_scale();
  const double th = r * sk;
  if (m.kind == Kind::sphere) {
    const double c = std::cos(th), s = std::sin(th) / sk;
    Vec dh(out.size());  // unit direction at the center toward p
    for (std::size_t i = 0; i < out.size(); ++i) dh[i] = (p.x[i] - c * center.x[i]) / s;
    const double ss = std::sin(th) * sk;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -ss * center.x[i] + c * dh[i];
  } else {
    const double c = std::cosh(th), s = std::sinh(th) / sk;
    Vec dh(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) dh[i] = (p.x[i] - c * center.x[i]) / s;
    const double ss = std::sinh(th) * sk;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ss * center.x[i] + c * dh[i];
  }
  return out;
}

Frame initial_frame(const ModelManifold& m, const Point& p) {
  Frame f;
  f.base = p;
  f.vecs.reserve(m.n);
  const int d = m.ambient_dim();
  for (int k = 0; k < d && static_cast<int>(f.vecs.size()) < m.n; ++k) {
    Vec e(d, 0.0);
    e[k] = 1.0;
    Vec v = project_tangent(m, p, std::move(e));
    for (const Vec& u : f.vecs) {
      const double c = metric_dot(m, v, u);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
    }
    const double nrm = metric_norm(m, v);
    if (nrm > 1e-8) f.vecs.push_back(scaled(v, 1.0 / nrm));
  }
  if (static_cast<int>(f.vecs.size()) != m.n)
    throw std::logic_error("initial_frame: failed to complete an orthonormal frame");
  return f;
}

Frame transport_frame(const ModelManifold& m, const Point& p, const Vec& step, const Frame& f) {
  Frame g;
  g.base = exp_map(m, p, step);
  g.vecs.reserve(f.vecs.size());
  for (const Vec& v : f.vecs) g.vecs.push_back(parallel_transport(m, p, step, v));
  reorthonormalize(m, g);
  return g;
}

void reorthonormalize(const ModelManifold& m, Frame& f) {
  for (std::size_t a = 0; a < f.vecs.size(); ++a) {
    Vec v = project_tangent(m, f.base, std::move(f.vecs[a]));
    for (std::size_t b = 0; b < a; ++b) {
      const double c = metric_dot(m, v, f.vecs[b]);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * f.vecs[b][i];
    }
    const double nrm = metric_norm(m, v);
    if (!(nrm > 1e-12)) throw std::logic_error("reorthonormalize: degenerate frame");
    f.vecs[a] = scaled(v, 1.0 / nrm);
  }
}

double ricci_lower_bound(const ModelManifold& m) { return std::max(0.0, -m.ricci_coeff()); }

double ricci_lower_bound(const ModelManifold& m, const GeodesicBall& ball) {
  validate_ball(m, ball);
  return ricci_lower_bound(m);
}

double radial_sine(const ModelManifold& m, double r) {
  const double sk = m.curvature_scale();
  switch (m.kind) {
    case Kind::euclidean: return r;
    case Kind::sphere: return std::sin(sk * r) / sk;
    case Kind::hyperbolic: return std::sinh(sk * r) / sk;
  }
  return r;
}

double radial_cot(const ModelManifold& m, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("radial_cot: r must be positive");
  const double sk = m.curvature_scale();
  const double x = sk * r;
  // Series for small arguments keeps 1/r - kappa r/3 accurate near zero.
  if (x < 1e-6 || m.kind == Kind::euclidean) return 1.0 / r - m.kappa * r / 3.0;
  if (m.kind == Kind::sphere) return sk * std::cos(x) / std::sin(x);
  return sk * std::cosh(x) / std::sinh(x);
}

CutoffValues cutoff_radial(const ModelManifold& m, const GeodesicBall& ball, double r) {
  validate_ball(m, ball);
  if (r < 0.0 || r > ball.radius)
    throw std::domain_error("cutoff_radial: radius outside the ball");
  const double h = kPi / (2.0 * ball.radius);
  CutoffValues cv;
  cv.phi = std::cos(h * r);
  cv.dphi_dr = -h * std::sin(h * r);
  const double phi_rr = -h * h * cv.phi;
  if (r < 1e-12) {
    cv.laplacian = m.n * phi_rr;  // radial limit at the center
  } else {
    cv.laplacian = phi_rr + (m.n - 1) * radial_cot(m, r) * cv.dphi_dr;
  }
  return cv;
}

CutoffValues cutoff_eval(const ModelManifold& m, const GeodesicBall& ball, const Point& p) {
  return cutoff_radial(m, ball, distance(m, ball.center, p));
}

namespace {

double cutoff_combo(const ModelManifold& m, const GeodesicBall& ball, double coef, double r) {
  const CutoffValues cv = cutoff_radial(m, ball, r);
  return coef * cv.dphi_dr * cv.dphi_dr - cv.phi * cv.laplacian;
}

// Grid supremum with two local refinement passes around the best node.
double sup_combo(const ModelManifold& m, const GeodesicBall& ball, double coef, int n_nodes) {
  double best = -1e300, best_r = 0.0;
  const double d = ball.radius;
  for (int i = 0; i < n_nodes; ++i) {
    const double r = d * i / (n_nodes - 1);
    const double v = cutoff_combo(m, ball, coef, r);
    if (v > best) { best = v; best_r = r; }
  }
  double halfwin = d / (n_nodes - 1);
  for (int pass = 0; pass < 2; ++pass) {
    const double lo = std::max(0.0, best_r - halfwin);
    const double hi = std::min(d, best_r + halfwin);
    for (int i = 0; i <= 200; ++i) {
      const double r = lo + (hi - lo) * i / 200.0;
      const double v = cutoff_combo(m, ball, coef, r);
      if (v > best) { best = v; best_r = r; }
    }
    halfwin /= 100.0;
  }
  return best;
}

}  // namespace

CutoffConstants cutoff_constants(const ModelManifold& m, const GeodesicBall& ball,
                                 double alpha, double beta, int n_nodes) {
  validate_ball(m, ball);
  if (!(alpha > 0.0)) throw std::invalid_argument("cutoff_constants: alpha must be positive");
  if (!(beta > 0.0)) throw std::invalid_argument("cutoff_constants: beta must be positive");
  if (n_nodes < 64) throw std::invalid_argument("cutoff_constants: need at least 64 nodes");
  CutoffConstants cc;
  cc.alpha = alpha;
  cc.beta = beta;
  const double d = ball.radius;
  const double n = m.n;
  const double k = ricci_lower_bound(m);
  cc.c_phi_grid = sup_combo(m, ball, 3.0, n_nodes);
  cc.c_phi_alpha_grid = sup_combo(m, ball, 3.0 + alpha * n, n_nodes);
  cc.c7_grid = sup_combo(m, ball, 7.0, n_nodes);
  const double pi2_4d2 = kPi * kPi / (4.0 * d * d);
  const double lap_bound = (1.0 + beta) * n * pi2_4d2 + k / (4.0 * beta);
  cc.c_phi_analytic = 3.0 * pi2_4d2 + lap_bound;
  cc.c_phi_alpha_analytic = (3.0 + alpha * n) * pi2_4d2 + lap_bound;
  cc.c7_analytic = 7.0 * pi2_4d2 + lap_bound;
  cc.grad_phi_sup = kPi / (2.0 * d);
  cc.phi_grad_phi_sup = kPi / (4.0 * d);
  return cc;
}

}  // namespace heatlab
