#pragma once

#include <optional>
#include <string>
#include <vector>

namespace heatlab {

using Vec = std::vector<double>;

enum class Kind { euclidean, sphere, hyperbolic };

// Constant-curvature model space of dimension n.  Curved models live in their
// standard embeddings: the sphere in R^{n+1} with <x,x> = 1/kappa, the
// hyperboloid sheet in Minkowski R^{1,n} with <x,x> = 1/kappa and x0 > 0.
struct ModelManifold {
  Kind kind = Kind::euclidean;
  int n = 2;
  double kappa = 0.0;

  int ambient_dim() const { return kind == Kind::euclidean ? n : n + 1; }
  double curvature_scale() const;   // sqrt(|kappa|)
  double injectivity_radius() const;
  double ricci_coeff() const { return (n - 1) * kappa; }  // Ric = coeff * g
};

ModelManifold make_manifold(Kind kind, int n, double kappa);

struct Point {
  Vec x;
};

struct TangentVector {
  Point base;
  Vec v;
};

struct Frame {
  Point base;
  std::vector<Vec> vecs;  // n orthonormal tangent vectors
};

struct GeodesicBall {
  Point center;
  double radius = 0.0;
};

Point base_point(const ModelManifold& m);  // canonical origin

// Ambient bilinear form restricted to tangent spaces (Minkowski for the
// hyperboloid, dot product otherwise).  Positive definite on tangents.
double metric_dot(const ModelManifold& m, const Vec& a, const Vec& b);
double metric_norm(const ModelManifold& m, const Vec& a);

void validate_point(const ModelManifold& m, const Point& p, double tol = 1e-9);
void validate_tangent(const ModelManifold& m, const Point& p, const Vec& v, double tol = 1e-9);
void validate_ball(const ModelManifold& m, const GeodesicBall& ball);

Point project_point(const ModelManifold& m, Point p);
Vec project_tangent(const ModelManifold& m, const Point& p, Vec v);

Point exp_map(const ModelManifold& m, const Point& p, const Vec& v);

// Parallel transport of w along the geodesic t -> exp_p(t v), evaluated at
// the endpoint exp_p(v).
Vec parallel_transport(const ModelManifold& m, const Point& p, const Vec& v, const Vec& w);

double distance(const ModelManifold& m, const Point& p, const Point& q);

// Unit tangent at p of the geodesic from center through p (zero vector when
// p coincides with center).
Vec radial_direction(const ModelManifold& m, const Point& center, const Point& p);

Frame initial_frame(const ModelManifold& m, const Point& p);
Frame transport_frame(const ModelManifold& m, const Point& p, const Vec& step, const Frame& f);
void reorthonormalize(const ModelManifold& m, Frame& f);

// Largest k >= 0 with Ric >= -k g.
double ricci_lower_bound(const ModelManifold& m);
double ricci_lower_bound(const ModelManifold& m, const GeodesicBall& ball);

// Radial geometry: f(r) = r, sin(sqrt(kappa) r)/sqrt(kappa), or
// sinh(sqrt(-kappa) r)/sqrt(-kappa); radial_cot is f'/f.
double radial_sine(const ModelManifold& m, double r);
double radial_cot(const ModelManifold& m, double r);

// Cosine cutoff supported on a geodesic ball: phi(r) = cos(pi r / (2 delta)).
struct CutoffValues {
  double phi;
  double dphi_dr;
  double laplacian;
};
CutoffValues cutoff_radial(const ModelManifold& m, const GeodesicBall& ball, double r);
CutoffValues cutoff_eval(const ModelManifold& m, const GeodesicBall& ball, const Point& p);

// Suprema of the cutoff combinations that feed the local gradient bounds,
// both as grid suprema and as closed-form upper bounds.
struct CutoffConstants {
  double alpha = 0.0;
  double beta = 1.0;
  double c_phi_grid = 0.0;          // sup 3|d phi|^2 - phi * lap phi
  double c_phi_alpha_grid = 0.0;    // sup (3 + alpha n)|d phi|^2 - phi * lap phi
  double c7_grid = 0.0;             // sup 7|d phi|^2 - phi * lap phi
  double c_phi_analytic = 0.0;
  double c_phi_alpha_analytic = 0.0;
  double c7_analytic = 0.0;
  double grad_phi_sup = 0.0;        // pi / (2 delta)
  double phi_grad_phi_sup = 0.0;    // sup phi |d phi| = pi / (4 delta)
};
CutoffConstants cutoff_constants(const ModelManifold& m, const GeodesicBall& ball,
                                 double alpha, double beta, int n_nodes = 2001);

// Small dense-vector helpers shared across modules.
double dot(const Vec& a, const Vec& b);
Vec axpy(double a, const Vec& x, const Vec& y);  // a*x + y
Vec scaled(const Vec& x, double a);

}  // namespace heatlab
