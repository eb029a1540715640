#pragma once

#include "heatlab/geometry.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace heatlab {

struct RadialData {
  double u = 0.0;    // value
  double u_r = 0.0;  // radial derivative
  double u_rr = 0.0;
  double u_t = 0.0;  // time derivative
};

// Positive solution of du/dt = (1/2) lap u, exposed through pointwise
// evaluators.  Radial solutions implement the radial bundle; the pointwise
// API is derived from it.  w below always means |grad u|^2 / u.
class HeatSolution {
 public:
  virtual ~HeatSolution() = default;

  const ModelManifold& manifold() const { return m_; }

  virtual double value(const Point& p, double t) const;
  virtual TangentVector gradient(const Point& p, double t) const;
  virtual double laplacian(const Point& p, double t) const;
  virtual double time_deriv(const Point& p, double t) const;

  // |Hess u - (grad u x grad u)/u|^2
  virtual double hess_defect_sq(const Point& p, double t) const;

  // (lap/2 - d/dt) applied to the field w = |grad u|^2 / u
  virtual double w_heat_operator(const Point& p, double t) const;

  virtual bool is_radial() const { return true; }
  virtual const Point& center() const { return center_; }
  virtual RadialData radial(double r, double t) const = 0;
  virtual double w_op_radial(double r, double t) const = 0;

  virtual bool positive() const { return true; }

  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  const std::optional<GeodesicBall>& domain_ball() const { return ball_; }
  void check_time(double t) const;
  void check_in_domain(const Point& p, double t) const;

 protected:
  HeatSolution(ModelManifold m, double t_min, double t_max,
               std::optional<GeodesicBall> ball, Point center);

  ModelManifold m_;
  double t_min_, t_max_;
  std::optional<GeodesicBall> ball_;
  Point center_;
};

// Fundamental euclidean solution (2 pi t)^{-n/2} exp(-|y - y0|^2 / (2t)),
// valid for t > 0.
class GaussianSolution final : public HeatSolution {
 public:
  GaussianSolution(int n, Point source);
  RadialData radial(double r, double t) const override;
  double w_op_radial(double r, double t) const override;
};

class ConstantSolution final : public HeatSolution {
 public:
  ConstantSolution(ModelManifold m, double c);
  RadialData radial(double r, double t) const override;
  double w_op_radial(double r, double t) const override;

 private:
  double c_;
};

// Affine euclidean solution a0 + <b, y>.  Not positive on the whole space;
// used for derivative estimators, not for the positivity-dependent checks.
class LinearSolution final : public HeatSolution {
 public:
  LinearSolution(int n, double a0, Vec b);
  double value(const Point& p, double t) const override;
  TangentVector gradient(const Point& p, double t) const override;
  double laplacian(const Point&, double) const override { return 0.0; }
  double time_deriv(const Point&, double) const override { return 0.0; }
  double hess_defect_sq(const Point& p, double t) const override;
  double w_heat_operator(const Point& p, double t) const override;
  bool is_radial() const override { return false; }
  bool positive() const override { return false; }
  RadialData radial(double, double) const override;
  double w_op_radial(double, double) const override;

 private:
  double a0_;
  Vec b_;
};

// Time shift u(., t + t0) of a base solution; shifts the validity window.
class ShiftedSolution final : public HeatSolution {
 public:
  ShiftedSolution(std::shared_ptr<const HeatSolution> base, double t0);
  RadialData radial(double r, double t) const override;
  double w_op_radial(double r, double t) const override;
  bool is_radial() const override;
  const Point& center() const override;
  double value(const Point& p, double t) const override;
  TangentVector gradient(const Point& p, double t) const override;
  double laplacian(const Point& p, double t) const override;
  double time_deriv(const Point& p, double t) const override;
  double hess_defect_sq(const Point& p, double t) const override;
  double w_heat_operator(const Point& p, double t) const override;

 private:
  std::shared_ptr<const HeatSolution> base_;
  double t0_;
};

// Crank-Nicolson solution of the radial heat equation on a geodesic ball,
// with symmetry at r = 0 and Dirichlet data at r = delta.  Evaluation between
// nodes interpolates nodal values and nodal derivative tables bilinearly;
// radii beyond delta clamp to the boundary column.
class RadialGridSolution final : public HeatSolution {
 public:
  RadialData radial(double r, double t) const override;
  double w_op_radial(double r, double t) const override;

  int n_r() const { return n_r_; }
  int n_t() const { return n_t_; }
  double dr() const { return dr_; }
  double dt() const { return dt_; }
  double node_value(int i, int m) const { return u_[idx(i, m)]; }
  double min_grid_value() const;
  double max_grid_value() const;
  void export_csv(std::ostream& os) const;  // columns r,t,u

 private:
  friend RadialGridSolution radial_fd_solve(const ModelManifold&, const GeodesicBall&,
                                            const std::function<double(double)>&,
                                            const std::function<double(double)>&,
                                            double, int, int);
  RadialGridSolution(ModelManifold m, GeodesicBall ball, double T, int n_r, int n_t);
  std::size_t idx(int i, int mm) const { return static_cast<std::size_t>(mm) * (n_r_ + 1) + i; }
  void build_tables();
  double interp(const std::vector<double>& tab, double r, double t) const;

  int n_r_, n_t_;
  double dr_, dt_;
  std::vector<double> u_, ur_, urr_, ut_;
  std::vector<double> w_, wr_, wrr_, wt_;
};

RadialGridSolution radial_fd_solve(const ModelManifold& m, const GeodesicBall& ball,
                                   const std::function<double(double)>& initial,
                                   const std::function<double(double)>& boundary,
                                   double T, int n_r, int n_t);

// Pointwise residuals of the three heat-flow identities for log u, u log u,
// and w, plus minimum slacks of the associated one-sided bounds (the
// dimensional quadratic form, its curvature-k form, and the linear form).
struct IdentityReport {
  double res_log_max = 0.0;
  double res_ulogu_max = 0.0;
  double res_w_max = 0.0;
  double slack_quad_min = 0.0;
  double slack_quad_k_min = 0.0;
  double slack_linear_k_min = 0.0;
};

IdentityReport verify_identities(const HeatSolution& s, const std::vector<Point>& points,
                                 const std::vector<double>& times, double k);

}  // namespace heatlab
