#include "heatlab/solutions.hpp"

#include "heatlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace heatlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

HeatSolution::HeatSolution(ModelManifold m, double t_min, double t_max,
                           std::optional<GeodesicBall> ball, Point center)
    : m_(m), t_min_(t_min), t_max_(t_max), ball_(std::move(ball)), center_(std::move(center)) {}

void HeatSolution::check_time(double t) const {
  const double tol = 1e-9 * std::max(1.0, std::fabs(t_max_ == kInf ? 1.0 : t_max_));
  if (t < t_min_ - tol || t > t_max_ + tol)
    throw std::domain_error("HeatSolution: time outside validity window");
}

void HeatSolution::check_in_domain(const Point& p, double t) const {
  check_time(t);
  if (ball_) {
    const double r = distance(m_, ball_->center, p);
    if (r > ball_->radius * (1.0 + 1e-9))
      throw std::domain_error("HeatSolution: point outside domain ball");
  }
}

double HeatSolution::value(const Point& p, double t) const {
  return radial(distance(m_, center_, p), t).u;
}

TangentVector HeatSolution::gradient(const Point& p, double t) const {
  const double r = distance(m_, center_, p);
  const RadialData d = radial(r, t);
  TangentVector tv;
  tv.base = p;
  tv.v = scaled(radial_direction(m_, center_, p), d.u_r);
  return tv;
}

double HeatSolution::laplacian(const Point& p, double t) const {
  const double r = distance(m_, center_, p);
  const RadialData d = radial(r, t);
  if (r < 1e-9) return m_.n * d.u_rr;
  return d.u_rr + (m_.n - 1) * radial_cot(m_, r) * d.u_r;
}

double HeatSolution::time_deriv(const Point& p, double t) const {
  return radial(distance(m_, center_, p), t).u_t;
}

double HeatSolution::hess_defect_sq(const Point& p, double t) const {
  const double r = distance(m_, center_, p);
  const RadialData d = radial(r, t);
  if (!(d.u > 0.0)) throw std::domain_error("hess_defect_sq: needs u > 0");
  if (r < 1e-9) return m_.n * d.u_rr * d.u_rr;
  const double tang = radial_cot(m_, r) * d.u_r;
  const double rad = d.u_rr - d.u_r * d.u_r / d.u;
  return rad * rad + (m_.n - 1) * tang * tang;
}

double HeatSolution::w_heat_operator(const Point& p, double t) const {
  return w_op_radial(distance(m_, center_, p), t);
}

// ---------------------------------------------------------------------------

GaussianSolution::GaussianSolution(int n, Point source)
    : HeatSolution(make_manifold(Kind::euclidean, n, 0.0), 0.0, kInf, std::nullopt,
                   std::move(source)) {
  if (static_cast<int>(center_.x.size()) != n)
    throw std::invalid_argument("GaussianSolution: source has wrong dimension");
}

RadialData GaussianSolution::radial(double r, double t) const {
  if (!(t > 0.0)) throw std::domain_error("GaussianSolution: needs t > 0");
  const int n = m_.n;
  const double u = std::pow(kTwoPi * t, -0.5 * n) * std::exp(-r * r / (2.0 * t));
  RadialData d;
  d.u = u;
  d.u_r = -(r / t) * u;
  d.u_rr = (r * r / (t * t) - 1.0 / t) * u;
  d.u_t = (r * r / (2.0 * t * t) - n / (2.0 * t)) * u;
  return d;
}

double GaussianSolution::w_op_radial(double r, double t) const {
  if (!(t > 0.0)) throw std::domain_error("GaussianSolution: needs t > 0");
  const int n = m_.n;
  const double u = std::pow(kTwoPi * t, -0.5 * n) * std::exp(-r * r / (2.0 * t));
  const double t2 = t * t, t3 = t2 * t, t4 = t2 * t2, r2 = r * r;
  const double w_rr = u * (2.0 / t2 - 5.0 * r2 / t3 + r2 * r2 / t4);
  const double w_t = u * r2 * (r2 / (2.0 * t4) - (n + 4.0) / (2.0 * t3));
  const double wr_over_r = r < 1e-9 ? 2.0 * u / t2
                                    : u * (2.0 / t2 - r2 / t3);  // w_r / r
  return 0.5 * (w_rr + (n - 1) * wr_over_r) - w_t;
}

// ---------------------------------------------------------------------------

ConstantSolution::ConstantSolution(ModelManifold m, double c)
    : HeatSolution(m, 0.0, kInf, std::nullopt, base_point(m)), c_(c) {
  if (!(c > 0.0)) throw std::invalid_argument("ConstantSolution: needs c > 0");
}

RadialData ConstantSolution::radial(double, double) const { return {c_, 0.0, 0.0, 0.0}; }

double ConstantSolution::w_op_radial(double, double) const { return 0.0; }

// ---------------------------------------------------------------------------

LinearSolution::LinearSolution(int n, double a0, Vec b)
    : HeatSolution(make_manifold(Kind::euclidean, n, 0.0), 0.0, kInf, std::nullopt,
                   base_point(make_manifold(Kind::euclidean, n, 0.0))),
      a0_(a0),
      b_(std::move(b)) {
  if (static_cast<int>(b_.size()) != n)
    throw std::invalid_argument("LinearSolution: coefficient size mismatch");
}

double LinearSolution::value(const Point& p, double) const { return a0_ + dot(b_, p.x); }

TangentVector LinearSolution::gradient(const Point& p, double) const {
  return TangentVector{p, b_};
}

double LinearSolution::hess_defect_sq(const Point& p, double t) const {
  const double u = value(p, t);
  if (!(u > 0.0)) throw std::domain_error("hess_defect_sq: needs u > 0");
  const double g = dot(b_, b_);
  return g * g / (u * u);
}

double LinearSolution::w_heat_operator(const Point& p, double t) const {
  const double u = value(p, t);
  if (!(u > 0.0)) throw std::domain_error("w_heat_operator: needs u > 0");
  const double g = dot(b_, b_);
  return g * g / (u * u * u);
}

RadialData LinearSolution::radial(double, double) const {
  throw std::logic_error("LinearSolution: not radial");
}

double LinearSolution::w_op_radial(double, double) const {
  throw std::logic_error("LinearSolution: not radial");
}

// ---------------------------------------------------------------------------

ShiftedSolution::ShiftedSolution(std::shared_ptr<const HeatSolution> base, double t0)
    : HeatSolution(base->manifold(), std::max(0.0, base->t_min() - t0),
                   base->t_max() == kInf ? kInf : base->t_max() - t0, base->domain_ball(),
                   base->center()),
      base_(std::move(base)),
      t0_(t0) {
  if (!(t0 > 0.0)) throw std::invalid_argument("ShiftedSolution: needs t0 > 0");
}

bool ShiftedSolution::is_radial() const { return base_->is_radial(); }
const Point& ShiftedSolution::center() const { return base_->center(); }
RadialData ShiftedSolution::radial(double r, double t) const { return base_->radial(r, t + t0_); }
double ShiftedSolution::w_op_radial(double r, double t) const {
  return base_->w_op_radial(r, t + t0_);
}
double ShiftedSolution::value(const Point& p, double t) const { return base_->value(p, t + t0_); }
TangentVector ShiftedSolution::gradient(const Point& p, double t) const {
  return base_->gradient(p, t + t0_);
}
double ShiftedSolution::laplacian(const Point& p, double t) const {
  return base_->laplacian(p, t + t0_);
}
double ShiftedSolution::time_deriv(const Point& p, double t) const {
  return base_->time_deriv(p, t + t0_);
}
double ShiftedSolution::hess_defect_sq(const Point& p, double t) const {
  return base_->hess_defect_sq(p, t + t0_);
}
double ShiftedSolution::w_heat_operator(const Point& p, double t) const {
  return base_->w_heat_operator(p, t + t0_);
}

// ---------------------------------------------------------------------------

RadialGridSolution::RadialGridSolution(ModelManifold m, GeodesicBall ball, double T, int n_r,
                                       int n_t)
    : HeatSolution(m, 0.0, T, ball, ball.center),
      n_r_(n_r),
      n_t_(n_t),
      dr_(ball.radius / n_r),
      dt_(T / n_t) {
  u_.assign(static_cast<std::size_t>(n_t_ + 1) * (n_r_ + 1), 0.0);
}

double RadialGridSolution::min_grid_value() const {
  return *std::min_element(u_.begin(), u_.end());
}

double RadialGridSolution::max_grid_value() const {
  return *std::max_element(u_.begin(), u_.end());
}

void RadialGridSolution::export_csv(std::ostream& os) const {
  os << "r,t,u\n";
  for (int mm = 0; mm <= n_t_; ++mm)
    for (int i = 0; i <= n_r_; ++i)
      os << format_double(i * dr_) << ',' << format_double(mm * dt_) << ','
         << format_double(u_[idx(i, mm)]) << '\n';
}

namespace {

// Nodal radial derivative with an even extension at r = 0.  Fourth order in
// the interior, second order near the outer boundary.
void row_deriv_r(const double* u, int N, double h, double* out) {
  out[0] = 0.0;
  if (N >= 3) out[1] = (-u[3] + 8.0 * u[2] - 8.0 * u[0] + u[1]) / (12.0 * h);
  else out[1] = (u[2] - u[0]) / (2.0 * h);
  for (int i = 2; i <= N - 2; ++i)
    out[i] = (-u[i + 2] + 8.0 * u[i + 1] - 8.0 * u[i - 1] + u[i - 2]) / (12.0 * h);
  if (N >= 2) out[N - 1] = (u[N] - u[N - 2]) / (2.0 * h);
  out[N] = (3.0 * u[N] - 4.0 * u[N - 1] + u[N - 2]) / (2.0 * h);
}

void row_deriv_rr(const double* u, int N, double h, double* out) {
  const double h2 = h * h;
  if (N >= 2) out[0] = (-2.0 * u[2] + 32.0 * u[1] - 30.0 * u[0]) / (12.0 * h2);
  else out[0] = 2.0 * (u[1] - u[0]) / h2;
  if (N >= 3) out[1] = (-u[3] + 16.0 * u[2] - 31.0 * u[1] + 16.0 * u[0]) / (12.0 * h2);
  else out[1] = (u[2] - 2.0 * u[1] + u[0]) / h2;
  for (int i = 2; i <= N - 2; ++i)
    out[i] = (-u[i + 2] + 16.0 * u[i + 1] - 30.0 * u[i] + 16.0 * u[i - 1] - u[i - 2]) / (12.0 * h2);
  if (N >= 2) out[N - 1] = (u[N] - 2.0 * u[N - 1] + u[N - 2]) / h2;
  out[N] = (2.0 * u[N] - 5.0 * u[N - 1] + 4.0 * u[N - 2] - u[N - 3]) / h2;
}

}  // namespace

void RadialGridSolution::build_tables() {
  const std::size_t sz = u_.size();
  ur_.assign(sz, 0.0);
  urr_.assign(sz, 0.0);
  ut_.assign(sz, 0.0);
  w_.assign(sz, 0.0);
  wr_.assign(sz, 0.0);
  wrr_.assign(sz, 0.0);
  wt_.assign(sz, 0.0);
  const int N = n_r_, M = n_t_;
  for (int mm = 0; mm <= M; ++mm) {
    const double* row = &u_[idx(0, mm)];
    row_deriv_r(row, N, dr_, &ur_[idx(0, mm)]);
    row_deriv_rr(row, N, dr_, &urr_[idx(0, mm)]);
  }
  for (int mm = 0; mm <= M; ++mm)
    for (int i = 0; i <= N; ++i) {
      const double uu = u_[idx(i, mm)];
      w_[idx(i, mm)] = ur_[idx(i, mm)] * ur_[idx(i, mm)] / uu;
    }
  for (int mm = 0; mm <= M; ++mm) {
    const double* row = &w_[idx(0, mm)];
    row_deriv_r(row, N, dr_, &wr_[idx(0, mm)]);
    row_deriv_rr(row, N, dr_, &wrr_[idx(0, mm)]);
  }
  for (int i = 0; i <= N; ++i) {
    for (int mm = 0; mm <= M; ++mm) {
      double du, dw;
      if (mm == 0) {
        du = (-3.0 * u_[idx(i, 0)] + 4.0 * u_[idx(i, 1)] - u_[idx(i, 2)]) / (2.0 * dt_);
        dw = (-3.0 * w_[idx(i, 0)] + 4.0 * w_[idx(i, 1)] - w_[idx(i, 2)]) / (2.0 * dt_);
      } else if (mm == M) {
        du = (3.0 * u_[idx(i, M)] - 4.0 * u_[idx(i, M - 1)] + u_[idx(i, M - 2)]) / (2.0 * dt_);
        dw = (3.0 * w_[idx(i, M)] - 4.0 * w_[idx(i, M - 1)] + w_[idx(i, M - 2)]) / (2.0 * dt_);
      } else {
        du = (u_[idx(i, mm + 1)] - u_[idx(i, mm - 1)]) / (2.0 * dt_);
        dw = (w_[idx(i, mm + 1)] - w_[idx(i, mm - 1)]) / (2.0 * dt_);
      }
      ut_[idx(i, mm)] = du;
      wt_[idx(i, mm)] = dw;
    }
  }
}

double RadialGridSolution::interp(const std::vector<double>& tab, double r, double t) const {
  const double rc = std::clamp(r, 0.0, n_r_ * dr_);
  const double tc = std::clamp(t, 0.0, n_t_ * dt_);
  int i = std::min(static_cast<int>(rc / dr_), n_r_ - 1);
  int mm = std::min(static_cast<int>(tc / dt_), n_t_ - 1);
  const double fr = rc / dr_ - i;
  const double ft = tc / dt_ - mm;
  const double a = tab[idx(i, mm)] * (1.0 - fr) + tab[idx(i + 1, mm)] * fr;
  const double b = tab[idx(i, mm + 1)] * (1.0 - fr) + tab[idx(i + 1, mm + 1)] * fr;
  return a * (1.0 - ft) + b * ft;
}

RadialData RadialGridSolution::radial(double r, double t) const {
  check_time(t);
  RadialData d;
  d.u = interp(u_, r, t);
  d.u_r = interp(ur_, r, t);
  d.u_rr = interp(urr_, r, t);
  d.u_t = interp(ut_, r, t);
  return d;
}

double RadialGridSolution::w_op_radial(double r, double t) const {
  check_time(t);
  const double wrr = interp(wrr_, r, t);
  const double wt = interp(wt_, r, t);
  if (r < 1e-6 * dr_) return 0.5 * m_.n * wrr - wt;
  const double wr = interp(wr_, r, t);
  return 0.5 * (wrr + (m_.n - 1) * radial_cot(m_, std::min(r, n_r_ * dr_)) * wr) - wt;
}

RadialGridSolution radial_fd_solve(const ModelManifold& m, const GeodesicBall& ball,
                                   const std::function<double(double)>& initial,
                                   const std::function<double(double)>& boundary,
                                   double T, int n_r, int n_t) {
  validate_ball(m, ball);
  if (!(T > 0.0)) throw std::invalid_argument("radial_fd_solve: T must be positive");
  if (n_r < 16 || n_t < 16) throw std::invalid_argument("radial_fd_solve: grid too coarse");
  RadialGridSolution sol(m, ball, T, n_r, n_t);
  const int N = n_r;
  const double dr = sol.dr_, dt = sol.dt_;

  for (int i = 0; i <= N; ++i) {
    const double v = initial(i * dr);
    if (!(v > 0.0)) throw std::invalid_argument("radial_fd_solve: initial profile must be positive");
    sol.u_[sol.idx(i, 0)] = v;
  }
  for (int mm = 0; mm <= n_t; ++mm) {
    if (!(boundary(mm * dt) > 0.0))
      throw std::invalid_argument("radial_fd_solve: boundary data must be positive");
  }
  const double g0 = boundary(0.0);
  if (std::fabs(sol.u_[sol.idx(N, 0)] - g0) > 1e-8 * std::max(1.0, std::fabs(g0)))
    throw std::invalid_argument("radial_fd_solve: initial and boundary data incompatible at r = delta");

  // Spatial operator L (half the radial laplacian), tridiagonal.
  std::vector<double> Llo(N + 1, 0.0), Ldi(N + 1, 0.0), Lup(N + 1, 0.0);
  Ldi[0] = -static_cast<double>(m.n) / (dr * dr);
  Lup[0] = static_cast<double>(m.n) / (dr * dr);
  for (int i = 1; i < N; ++i) {
    const double cot = radial_cot(m, i * dr);
    Llo[i] = 0.5 * (1.0 / (dr * dr) - (m.n - 1) * cot / (2.0 * dr));
    Ldi[i] = -1.0 / (dr * dr);
    Lup[i] = 0.5 * (1.0 / (dr * dr) + (m.n - 1) * cot / (2.0 * dr));
  }

  std::vector<double> a(N + 1), b(N + 1), c(N + 1), rhs(N + 1), cp(N + 1), dp(N + 1);
  for (int mm = 0; mm < n_t; ++mm) {
    const double* un = &sol.u_[sol.idx(0, mm)];
    double* up = &sol.u_[sol.idx(0, mm + 1)];
    for (int i = 0; i < N; ++i) {
      a[i] = -0.5 * dt * Llo[i];
      b[i] = 1.0 - 0.5 * dt * Ldi[i];
      c[i] = -0.5 * dt * Lup[i];
      const double lo = i > 0 ? Llo[i] * un[i - 1] : 0.0;
      rhs[i] = un[i] + 0.5 * dt * (lo + Ldi[i] * un[i] + Lup[i] * un[i + 1]);
    }
    a[N] = 0.0;
    b[N] = 1.0;
    c[N] = 0.0;
    rhs[N] = boundary((mm + 1) * dt);
    // Thomas sweep.
    cp[0] = c[0] / b[0];
    dp[0] = rhs[0] / b[0];
    for (int i = 1; i <= N; ++i) {
      const double w = b[i] - a[i] * cp[i - 1];
      cp[i] = c[i] / w;
      dp[i] = (rhs[i] - a[i] * dp[i - 1]) / w;
    }
    up[N] = dp[N];
    for (int i = N - 1; i >= 0; --i) up[i] = dp[i] - cp[i] * up[i + 1];
  }

  sol.build_tables();
  return sol;
}

// ---------------------------------------------------------------------------

IdentityReport verify_identities(const HeatSolution& s, const std::vector<Point>& points,
                                 const std::vector<double>& times, double k) {
  if (points.empty() || times.empty())
    throw std::invalid_argument("verify_identities: empty sample set");
  if (!(k >= 0.0)) throw std::invalid_argument("verify_identities: k must be >= 0");
  IdentityReport rep;
  rep.slack_quad_min = kInf;
  rep.slack_quad_k_min = kInf;
  rep.slack_linear_k_min = kInf;
  const ModelManifold& m = s.manifold();
  for (const Point& p : points) {
    for (double t : times) {
      s.check_in_domain(p, t);
      const double u = s.value(p, t);
      if (!(u > 0.0)) throw std::domain_error("verify_identities: solution not positive at sample");
      const TangentVector grad = s.gradient(p, t);
      const double G = metric_dot(m, grad.v, grad.v);
      const double lap = s.laplacian(p, t);
      const double ut = s.time_deriv(p, t);
      const double hess = s.hess_defect_sq(p, t);
      const double w_op = s.w_heat_operator(p, t);
      const double ric = m.ricci_coeff() * G;

      const double res_log = 0.5 * (lap / u - G / (u * u)) - ut / u + 0.5 * G / (u * u);
      const double res_ulogu =
          0.5 * ((1.0 + std::log(u)) * lap + G / u) - (1.0 + std::log(u)) * ut - 0.5 * G / u;
      const double res_w = w_op - (hess / u + ric / u);
      rep.res_log_max = std::max(rep.res_log_max, std::fabs(res_log));
      rep.res_ulogu_max = std::max(rep.res_ulogu_max, std::fabs(res_ulogu));
      rep.res_w_max = std::max(rep.res_w_max, std::fabs(res_w));

      const double q = lap - G / u;
      rep.slack_quad_min =
          std::min(rep.slack_quad_min, w_op - (q * q / (m.n * u) + ric / u));
      rep.slack_quad_k_min =
          std::min(rep.slack_quad_k_min, w_op - (q * q / (m.n * u) - k * G / u));
      rep.slack_linear_k_min = std::min(rep.slack_linear_k_min, w_op + k * G / u);
    }
  }
  return rep;
}

}  // namespace heatlab
