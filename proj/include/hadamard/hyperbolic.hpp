// Upper half-plane model of the hyperbolic plane with curvature kappa < 0.
// Geodesics, distances, Busemann functions and visual gauges all have closed
// forms here; the generic truncated-limit routines are kept as cross-checks.
//
// Conventions: chart z = a + ib with b > 0, metric (da^2 + db^2)/(k b)^2 where
// k = sqrt(-kappa). Geodesic paths are independent of k; distances and
// Busemann values scale by 1/k relative to the kappa = -1 model.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "hadamard/core.hpp"

namespace hadamard {

using Complex = std::complex<double>;

// Point on the ideal boundary of the half-plane: a real number or infinity.
struct IdealPoint {
  bool at_infinity = false;
  double value = 0.0;

  static IdealPoint infinity() { return {true, 0.0}; }
  static IdealPoint finite(double v) { return {false, v}; }
};

// Real Moebius transformation acting on the upper half-plane; normalized to
// det = +1 on construction (orientation-preserving isometries = PSL(2,R)).
struct MobiusReal {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static MobiusReal normalize(double a, double b, double c, double d) {
    double det = a * d - b * c;
    if (!(det > 0.0))
      throw std::domain_error("MobiusReal: determinant must be positive");
    double s = std::sqrt(det);
    return {a / s, b / s, c / s, d / s};
  }
  static MobiusReal identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static MobiusReal translation(double dx) { return {1.0, dx, 0.0, 1.0}; }
  static MobiusReal scaling(double s) {
    if (!(s > 0.0)) throw std::domain_error("MobiusReal::scaling: s must be > 0");
    return normalize(s, 0.0, 0.0, 1.0);
  }
  // Elliptic rotation fixing i; the boundary derivative at i has argument phi.
  static MobiusReal rotation_about_i(double phi) {
    return {std::cos(phi / 2), std::sin(phi / 2), -std::sin(phi / 2), std::cos(phi / 2)};
  }

  MobiusReal compose(const MobiusReal& o) const {  // (*this) after o
    return normalize(a * o.a + b * o.c, a * o.b + b * o.d,
                     c * o.a + d * o.c, c * o.b + d * o.d);
  }
  MobiusReal inverse() const { return {d, -b, -c, a}; }

  Complex apply(Complex z) const {
    Complex den = c * z + d;
    double n2 = std::norm(den);
    // Im(g z) = det * Im z / |cz+d|^2 computed directly to avoid cancellation.
    Complex num = a * z + b;
    double re = (num.real() * den.real() + num.imag() * den.imag()) / n2;
    double im = z.imag() / n2;  // det = 1
    return {re, im};
  }

  Complex derivative(Complex z) const {  // dg/dz = 1/(cz+d)^2 for det 1
    Complex den = c * z + d;
    return 1.0 / (den * den);
  }

  IdealPoint apply_ideal(const IdealPoint& e) const {
    if (e.at_infinity) {
      if (c == 0.0) return IdealPoint::infinity();
      return IdealPoint::finite(a / c);
    }
    double den = c * e.value + d;
    if (den == 0.0) return IdealPoint::infinity();
    return IdealPoint::finite((a * e.value + b) / den);
  }
};

class HyperbolicPlane {
 public:
  explicit HyperbolicPlane(double kappa = -1.0) : kappa_(kappa), k_(std::sqrt(-kappa)) {
    if (!(kappa < 0.0))
      throw std::domain_error("HyperbolicPlane: curvature must be negative");
  }

  static constexpr const char* kind() { return "hyperbolic"; }

  double kappa() const { return kappa_; }
  Point base_point() const { return {0.0, 1.0}; }
  bool in_domain(const Point& p) const { return p.b > 0.0; }
  double curvature(const Point&) const { return kappa_; }

  MetricDiag metric_diag(const Point& p) const {
    if (!in_domain(p)) throw std::domain_error("HyperbolicPlane: point not in upper half-plane");
    double s = 1.0 / (k_ * k_ * p.b * p.b);
    return {s, s};
  }

  double distance(const Point& p, const Point& q) const {
    double d2 = (q.a - p.a) * (q.a - p.a) + (q.b - p.b) * (q.b - p.b);
    double arg = 1.0 + d2 / (2.0 * p.b * q.b);
    return std::acosh(std::max(1.0, arg)) / k_;
  }

  // Unit-speed geodesic flow, exact: conjugate the model geodesic t -> i e^t
  // by the isometry taking (i, up) to (base, direction).
  TangentVector flow(const TangentVector& v, double t) const {
    MobiusReal g = frame_at(v);
    double t1 = k_ * t;  // arc length in the kappa = -1 model
    if (std::abs(t1) > 300.0)
      throw std::domain_error("HyperbolicPlane::flow: parameter too large for the chart");
    Complex zeta(0.0, std::exp(t1));
    Complex z = g.apply(zeta);
    Complex den = g.c * zeta + g.d;
    Complex w = zeta / (den * den);  // gamma'(t1), norm 1 in the kappa=-1 metric
    return {{z.real(), z.imag()}, k_ * w.real(), k_ * w.imag()};
  }

  TangentVector connect(const Point& p, const Point& q) const {
    if (!(distance(p, q) > 0.0))
      throw std::domain_error("HyperbolicPlane::connect: coincident points");
    if (std::abs(p.a - q.a) < 1e-300)  // shared vertical geodesic
      return from_frame_angle(*this, p, q.b > p.b ? kPi / 2 : -kPi / 2);
    double c0 = (chart_dot(p, p) - chart_dot(q, q)) / (2.0 * (p.a - q.a));
    double psi_p = std::atan2(p.b, p.a - c0);
    double psi_q = std::atan2(q.b, q.a - c0);
    // Tangent along the circle centered at (c0, 0), oriented toward q.
    Point radial{p.a - c0, p.b};
    Point w = psi_q > psi_p ? Point{-radial.b, radial.a} : Point{radial.b, -radial.a};
    return normalized(*this, {p, w.a, w.b});
  }

  // ---- ideal-boundary closed forms ----

  // Forward ideal endpoint of the geodesic through v.
  IdealPoint ideal_forward(const TangentVector& v) const {
    MobiusReal g = frame_at(v);
    if (g.c == 0.0) return IdealPoint::infinity();
    return IdealPoint::finite(g.a / g.c);
  }

  // Unit tangent at p pointing at the ideal point e.
  TangentVector point_toward(const Point& p, const IdealPoint& e) const {
    if (e.at_infinity) return from_frame_angle(*this, p, kPi / 2);
    if (std::abs(p.a - e.value) < 1e-300)
      return from_frame_angle(*this, p, -kPi / 2);
    double c0 = (chart_dot(p, p) - e.value * e.value) / (2.0 * (p.a - e.value));
    Point radial{p.a - c0, p.b};
    Point w = e.value > c0 ? Point{radial.b, -radial.a} : Point{-radial.b, radial.a};
    return normalized(*this, {p, w.a, w.b});
  }

  // B(p, q, e) from the horocycle height function b_e(z) = ln(|z-e|^2 / Im z)
  // (b_inf(z) = -ln Im z); exact, scales by 1/k.
  double busemann_ideal(const Point& p, const Point& q, const IdealPoint& e) const {
    auto height = [&](const Point& z) {
      if (e.at_infinity) return -std::log(z.b);
      double r2 = (z.a - e.value) * (z.a - e.value) + z.b * z.b;
      return std::log(r2 / z.b);
    };
    return (height(q) - height(p)) / k_;
  }

  // (xi|eta)_x = -ln sin(alpha/2) / k where alpha is the angle at x between
  // the rays toward the two ideal points.
  double gromov_ideal(const Point& x, const IdealPoint& e1, const IdealPoint& e2) const {
    if (ideal_equal(e1, e2)) return kInf;
    double alpha = angle_between(*this, point_toward(x, e1), point_toward(x, e2));
    double s = std::sin(alpha / 2.0);
    if (s <= 0.0) return kInf;
    return -std::log(s) / k_;
  }

  // Unit tangent on the geodesic (e_minus -> e_plus) at a canonical anchor
  // point, pointing at e_plus. Used to parametrize bi-infinite geodesics.
  TangentVector geodesic_anchor(const IdealPoint& e_minus, const IdealPoint& e_plus) const {
    if (ideal_equal(e_minus, e_plus))
      throw std::domain_error("HyperbolicPlane::geodesic_anchor: coincident ideal endpoints");
    if (e_minus.at_infinity || e_plus.at_infinity) {
      double e = e_minus.at_infinity ? e_plus.value : e_minus.value;
      Point anchor{e, 1.0};
      return from_frame_angle(*this, anchor, e_plus.at_infinity ? kPi / 2 : -kPi / 2);
    }
    double mid = 0.5 * (e_minus.value + e_plus.value);
    double r = 0.5 * std::abs(e_plus.value - e_minus.value);
    return point_toward({mid, r}, e_plus);
  }

  static bool ideal_equal(const IdealPoint& u, const IdealPoint& w) {
    if (u.at_infinity || w.at_infinity) return u.at_infinity && w.at_infinity;
    return u.value == w.value;
  }

  // ---- isometry action ----

  Point apply_isometry(const MobiusReal& g, const Point& p) const {
    Complex z = g.apply({p.a, p.b});
    return {z.real(), z.imag()};
  }

  TangentVector apply_isometry(const MobiusReal& g, const TangentVector& v) const {
    Complex z{v.at.a, v.at.b};
    Complex w = g.derivative(z) * Complex{v.da, v.db};
    Complex gz = g.apply(z);
    return {{gz.real(), gz.imag()}, w.real(), w.imag()};
  }

  // ---- closed forms consumed by the asymptotics layer ----
  // Boundary points are encoded there as frame angles at the base point.

  IdealPoint ideal_of_angle(double theta_at_o) const {
    return ideal_forward(from_frame_angle(*this, base_point(), theta_at_o));
  }

  double angle_of_ideal(const IdealPoint& e) const {
    return frame_angle(*this, point_toward(base_point(), e));
  }

  TangentVector ray_closed_form(const Point& x, double theta_at_o) const {
    return point_toward(x, ideal_of_angle(theta_at_o));
  }

  double boundary_angle_of_ray(const TangentVector& v) const {
    return angle_of_ideal(ideal_forward(normalized(*this, v)));
  }

  double busemann_closed_form(const Point& p, const Point& q, double theta_at_o) const {
    return busemann_ideal(p, q, ideal_of_angle(theta_at_o));
  }

  double gromov_closed_form(const Point& x, double theta1, double theta2) const {
    return gromov_ideal(x, ideal_of_angle(theta1), ideal_of_angle(theta2));
  }

 private:
  // Isometry g with g(i) = base of v and boundary-derivative argument aligned
  // so that g maps the upward unit vector at i onto v (v must be unit).
  MobiusReal frame_at(const TangentVector& v) const {
    if (!in_domain(v.at)) throw std::domain_error("HyperbolicPlane: point not in upper half-plane");
    double phi = std::atan2(v.db, v.da) - kPi / 2;
    MobiusReal g = MobiusReal::translation(v.at.a)
                       .compose(MobiusReal::scaling(v.at.b))
                       .compose(MobiusReal::rotation_about_i(phi));
    return g;
  }

  double kappa_;
  double k_;
};

}  // namespace hadamard
