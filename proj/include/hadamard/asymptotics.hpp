// Boundary at infinity: boundary points as directions at the reference base
// point, rays toward them, Busemann functions and Gromov products via
// truncated monotone limits (with closed forms on the models that have them),
// the horoball-based Gromov product, comparison angles, antipodes.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "hadamard/core.hpp"

namespace hadamard {

inline constexpr double kBoundaryTol = 1e-8;   // angular equality at o
inline constexpr double kLimitTol = 1e-6;      // doubling-increment convergence
inline constexpr double kDivergenceDefault = 50.0;

// A point of the ideal boundary, encoded by the frame angle at the model's
// base point o of the unit direction whose ray represents it.
struct BoundaryPoint {
  double theta = 0.0;

  static BoundaryPoint from_angle(double t) { return {wrap_angle(t)}; }
};

inline bool same_boundary_point(const BoundaryPoint& u, const BoundaryPoint& w) {
  return angular_distance(u.theta, w.theta) < kBoundaryTol;
}

template <class M>
TangentVector boundary_direction(const M& m, const BoundaryPoint& xi) {
  return from_frame_angle(m, m.base_point(), xi.theta);
}

// Truncated-limit bookkeeping: value, truncation time, estimated residual
// (the last doubling increment), convergence/divergence classification.
struct LimitValue {
  double value = 0.0;
  bool divergent = false;
  double t_used = 0.0;
  double residual = 0.0;
  bool converged = false;
};

inline constexpr double kLimitTimes[] = {5.0, 10.0, 20.0, 40.0, 80.0};

namespace detail {

// Generic asymptotic retargeting: aim at far points of the reference ray and
// stop when the initial direction is angularly Cauchy.
template <class M>
TangentVector ray_retarget(const M& m, const Point& x, const BoundaryPoint& xi) {
  TangentVector ref = boundary_direction(m, xi);
  Point o = m.base_point();
  if (x.a == o.a && x.b == o.b) return {x, ref.da, ref.db};
  TangentVector best{};
  double prev = kInf;
  bool have_prev = false;
  for (double T : {10.0, 20.0, 40.0, 80.0, 160.0}) {
    Point target = m.flow(ref, T).at;
    TangentVector v = m.connect(x, target);
    double ang = frame_angle(m, v);
    if (have_prev && angular_distance(ang, prev) < 1e-9) return v;
    prev = ang;
    best = v;
    have_prev = true;
  }
  throw std::runtime_error("ray: retargeting shoot did not converge");
}

template <class M>
double boundary_angle_retarget(const M& m, const TangentVector& v) {
  Point o = m.base_point();
  TangentVector vu = normalized(m, v);
  if (v.at.a == o.a && v.at.b == o.b) return frame_angle(m, vu);
  double prev = kInf;
  bool have_prev = false;
  for (double T : {10.0, 20.0, 40.0, 80.0, 160.0}) {
    Point target = m.flow(vu, T).at;
    double ang = frame_angle(m, m.connect(o, target));
    if (have_prev && angular_distance(ang, prev) < 1e-9) return ang;
    prev = ang;
    have_prev = true;
  }
  throw std::runtime_error("boundary_from_ray: retargeting shoot did not converge");
}

}  // namespace detail

// Unit vector at x generating the ray asymptotic to xi.
template <class M>
TangentVector ray(const M& m, const Point& x, const BoundaryPoint& xi) {
  if constexpr (requires(const M& mm) { mm.ray_closed_form(x, xi.theta); }) {
    return m.ray_closed_form(x, xi.theta);
  } else {
    return detail::ray_retarget(m, x, xi);
  }
}

// Asymptotic class (as a boundary point at o) of the forward ray of v.
template <class M>
BoundaryPoint boundary_from_ray(const M& m, const TangentVector& v) {
  if constexpr (requires(const M& mm) { mm.boundary_angle_of_ray(v); }) {
    return BoundaryPoint::from_angle(m.boundary_angle_of_ray(v));
  } else {
    return BoundaryPoint::from_angle(detail::boundary_angle_retarget(m, v));
  }
}

// ---- Busemann function B(x, y, xi) ----

template <class M>
LimitValue busemann(const M& m, const Point& x, const Point& y, const BoundaryPoint& xi) {
  TangentVector r = ray(m, x, xi);
  LimitValue out;
  double prev = 0.0;
  bool have_prev = false;
  for (double T : kLimitTimes) {
    double b = m.distance(y, m.flow(r, T).at) - T;
    if (have_prev && b > prev + 1e-7)
      throw std::logic_error("busemann: iterate failed to be non-increasing");
    out.residual = have_prev ? std::abs(b - prev) : kInf;
    out.value = b;
    out.t_used = T;
    prev = b;
    have_prev = true;
    if (out.residual < kLimitTol) {
      out.converged = true;
      break;
    }
  }
  if constexpr (requires(const M& mm) { mm.busemann_closed_form(x, y, xi.theta); }) {
    // Closed form is authoritative; the truncated iterate stays as cross-check.
    double closed = m.busemann_closed_form(x, y, xi.theta);
    out.residual = std::abs(out.value - closed);
    out.value = closed;
    out.converged = true;
  }
  return out;
}

// Fast scalar path used by gauges and solvers.
template <class M>
double busemann_value(const M& m, const Point& x, const Point& y, const BoundaryPoint& xi) {
  if constexpr (requires(const M& mm) { mm.busemann_closed_form(x, y, xi.theta); }) {
    return m.busemann_closed_form(x, y, xi.theta);
  } else {
    return busemann(m, x, y, xi).value;
  }
}

// ---- Gromov product (xi|eta)_x ----

// Truncated monotone iterate g(t) = t - d(xi_x(t), eta_x(t))/2 at doubling
// times; always the numeric path (closed forms live in gromov_value).
template <class M>
LimitValue gromov_product(const M& m, const Point& x, const BoundaryPoint& xi,
                          const BoundaryPoint& eta,
                          double divergence_threshold = kDivergenceDefault) {
  TangentVector rx = ray(m, x, xi);
  TangentVector re = ray(m, x, eta);
  LimitValue out;
  double prev = 0.0;
  bool have_prev = false;
  for (double T : kLimitTimes) {
    double g = T - 0.5 * m.distance(m.flow(rx, T).at, m.flow(re, T).at);
    if (have_prev && g < prev - 1e-7)
      throw std::logic_error("gromov_product: iterate failed to be non-decreasing");
    out.residual = have_prev ? std::abs(g - prev) : kInf;
    out.value = g;
    out.t_used = T;
    prev = g;
    have_prev = true;
    if (out.residual < kLimitTol) {
      out.converged = true;
      break;
    }
    if (g > divergence_threshold) {
      out.divergent = true;  // past the threshold with still-growing increments
      break;
    }
  }
  return out;
}

// Scalar Gromov product: closed form where the model has one, otherwise the
// truncated iterate (+inf when flagged divergent).
template <class M>
double gromov_value(const M& m, const Point& x, const BoundaryPoint& xi,
                    const BoundaryPoint& eta) {
  if constexpr (requires(const M& mm) { mm.gromov_closed_form(x, 0.0, 0.0); }) {
    return m.gromov_closed_form(x, xi.theta, eta.theta);
  } else {
    LimitValue lv = gromov_product(m, x, xi, eta);
    return lv.divergent ? kInf : lv.value;
  }
}

// ---- Horoball route: balance point on the geodesic [xi, eta] ----

namespace detail {

// Unit tangent vector on a bi-infinite geodesic with backward endpoint xi and
// forward endpoint eta. Closed form on the hyperbolic plane; on the flat
// plane any line with the right direction works (the balance value is
// invariant across the parallel family), anchored at `hint` for determinism.
template <class M>
TangentVector geodesic_between(const M& m, const BoundaryPoint& xi, const BoundaryPoint& eta,
                               const Point& hint) {
  if constexpr (requires(const M& mm) {
                  mm.geodesic_anchor(mm.ideal_of_angle(0.0), mm.ideal_of_angle(0.0));
                }) {
    return m.geodesic_anchor(m.ideal_of_angle(xi.theta), m.ideal_of_angle(eta.theta));
  } else if constexpr (requires(const M& mm) { mm.ray_closed_form(hint, 0.0); }) {
    // Flat plane: the pair must be antipodal to bound a line.
    if (angular_distance(xi.theta + kPi, eta.theta) > kBoundaryTol)
      throw std::runtime_error(
          "gromov_product_horoball: non-visible pair (no connecting geodesic)");
    return m.ray_closed_form(hint, eta.theta);
  } else {
    throw std::runtime_error(
        "gromov_product_horoball: non-visible pair (no geodesic construction on this model)");
  }
}

}  // namespace detail

template <class M>
double gromov_product_horoball(const M& m, const Point& x, const BoundaryPoint& xi,
                               const BoundaryPoint& eta) {
  if (same_boundary_point(xi, eta))
    throw std::runtime_error("gromov_product_horoball: coincident boundary points");
  TangentVector g0 = detail::geodesic_between(m, xi, eta, x);
  auto h = [&](double s) {
    Point p = m.flow(g0, s).at;
    return busemann_value(m, x, p, xi) - busemann_value(m, x, p, eta);
  };
  // Bracket the sign change within |s| <= 1e3 by doubling, then bisect.
  double lo = 0.0, hi = 0.0, hlo = h(0.0);
  if (hlo != 0.0) {
    bool found = false;
    for (double span = 1.0; span <= 1024.0; span *= 2.0) {
      double s = hlo < 0 ? span : -span;  // h is increasing along the geodesic
      double hs = h(s);
      if (hs == 0.0 || (hs > 0) != (hlo > 0)) {
        lo = std::min(0.0, s);
        hi = std::max(0.0, s);
        found = true;
        break;
      }
    }
    if (!found)
      throw std::runtime_error(
          "gromov_product_horoball: non-visible pair (bisection bracket not found)");
    hlo = h(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
      double mid = 0.5 * (lo + hi);
      double hm = h(mid);
      if (hm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((hm > 0) == (hlo > 0)) {
        lo = mid;
        hlo = hm;
      } else {
        hi = mid;
      }
    }
  }
  Point p = m.flow(g0, 0.5 * (lo + hi)).at;
  return -busemann_value(m, x, p, xi);
}

// ---- Comparison angles (Def. 2.1) ----

template <class M>
double comparison_angle(const M& m, const Point& x, const Point& y, const BoundaryPoint& xi,
                        double k) {
  if (k < 0.0) throw std::domain_error("comparison_angle: k must be nonnegative");
  double d = m.distance(x, y);
  if (!(d > 0.0)) throw std::domain_error("comparison_angle: x = y");
  double B = busemann_value(m, x, y, xi);
  double c;
  if (k > 0.0) {
    c = (std::cosh(k * d) - std::exp(k * B)) / std::sinh(k * d);
  } else {
    c = -B / d;
  }
  return std::acos(clamp_unit(c, 1e-9, "comparison_angle"));
}

// ---- Antipodal map a_x ----

template <class M>
BoundaryPoint antipode(const M& m, const Point& x, const BoundaryPoint& xi) {
  TangentVector v = ray(m, x, xi);
  return boundary_from_ray(m, v.negated());
}

// ---- Interior Gromov product ----

template <class M>
double interior_gromov(const M& m, const Point& x, const Point& y, const Point& z) {
  return 0.5 * (m.distance(x, y) + m.distance(x, z) - m.distance(y, z));
}

}  // namespace hadamard
