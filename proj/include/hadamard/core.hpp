// Core value types shared by every model: chart points, tangent vectors,
// diagonal metrics, and the angle/frame helpers built on them.
#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hadamard {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Chart coordinates. Every shipped model is two-dimensional with a global
// chart, so a point is just its pair of coordinates; the owning model gives
// them meaning (x+iy upper half-plane, plane coordinates, profile (x,y)).
struct Point {
  double a = 0.0;
  double b = 0.0;
};

inline Point operator+(Point p, Point q) { return {p.a + q.a, p.b + q.b}; }
inline Point operator-(Point p, Point q) { return {p.a - q.a, p.b - q.b}; }
inline Point operator*(double s, Point p) { return {s * p.a, s * p.b}; }

// Euclidean chart helpers (no metric meaning on their own).
inline double chart_dot(Point p, Point q) { return p.a * q.a + p.b * q.b; }
inline double chart_norm(Point p) { return std::hypot(p.a, p.b); }
inline double chart_cross(Point p, Point q) { return p.a * q.b - p.b * q.a; }

/// Tangent vector: chart components attached to a base point.
struct TangentVector {
  Point at;
  double da = 0.0;
  double db = 0.0;

  TangentVector negated() const { return {at, -da, -db}; }
  Point delta() const { return {da, db}; }
};

// Diagonal metric coefficients at a point: ds^2 = g11 da^2 + g22 db^2.
// All shipped models have diagonal chart metrics.
struct MetricDiag {
  double g11 = 1.0;
  double g22 = 1.0;
};

inline double wrap_angle(double t) {
  // Wrap to (-pi, pi].
  t = std::fmod(t, 2.0 * kPi);
  if (t <= -kPi) t += 2.0 * kPi;
  if (t > kPi) t -= 2.0 * kPi;
  return t;
}

// Absolute angular distance on the circle, in [0, pi].
inline double angular_distance(double t1, double t2) {
  return std::abs(wrap_angle(t1 - t2));
}

inline double clamp_unit(double v, double slack, const char* what) {
  if (v > 1.0 + slack || v < -1.0 - slack)
    throw std::domain_error(std::string(what) + ": value " + std::to_string(v) +
                            " outside [-1,1] beyond slack");
  return std::min(1.0, std::max(-1.0, v));
}

// Metric-aware vector algebra through the diagonal metric.
template <class M>
double metric_dot(const M& m, const TangentVector& u, const TangentVector& v) {
  MetricDiag g = m.metric_diag(u.at);
  return g.g11 * u.da * v.da + g.g22 * u.db * v.db;
}

template <class M>
double metric_norm(const M& m, const TangentVector& v) {
  return std::sqrt(metric_dot(m, v, v));
}

template <class M>
TangentVector normalized(const M& m, const TangentVector& v) {
  double n = metric_norm(m, v);
  if (!(n > 0.0)) throw std::domain_error("normalized: zero tangent vector");
  return {v.at, v.da / n, v.db / n};
}

// Angle of a tangent vector in the orthonormal frame E1 = e_a/sqrt(g11),
// E2 = e_b/sqrt(g22); inverse map from an angle to a unit tangent vector.
template <class M>
double frame_angle(const M& m, const TangentVector& v) {
  MetricDiag g = m.metric_diag(v.at);
  return std::atan2(std::sqrt(g.g22) * v.db, std::sqrt(g.g11) * v.da);
}

template <class M>
TangentVector from_frame_angle(const M& m, const Point& p, double theta) {
  MetricDiag g = m.metric_diag(p);
  return {p, std::cos(theta) / std::sqrt(g.g11), std::sin(theta) / std::sqrt(g.g22)};
}

// Riemannian angle between two tangent vectors at the same base point.
template <class M>
double angle_between(const M& m, const TangentVector& u, const TangentVector& v) {
  double c = metric_dot(m, u, v) / (metric_norm(m, u) * metric_norm(m, v));
  return std::acos(clamp_unit(c, 1e-12, "angle_between"));
}

}  // namespace hadamard
