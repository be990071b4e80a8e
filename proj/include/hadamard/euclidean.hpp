// Flat plane model. Serves as the degenerate (curvature 0) end of the model
// family: every closed form is elementary, which makes it the cheap oracle
// for the generic asymptotic routines.
#pragma once

#include <cmath>
#include <stdexcept>

#include "hadamard/core.hpp"

namespace hadamard {

class EuclideanPlane {
 public:
  static constexpr const char* kind() { return "euclidean"; }

  Point base_point() const { return {0.0, 0.0}; }
  bool in_domain(const Point&) const { return true; }
  MetricDiag metric_diag(const Point&) const { return {1.0, 1.0}; }
  double curvature(const Point&) const { return 0.0; }

  double distance(const Point& p, const Point& q) const {
    return std::hypot(q.a - p.a, q.b - p.b);
  }

  TangentVector flow(const TangentVector& v, double t) const {
    return {{v.at.a + t * v.da, v.at.b + t * v.db}, v.da, v.db};
  }

  TangentVector connect(const Point& p, const Point& q) const {
    double n = distance(p, q);
    if (!(n > 0.0)) throw std::domain_error("EuclideanPlane::connect: coincident points");
    return {p, (q.a - p.a) / n, (q.b - p.b) / n};
  }

  // Closed forms consumed by the asymptotics layer.
  // A boundary direction is carried unchanged to any base point.
  TangentVector ray_closed_form(const Point& x, double theta_at_o) const {
    return from_frame_angle(*this, x, theta_at_o);
  }

  double boundary_angle_of_ray(const TangentVector& v) const {
    return frame_angle(*this, normalized(*this, v));
  }

  // B(p, q, xi) = lim_t d(q, p + t u) - t = -<q - p, u> for the unit
  // direction u of the ray; exact, no truncation needed.
  double busemann_closed_form(const Point& p, const Point& q, double theta_at_o) const {
    TangentVector u = ray_closed_form(p, theta_at_o);
    return -((q.a - p.a) * u.da + (q.b - p.b) * u.db);
  }

  // (xi|eta)_x is 0 for antipodal directions and +inf otherwise: the iterate
  // t(1 - sin(dtheta/2)... ) = t(1 - |u-v|/2) diverges unless |u-v| = 2.
  double gromov_closed_form(const Point&, double theta1, double theta2) const {
    return angular_distance(theta1, theta2) >= kPi - 1e-14 ? 0.0 : kInf;
  }
};

}  // namespace hadamard
