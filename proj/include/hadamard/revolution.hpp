// Surface of revolution dx^2 + f(x)^2 dy^2 over a half-infinite strip
// [x_min, inf) x R. Geodesics are integrated numerically (adaptive RK);
// distance/connect solve the two-point problem by bisection shooting on the
// launch angle. The two negatively curved profiles ship alongside a flat
// constant stub used in degenerate tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hadamard/core.hpp"
#include "hadamard/integrate.hpp"

namespace hadamard {

struct Profile {
  std::string name;
  std::function<double(double)> f, df, ddf;
  double x_inf;  // open lower bound of the profile's natural domain
};

// f(x) = e^x / sqrt(e^{2x} - 1) = (1 - e^{-2x})^{-1/2}, x > 0.
// Derivatives in terms of u = e^{-2x}:
//   f'  = -u (1-u)^{-3/2}
//   f'' = 2u (1-u)^{-3/2} + 3u^2 (1-u)^{-5/2}
inline Profile example1_profile() {
  auto u_of = [](double x) { return std::exp(-2.0 * x); };
  return Profile{
      "example1",
      [u_of](double x) { return 1.0 / std::sqrt(1.0 - u_of(x)); },
      [u_of](double x) {
        double u = u_of(x);
        return -u * std::pow(1.0 - u, -1.5);
      },
      [u_of](double x) {
        double u = u_of(x);
        return 2.0 * u * std::pow(1.0 - u, -1.5) + 3.0 * u * u * std::pow(1.0 - u, -2.5);
      },
      0.0};
}

// f(x) = (1 - tau x^{-beta})^{-1/2} with beta = 2a/(1-a) and
// tau = (1-a)^{-beta}, defined for x > tau^{1/beta}; a in (0, 1/2).
inline Profile example2_profile(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::domain_error("example2_profile: alpha must lie in (0, 1/2)");
  double beta = 2.0 * alpha / (1.0 - alpha);
  double tau = std::pow(1.0 - alpha, -beta);
  double x_inf = std::pow(tau, 1.0 / beta);
  auto w_of = [tau, beta](double x) { return tau * std::pow(x, -beta); };
  return Profile{
      "example2",
      [w_of](double x) { return 1.0 / std::sqrt(1.0 - w_of(x)); },
      [w_of, beta](double x) {
        double w = w_of(x);  // d/dx w = -beta w / x
        return -0.5 * std::pow(1.0 - w, -1.5) * beta * w / x;
      },
      [w_of, beta](double x) {
        double w = w_of(x);
        double dw = -beta * w / x;
        double ddw = beta * (beta + 1.0) * w / (x * x);
        return 0.5 * std::pow(1.0 - w, -1.5) * ddw +
               0.75 * std::pow(1.0 - w, -2.5) * dw * dw;
      },
      x_inf};
}

inline Profile constant_profile(double c) {
  if (!(c > 0.0)) throw std::domain_error("constant_profile: c must be > 0");
  return Profile{"constant",
                 [c](double) { return c; },
                 [](double) { return 0.0; },
                 [](double) { return 0.0; },
                 -kInf};
}

class SurfaceOfRevolution {
 public:
  SurfaceOfRevolution(Profile profile, double x_min, double x_ref)
      : profile_(std::move(profile)), x_min_(x_min), x_ref_(x_ref) {
    if (!(x_min_ > profile_.x_inf))
      throw std::domain_error("SurfaceOfRevolution: x_min below the profile domain");
    if (!(x_ref_ >= x_min_))
      throw std::domain_error("SurfaceOfRevolution: reference point below x_min");
    if (!std::isfinite(profile_.f(x_min_)))
      throw std::domain_error("SurfaceOfRevolution: profile not finite at x_min");
  }

  static constexpr const char* kind() { return "revolution"; }

  const Profile& profile() const { return profile_; }
  double x_min() const { return x_min_; }
  Point base_point() const { return {x_ref_, 0.0}; }
  bool in_domain(const Point& p) const { return p.a >= x_min_; }

  MetricDiag metric_diag(const Point& p) const {
    require_domain(p);
    double f = profile_.f(p.a);
    return {1.0, f * f};
  }

  // Gauss curvature of dx^2 + f^2 dy^2 is -f''/f.
  double curvature(const Point& p) const {
    require_domain(p);
    return -profile_.ddf(p.a) / profile_.f(p.a);
  }

  // First integral f(x)^2 y' along geodesics (Clairaut).
  double clairaut_constant(const TangentVector& v) const {
    require_domain(v.at);
    double f = profile_.f(v.at.a);
    return f * f * v.db;
  }

  TangentVector flow(const TangentVector& v, double t) const {
    State4 s = integrate(v, t, nullptr);
    return {{s[0], s[1]}, s[2], s[3]};
  }

  // Accepted integration steps (parameter, state); used by shooting and by
  // drift diagnostics.
  std::vector<TracePoint> flow_trace(const TangentVector& v, double t) const {
    std::vector<TracePoint> trace;
    integrate(v, t, &trace);
    return trace;
  }

  double distance(const Point& p, const Point& q) const {
    if (p.a == q.a && p.b == q.b) return 0.0;
    return solve_bvp(p, q).length;
  }

  TangentVector connect(const Point& p, const Point& q) const {
    return solve_bvp(p, q).launch;
  }

 private:
  struct BvpSolution {
    TangentVector launch;
    double length;
  };

  void require_domain(const Point& p) const {
    if (!in_domain(p))
      throw std::domain_error("SurfaceOfRevolution: point left the chart domain (x < x_min)");
  }

  // Geodesic field of the warped metric:
  //   x'' = f f' y'^2,   y'' = -2 (f'/f) x' y'.
  State4 integrate(const TangentVector& v, double t, std::vector<TracePoint>* trace) const {
    require_domain(v.at);
    auto rhs = [this](const State4& s) -> State4 {
      double f = profile_.f(s[0]);
      double df = profile_.df(s[0]);
      return {s[2], s[3], f * df * s[3] * s[3], -2.0 * (df / f) * s[2] * s[3]};
    };
    auto guard = [this](double, const State4& s) {
      if (s[0] < x_min_)
        throw std::domain_error(
            "SurfaceOfRevolution: geodesic left the chart domain (x < x_min)");
    };
    IntegratorOptions opt;
    opt.rtol = 1e-10;
    opt.atol = 1e-14;
    opt.h_max = 0.5;
    return integrate_dp54(rhs, {v.at.a, v.at.b, v.da, v.db}, t, opt, trace, guard);
  }

  // Signed side of q relative to the geodesic launched at frame angle theta:
  // cross product in the orthonormal frame at the trace point nearest to q.
  // Also reports the nearest parameter and squared chart-frame distance.
  struct SideProbe {
    double cross;
    double t_near;
    double dist2;
  };

  SideProbe probe(const Point& p, double theta, double t_max, const Point& q) const {
    std::vector<TracePoint> trace;
    TangentVector v = from_frame_angle(*this, p, theta);
    try {
      integrate(v, t_max, &trace);
    } catch (const std::domain_error&) {
      // Left the chart: judge from the partial trajectory.
      if (trace.empty()) throw;
    }
    double best = kInf;
    std::size_t bi = 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const State4& s = trace[i].y;
      double fq = profile_.f(s[0]);
      double wa = q.a - s[0];
      double wb = (q.b - s[1]) * fq;  // frame components at the trace point
      double d2 = wa * wa + wb * wb;
      if (d2 < best) {
        best = d2;
        bi = i;
      }
    }
    const State4& s = trace[bi].y;
    double f = profile_.f(s[0]);
    double va = s[2], vb = s[3] * f;
    double wa = q.a - s[0], wb = (q.b - s[1]) * f;
    return {va * wb - vb * wa, trace[bi].t, best};
  }

  BvpSolution solve_bvp(const Point& p, const Point& q) const {
    require_domain(p);
    require_domain(q);
    double dx = q.a - p.a, dy = q.b - p.b;
    if (dx == 0.0 && dy == 0.0)
      throw std::domain_error("SurfaceOfRevolution::connect: coincident points");
    double f_hi = profile_.f(std::max(p.a, q.a));
    // Meridian-parallel-meridian comparison path bounds the distance above.
    double t_max = std::abs(dx) + f_hi * std::abs(dy) + 1e-6;
    double theta0 = std::atan2(profile_.f(p.a) * dy, dx);

    // Expand around the chart guess until the side flips.
    const double step = 0.15;
    double lo = theta0, hi = theta0;
    SideProbe plo = probe(p, theta0, t_max, q);
    SideProbe phi_probe = plo;
    bool bracketed = false;
    for (int j = 1; j <= 22 && !bracketed; ++j) {
      double cand = theta0 + ((j % 2 == 1) ? 1 : -1) * step * ((j + 1) / 2);
      SideProbe pc = probe(p, cand, t_max, q);
      if (cand > hi && pc.cross * phi_probe.cross < 0) {
        lo = hi;
        plo = phi_probe;
        hi = cand;
        phi_probe = pc;
        bracketed = true;
        break;
      }
      if (cand < lo && pc.cross * plo.cross < 0) {
        hi = lo;
        phi_probe = plo;
        lo = cand;
        plo = pc;
        bracketed = true;
        break;
      }
      if (cand > hi) {
        hi = cand;
        phi_probe = pc;
      } else if (cand < lo) {
        lo = cand;
        plo = pc;
      }
      // The flip may straddle the original guess (e.g. the target sits on the
      // launch ray itself): compare the two moving endpoints directly.
      if (plo.cross * phi_probe.cross < 0) bracketed = true;
    }
    if (!bracketed)
      throw std::runtime_error("SurfaceOfRevolution::connect: shooting bracket not found");

    SideProbe mid_probe{};
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
      mid = 0.5 * (lo + hi);
      mid_probe = probe(p, mid, t_max, q);
      if (mid_probe.cross * plo.cross <= 0.0) {
        hi = mid;
      } else {
        lo = mid;
        plo = mid_probe;
      }
    }
    mid = 0.5 * (lo + hi);
    mid_probe = probe(p, mid, t_max, q);

    // The bisection predicate is sampled at discrete trace points, which
    // biases its root by the step size; polish with a 2-d Newton iteration on
    // (launch angle, arrival time) against the chart endpoint.
    double theta_star = mid;
    double t_star = mid_probe.t_near;
    double res = kInf;
    for (int it = 0; it < 30; ++it) {
      TangentVector launch = from_frame_angle(*this, p, theta_star);
      State4 s = integrate(launch, t_star, nullptr);
      double ra = s[0] - q.a, rb = s[1] - q.b;
      res = std::hypot(ra, rb * profile_.f(s[0]));
      if (res < 1e-12) break;
      const double h = 1e-7;
      State4 sh = integrate(from_frame_angle(*this, p, theta_star + h), t_star, nullptr);
      double j11 = (sh[0] - s[0]) / h, j21 = (sh[1] - s[1]) / h;  // d endpoint / d theta
      double j12 = s[2], j22 = s[3];                              // d endpoint / d t
      double det = j11 * j22 - j12 * j21;
      if (std::abs(det) < 1e-14) break;
      double dth = (-ra * j22 + rb * j12) / det;
      double dt = (-rb * j11 + ra * j21) / det;
      theta_star += dth;
      t_star += dt;
      if (std::abs(dth) < 1e-13 && std::abs(dt) < 1e-13) break;
    }
    TangentVector launch = from_frame_angle(*this, p, theta_star);
    State4 s = integrate(launch, t_star, nullptr);
    res = std::hypot(s[0] - q.a, (s[1] - q.b) * profile_.f(s[0]));
    if (res > 1e-8 * (1.0 + t_star) || t_star < 0.0)
      throw std::runtime_error("SurfaceOfRevolution::connect: shooting residual " +
                               std::to_string(res) + " did not converge");
    return {launch, t_star};
  }

  Profile profile_;
  double x_min_;
  double x_ref_;
};

}  // namespace hadamard
