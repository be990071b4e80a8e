// Adaptive Dormand-Prince 5(4) integrator for small fixed-size ODE states.
// Used by the surface-of-revolution geodesic flow; the hyperbolic and
// Euclidean models have closed-form flows and never touch this.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hadamard {

using State4 = std::array<double, 4>;

struct IntegratorOptions {
  double rtol = 1e-11;
  double atol = 1e-13;
  double h_init = 1e-3;
  double h_min = 1e-12;
  double h_max = 1.0;
  std::size_t max_steps = 2'000'000;
};

struct TracePoint {
  double t;
  State4 y;
};

namespace detail {

inline State4 axpy(const State4& y, double h, const State4& k) {
  return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]};
}

}  // namespace detail

// Integrates y' = rhs(y) from t=0 to t=t_end (t_end may be negative).
// `watch` (optional) is called after every accepted step and may veto the
// trajectory by throwing (used for chart-domain guards). If `trace` is given
// the accepted steps are appended to it (including the initial state).
inline State4 integrate_dp54(const std::function<State4(const State4&)>& rhs,
                             State4 y, double t_end,
                             const IntegratorOptions& opt = {},
                             std::vector<TracePoint>* trace = nullptr,
                             const std::function<void(double, const State4&)>& watch = {}) {
  // Dormand-Prince 5(4) tableau (autonomous form, so the c nodes drop out).
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // Error weights: b - b_hat (embedded 4th order).
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  if (t_end == 0.0) {
    if (trace) trace->push_back({0.0, y});
    return y;
  }
  const double dir = t_end > 0 ? 1.0 : -1.0;
  const double T = std::abs(t_end);
  double t = 0.0;
  double h = std::min(opt.h_init, std::max(T, opt.h_min));
  if (trace) trace->push_back({0.0, y});

  State4 k1 = rhs(y);
  for (std::size_t step = 0; step < opt.max_steps; ++step) {
    if (t >= T) return y;
    h = std::min(h, T - t);
    h = std::min(h, opt.h_max);

    const double hd = dir * h;
    State4 y2 = detail::axpy(y, hd * a21, k1);
    State4 k2 = rhs(y2);
    State4 y3 = y;
    for (int i = 0; i < 4; ++i) y3[i] += hd * (a31 * k1[i] + a32 * k2[i]);
    State4 k3 = rhs(y3);
    State4 y4 = y;
    for (int i = 0; i < 4; ++i) y4[i] += hd * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    State4 k4 = rhs(y4);
    State4 y5 = y;
    for (int i = 0; i < 4; ++i)
      y5[i] += hd * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    State4 k5 = rhs(y5);
    State4 y6 = y;
    for (int i = 0; i < 4; ++i)
      y6[i] += hd * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    State4 k6 = rhs(y6);
    State4 ynew = y;
    for (int i = 0; i < 4; ++i)
      ynew[i] += hd * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    State4 k7 = rhs(ynew);  // FSAL

    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      double ei = hd * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                        e7 * k7[i]);
      double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      double r = ei / sc;
      err += r * r;
    }
    err = std::sqrt(err / 4.0);

    if (err <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;
      if (watch) watch(dir * t, y);
      if (trace) trace->push_back({dir * t, y});
    }
    double fac = 0.9 * std::pow(err > 0 ? err : 1e-10, -0.2);
    fac = std::min(5.0, std::max(0.2, fac));
    h *= fac;
    if (h < opt.h_min)
      throw std::runtime_error("integrate_dp54: step size underflow (stiff or singular field)");
  }
  throw std::runtime_error("integrate_dp54: max step count exceeded");
}

}  // namespace hadamard
