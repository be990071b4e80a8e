// Visual gauges rho_x, admissible quadruples and cross ratios, boundary maps
// between ideal boundaries, and metric derivatives between gauges via
// deterministic witness selection. All gauge arithmetic is done in log space
// (Gromov products) so that rho -> 0 degenerations stay representable.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hadamard/asymptotics.hpp"
#include "hadamard/core.hpp"
#include "hadamard/hyperbolic.hpp"

namespace hadamard {

// A gauge on the ideal boundary, stored as its log form: product(xi, eta) is
// the Gromov product -ln rho in [0, +inf] (+inf encodes rho = 0).
struct Gauge {
  std::function<double(const BoundaryPoint&, const BoundaryPoint&)> log_product;

  double product(const BoundaryPoint& xi, const BoundaryPoint& eta) const {
    return log_product(xi, eta);
  }
  double rho(const BoundaryPoint& xi, const BoundaryPoint& eta) const {
    return std::exp(-log_product(xi, eta));
  }
};

template <class M>
Gauge visual_gauge(const M& m, const Point& x) {
  return Gauge{[m, x](const BoundaryPoint& xi, const BoundaryPoint& eta) {
    if (same_boundary_point(xi, eta)) return kInf;
    return gromov_value(m, x, xi, eta);
  }};
}

template <class M>
double rho(const M& m, const Point& x, const BoundaryPoint& xi, const BoundaryPoint& eta) {
  if (same_boundary_point(xi, eta)) return 0.0;
  return std::exp(-gromov_value(m, x, xi, eta));
}

using Quadruple = std::array<BoundaryPoint, 4>;

// Admissibility (the set A): in every triple of the quadruple, at least two
// of the three pairs are algebraically visible (rho > 0).
inline bool is_admissible(const Gauge& g, const Quadruple& q) {
  bool vis[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) vis[i][j] = std::isfinite(g.product(q[i], q[j]));
  static constexpr int triples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (auto& t : triples) {
    int visible = vis[t[0]][t[1]] + vis[t[0]][t[2]] + vis[t[1]][t[2]];
    if (visible < 2) return false;
  }
  return true;
}

template <class M>
bool is_admissible(const M& m, const Point& x, const Quadruple& q) {
  return is_admissible(visual_gauge(m, x), q);
}

// Cross ratio with the 0/infinity conventions carried in log form.
struct CrossRatioValue {
  double log_value = 0.0;  // -inf encodes 0, +inf encodes infinity

  bool zero() const { return std::isinf(log_value) && log_value < 0; }
  bool infinite() const { return std::isinf(log_value) && log_value > 0; }
  double value() const { return std::exp(log_value); }
};

inline CrossRatioValue cross_ratio(const Gauge& g, const Quadruple& q) {
  if (!is_admissible(g, q))
    throw std::domain_error("cross_ratio: quadruple is not admissible");
  double p12 = g.product(q[0], q[1]), p34 = g.product(q[2], q[3]);
  double p13 = g.product(q[0], q[2]), p24 = g.product(q[1], q[3]);
  bool num_zero = std::isinf(p12) || std::isinf(p34);    // rho(1,2) rho(3,4) = 0
  bool den_zero = std::isinf(p13) || std::isinf(p24);
  if (num_zero && den_zero)
    throw std::logic_error("cross_ratio: 0/0 on an admissible quadruple (cannot happen)");
  if (num_zero) return {-kInf};
  if (den_zero) return {kInf};
  return {(p13 + p24) - (p12 + p34)};
}

template <class M>
CrossRatioValue cross_ratio(const M& m, const Point& x, const Quadruple& q) {
  return cross_ratio(visual_gauge(m, x), q);
}

// ---- metric derivative d rho / d rho' at z ----

inline std::vector<BoundaryPoint> default_witness_pool(int n = 64) {
  std::vector<BoundaryPoint> pool;
  pool.reserve(n);
  for (int i = 0; i < n; ++i) pool.push_back(BoundaryPoint::from_angle(2.0 * kPi * i / n));
  return pool;
}

namespace detail {

// Witness scan shared by the plain op and the cached solver engine.
// Inputs are log products against the pool: numv/denv for the evaluation
// point z, and full pool-pair tables. Picks the pair (i,j) minimizing the
// maximum log product over the six pair values (equivalently: maximizing the
// minimum rho), lowest (i,j) on ties, and evaluates ln R_z.
inline double derivative_from_tables(const std::vector<double>& numv,
                                     const std::vector<double>& denv,
                                     const std::vector<std::vector<double>>& num_pool,
                                     const std::vector<std::vector<double>>& den_pool) {
  const std::size_t n = numv.size();
  double best = kInf;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double mi = std::max(numv[i], denv[i]);
    if (mi >= best) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = std::max({mi, numv[j], denv[j], num_pool[i][j], den_pool[i][j]});
      if (s < best) {
        best = s;
        bi = i;
        bj = j;
      }
    }
  }
  if (!std::isfinite(best))
    throw std::runtime_error(
        "metric_derivative: no algebraically visible witness triple found in the pool");
  return (denv[bi] + denv[bj] - den_pool[bi][bj]) -
         (numv[bi] + numv[bj] - num_pool[bi][bj]);
}

}  // namespace detail

inline double log_metric_derivative(const Gauge& num, const Gauge& den, const BoundaryPoint& z,
                                    const std::vector<BoundaryPoint>& pool) {
  const std::size_t n = pool.size();
  if (n < 2) throw std::domain_error("metric_derivative: witness pool needs >= 2 points");
  std::vector<double> numv(n), denv(n);
  std::vector<std::vector<double>> num_pool(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> den_pool(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    numv[i] = num.product(z, pool[i]);
    denv[i] = den.product(z, pool[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      num_pool[i][j] = num.product(pool[i], pool[j]);
      den_pool[i][j] = den.product(pool[i], pool[j]);
    }
  }
  return detail::derivative_from_tables(numv, denv, num_pool, den_pool);
}

inline double metric_derivative(const Gauge& num, const Gauge& den, const BoundaryPoint& z,
                                const std::vector<BoundaryPoint>& pool) {
  return std::exp(log_metric_derivative(num, den, z, pool));
}

// ---- boundary maps ----

struct BoundaryMap {
  std::string kind;  // "identity" | "isometry" | "circle-map"
  bool moebius = false;
  std::function<BoundaryPoint(const BoundaryPoint&)> forward;
  std::function<BoundaryPoint(const BoundaryPoint&)> inverse;
  std::optional<MobiusReal> isometry;  // generating isometry when kind == "isometry"
};

inline BoundaryMap identity_boundary_map() {
  auto id = [](const BoundaryPoint& b) { return b; };
  return {"identity", true, id, id, std::nullopt};
}

// Boundary extension of an isometry g between two half-plane copies: ideal
// endpoint at o_X -> Moebius image -> direction angle at o_Y.
inline BoundaryMap isometry_boundary_map(const HyperbolicPlane& X, const HyperbolicPlane& Y,
                                         const MobiusReal& g) {
  MobiusReal ginv = g.inverse();
  auto fwd = [X, Y, g](const BoundaryPoint& b) {
    return BoundaryPoint::from_angle(Y.angle_of_ideal(g.apply_ideal(X.ideal_of_angle(b.theta))));
  };
  auto inv = [X, Y, ginv](const BoundaryPoint& b) {
    return BoundaryPoint::from_angle(
        X.angle_of_ideal(ginv.apply_ideal(Y.ideal_of_angle(b.theta))));
  };
  return {"isometry", true, fwd, inv, g};
}

// Circle map given as a monotone degree-one lift R -> R (e.g. t + eps sin t).
// The inverse is solved by bisection on the lift; requires |lift(t) - t| < pi.
inline BoundaryMap circle_boundary_map(std::function<double(double)> lift,
                                       bool moebius = false) {
  auto fwd = [lift](const BoundaryPoint& b) {
    return BoundaryPoint::from_angle(lift(b.theta));
  };
  auto inv = [lift](const BoundaryPoint& b) {
    double t = b.theta;
    double lo = t - kPi, hi = t + kPi;
    if (!(lift(lo) <= t && lift(hi) >= t))
      throw std::domain_error("circle map inverse: lift displacement exceeds pi");
    for (int it = 0; it < 120 && hi - lo > 1e-16; ++it) {
      double mid = 0.5 * (lo + hi);
      (lift(mid) < t ? lo : hi) = mid;
    }
    return BoundaryPoint::from_angle(0.5 * (lo + hi));
  };
  return {"circle-map", moebius, fwd, inv, std::nullopt};
}

// ---- pushforward gauge f_* rho_x on the target boundary ----

template <class MX>
Gauge pushforward_gauge(const BoundaryMap& f, const MX& mx, const Point& x) {
  return Gauge{[f, mx, x](const BoundaryPoint& eta, const BoundaryPoint& eta2) {
    BoundaryPoint a = f.inverse(eta), b = f.inverse(eta2);
    if (same_boundary_point(a, b)) return kInf;
    return gromov_value(mx, x, a, b);
  }};
}

// ---- distortion of the cross ratio under f ----

// Deterministic low-discrepancy quadruples: four Kronecker sequences on the
// circle; quadruples with any pairwise angular separation < 1e-3 are skipped,
// as are quadruples whose cross ratio degenerates to 0/infinity on either side.
template <class MX, class MY>
double moebius_distortion(const BoundaryMap& f, const MX& mx, const Point& x, const MY& my,
                          const Point& y, int samples) {
  static const double alphas[4] = {std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0,
                                   std::sqrt(5.0) - 2.0, std::sqrt(7.0) - 2.0};
  Gauge gx = visual_gauge(mx, x);
  Gauge gy = visual_gauge(my, y);
  double worst = 0.0;
  for (int s = 1; s <= samples; ++s) {
    Quadruple q;
    for (int c = 0; c < 4; ++c) {
      double frac = std::fmod(s * alphas[c] + 0.25 * c, 1.0);
      q[c] = BoundaryPoint::from_angle(2.0 * kPi * frac);
    }
    bool tight = false;
    for (int i = 0; i < 4 && !tight; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (angular_distance(q[i].theta, q[j].theta) < 1e-3) {
          tight = true;
          break;
        }
    if (tight) continue;
    Quadruple fq;
    for (int c = 0; c < 4; ++c) fq[c] = f.forward(q[c]);
    if (!is_admissible(gx, q) || !is_admissible(gy, fq)) continue;
    CrossRatioValue cx = cross_ratio(gx, q);
    CrossRatioValue cy = cross_ratio(gy, fq);
    if (!std::isfinite(cx.log_value) || !std::isfinite(cy.log_value)) continue;
    worst = std::max(worst, std::abs(cy.log_value - cx.log_value));
  }
  return worst;
}

}  // namespace hadamard
