// Circumcenter extension of a boundary map f between two Hadamard models:
// the radial comparison function u_{x,y}, the geodesic-to-geodesic extension
// phi, and the circumcenter solver minimizing y -> max_xi u_{x,y}(xi) with a
// convex-hull optimality certificate on the extremal direction set.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hadamard/asymptotics.hpp"
#include "hadamard/core.hpp"
#include "hadamard/moebius.hpp"

namespace hadamard {

// ---- the radial comparison function u ----

// u_{x,y}(xi) = ln d(f_* rho_x)/d(rho_y) evaluated at f(xi).
template <class MX, class MY>
double u(const BoundaryMap& f, const MX& mx, const Point& x, const MY& my, const Point& y,
         const BoundaryPoint& xi, const std::vector<BoundaryPoint>& pool) {
  return log_metric_derivative(pushforward_gauge(f, mx, x), visual_gauge(my, y), f.forward(xi),
                               pool);
}

template <class MX, class MY>
double u(const BoundaryMap& f, const MX& mx, const Point& x, const MY& my, const Point& y,
         const BoundaryPoint& xi) {
  return u(f, mx, x, my, y, xi, default_witness_pool());
}

// ---- cached derivative engine ----
//
// The circumcenter solver evaluates u on a fixed grid of boundary points for
// many trial centers y. Everything that does not depend on y (pool preimages,
// source-side log products) is computed once; per trial center only the
// target-side products against the pool are refreshed.
template <class MX, class MY>
class DerivativeEngine {
 public:
  DerivativeEngine(const MX& mx, const Point& x, const MY& my, BoundaryMap f,
                   std::vector<BoundaryPoint> pool)
      : mx_(mx), my_(my), f_(std::move(f)), x_(x), pool_(std::move(pool)) {
    const std::size_t n = pool_.size();
    if (n < 2) throw std::domain_error("DerivativeEngine: witness pool needs >= 2 points");
    pre_.reserve(n);
    for (const auto& p : pool_) pre_.push_back(f_.inverse(p));
    num_pool_.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        num_pool_[i][j] = same_boundary_point(pre_[i], pre_[j])
                              ? kInf
                              : gromov_value(mx_, x_, pre_[i], pre_[j]);
  }

  int add_site(const BoundaryPoint& xi) {
    const std::size_t n = pool_.size();
    sites_.push_back(xi);
    fsites_.push_back(f_.forward(xi));
    std::vector<double> row(n);
    for (std::size_t j = 0; j < n; ++j)
      row[j] =
          same_boundary_point(xi, pre_[j]) ? kInf : gromov_value(mx_, x_, xi, pre_[j]);
    numv_.push_back(std::move(row));
    return static_cast<int>(sites_.size()) - 1;
  }

  std::size_t size() const { return sites_.size(); }
  const BoundaryPoint& site(int i) const { return sites_[i]; }
  const BoundaryPoint& image(int i) const { return fsites_[i]; }

  // u at every registered site for trial center y.
  std::vector<double> eval_all(const Point& y) const {
    const std::size_t n = pool_.size();
    std::vector<std::vector<double>> den_pool(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        den_pool[i][j] = same_boundary_point(pool_[i], pool_[j])
                             ? kInf
                             : gromov_value(my_, y, pool_[i], pool_[j]);
    std::vector<double> out(sites_.size());
    std::vector<double> denv(n);
    for (std::size_t s = 0; s < sites_.size(); ++s) {
      for (std::size_t j = 0; j < n; ++j)
        denv[j] = same_boundary_point(fsites_[s], pool_[j])
                      ? kInf
                      : gromov_value(my_, y, fsites_[s], pool_[j]);
      out[s] = detail::derivative_from_tables(numv_[s], denv, num_pool_, den_pool);
    }
    return out;
  }

 private:
  MX mx_;
  MY my_;
  BoundaryMap f_;
  Point x_;
  std::vector<BoundaryPoint> pool_;                // on the target boundary
  std::vector<BoundaryPoint> pre_;                 // f^{-1}(pool) on the source boundary
  std::vector<std::vector<double>> num_pool_;      // (pre_i | pre_j)_x, upper triangle
  std::vector<BoundaryPoint> sites_;               // evaluation grid on the source boundary
  std::vector<BoundaryPoint> fsites_;              // images of the grid
  std::vector<std::vector<double>> numv_;          // (site | pre_j)_x per site
};

// ---- geodesic extension phi ----

// Extends f to oriented geodesics: the image geodesic is the one joining the
// images of the two ideal endpoints; the point on it is fixed by the unique
// zero of t -> u_{x,gamma(t)}(xi_+), solved in closed form from the exact
// unit-speed drift u(gamma(t)) = u(gamma(0)) - t. The search is anchored at
// the balance point of the endpoint horofunctions relative to the target
// base point, which is base-independent data of the image geodesic.
template <class MX, class MY>
TangentVector phi(const BoundaryMap& f, const MX& mx, const MY& my, const TangentVector& v,
                  const std::vector<BoundaryPoint>& pool) {
  TangentVector vu = normalized(mx, v);
  const Point x = vu.at;
  BoundaryPoint xi_plus = boundary_from_ray(mx, vu);
  BoundaryPoint xi_minus = boundary_from_ray(mx, vu.negated());
  BoundaryPoint eta_plus = f.forward(xi_plus);
  BoundaryPoint eta_minus = f.forward(xi_minus);
  if (same_boundary_point(eta_plus, eta_minus))
    throw std::domain_error("phi: image ideal endpoints coincide");

  TangentVector anchor = detail::geodesic_between(my, eta_minus, eta_plus, my.base_point());
  const Point o = my.base_point();
  auto balance = [&](double s) {
    Point p = my.flow(anchor, s).at;
    return busemann_value(my, o, p, eta_minus) - busemann_value(my, o, p, eta_plus);
  };
  // Both horofunctions are affine along the geodesic (slopes +1 and -1), so
  // two samples determine the balance parameter exactly.
  double h0 = balance(0.0), h1 = balance(1.0);
  if (std::abs(h1 - h0) < 0.5)
    throw std::runtime_error("phi: endpoint horofunctions are not separating");
  TangentVector at_balance = my.flow(anchor, -h0 / (h1 - h0));

  // One step lands on the zero whenever the witness selection is stable; the
  // selection can switch along the geodesic (it is a discrete argmax), which
  // re-offsets the field by a constant, so iterate the exact-drift step.
  TangentVector foot = at_balance;
  double residual = u(f, mx, x, my, foot.at, xi_plus, pool);
  for (int it = 0; it < 50 && std::abs(residual) > 1e-9; ++it) {
    foot = my.flow(foot, residual);
    residual = u(f, mx, x, my, foot.at, xi_plus, pool);
  }
  if (std::abs(residual) > 1e-6)
    throw std::runtime_error("phi: foot point failed the zero-residual check");
  return foot;
}

template <class MX, class MY>
TangentVector phi(const BoundaryMap& f, const MX& mx, const MY& my, const TangentVector& v) {
  return phi(f, mx, my, v, default_witness_pool());
}

// ---- convex hull certificate on unit directions ----

struct HullCertificate {
  double margin = kInf;         // distance from the origin to the hull of the directions
  std::vector<int> support;     // indices of the realizing directions
  std::vector<double> weights;  // convex weights on `support`
};

namespace detail {

inline double segment_distance(Point a, Point b, double* t_out) {
  Point d = b - a;
  double n2 = chart_dot(d, d);
  double t = n2 > 0.0 ? std::clamp(-chart_dot(a, d) / n2, 0.0, 1.0) : 0.0;
  if (t_out) *t_out = t;
  return chart_norm(a + t * d);
}

// Largest angular gap of the direction set; > pi means the origin lies
// outside the convex hull of the corresponding unit vectors.
inline double largest_gap(std::vector<double> phis, int* lo = nullptr, int* hi = nullptr) {
  std::vector<int> idx(phis.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return phis[a] < phis[b]; });
  double best = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    double a = phis[idx[k]];
    double b = (k + 1 < idx.size()) ? phis[idx[k + 1]] : phis[idx[0]] + 2.0 * kPi;
    if (b - a > best) {
      best = b - a;
      if (lo) *lo = idx[k];
      if (hi) *hi = idx[(k + 1) % idx.size()];
    }
  }
  return best;
}

}  // namespace detail

// Fast signed test used inside the solver loop: 0 when the origin lies in the
// hull, otherwise the distance from the origin to the hull.
inline double hull_margin_from_angles(const std::vector<double>& phis) {
  if (phis.empty()) return kInf;
  if (phis.size() == 1) return 1.0;
  int lo = 0, hi = 0;
  double gap = detail::largest_gap(phis, &lo, &hi);
  if (gap <= kPi + 1e-12) return 0.0;
  Point a{std::cos(phis[lo]), std::sin(phis[lo])};
  Point b{std::cos(phis[hi]), std::sin(phis[hi])};
  return detail::segment_distance(a, b, nullptr);
}

// Full certificate: realizes the nearest hull point as an explicit convex
// combination. Inside the hull this is a zero combination supported on the
// lexicographically first antipodal pair or feasible triple.
inline HullCertificate hull_certificate_from_angles(const std::vector<double>& phis) {
  HullCertificate cert;
  const int n = static_cast<int>(phis.size());
  if (n == 0) return cert;
  std::vector<Point> pts;
  pts.reserve(n);
  for (double p : phis) pts.push_back({std::cos(p), std::sin(p)});
  if (n == 1) {
    cert.margin = 1.0;
    cert.support = {0};
    cert.weights = {1.0};
    return cert;
  }
  double gap = detail::largest_gap(phis);
  if (gap <= kPi + 1e-12) {
    // Origin inside: lexicographically first zero realization.
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (angular_distance(phis[i], phis[j]) >= kPi - 1e-9) {
          cert.margin = chart_norm(0.5 * (pts[i] + pts[j]));
          cert.support = {i, j};
          cert.weights = {0.5, 0.5};
          return cert;
        }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          // Solve li*pi + lj*pj + lk*pk = 0 with li + lj + lk = 1.
          Point ci = pts[i] - pts[k], cj = pts[j] - pts[k];
          double det = chart_cross(ci, cj);
          if (std::abs(det) < 1e-14) continue;
          double li = chart_cross(-1.0 * pts[k], cj) / det;
          double lj = chart_cross(ci, -1.0 * pts[k]) / det;
          double lk = 1.0 - li - lj;
          if (li < -1e-12 || lj < -1e-12 || lk < -1e-12) continue;
          li = std::max(li, 0.0);
          lj = std::max(lj, 0.0);
          lk = std::max(lk, 0.0);
          double s = li + lj + lk;
          li /= s;
          lj /= s;
          lk /= s;
          cert.margin = chart_norm(li * pts[i] + lj * pts[j] + lk * pts[k]);
          cert.support = {i, j, k};
          cert.weights = {li, lj, lk};
          return cert;
        }
  }
  // Origin outside (or degenerate): nearest point over all segments.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double t = 0.0;
      double d = detail::segment_distance(pts[i], pts[j], &t);
      if (d < cert.margin - 1e-15) {
        cert.margin = d;
        cert.support = {i, j};
        cert.weights = {1.0 - t, t};
      }
    }
  return cert;
}

template <class M>
HullCertificate hull_certificate(const M& m, const std::vector<TangentVector>& dirs) {
  std::vector<double> phis;
  phis.reserve(dirs.size());
  for (const auto& d : dirs) phis.push_back(frame_angle(m, normalized(m, d)));
  return hull_certificate_from_angles(phis);
}

// ---- circumcenter solver ----

struct CircumcenterOptions {
  int grid_size = 256;
  int pool_size = 64;
  double tol = 1e-7;
  // Width of the extremal band. Must dominate the evaluation noise of the
  // derivative field: negligible for Moebius maps, but witness-pool
  // quantization for strongly non-Moebius maps can reach ~1e-3 at pool 64.
  // Zero selects max(10 * tol, 1e-5).
  double band = 0.0;
  int max_iter = 10000;
  std::optional<Point> start;  // defaults to the target base point
};

struct ExtremalPoint {
  BoundaryPoint xi;
  double u = 0.0;
};

struct CircumcenterResult {
  Point center;
  double radius = 0.0;  // minimized value of max_xi u
  double min_u = 0.0;   // grid minimum of u at the center
  std::vector<ExtremalPoint> extremal_set;   // grid points within the extremal band
  std::vector<ExtremalPoint> extremal_reps;  // one representative per direction cluster
  HullCertificate certificate;               // over the extremal_set directions
  int iterations = 0;
  double final_step = 0.0;
  bool converged = false;
  bool flagged_max_iter = false;
  int sites = 0;  // grid size after refinement
};

namespace detail {

struct BandInfo {
  std::vector<int> in_band;      // site indices sorted by boundary angle
  std::vector<double> phis;      // frame angle at y of the direction toward each image
  std::vector<int> reps;         // cluster representatives (indices into the site list)
};

// Collect the near-extremal grid sites, their image directions at y, and one
// representative per angular cluster (clusters are runs of in-band sites
// separated by at most slightly more than one coarse grid spacing).
template <class MX, class MY>
BandInfo band_info(const DerivativeEngine<MX, MY>& eng, const MY& my, const Point& y,
                   const std::vector<double>& u, double band, double cluster_gap) {
  double top = *std::max_element(u.begin(), u.end());
  BandInfo info;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] >= top - band) info.in_band.push_back(static_cast<int>(i));
  std::sort(info.in_band.begin(), info.in_band.end(), [&](int a, int b) {
    return eng.site(a).theta < eng.site(b).theta;
  });
  info.phis.reserve(info.in_band.size());
  for (int i : info.in_band)
    info.phis.push_back(frame_angle(my, ray(my, y, eng.image(i))));

  const int k = static_cast<int>(info.in_band.size());
  if (k == 0) return info;
  // Split the angle-sorted band into clusters at large gaps (wrap-aware).
  std::vector<int> cluster_of(k, 0);
  int clusters = 1;
  for (int i = 1; i < k; ++i) {
    double gap = eng.site(info.in_band[i]).theta - eng.site(info.in_band[i - 1]).theta;
    if (gap > cluster_gap) ++clusters;
    cluster_of[i] = clusters - 1;
  }
  double wrap = eng.site(info.in_band[0]).theta + 2.0 * kPi -
                eng.site(info.in_band[k - 1]).theta;
  if (clusters > 1 && wrap <= cluster_gap) {
    // First and last runs are one cluster across the wrap point.
    for (int i = 0; i < k; ++i)
      if (cluster_of[i] == clusters - 1) cluster_of[i] = 0;
    --clusters;
  }
  info.reps.assign(clusters, -1);
  for (int i = 0; i < k; ++i) {
    int c = cluster_of[i];
    if (info.reps[c] < 0 || u[info.in_band[i]] > u[info.reps[c]])
      info.reps[c] = info.in_band[i];
  }
  return info;
}

}  // namespace detail

// Minimizes y -> max_xi u_{x,y}(xi) over the target space. Subgradient
// descent toward the mean extremal image direction with halving steps, a
// local linear minimax polish over the extremal clusters, and one 4x grid
// refinement around the extremal directions after first convergence.
template <class MX, class MY>
CircumcenterResult circumcenter(const BoundaryMap& f, const MX& mx, const Point& x,
                                const MY& my, const CircumcenterOptions& opts = {}) {
  if (opts.grid_size < 8) throw std::domain_error("circumcenter: grid_size must be >= 8");
  DerivativeEngine<MX, MY> eng(mx, x, my, f, default_witness_pool(opts.pool_size));
  const int N = opts.grid_size;
  for (int j = 0; j < N; ++j)
    eng.add_site(BoundaryPoint::from_angle(2.0 * kPi * j / N));

  const double coarse = 2.0 * kPi / N;
  const double band = opts.band > 0.0 ? opts.band : std::max(10.0 * opts.tol, 1e-5);
  const double cluster_gap = 1.3 * coarse;

  Point y = opts.start.value_or(my.base_point());
  std::vector<double> uvals = eng.eval_all(y);
  double G = *std::max_element(uvals.begin(), uvals.end());
  double step = 0.5 * std::max(G, 0.1);

  CircumcenterResult res;
  bool refined = false;

  auto improves = [](double cand, double cur) { return cand < cur - 1e-13 * (1.0 + std::abs(cur)); };

  while (res.iterations < opts.max_iter) {
    ++res.iterations;
    detail::BandInfo info = detail::band_info(eng, my, y, uvals, band, cluster_gap);
    double margin = hull_margin_from_angles(info.phis);

    if (margin < opts.tol && step < opts.tol) {
      if (!refined) {
        // One refinement round: sample at quarter spacing around each
        // extremal representative, then re-converge.
        refined = true;
        std::vector<double> existing;
        for (std::size_t i = 0; i < eng.size(); ++i)
          existing.push_back(eng.site(static_cast<int>(i)).theta);
        std::sort(existing.begin(), existing.end());
        for (int r : info.reps) {
          double t0 = eng.site(r).theta;
          for (int kk = -4; kk <= 4; ++kk) {
            if (kk == 0) continue;
            double t = wrap_angle(t0 + kk * coarse / 4.0);
            auto it = std::lower_bound(existing.begin(), existing.end(), t - 1e-9);
            if (it != existing.end() && std::abs(*it - t) < 1e-9) continue;
            eng.add_site(BoundaryPoint::from_angle(t));
            existing.insert(std::upper_bound(existing.begin(), existing.end(), t), t);
          }
        }
        uvals = eng.eval_all(y);
        G = *std::max_element(uvals.begin(), uvals.end());
        step = std::max(step, 100.0 * opts.tol);
        continue;
      }
      res.converged = true;
      break;
    }

    // Subgradient move toward the mean extremal image direction.
    bool moved = false;
    Point gsum{0.0, 0.0};
    for (int r : info.reps) {
      double p = frame_angle(my, ray(my, y, eng.image(r)));
      gsum = gsum + Point{std::cos(p), std::sin(p)};
    }
    if (chart_norm(gsum) > 1e-12) {
      TangentVector d = from_frame_angle(my, y, std::atan2(gsum.b, gsum.a));
      Point cand = my.flow(d, step).at;
      std::vector<double> ucand = eng.eval_all(cand);
      double Gc = *std::max_element(ucand.begin(), ucand.end());
      if (improves(Gc, G)) {
        y = cand;
        uvals = std::move(ucand);
        G = Gc;
        moved = true;
      }
    }

    // Local linear minimax polish over the extremal clusters once the
    // subgradient step has stalled at small scale.
    if (!moved && step < 0.05 && info.reps.size() >= 2) {
      std::vector<int> reps = info.reps;
      std::sort(reps.begin(), reps.end(),
                [&](int a, int b) { return uvals[a] > uvals[b]; });
      if (reps.size() > 12) reps.resize(12);
      const int nr = static_cast<int>(reps.size());
      std::vector<Point> g(nr);
      std::vector<double> uu(nr);
      for (int i = 0; i < nr; ++i) {
        double p = frame_angle(my, ray(my, y, eng.image(reps[i])));
        g[i] = {std::cos(p), std::sin(p)};
        uu[i] = uvals[reps[i]];
      }
      const double trust = 10.0 * step;
      auto predict = [&](Point d) {
        double v = -kInf;
        for (int i = 0; i < nr; ++i) v = std::max(v, uu[i] - chart_dot(g[i], d));
        return v;
      };
      Point best_d{0.0, 0.0};
      double best_pred = G;
      auto consider = [&](Point d) {
        double norm = chart_norm(d);
        if (norm < 1e-16) return;
        if (norm > trust) d = (trust / norm) * d;
        double v = predict(d);
        if (v < best_pred) {
          best_pred = v;
          best_d = d;
        }
      };
      for (int a = 0; a < nr; ++a)
        for (int b = a + 1; b < nr; ++b) {
          Point gd = g[b] - g[a];
          double n2 = chart_dot(gd, gd);
          if (n2 < 1e-18) continue;
          Point deq = ((uu[b] - uu[a]) / n2) * gd;
          consider(deq);
          Point w = -1.0 * (g[a] + g[b]);
          double wn = chart_norm(w);
          if (wn > 1e-9) {
            double rem = trust - chart_norm(deq);
            if (rem > 0.0) consider(deq + (rem / wn) * w);
          }
          for (int c = b + 1; c < nr; ++c) {
            Point ga = g[b] - g[a], gb = g[c] - g[a];
            double det = chart_cross(ga, gb);
            if (std::abs(det) < 1e-14) continue;
            Point rhs{uu[b] - uu[a], uu[c] - uu[a]};
            // Rows of the 2x2 system are ga and gb.
            Point d{(rhs.a * gb.b - rhs.b * ga.b) / det,
                    (ga.a * rhs.b - gb.a * rhs.a) / det};
            consider(d);
          }
        }
      if (chart_norm(best_d) > 1e-16 && improves(best_pred, G)) {
        double norm = chart_norm(best_d);
        TangentVector dv = from_frame_angle(my, y, std::atan2(best_d.b, best_d.a));
        Point cand = my.flow(dv, norm).at;
        std::vector<double> ucand = eng.eval_all(cand);
        double Gc = *std::max_element(ucand.begin(), ucand.end());
        if (improves(Gc, G)) {
          y = cand;
          uvals = std::move(ucand);
          G = Gc;
          moved = true;
        }
      }
    }

    // Compass fallback: piecewise evaluation noise can fake a corner that the
    // cluster-based candidates cannot leave. Only fires while the certificate
    // is unsatisfied, so certified endgames (margin 0) never pay for it.
    if (!moved && margin >= opts.tol && step >= opts.tol) {
      Point best_cand{};
      std::vector<double> best_u;
      double best_G = G;
      for (int c = 0; c < 8; ++c) {
        TangentVector d = from_frame_angle(my, y, 2.0 * kPi * c / 8.0);
        Point cand = my.flow(d, step).at;
        std::vector<double> ucand = eng.eval_all(cand);
        double Gc = *std::max_element(ucand.begin(), ucand.end());
        if (improves(Gc, best_G)) {
          best_G = Gc;
          best_cand = cand;
          best_u = std::move(ucand);
        }
      }
      if (!best_u.empty()) {
        y = best_cand;
        uvals = std::move(best_u);
        G = best_G;
        moved = true;
      }
    }

    if (!moved) {
      step *= 0.5;
      if (step < 1e-12) break;
    }
  }
  res.flagged_max_iter = res.iterations >= opts.max_iter;

  detail::BandInfo fin = detail::band_info(eng, my, y, uvals, band, cluster_gap);
  res.center = y;
  res.radius = G;
  res.min_u = *std::min_element(uvals.begin(), uvals.end());
  res.final_step = step;
  res.sites = static_cast<int>(eng.size());
  for (int i : fin.in_band) res.extremal_set.push_back({eng.site(i), uvals[i]});
  for (int r : fin.reps) res.extremal_reps.push_back({eng.site(r), uvals[r]});
  res.certificate = hull_certificate_from_angles(fin.phis);
  return res;
}

// ---- derived diagnostics ----

// Quasi-isometry defect of the center map F against the radius bound
// |d_Y(F(x), F(x')) - d_X(x, x')| <= M(x) + M(x').
struct QiDefect {
  double defect = 0.0;
  double bound = 0.0;
};

template <class MX, class MY>
QiDefect qi_defect(const MX& mx, const MY& my, const Point& x1, const Point& x2,
                   const CircumcenterResult& r1, const CircumcenterResult& r2) {
  return {std::abs(my.distance(r1.center, r2.center) - mx.distance(x1, x2)),
          r1.radius + r2.radius};
}

// For every extremal direction representative xi*, the antipode of xi* at x
// should map to the antipode of f(xi*) at the center. Returns the worst
// angular deviation.
template <class MX, class MY>
double extremal_antipode_check(const BoundaryMap& f, const MX& mx, const Point& x,
                               const MY& my, const CircumcenterResult& r) {
  double worst = 0.0;
  for (const auto& rep : r.extremal_reps) {
    BoundaryPoint lhs = f.forward(antipode(mx, x, rep.xi));
    BoundaryPoint rhs = antipode(my, r.center, f.forward(rep.xi));
    worst = std::max(worst, angular_distance(lhs.theta, rhs.theta));
  }
  return worst;
}

}  // namespace hadamard
