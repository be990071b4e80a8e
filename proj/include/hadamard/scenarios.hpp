// Registered scenarios for the harness. Each scenario declares its config
// schema (parameter keys with embedded defaults) and emits one report row per
// check. run_scenario seeds the RNG from the config, times the run, and turns
// scenario-internal exceptions into failed rows instead of crashes; config
// parsing and schema validation errors stay exceptions for the CLI to map to
// its config-error exit code.
#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hadamard/circumcenter.hpp"
#include "hadamard/config.hpp"
#include "hadamard/hyperbolic.hpp"
#include "hadamard/moebius.hpp"
#include "hadamard/report.hpp"
#include "hadamard/revolution.hpp"

#ifndef HADAMARD_KIT_VERSION
#define HADAMARD_KIT_VERSION "unversioned"
#endif

namespace hadamard {

struct ParamSpec {
  std::string key;  // full dotted key, e.g. "params.tolerance"
  ConfigValue def;  // embedded default; also fixes the expected type
  bool integer = false;
  std::string doc;
};

struct ScenarioSpec {
  std::string name;
  std::string summary;
  std::vector<std::string> input_columns;
  std::vector<ParamSpec> params;
  std::function<void(const Config&, std::mt19937_64&, ScenarioReport&)> run;
};

namespace detail {

inline std::string num(double v) { return format_double(v); }

// Two-sided check: |computed - expected| <= tol.
inline void row_eq(ScenarioReport& rep, std::vector<std::string> inputs, double computed,
                   double expected, double tol) {
  CaseRow r;
  r.case_id = static_cast<int>(rep.rows.size());
  r.inputs = std::move(inputs);
  r.computed = computed;
  r.expected = expected;
  r.abs_residual = std::abs(computed - expected);
  r.tolerance = tol;
  r.pass = std::isfinite(computed) && r.abs_residual <= tol;
  rep.rows.push_back(std::move(r));
}

// One-sided check: computed >= expected - tol (residual is the shortfall).
inline void row_ge(ScenarioReport& rep, std::vector<std::string> inputs, double computed,
                   double expected, double tol) {
  CaseRow r;
  r.case_id = static_cast<int>(rep.rows.size());
  r.inputs = std::move(inputs);
  r.computed = computed;
  r.expected = expected;
  r.abs_residual = std::max(0.0, expected - computed);
  r.tolerance = tol;
  r.pass = std::isfinite(computed) && r.abs_residual <= tol;
  rep.rows.push_back(std::move(r));
}

// One-sided check: computed <= expected + tol (residual is the overshoot).
inline void row_le(ScenarioReport& rep, std::vector<std::string> inputs, double computed,
                   double expected, double tol) {
  CaseRow r;
  r.case_id = static_cast<int>(rep.rows.size());
  r.inputs = std::move(inputs);
  r.computed = computed;
  r.expected = expected;
  r.abs_residual = std::max(0.0, computed - expected);
  r.tolerance = tol;
  r.pass = std::isfinite(computed) && r.abs_residual <= tol;
  rep.rows.push_back(std::move(r));
}

// Directional gap between tangent vectors whose base points agree only up to
// a numerical tolerance (frame angles are intrinsic to each point).
template <class M>
double dir_gap(const M& m, const TangentVector& a, const TangentVector& b) {
  return angular_distance(frame_angle(m, a), frame_angle(m, b));
}

// Base-point distance plus direction gap, the vector comparison used by the
// phi rows.
template <class M>
double vec_gap(const M& m, const TangentVector& a, const TangentVector& b) {
  return std::max(m.distance(a.at, b.at), dir_gap(m, a, b));
}

inline MobiusReal random_isometry(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> tr(-1.0, 1.0), sc(-0.7, 0.7), rot(-kPi, kPi);
  return MobiusReal::translation(tr(rng))
      .compose(MobiusReal::scaling(std::exp(sc(rng))))
      .compose(MobiusReal::rotation_about_i(rot(rng)));
}

// --- gromov-angle: product vs boundary angle at the reference point ---------
inline void run_gromov_angle(const Config& cfg, std::mt19937_64&, ScenarioReport& rep) {
  double kappa = cfg.get_number("params.curvature");
  double tol = cfg.get_number("params.tolerance");
  HyperbolicPlane m(kappa);
  double k = std::sqrt(-kappa);
  Point o = m.base_point();
  for (double deg : cfg.get_numbers("params.alphas_deg")) {
    double a = deg * kPi / 180.0;
    LimitValue it = gromov_product(m, o, BoundaryPoint::from_angle(0.0),
                                   BoundaryPoint::from_angle(a));
    double law = -std::log(std::sin(a / 2.0)) / k;
    row_eq(rep, {num(a)}, it.value, law, tol);
  }
}

// --- crossratio-invariance: base-point independence of the cross-ratio ------
inline void run_crossratio(const Config& cfg, std::mt19937_64& rng, ScenarioReport& rep) {
  int pairs = cfg.get_int("params.base_pairs");
  int quads = cfg.get_int("params.quadruples");
  double min_sep = cfg.get_number("params.min_sep");
  double tol = cfg.get_number("params.tolerance");
  HyperbolicPlane m;
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> ax(-1.0, 1.0), bx(0.5, 2.0);
  std::uniform_real_distribution<double> dist(0.0, cfg.get_number("params.max_base_dist"));
  for (int p = 0; p < pairs; ++p) {
    Point x{ax(rng), bx(rng)};
    double d = dist(rng);
    Point y = m.flow(from_frame_angle(m, x, angle(rng)), d).at;
    Gauge gx = visual_gauge(m, x), gy = visual_gauge(m, y);
    int done = 0;
    while (done < quads) {
      Quadruple q;
      for (auto& b : q) b = BoundaryPoint::from_angle(angle(rng));
      bool ok = true;
      for (int i = 0; i < 4 && ok; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (angular_distance(q[i].theta, q[j].theta) < min_sep) {
            ok = false;
            break;
          }
      if (!ok) continue;
      row_eq(rep, {num(d), std::to_string(done)}, cross_ratio(gy, q).log_value,
             cross_ratio(gx, q).log_value, tol);
      ++done;
    }
  }
}

// --- derivative-identities: chain rule, pair product, exponential form ------
inline void run_derivative_identities(const Config& cfg, std::mt19937_64& rng,
                                      ScenarioReport& rep) {
  int triples = cfg.get_int("params.triples");
  double tol = cfg.get_number("params.tolerance");
  HyperbolicPlane m;
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> ax(-1.2, 1.2), bx(0.5, 2.0);
  std::vector<BoundaryPoint> pool = default_witness_pool(cfg.get_int("params.pool_size"));

  for (int i = 0; i < triples; ++i) {
    std::string id = std::to_string(i);
    Point x{ax(rng), bx(rng)}, y{ax(rng), bx(rng)}, z{ax(rng), bx(rng)};
    Gauge gx = visual_gauge(m, x), gy = visual_gauge(m, y), gz = visual_gauge(m, z);
    BoundaryPoint b = BoundaryPoint::from_angle(angle(rng));

    // Chain rule through the intermediate gauge; tolerance scales with the
    // magnitude of the target value (relative comparison).
    double lxy = log_metric_derivative(gx, gy, b, pool);
    double lyz = log_metric_derivative(gy, gz, b, pool);
    double lxz = log_metric_derivative(gx, gz, b, pool);
    row_eq(rep, {"chain", id}, lxy + lyz, lxz, tol * std::max(1.0, std::abs(lxz)));

    // Pair product: R(xi) R(eta) equals the squared gauge ratio on the pair.
    BoundaryPoint e1 = BoundaryPoint::from_angle(angle(rng));
    BoundaryPoint e2 = BoundaryPoint::from_angle(angle(rng));
    while (angular_distance(e1.theta, e2.theta) < 1e-2)
      e2 = BoundaryPoint::from_angle(angle(rng));
    double lhs = log_metric_derivative(gx, gy, e1, pool) +
                 log_metric_derivative(gx, gy, e2, pool);
    double rhs = 2.0 * (gy.product(e1, e2) - gx.product(e1, e2));
    row_eq(rep, {"pair-product", id}, lhs, rhs, tol * std::max(1.0, std::abs(rhs)));

    // Exponential form: the derivative equals e^{B(x,y,xi)} (relative).
    double r = metric_derivative(gx, gy, b, pool);
    double eb = std::exp(busemann_value(m, x, y, b));
    row_eq(rep, {"exp-form", id}, r, eb, tol * eb);
  }

  // max/min cancellation of log R over a fine grid for the identity map: the
  // top and bottom of the field are symmetric about zero.
  int grid = cfg.get_int("params.grid_size");
  DerivativeEngine<HyperbolicPlane, HyperbolicPlane> eng(m, m.base_point(), m,
                                                         identity_boundary_map(), pool);
  for (int j = 0; j < grid; ++j)
    eng.add_site(BoundaryPoint::from_angle(2.0 * kPi * j / grid));
  Point y = m.flow(from_frame_angle(m, m.base_point(), 0.77), 1.5).at;
  double top = -kInf, bot = kInf;
  for (double v : eng.eval_all(y)) {
    top = std::max(top, v);
    bot = std::min(bot, v);
  }
  row_eq(rep, {"grid-cancellation", "-"}, top, -bot,
         cfg.get_number("params.grid_tolerance"));
}

// --- phi-properties: identity, flip, flow conjugacy, differential, compose --
inline void run_phi_properties(const Config& cfg, std::mt19937_64& rng, ScenarioReport& rep) {
  int samples = cfg.get_int("params.samples");
  int conj_samples = cfg.get_int("params.conj_samples");
  HyperbolicPlane m;
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> ax(-1.5, 1.5), bx(0.4, 2.5), tpar(-2.0, 2.0);
  auto rand_vec = [&]() {
    Point p{ax(rng), bx(rng)};
    return from_frame_angle(m, p, angle(rng));
  };

  BoundaryMap id = identity_boundary_map();
  MobiusReal g1 = MobiusReal::translation(0.8).compose(MobiusReal::scaling(1.6));
  MobiusReal g2 = MobiusReal::rotation_about_i(1.2).compose(MobiusReal::scaling(0.6));
  MobiusReal g3 = MobiusReal::translation(-0.5).compose(MobiusReal::rotation_about_i(2.1));
  BoundaryMap f1 = isometry_boundary_map(m, m, g1);
  BoundaryMap f2 = isometry_boundary_map(m, m, g2);
  BoundaryMap f3 = isometry_boundary_map(m, m, g3);

  double tol_id = cfg.get_number("params.tol_identity");
  for (int i = 0; i < samples; ++i) {
    TangentVector v = rand_vec();
    row_eq(rep, {"identity", std::to_string(i)}, vec_gap(m, phi(id, m, m, v), v), 0.0, tol_id);
  }

  double tol_flip = cfg.get_number("params.tol_flip");
  for (int i = 0; i < samples; ++i) {
    const BoundaryMap& f = (i % 2 == 0) ? f1 : f2;
    TangentVector v = rand_vec();
    TangentVector w = phi(f, m, m, v);
    TangentVector wr = phi(f, m, m, v.negated());
    row_eq(rep, {"flip", std::to_string(i)}, vec_gap(m, wr, w.negated()), 0.0, tol_flip);
  }

  // Conjugacy with the geodesic flow; exact for the maps the extension covers
  // (Moebius maps, which between hyperbolic planes are isometry-induced).
  double tol_conj = cfg.get_number("params.tol_conjugacy");
  const BoundaryMap* maps[] = {&f1, &f2, &f3, &id};
  for (int i = 0; i < conj_samples; ++i) {
    const BoundaryMap& f = *maps[i % 4];
    TangentVector v = rand_vec();
    double t = tpar(rng);
    TangentVector lhs = phi(f, m, m, m.flow(v, t));
    TangentVector rhs = m.flow(phi(f, m, m, v), t);
    row_eq(rep, {"flow-conjugacy", std::to_string(i)}, vec_gap(m, lhs, rhs), 0.0, tol_conj);
  }

  double tol_dg = cfg.get_number("params.tol_differential");
  for (int i = 0; i < samples; ++i) {
    const BoundaryMap& f = (i % 2 == 0) ? f1 : f2;
    const MobiusReal& g = (i % 2 == 0) ? g1 : g2;
    TangentVector v = rand_vec();
    row_eq(rep, {"differential", std::to_string(i)},
           vec_gap(m, phi(f, m, m, v), m.apply_isometry(g, v)), 0.0, tol_dg);
  }

  // Functoriality: the extension of a composite equals the composite of the
  // extensions (apply f1 on the boundary first, then f2).
  double tol_comp = cfg.get_number("params.tol_compose");
  BoundaryMap f21 = isometry_boundary_map(m, m, g2.compose(g1));
  for (int i = 0; i < samples; ++i) {
    TangentVector v = rand_vec();
    row_eq(rep, {"compose", std::to_string(i)},
           vec_gap(m, phi(f21, m, m, v), phi(f2, m, m, phi(f1, m, m, v))), 0.0, tol_comp);
  }
}

// --- isometry-recovery: the solver reproduces the generating isometry -------
inline void run_isometry_recovery(const Config& cfg, std::mt19937_64& rng,
                                  ScenarioReport& rep) {
  int points = cfg.get_int("params.points");
  double tol_r = cfg.get_number("params.tol_radius");
  double tol_c = cfg.get_number("params.tol_center");
  double tol_m = cfg.get_number("params.tol_margin");
  HyperbolicPlane m;
  MobiusReal g = random_isometry(rng);
  BoundaryMap f = isometry_boundary_map(m, m, g);
  std::uniform_real_distribution<double> ax(-1.0, 1.0), bx(0.6, 1.8);
  for (int j = 0; j < points; ++j) {
    std::string id = std::to_string(j);
    Point x{ax(rng), bx(rng)};
    CircumcenterResult r = circumcenter(f, m, x, m);
    if (!r.converged) throw std::runtime_error("solver did not converge at point " + id);
    row_eq(rep, {"radius", id}, r.radius, 0.0, tol_r);
    row_eq(rep, {"center_error", id}, m.distance(r.center, m.apply_isometry(g, x)), 0.0, tol_c);
    row_eq(rep, {"hull_margin", id}, r.certificate.margin, 0.0, tol_m);
  }
}

// --- qi-bound: displacement defect against the radius sum -------------------
inline void run_qi_bound(const Config& cfg, std::mt19937_64& rng, ScenarioReport& rep) {
  int points = cfg.get_int("params.points");
  double slack = cfg.get_number("params.slack");
  double tol_const = cfg.get_number("params.tol_constants");
  HyperbolicPlane m;

  // The two reference Gromov-product values behind the defect cap: the
  // products at boundary angles pi/2 and 2 pi/3 at the reference point.
  Point o = m.base_point();
  LimitValue c1 = gromov_product(m, o, BoundaryPoint::from_angle(0.0),
                                 BoundaryPoint::from_angle(kPi / 2));
  LimitValue c2 = gromov_product(m, o, BoundaryPoint::from_angle(0.0),
                                 BoundaryPoint::from_angle(2.0 * kPi / 3));
  row_eq(rep, {"ln_sqrt2", "-"}, c1.value, std::log(std::sqrt(2.0)), tol_const);
  row_eq(rep, {"ln_2_over_sqrt3", "-"}, c2.value, std::log(2.0 / std::sqrt(3.0)), tol_const);

  MobiusReal g = random_isometry(rng);
  BoundaryMap f = isometry_boundary_map(m, m, g);
  std::uniform_real_distribution<double> ax(-1.0, 1.0), bx(0.6, 1.8);
  std::vector<Point> xs;
  std::vector<CircumcenterResult> rs;
  for (int j = 0; j < points; ++j) {
    Point x{ax(rng), bx(rng)};
    CircumcenterResult r = circumcenter(f, m, x, m);
    if (!r.converged)
      throw std::runtime_error("solver did not converge at point " + std::to_string(j));
    xs.push_back(x);
    rs.push_back(std::move(r));
  }
  // Consecutive pairs: the defect is bounded by the radius sum, and for a
  // Moebius map by twice ln sqrt(2).
  const double cap = 2.0 * std::log(std::sqrt(2.0));
  for (int j = 0; j < points; ++j) {
    int k = (j + 1) % points;
    QiDefect qd = qi_defect(m, m, xs[j], xs[k], rs[j], rs[k]);
    std::string id = std::to_string(j);
    row_le(rep, {"defect_vs_radius_sum", id}, qd.defect, qd.bound, slack);
    row_le(rep, {"defect_vs_moebius_cap", id}, qd.defect, cap, slack);
  }
}

// --- revolution-visibility: boundary product dichotomy on the two profiles --
inline void run_revolution_visibility(const Config& cfg, std::mt19937_64&,
                                      ScenarioReport& rep) {
  const double times[] = {5.0, 10.0, 20.0, 40.0, 80.0};
  double tol_tail = cfg.get_number("params.tol_tail");

  // Asymptotically flat profile, launched far out so the iterate tail is
  // resolvable: the product of the two unit-Clairaut rays is finite.
  {
    double t0 = cfg.get_number("params.t0_flat");
    SurfaceOfRevolution s(example1_profile(), cfg.get_number("params.x_min_flat"),
                          std::log(t0));
    TangentVector vp{{std::log(t0), 0.0}, 1.0 / t0, 1.0 - 1.0 / (t0 * t0)};
    TangentVector vm{vp.at, vp.da, -vp.db};
    row_eq(rep, {"example1", "launch_unit_speed"}, metric_norm(s, vp), 1.0, 1e-12);
    row_eq(rep, {"example1", "launch_clairaut"}, s.clairaut_constant(vp), 1.0, 1e-12);
    double prev = 0.0, inc = kInf, gT = 0.0;
    for (double T : times) {
      gT = T - 0.5 * s.distance(s.flow(vp, T).at, s.flow(vm, T).at);
      inc = gT - prev;
      prev = gT;
    }
    row_eq(rep, {"example1", "tail_increment"}, std::abs(inc), 0.0, tol_tail);
    LimitValue l = gromov_product(s, s.base_point(), boundary_from_ray(s, vp),
                                  boundary_from_ray(s, vm));
    row_eq(rep, {"example1", "divergence_flag"}, l.divergent ? 1.0 : 0.0, 0.0, 0.0);
    row_eq(rep, {"example1", "iterate_finite"}, std::isfinite(gT) ? 1.0 : 0.0, 1.0, 0.0);
  }

  // Pinched profile: the iterate keeps growing and crosses the divergence
  // threshold, so the two boundary points are flagged invisible to each other.
  {
    double alpha = cfg.get_number("params.alpha");
    double t0 = cfg.get_number("params.t0_cusp");
    double threshold = cfg.get_number("params.threshold");
    double x0 = std::pow(t0, 1.0 - alpha) / (1.0 - alpha);
    SurfaceOfRevolution s(example2_profile(alpha), cfg.get_number("params.x_min_cusp"), x0);
    TangentVector vp{{x0, 0.0}, std::pow(t0, -alpha), 1.0 - std::pow(t0, -2.0 * alpha)};
    TangentVector vm{vp.at, vp.da, -vp.db};
    row_eq(rep, {"example2", "launch_unit_speed"}, metric_norm(s, vp), 1.0, 1e-12);
    row_eq(rep, {"example2", "launch_clairaut"}, s.clairaut_constant(vp), 1.0, 1e-12);
    double prev = 0.0, min_inc = kInf, gT = 0.0;
    for (double T : times) {
      gT = T - 0.5 * s.distance(s.flow(vp, T).at, s.flow(vm, T).at);
      min_inc = std::min(min_inc, gT - prev);
      prev = gT;
    }
    row_ge(rep, {"example2", "iterate_final"}, gT, threshold, 0.0);
    row_ge(rep, {"example2", "min_increment"}, min_inc, 0.0, 0.0);
    LimitValue l = gromov_product(s, s.base_point(), boundary_from_ray(s, vp),
                                  boundary_from_ray(s, vm), threshold);
    row_eq(rep, {"example2", "divergence_flag"}, l.divergent ? 1.0 : 0.0, 1.0, 0.0);
  }
}

// --- clairaut-drift: conserved-quantity QA of the geodesic integrator -------
inline void run_clairaut_drift(const Config& cfg, std::mt19937_64&, ScenarioReport& rep) {
  double horizon = cfg.get_number("params.horizon");
  int checkpoints = cfg.get_int("params.checkpoints");
  double tol_c = cfg.get_number("params.rate_clairaut") * horizon;
  double tol_s = cfg.get_number("params.rate_speed") * horizon;

  // Launch angles are pinned per profile so every trajectory stays in the
  // guarded chart domain: outward launches whose Clairaut constant does not
  // exceed the profile infimum f -> 1 never turn back toward small x.
  struct Launch {
    const char* profile;
    SurfaceOfRevolution surface;
    double angle;
  };
  SurfaceOfRevolution flat(example1_profile(), 0.05, std::log(2.0));
  double x0 = std::pow(1.21, 0.75) * 4.0 / 3.0;
  SurfaceOfRevolution cusp(example2_profile(0.25), 1.35, x0);
  SurfaceOfRevolution cyl(constant_profile(2.0), -1e6, 0.0);
  std::vector<Launch> launches;
  for (double a : {0.0, 0.45, 0.9, kPi / 3.0}) launches.push_back({"example1", flat, a});
  for (double a : {0.0, 0.15, 0.3}) launches.push_back({"example2", cusp, a});
  launches.push_back({"constant", cyl, 0.7});

  for (const Launch& L : launches) {
    const SurfaceOfRevolution& s = L.surface;
    TangentVector w = from_frame_angle(s, s.base_point(), L.angle);
    double c0 = s.clairaut_constant(w);
    double drift_c = 0.0, drift_s = 0.0;
    double dt = horizon / checkpoints;
    for (int i = 0; i < checkpoints; ++i) {
      w = s.flow(w, dt);
      drift_c = std::max(drift_c, std::abs(s.clairaut_constant(w) - c0));
      drift_s = std::max(drift_s, std::abs(metric_norm(s, w) - 1.0));
    }
    row_eq(rep, {L.profile, num(L.angle), "clairaut"}, drift_c, 0.0, tol_c);
    row_eq(rep, {L.profile, num(L.angle), "speed"}, drift_s, 0.0, tol_s);
  }
}

// --- distortion-probe: diagnostics for a non-Moebius boundary map -----------
inline void run_distortion_probe(const Config& cfg, std::mt19937_64&, ScenarioReport& rep) {
  double eps = cfg.get_number("params.epsilon");
  int samples = cfg.get_int("params.samples");
  HyperbolicPlane m;
  BoundaryMap probe =
      circle_boundary_map([eps](double t) { return t + eps * std::sin(t); });

  CircumcenterOptions opts;
  // The extremal band must sit above the witness-pool quantization of the
  // computed derivative field for non-Moebius maps (a few 1e-4 at pool 64).
  opts.band = cfg.get_number("params.band");

  double min_r = cfg.get_number("params.min_radius");
  double min_k = cfg.get_number("params.min_extremal");
  double tol_m = cfg.get_number("params.tol_margin");
  double tol_a = cfg.get_number("params.tol_antipode");
  double tol_s = cfg.get_number("params.tol_symmetry");

  const Point xs[] = {m.base_point(), {0.3, 1.2}, {-0.5, 0.8}};
  Point first_center = m.base_point();
  for (int j = 0; j < 3; ++j) {
    std::string id = std::to_string(j);
    CircumcenterResult r = circumcenter(probe, m, xs[j], m, opts);
    if (!r.converged) throw std::runtime_error("probe solve did not converge at point " + id);
    if (j == 0) first_center = r.center;
    row_ge(rep, {"radius", id}, r.radius, min_r, 0.0);
    row_ge(rep, {"extremal_count", id}, static_cast<double>(r.extremal_set.size()), min_k,
           0.0);
    row_eq(rep, {"hull_margin", id}, r.certificate.margin, 0.0, tol_m);
    row_eq(rep, {"antipode_deviation", id}, extremal_antipode_check(probe, m, xs[j], m, r),
           0.0, tol_a);
    row_eq(rep, {"max_min_symmetry", id}, std::abs(r.radius + r.min_u), 0.0, tol_s);
  }

  // Cross-ratio distortion separates the probe from Moebius maps by orders of
  // magnitude: well above the floor for the probe, at the floor for a control
  // isometry map.
  row_ge(rep, {"distortion", "0"},
         moebius_distortion(probe, m, xs[0], m, first_center, samples),
         cfg.get_number("params.min_distortion"), 0.0);
  MobiusReal g = MobiusReal::translation(0.8).compose(MobiusReal::scaling(1.6));
  row_eq(rep, {"distortion_isometry_control", "0"},
         moebius_distortion(isometry_boundary_map(m, m, g), m, xs[0], m,
                            m.apply_isometry(g, xs[0]), samples),
         0.0, 1e-6);
}

}  // namespace detail

inline const std::vector<ScenarioSpec>& scenario_registry() {
  using CV = ConfigValue;
  static const std::vector<ScenarioSpec> registry = {
      {"gromov-angle",
       "Gromov product vs boundary angle at the reference point (closed-form law)",
       {"alpha_rad"},
       {{"params.curvature", CV::number(-1.0), false, "sectional curvature (< 0)"},
        {"params.alphas_deg", CV::numbers({30, 45, 60, 90, 120, 135, 150, 180}), false,
         "boundary angles to sweep, degrees"},
        {"params.tolerance", CV::number(1e-3), false, "absolute tolerance per row"}},
       detail::run_gromov_angle},
      {"crossratio-invariance",
       "cross-ratio of boundary quadruples is independent of the base point",
       {"base_dist", "quad"},
       {{"params.base_pairs", CV::number(6), true, "number of base-point pairs"},
        {"params.quadruples", CV::number(25), true, "quadruples per base pair"},
        {"params.min_sep", CV::number(0.01), false, "minimum angular separation"},
        {"params.max_base_dist", CV::number(3.0), false, "maximum base-point distance"},
        {"params.tolerance", CV::number(5e-4), false, "log cross-ratio tolerance"}},
       detail::run_crossratio},
      {"derivative-identities",
       "chain rule, pair product and exponential form of the metric derivative",
       {"check", "triple"},
       {{"params.triples", CV::number(60), true, "random point triples"},
        {"params.pool_size", CV::number(64), true, "witness pool size"},
        {"params.tolerance", CV::number(1e-4), false, "relative tolerance per identity"},
        {"params.grid_size", CV::number(512), true, "sites for the cancellation check"},
        {"params.grid_tolerance", CV::number(1e-3), false, "max/min cancellation tolerance"}},
       detail::run_derivative_identities},
      {"phi-properties",
       "identity, flip, flow conjugacy, differential and compose laws of the extension",
       {"check", "sample"},
       {{"params.samples", CV::number(20), true, "samples per check"},
        {"params.conj_samples", CV::number(40), true, "samples for the conjugacy check"},
        {"params.tol_identity", CV::number(1e-8), false, "identity-map tolerance"},
        {"params.tol_flip", CV::number(1e-6), false, "flip tolerance"},
        {"params.tol_conjugacy", CV::number(2e-4), false, "flow-conjugacy tolerance"},
        {"params.tol_differential", CV::number(1e-5), false, "differential tolerance"},
        {"params.tol_compose", CV::number(1e-4), false, "composition tolerance"}},
       detail::run_phi_properties},
      {"isometry-recovery",
       "circumcenter solve recovers a generating isometry with near-zero radius",
       {"check", "point"},
       {{"params.points", CV::number(20), true, "sample points"},
        {"params.tol_radius", CV::number(1e-3), false, "radius tolerance"},
        {"params.tol_center", CV::number(1e-3), false, "center-error tolerance"},
        {"params.tol_margin", CV::number(1e-6), false, "hull-margin tolerance"}},
       detail::run_isometry_recovery},
      {"qi-bound",
       "displacement defect bounded by the radius sum, plus the two reference constants",
       {"check", "pair"},
       {{"params.points", CV::number(8), true, "sample points (pairs are consecutive)"},
        {"params.slack", CV::number(1e-3), false, "inequality slack"},
        {"params.tol_constants", CV::number(1e-6), false, "reference-constant tolerance"}},
       detail::run_qi_bound},
      {"revolution-visibility",
       "finite vs divergent boundary products on the two revolution profiles",
       {"profile", "quantity"},
       {{"params.t0_flat", CV::number(500.0), false, "launch parameter, flat profile"},
        {"params.x_min_flat", CV::number(0.05), false, "chart guard, flat profile"},
        {"params.alpha", CV::number(0.25), false, "pinch exponent of the second profile"},
        {"params.t0_cusp", CV::number(1.21), false, "launch parameter, pinched profile"},
        {"params.x_min_cusp", CV::number(1.35), false, "chart guard, pinched profile"},
        {"params.threshold", CV::number(10.0), false, "divergence threshold for the flag"},
        {"params.tol_tail", CV::number(1e-3), false, "final iterate increment bound"}},
       detail::run_revolution_visibility},
      {"clairaut-drift",
       "conserved-quantity drift of the geodesic integrator on fixed launches",
       {"profile", "angle_rad", "check"},
       {{"params.horizon", CV::number(50.0), false, "integration horizon"},
        {"params.checkpoints", CV::number(10), true, "drift checkpoints along each run"},
        {"params.rate_clairaut", CV::number(1e-6), false, "allowed drift per unit time"},
        {"params.rate_speed", CV::number(1e-9), false, "allowed speed drift per unit time"}},
       detail::run_clairaut_drift},
      {"distortion-probe",
       "structure diagnostics for a non-Moebius circle map (positive radius regime)",
       {"check", "point"},
       {{"params.epsilon", CV::number(0.1), false, "probe amplitude t + eps sin t"},
        {"params.samples", CV::number(200), true, "cross-ratio samples for distortion"},
        {"params.band", CV::number(1e-3), false, "extremal band width for the solver"},
        {"params.min_distortion", CV::number(5e-3), false, "required probe distortion"},
        {"params.min_radius", CV::number(1e-4), false, "required radius at each point"},
        {"params.min_extremal", CV::number(3), false, "required extremal-set size"},
        {"params.tol_margin", CV::number(1e-5), false, "hull-margin tolerance"},
        {"params.tol_antipode", CV::number(1e-2), false, "antipode-deviation tolerance"},
        {"params.tol_symmetry", CV::number(1e-3), false, "max/min symmetry tolerance"}},
       detail::run_distortion_probe},
  };
  return registry;
}

inline const ScenarioSpec* find_scenario(const std::string& name) {
  for (const auto& s : scenario_registry())
    if (s.name == name) return &s;
  return nullptr;
}

// Check the config against the scenario schema and merge embedded defaults:
// the result carries every key the run will read, so the provenance echo is
// self-describing. Unknown keys and type mismatches are rejected.
inline Config validate_config(const Config& raw) {
  const ConfigValue* sc = raw.find("scenario");
  if (!sc) throw ConfigError("missing key 'scenario'");
  if (sc->kind != ConfigValue::kString)
    throw ConfigError("key 'scenario' must be a string");
  const ScenarioSpec* spec = find_scenario(sc->str);
  if (!spec) {
    std::string names;
    for (const auto& s : scenario_registry()) names += (names.empty() ? "" : ", ") + s.name;
    throw ConfigError("unknown scenario '" + sc->str + "' (known: " + names + ")");
  }

  std::vector<ParamSpec> allowed = {
      {"seed", ConfigValue::number(2026), true, "random seed"},
      {"out_dir", ConfigValue::string("reports"), false, "report output directory"}};
  allowed.insert(allowed.end(), spec->params.begin(), spec->params.end());

  Config out;
  out.set("scenario", *sc);
  for (const auto& p : allowed) {
    const ConfigValue* v = raw.find(p.key);
    if (!v) {
      out.set(p.key, p.def);
      continue;
    }
    if (v->kind != p.def.kind)
      throw ConfigError("key '" + p.key + "' has type " + std::string(v->kind_name()) +
                        ", expected " + ConfigValue::kind_name(p.def.kind) +
                        (v->line > 0 ? " (line " + std::to_string(v->line) + ")" : ""));
    if (p.integer && v->num != std::floor(v->num))
      throw ConfigError("key '" + p.key + "' must be an integer" +
                        (v->line > 0 ? " (line " + std::to_string(v->line) + ")" : ""));
    out.set(p.key, *v);
  }
  for (const auto& [key, v] : raw.entries()) {
    if (key == "scenario" || out.has(key)) continue;
    throw ConfigError("unknown key '" + key + "' for scenario '" + spec->name + "'" +
                      (v.line > 0 ? " (line " + std::to_string(v.line) + ")" : ""));
  }
  return out;
}

// Run a validated config end to end. Scenario-internal exceptions become a
// single failed row carrying the message, so a run always yields a report.
inline ScenarioReport run_scenario(const Config& cfg) {
  const ScenarioSpec* spec = find_scenario(cfg.get_string("scenario"));
  if (!spec) throw ConfigError("unknown scenario '" + cfg.get_string("scenario") + "'");
  ScenarioReport rep;
  rep.scenario = spec->name;
  rep.input_columns = spec->input_columns;
  rep.config = cfg;
  rep.version = HADAMARD_KIT_VERSION;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.get_number("seed")));
  try {
    spec->run(cfg, rng, rep);
  } catch (const std::exception& e) {
    CaseRow r;
    r.case_id = static_cast<int>(rep.rows.size());
    r.inputs.assign(rep.input_columns.size(), "-");
    if (!r.inputs.empty()) r.inputs[0] = std::string("error: ") + e.what();
    r.computed = 1.0;  // error indicator vs expected 0
    r.abs_residual = 1.0;
    r.pass = false;
    rep.rows.push_back(std::move(r));
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace hadamard
