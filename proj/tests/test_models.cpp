// Model-level oracles: closed-form distances, geodesic flow, curvature, and
// exact special geodesics on the two surface-of-revolution profiles. Expected
// values are frozen from hand derivations, independent of the code under test.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hadamard/euclidean.hpp"
#include "hadamard/hyperbolic.hpp"
#include "hadamard/revolution.hpp"

using namespace hadamard;

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

TEST_CASE("euclidean plane basics") {
  EuclideanPlane m;
  CHECK(m.distance({0.0, 0.0}, {3.0, 4.0}) == Catch::Approx(5.0).margin(1e-15));
  TangentVector v{{1.0, 2.0}, 0.6, 0.8};
  TangentVector w = m.flow(v, 2.0);
  CHECK(w.at.a == Catch::Approx(2.2).margin(1e-15));
  CHECK(w.at.b == Catch::Approx(3.6).margin(1e-15));
  CHECK(m.curvature({0.3, -0.7}) == 0.0);

  TangentVector c = m.connect({0.0, 0.0}, {0.0, 5.0});
  CHECK(metric_norm(m, c) == Catch::Approx(1.0).margin(1e-15));
  CHECK(c.db == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("hyperbolic plane closed-form distance") {
  HyperbolicPlane m;  // curvature -1
  // d(i, 2i) = ln 2 on the upper half-plane.
  CHECK(m.distance({0.0, 1.0}, {0.0, 2.0}) == Catch::Approx(kLn2).margin(1e-14));
  // d(i, 1+i) = acosh(1 + 1/2) = acosh(3/2).
  CHECK(m.distance({0.0, 1.0}, {1.0, 1.0}) ==
        Catch::Approx(0.9624236501192069).margin(1e-14));
  CHECK(m.curvature({2.0, 5.0}) == Catch::Approx(-1.0).margin(1e-15));

  // Curvature scaling: with kappa = -2 all distances shrink by sqrt(2).
  HyperbolicPlane m2(-2.0);
  CHECK(m2.distance({0.0, 1.0}, {0.0, 2.0}) ==
        Catch::Approx(kLn2 / std::sqrt(2.0)).margin(1e-14));
  CHECK(m2.curvature({0.0, 1.0}) == Catch::Approx(-2.0).margin(1e-15));
}

TEST_CASE("hyperbolic flow and connect") {
  HyperbolicPlane m;
  // The unit-speed vertical geodesic through i is t -> i e^t.
  TangentVector up{{0.0, 1.0}, 0.0, 1.0};
  TangentVector w = m.flow(up, 1.0);
  CHECK(w.at.a == Catch::Approx(0.0).margin(1e-12));
  CHECK(w.at.b == Catch::Approx(std::exp(1.0)).margin(1e-12));
  CHECK(metric_norm(m, w) == Catch::Approx(1.0).margin(1e-12));

  // Flow is a homomorphism in t and preserves distance from the start.
  TangentVector v = normalized(m, TangentVector{{0.5, 2.0}, 1.0, -0.3});
  TangentVector a = m.flow(v, 1.7);
  TangentVector b = m.flow(m.flow(v, 0.9), 0.8);
  CHECK(m.distance(a.at, b.at) < 1e-10);
  CHECK(m.distance(v.at, a.at) == Catch::Approx(1.7).margin(1e-10));

  // connect points at the target and flowing by the distance reaches it.
  Point p{-1.0, 0.5}, q{2.0, 3.0};
  TangentVector c = m.connect(p, q);
  CHECK(metric_norm(m, c) == Catch::Approx(1.0).margin(1e-12));
  Point hit = m.flow(c, m.distance(p, q)).at;
  CHECK(m.distance(hit, q) < 1e-10);

  // Vertical special case of connect.
  TangentVector cv = m.connect({1.0, 3.0}, {1.0, 0.25});
  Point hv = m.flow(cv, m.distance({1.0, 3.0}, {1.0, 0.25})).at;
  CHECK(m.distance(hv, {1.0, 0.25}) < 1e-10);
}

TEST_CASE("hyperbolic isometries") {
  HyperbolicPlane m;
  MobiusReal g = MobiusReal::translation(1.5)
                     .compose(MobiusReal::scaling(0.7))
                     .compose(MobiusReal::rotation_about_i(0.9));
  Point p{0.3, 1.2}, q{-1.1, 0.4};
  CHECK(m.distance(m.apply_isometry(g, p), m.apply_isometry(g, q)) ==
        Catch::Approx(m.distance(p, q)).margin(1e-12));

  // Differential: image of a unit vector stays unit.
  TangentVector v = normalized(m, TangentVector{p, 0.8, 0.6});
  TangentVector gv = m.apply_isometry(g, v);
  CHECK(metric_norm(m, gv) == Catch::Approx(1.0).margin(1e-12));

  // g g^{-1} = id.
  MobiusReal h = g.compose(g.inverse());
  Point r = m.apply_isometry(h, p);
  CHECK(m.distance(r, p) < 1e-12);
}

TEST_CASE("revolution profile values") {
  // First profile: f(x) = (1 - e^{-2x})^{-1/2}.
  Profile p1 = example1_profile();
  // f(ln 2): e^{-2 ln 2} = 1/4, so f = (3/4)^{-1/2} = 2/sqrt(3).
  CHECK(p1.f(kLn2) == Catch::Approx(1.1547005383792517).margin(1e-15));
  // K = -f''/f = -(2u/(1-u) + 3u^2/(1-u)^2) with u = e^{-2x}; at x = ln 2
  // this is -(2/3 + 1/3) = -1 exactly.
  SurfaceOfRevolution s1(p1, 0.05, kLn2);
  CHECK(s1.curvature({kLn2, 0.0}) == Catch::Approx(-1.0).margin(1e-12));
  CHECK(s1.curvature({3.0, 1.0}) < 0.0);

  // Second profile, alpha = 1/4: beta = 2/3, tau = (4/3)^{2/3}, and the
  // domain wall sits at x = tau^{3/2} = 4/3.
  Profile p2 = example2_profile(0.25);
  CHECK(p2.x_inf == Catch::Approx(4.0 / 3.0).margin(1e-12));
  // Along x(t) = (4/3) t^{3/4} the warp is f = (1 - t^{-1/2})^{-1/2};
  // at t = 1.21 that is (1 - 1/1.1)^{-1/2} = sqrt(11).
  double x0 = (4.0 / 3.0) * std::pow(1.21, 0.75);
  CHECK(p2.f(x0) == Catch::Approx(std::sqrt(11.0)).margin(1e-12));
}

TEST_CASE("revolution geodesic flow against the exact Clairaut-1 ray") {
  // On profile 1 the curve x(s) = ln(s + t0), y(s) = (s + t0) + 1/(s + t0) - c0
  // is a unit-speed geodesic with Clairaut constant 1 (checked by substituting
  // into the geodesic equations). Launch at t0 = 2 from (ln 2, 0).
  SurfaceOfRevolution s(example1_profile(), 0.05, kLn2);
  const double t0 = 2.0;
  TangentVector v{{std::log(t0), 0.0}, 1.0 / t0, 1.0 - 1.0 / (t0 * t0)};
  CHECK(metric_norm(s, v) == Catch::Approx(1.0).margin(1e-14));
  CHECK(s.clairaut_constant(v) == Catch::Approx(1.0).margin(1e-14));

  TangentVector w = s.flow(v, 3.0);
  // s = 3: x = ln 5, y = (5 + 1/5) - (2 + 1/2) = 2.7.
  CHECK(w.at.a == Catch::Approx(std::log(5.0)).margin(1e-8));
  CHECK(w.at.b == Catch::Approx(2.7).margin(1e-8));
  // Clairaut constant and speed are conserved along the numerical flow.
  CHECK(s.clairaut_constant(w) == Catch::Approx(1.0).margin(1e-9));
  CHECK(metric_norm(s, w) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("revolution geodesic flow on the second profile") {
  // On profile 2 (alpha = 1/4) the curve x(s) = (4/3)(s + t0)^{3/4},
  // y(s) = (s + t0) - 2 sqrt(s + t0) + c0 is a unit-speed Clairaut-1 geodesic.
  Profile p2 = example2_profile(0.25);
  const double t0 = 1.21;
  double x0 = (4.0 / 3.0) * std::pow(t0, 0.75);
  SurfaceOfRevolution s(p2, 1.35, x0);
  TangentVector v{{x0, 0.0}, std::pow(t0, -0.25), 1.0 - std::pow(t0, -0.5)};
  CHECK(metric_norm(s, v) == Catch::Approx(1.0).margin(1e-14));
  CHECK(s.clairaut_constant(v) == Catch::Approx(1.0).margin(1e-14));

  const double t1 = 4.0;
  TangentVector w = s.flow(v, t1 - t0);
  CHECK(w.at.a == Catch::Approx((4.0 / 3.0) * std::pow(t1, 0.75)).margin(1e-8));
  CHECK(w.at.b ==
        Catch::Approx((t1 - 2.0 * std::sqrt(t1)) - (t0 - 2.0 * std::sqrt(t0))).margin(1e-8));
}

TEST_CASE("revolution distance and connect") {
  SurfaceOfRevolution s(example1_profile(), 0.05, kLn2);
  Point p{kLn2, 0.0}, q{1.4, 0.8};

  double d = s.distance(p, q);
  // Upper bound: the broken path along the two coordinate curves.
  double fmax = example1_profile().f(kLn2);  // f decreases in x
  CHECK(d > 0.0);
  CHECK(d <= std::abs(q.a - p.a) + fmax * std::abs(q.b - p.b) + 1e-9);
  CHECK(s.distance(q, p) == Catch::Approx(d).margin(1e-7));

  TangentVector c = s.connect(p, q);
  CHECK(metric_norm(s, c) == Catch::Approx(1.0).margin(1e-10));
  Point hit = s.flow(c, d).at;
  CHECK(std::abs(hit.a - q.a) < 1e-6);
  CHECK(std::abs(hit.b - q.b) < 1e-6);

  // Pure meridian segments are geodesics: distance equals |dx|.
  CHECK(s.distance({kLn2, 0.3}, {2.0, 0.3}) ==
        Catch::Approx(2.0 - kLn2).margin(1e-8));
}

TEST_CASE("domain guard on the revolution chart") {
  SurfaceOfRevolution s(example1_profile(), 0.4, 1.0);
  // A geodesic aimed straight down the meridian must exit the chart at
  // x_min = 0.4 and raise rather than return garbage.
  TangentVector v{{1.0, 0.0}, -1.0, 0.0};
  CHECK_THROWS_AS(s.flow(v, 2.0), std::domain_error);
}
