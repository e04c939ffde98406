#include "doctest.h"

#include <cmath>

#include "atlas/embedding.hpp"
#include "atlas/learn.hpp"
#include "oracle_helpers.hpp"

using namespace atlas;

namespace {

Vector pt1(double x) {
  Vector v(1);
  v << x;
  return v;
}

// Minimal 1-d Euler-Maruyama state space built right here, so these tests do
// not lean on the systems module they are not about.
StateSpace sde_space_1d(std::function<double(double)> drift, double sigma,
                        double micro_dt, PointList initial) {
  StateSpace s;
  s.dimension = 1;
  s.distance = euclidean_distance();
  s.initial_points = std::move(initial);
  s.simulate = [=](const Vector& start, int n, double t0, Rng& rng) {
    PointList out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
      double x = start[0];
      double remaining = t0;
      while (remaining > 1e-15) {
        double h = std::min(micro_dt, remaining);
        x += drift(x) * h + sigma * std::sqrt(h) * rng.normal();
        remaining -= h;
      }
      out.push_back(pt1(x));
    }
    return out;
  };
  return s;
}

StateSpace frozen_space(PointList initial) {
  StateSpace s;
  s.dimension = 1;
  s.distance = euclidean_distance();
  s.initial_points = std::move(initial);
  s.simulate = [](const Vector& start, int n, double, Rng&) {
    return PointList(n, start);
  };
  return s;
}

double grad_u1(double x) { return 32.0 * x * (x - 1.0) * (2.0 * x - 1.0); }

}  // namespace

TEST_SUITE("learn") {

TEST_CASE("psd_sqrt: diagonal case and PSD reconstruction") {
  Matrix c(2, 2);
  c << 4, 0, 0, 9;
  Matrix s = psd_sqrt(c);
  CHECK((s * s - c).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(s(0, 0) == doctest::Approx(2.0));
  CHECK(s(1, 1) == doctest::Approx(3.0));

  Rng rng(3);
  Matrix a(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = rng.normal();
  Matrix spd = a * a.transpose();
  Matrix r = psd_sqrt(spd);
  CHECK((r - r.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((r * r - spd).cwiseAbs().maxCoeff() < 1e-10 * spd.cwiseAbs().maxCoeff());

  Matrix neg(1, 1);
  neg << -1.0;
  CHECK(psd_sqrt(neg)(0, 0) == 0.0);  // clamped
}

TEST_CASE("coefficients from identical endpoints: drift v/t0, zero diffusion") {
  Matrix x(5, 2);
  for (int i = 0; i < 5; ++i) x.row(i) << 0.3, -0.1;
  auto [b, sigma] = estimate_coefficients(x, 0.05);
  CHECK(b[0] == doctest::Approx(0.3 / 0.05));
  CHECK(b[1] == doctest::Approx(-0.1 / 0.05));
  CHECK(sigma.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("coefficients from two points -1, +1: unbiased variance 2") {
  Matrix x(2, 1);
  x << -1.0, 1.0;
  auto [b, sigma] = estimate_coefficients(x, 1.0);
  CHECK(b[0] == doctest::Approx(0.0));
  // mean 0, unbiased sample variance ((-1)^2 + 1^2) / (2 - 1) = 2
  CHECK(sigma(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("coefficients need at least two samples") {
  Matrix x(1, 1);
  x << 0.5;
  CHECK_THROWS_WITH_AS(estimate_coefficients(x, 1.0),
                       doctest::Contains("cannot estimate covariance"),
                       std::invalid_argument);
}

TEST_CASE("coefficients recover a Gaussian cloud's mean and covariance") {
  Rng rng(21);
  const int p = 20000;
  const double t0 = 0.01;
  Matrix x(p, 1);
  // endpoints of dX = 3 dt + 2 dB at t0, sampled exactly
  for (int i = 0; i < p; ++i) x(i, 0) = 3.0 * t0 + 2.0 * std::sqrt(t0) * rng.normal();
  auto [b, sigma] = estimate_coefficients(x, t0);
  CHECK(std::abs(b[0] - 3.0) < 3.0 * 2.0 / std::sqrt(p * t0));
  CHECK(std::abs(sigma(0, 0) - 2.0) < 0.05 * 2.0);
}

TEST_CASE("landmarks: net point first, then m endpoints") {
  StateSpace s = frozen_space({pt1(0.4)});
  Rng rng(1);
  PointList a = generate_landmarks(s, pt1(0.4), 7, 0.01, rng);
  REQUIRE(a.size() == 8);
  for (auto& q : a) CHECK(q[0] == 0.4);
}

TEST_CASE("landmark spread matches the burst scale") {
  StateSpace s = sde_space_1d([](double) { return 0.0; }, 1.0, 0.001, {pt1(0.0)});
  Rng rng(9);
  PointList a = generate_landmarks(s, pt1(0.0), 10, 0.01, rng);
  double mean = 0.0;
  for (int i = 1; i <= 10; ++i) mean += a[i][0];
  mean /= 10.0;
  double var = 0.0;
  for (int i = 1; i <= 10; ++i) var += (a[i][0] - mean) * (a[i][0] - mean);
  double sd = std::sqrt(var / 9.0);
  // endpoints ~ N(0, t0); sample sd of 10 draws vs 0.1, three standard errors
  CHECK(std::abs(sd - 0.1) < 3.0 * 0.1 / std::sqrt(2.0 * 9.0));
}

TEST_CASE("degenerate landmarks are rejected, naming the chart") {
  StateSpace s = frozen_space({pt1(0.0)});
  DeltaNet net = build_delta_net(s.initial_points, 0.1, s.distance);
  LearnParams prm;
  prm.delta = 0.1;
  prm.d = 1;
  prm.m = 3;
  prm.p = 10;
  prm.t0 = 0.01;
  Rng rng(2);
  Rng lm = rng.child("landmarks", 0);
  std::vector<PointList> landmarks = {
      generate_landmarks(s, net.points[0], 3, 0.01, lm)};
  Rng paths = rng.child("paths", 0);
  CHECK_THROWS_WITH_AS(
      learn_chart(s, net, 0, landmarks, prm.resolved(), paths),
      doctest::Contains("degenerate landmarks"), std::runtime_error);
}

TEST_CASE("learn_atlas surfaces every failed chart") {
  StateSpace s = frozen_space({pt1(0.0), pt1(1.0), pt1(2.0)});
  LearnParams prm;
  prm.delta = 0.1;
  prm.d = 1;
  prm.m = 2;
  prm.p = 4;
  prm.t0 = 0.01;
  try {
    learn_atlas(s, prm, 1);
    FAIL("expected degenerate landmark failure");
  } catch (const std::runtime_error& e) {
    std::string msg = e.what();
    CHECK(msg.find("chart 0") != std::string::npos);
    CHECK(msg.find("chart 1") != std::string::npos);
    CHECK(msg.find("chart 2") != std::string::npos);
  }
}

TEST_CASE("parameter validation names the offending field") {
  LearnParams prm;
  prm.delta = 0.0;
  CHECK_THROWS_WITH_AS(prm.resolved(), doctest::Contains("delta"),
                       std::invalid_argument);
  prm.delta = 0.1;
  prm.d = 0;
  CHECK_THROWS_WITH_AS(prm.resolved(), doctest::Contains("d "),
                       std::invalid_argument);
  prm.d = 2;
  prm.m = 1;
  CHECK_THROWS_WITH_AS(prm.resolved(), doctest::Contains("m "),
                       std::invalid_argument);
  prm.m = 0;
  prm.p = 1;
  CHECK_THROWS_WITH_AS(prm.resolved(), doctest::Contains("p "),
                       std::invalid_argument);
  prm.p = 100;
  LearnParams ok = prm.resolved();
  CHECK(ok.m == 4);                          // 2*d default
  CHECK(ok.t0 == doctest::Approx(0.01));     // delta^2
  CHECK(ok.dt == doctest::Approx(0.002));    // t0/5
}

TEST_CASE("transition fit: identical configurations give the identity map") {
  Rng rng(31);
  Matrix x(12, 2);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 2; ++j) x(i, j) = rng.normal();
  TransitionMap s = fit_transition(x, x);
  CHECK((s.T - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  for (int i = 0; i < 12; ++i) {
    Vector out = apply_transition(s, x.row(i).transpose());
    CHECK((out - x.row(i).transpose()).norm() < 1e-12);
  }
}

TEST_CASE("transition fit recovers a rotation plus translation exactly") {
  Rng rng(32);
  const double th = 0.7;
  Matrix r(2, 2);
  r << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
  Vector t(2);
  t << 0.3, -1.1;
  Matrix x(10, 2), y(10, 2);
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 2; ++j) x(i, j) = rng.normal();
    y.row(i) = x.row(i) * r + t.transpose();
  }
  TransitionMap s = fit_transition(x, y);
  for (int i = 0; i < 10; ++i) {
    Vector out = apply_transition(s, x.row(i).transpose());
    CHECK((out - y.row(i).transpose()).norm() < 1e-8);
  }
  CHECK((s.T - r).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("transition fit under perturbation keeps residuals at noise scale") {
  Rng rng(33);
  const double eps = 1e-3;
  Matrix r(2, 2);
  r << 0.0, 1.0, -1.0, 0.0;
  Matrix x(30, 2), y(30, 2);
  for (int i = 0; i < 30; ++i) {
    for (int j = 0; j < 2; ++j) x(i, j) = rng.normal();
    y.row(i) = x.row(i) * r;
    for (int j = 0; j < 2; ++j) y(i, j) += eps * rng.normal();
  }
  TransitionMap s = fit_transition(x, y);
  for (int i = 0; i < 30; ++i) {
    Vector out = apply_transition(s, x.row(i).transpose());
    CHECK((out - y.row(i).transpose()).norm() < 10.0 * eps);
  }
}

TEST_CASE("single-chart constant-coefficient SDE: dX = 3 dt + 2 dB") {
  StateSpace s = sde_space_1d([](double) { return 3.0; }, 2.0, 0.001, {pt1(0.0)});
  LearnParams prm;
  prm.delta = 0.1;
  prm.d = 1;
  prm.m = 5;
  prm.p = 10000;
  prm.t0 = 0.01;
  AtlasModel model = learn_atlas(s, prm, 5);
  REQUIRE(model.charts.size() == 1);
  REQUIRE(model.transitions.empty());
  const Chart& ch = model.charts[0];
  CHECK(ch.centers.at(0).norm() == 0.0);
  // chart orientation is a sign; compare magnitudes
  CHECK(std::abs(std::abs(ch.drift[0]) - 3.0) < 3.0 * 2.0 / std::sqrt(prm.p * prm.t0));
  CHECK(std::abs(ch.diffusion(0, 0) - 2.0) < 0.05 * 2.0);
}

TEST_CASE("smooth double well: charts, centers, transitions, and the "
          "integrated drift") {
  StateSpace s = sde_space_1d([](double x) { return -grad_u1(x); }, 1.0, 0.005,
                              PointList{});
  for (int i = 0; i <= 200; ++i) s.initial_points.push_back(pt1(-0.5 + 0.01 * i));

  LearnParams prm;
  prm.delta = 0.1;
  prm.d = 1;
  prm.m = 5;
  prm.p = 10000;  // t0, dt take their defaults delta^2 and t0/5
  AtlasModel model = learn_atlas(s, prm, 42);

  const int K = model.net.size();
  REQUIRE(K == 19);
  CHECK(model.t0 == doctest::Approx(0.01));
  CHECK(model.dt == doctest::Approx(0.002));

  for (const Chart& ch : model.charts) {
    // own center pinned exactly at the origin
    CHECK(ch.centers.at(ch.index).cwiseAbs().maxCoeff() == 0.0);
    // diffusion stays symmetric PSD
    CHECK((ch.diffusion - ch.diffusion.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(ch.diffusion(0, 0) >= 0.0);
    // neighbor centers land in the expected annulus (slack 0.3)
    for (auto& [j, c] : ch.centers) {
      if (j == ch.index) continue;
      CHECK(c.norm() > 0.1 * (1.0 - 0.3));
      CHECK(c.norm() < 0.2 * (1.0 + 0.3));
    }
    // a 1-d system should look 1-d in every chart
    CHECK(estimate_dim(ch.spectrum, prm.delta) == 1);
  }
  CHECK(model.warnings.empty());

  // both directions present for every net edge, and they invert each other
  for (int k = 0; k < K; ++k) {
    for (int j : model.net.neighbors[k]) {
      REQUIRE(model.has_transition(k, j));
      REQUIRE(model.has_transition(j, k));
      const TransitionMap& kj = model.transition(k, j);
      Vector x = model.charts[k].centers.at(j);
      // Phi_k(y_j) must map to Phi_j(y_j) = 0; collinear charts make the
      // affine fit exact up to roundoff
      CHECK(apply_transition(kj, x).norm() < 1e-8);
      Vector back = apply_transition(model.transition(j, k), apply_transition(kj, x));
      CHECK((back - x).norm() < 1e-8);
    }
  }

  // Undo each chart's orientation, integrate the drift over the sorted net:
  // the effective potential has exactly two interior minima, near 0 and 1.
  std::vector<int> order(K);
  for (int k = 0; k < K; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return model.net.points[a][0] < model.net.points[b][0];
  });
  std::vector<double> pos(K), drift(K);
  for (int r = 0; r < K; ++r) {
    int k = order[r];
    double o = 0.0;
    for (int j : model.net.neighbors[k])
      o += (model.net.points[j][0] - model.net.points[k][0]) *
           model.charts[k].centers.at(j)[0];
    double orient = (o >= 0.0) ? 1.0 : -1.0;
    pos[r] = model.net.points[k][0];
    drift[r] = orient * model.charts[k].drift[0];
  }
  std::vector<double> potential(K, 0.0);
  for (int r = 1; r < K; ++r)
    potential[r] = potential[r - 1] -
                   0.5 * (drift[r] + drift[r - 1]) * (pos[r] - pos[r - 1]);
  std::vector<double> minima;
  for (int r = 1; r + 1 < K; ++r)
    if (potential[r] < potential[r - 1] && potential[r] < potential[r + 1])
      minima.push_back(pos[r]);
  REQUIRE(minima.size() == 2);
  CHECK(std::abs(minima[0] - 0.0) <= 0.1);
  CHECK(std::abs(minima[1] - 1.0) <= 0.1);
}

TEST_CASE("learning is deterministic in the seed") {
  StateSpace s = sde_space_1d([](double x) { return -grad_u1(x); }, 1.0, 0.005,
                              PointList{});
  for (int i = 0; i <= 40; ++i) s.initial_points.push_back(pt1(-0.1 + 0.03 * i));
  LearnParams prm;
  prm.delta = 0.15;
  prm.d = 1;
  prm.m = 4;
  prm.p = 200;
  AtlasModel a = learn_atlas(s, prm, 99);
  AtlasModel b = learn_atlas(s, prm, 99);
  REQUIRE(a.charts.size() == b.charts.size());
  for (std::size_t k = 0; k < a.charts.size(); ++k) {
    CHECK(a.charts[k].drift == b.charts[k].drift);
    CHECK(a.charts[k].diffusion == b.charts[k].diffusion);
    for (auto& [j, c] : a.charts[k].centers)
      CHECK(c == b.charts[k].centers.at(j));
  }
  REQUIRE(a.transitions.size() == b.transitions.size());
  for (auto& [key, s_a] : a.transitions) {
    const TransitionMap& s_b = b.transitions.at(key);
    CHECK(s_a.T == s_b.T);
    CHECK(s_a.mu_from == s_b.mu_from);
    CHECK(s_a.mu_to == s_b.mu_to);
  }
  // different seed, different samples
  AtlasModel c = learn_atlas(s, prm, 100);
  CHECK(a.charts[0].drift != c.charts[0].drift);
}

}  // TEST_SUITE
