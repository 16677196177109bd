#include <doctest.h>

#include <cmath>
#include <random>

#include "robust_synth/common/box.hpp"
#include "robust_synth/common/errors.hpp"
#include "robust_synth/models/gaussian.hpp"
#include "robust_synth/models/labeling.hpp"
#include "robust_synth/models/linear_model.hpp"
#include "robust_synth/models/system_model.hpp"
#include "robust_synth/models/van_der_pol.hpp"

using namespace robust_synth;
using namespace robust_synth::models;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;

namespace {

// mpmath, 30 digits.
constexpr double kPhi1 = 0.841344746068542948;
constexpr double kPhi17 = 0.955434537241456956;
constexpr double kRectUnit = 0.466064942674392267;

LabelingMap case_study_labels() {
  return LabelingMap({"p1", "p2"}, {{"p1", Box({4, -4}, {10, 0})}, {"p2", Box({4, 0}, {10, 4})}});
}

}  // namespace

TEST_CASE("standard normal cdf") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(std::abs(std_normal_cdf(1.0) - kPhi1) < 1e-15);
  CHECK(std::abs(std_normal_cdf(1.7) - kPhi17) < 1e-15);
  CHECK(std::abs(std_normal_cdf(-1.7) - (1.0 - kPhi17)) < 1e-15);
  CHECK(std::abs(std_normal_cdf(-8.0) - 6.22096057427178412e-16) < 1e-28);
  CHECK(std_normal_cdf(-40.0) >= 0.0);
  CHECK(std_normal_cdf(40.0) == 1.0);
  CHECK(std::abs(std_normal_interval(8.0, 9.0) - 6.21983198586583043e-16) < 1e-28);
  for (double p : {1e-10, 0.001, 0.3, 0.5, 0.9, 0.995}) CHECK(std::abs(std_normal_cdf(std_normal_quantile(p)) - p) < 1e-13);
}

TEST_CASE("rect probability") {
  GaussianKernel k{Vector2d::Zero(), MatrixXd::Identity(2, 2)};
  CHECK(std::abs(rect_probability(k, Box({-1, -1}, {1, 1})) - kRectUnit) < 1e-14);
  CHECK(rect_probability(k, Box({-8, -8}, {8, 8})) >= 1.0 - 1e-9);
  CHECK(rect_probability(k, Box({0.5, -1}, {0.5, 1})) == 0.0);
  GaussianKernel scaled{Vector2d(1, -2), Eigen::Vector2d(0.5, 2.0).asDiagonal()};
  const double expected = (std_normal_cdf(2.0) - std_normal_cdf(-2.0)) * (std_normal_cdf(0.5) - 0.5);
  CHECK(std::abs(rect_probability(scaled, Box({0, -2}, {2, -1})) - expected) < 1e-15);
  MatrixXd full(2, 2);
  full << 1, 0.5, 0, 1;
  CHECK_THROWS_AS(rect_probability(GaussianKernel{Vector2d::Zero(), full}, Box({0, 0}, {1, 1})), InputError);
  CHECK_THROWS_AS(rect_probability(k, Box({0}, {1})), InputError);
  CHECK_THROWS_AS(Box({1.0}, {0.0}), InputError);
}

TEST_CASE("rect probability against Monte Carlo") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> u(-2, 2);
  const int samples = 200000;
  for (int trial = 0; trial < 5; ++trial) {
    const Vector2d mean(u(rng), u(rng));
    const Vector2d sd(0.5 + std::abs(u(rng)), 0.5 + std::abs(u(rng)));
    const double a0 = u(rng), a1 = u(rng);
    const Box rect({std::min(a0, a1), -1.0}, {std::max(a0, a1), 1.5});
    const double p = rect_probability(GaussianKernel{mean, sd.asDiagonal()}, rect);
    int hits = 0;
    for (int i = 0; i < samples; ++i) {
      const Eigen::VectorXd x = mean + Vector2d(sd[0] * z(rng), sd[1] * z(rng));
      hits += rect.contains(x);
    }
    const double sigma = std::sqrt(p * (1 - p) / samples);
    CHECK(std::abs(double(hits) / samples - p) <= 4 * sigma + 1e-12);
  }
}

TEST_CASE("labels") {
  const auto L = case_study_labels();
  CHECK(L.label(Vector2d(5, -2)) == scltl::Letter{1});
  CHECK(L.label(Vector2d(0, 0)) == scltl::Letter{0});
  CHECK(L.label(Vector2d(5, 0)) == scltl::Letter{3});
  CHECK_THROWS_AS(LabelingMap({"p1", "p2"}, {{"p1", Box({0}, {1})}}), InputError);
  CHECK_THROWS_AS(LabelingMap({"p1"}, {{"p1", Box({0}, {1})}, {"p1", Box({0}, {2})}}), InputError);
}

TEST_CASE("ball letters examples") {
  const auto L = case_study_labels();
  const auto near_edge = L.ball_letters(Vector2d(4.0, -2.0), 0.95);
  REQUIRE(near_edge.size() == 2);
  CHECK(near_edge[0] == scltl::Letter{0});
  CHECK(near_edge[1] == scltl::Letter{1});
  CHECK(L.ball_letters(Vector2d(7, -2), 0.95) == std::vector<scltl::Letter>{scltl::Letter{1}});
  for (const Vector2d y : {Vector2d(5, 0), Vector2d(-3, 2), Vector2d(4, 4)}) {
    CHECK(L.ball_letters(y, 0.0) == std::vector<scltl::Letter>{L.label(y)});
  }
}

TEST_CASE("ball letters cover every point of the ball") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(2.0, 12.0), radius(0.0, 2.5), unit(-1, 1);
  const auto L = case_study_labels();
  for (int i = 0; i < 400; ++i) {
    const Vector2d y(coord(rng), coord(rng) - 7.0);
    const double eps = radius(rng);
    const auto letters = L.ball_letters(y, eps);
    REQUIRE_FALSE(letters.empty());
    for (int k = 0; k < 100; ++k) {
      Vector2d d(unit(rng), unit(rng));
      if (d.norm() > 1) continue;
      const Vector2d p = y + eps * d;
      CHECK(std::find(letters.begin(), letters.end(), L.label(p)) != letters.end());
    }
  }
}

TEST_CASE("linear model step") {
  const MatrixXd A = 0.9 * MatrixXd::Identity(2, 2);
  const MatrixXd B = 0.7 * MatrixXd::Identity(2, 2);
  const MatrixXd I = MatrixXd::Identity(2, 2);
  SystemModel m = LinearModel(A, B, I, I);
  CHECK(step(m, Vector2d(1, 1), Vector2d(1, 1), Vector2d::Zero(), Vector2d::Zero()).isApprox(Vector2d(1.6, 1.6)));
  CHECK(step(m, Vector2d(1, 1), Vector2d(1, 1), Vector2d(0.1, -0.1), Vector2d(1, 2))
            .isApprox(Vector2d(2.7, 3.5)));
  SystemModel zero = LinearModel(MatrixXd::Zero(2, 2), B, I, 2.0 * I);
  CHECK(step(zero, Vector2d(3, 4), Vector2d::Zero(), Vector2d::Zero(), Vector2d(0.5, -1)).isApprox(Vector2d(1, -2)));
  CHECK_THROWS_AS(LinearModel(A, B, I, MatrixXd::Zero(2, 2)), InputError);
  CHECK_THROWS_AS(LinearModel(A, MatrixXd::Identity(3, 3), I, I), InputError);
  CHECK_THROWS_AS(step(m, Vector2d(1, 1), VectorXd::Zero(3), Vector2d::Zero(), Vector2d::Zero()), InputError);
  CHECK(std::abs(spectral_norm(A) - 0.9) < 1e-15);
}

TEST_CASE("Van der Pol") {
  const auto vdp = std::make_shared<VanDerPol>(0.1);
  const VectorXd theta0 = VectorXd::Constant(1, 1.0);
  SystemModel m = NonlinearModel(vdp, MatrixXd::Identity(2, 2), theta0);
  const VectorXd u0 = VectorXd::Zero(1);
  CHECK(step(m, Vector2d(1, 0), u0, theta0, Vector2d::Zero()).isApprox(Vector2d(1, -0.1)));

  const UncertaintyBox theta_set(Box({0.7}, {1.3}));
  CHECK(std::abs(vdp_disturbance_bound(Vector2d(2, 1), theta_set, 0.1) - 0.09) < 1e-15);
  CHECK(vdp_disturbance_bound(Vector2d(1, 5), theta_set, 0.1) == 0.0);
  CHECK(std::abs(vdp_disturbance_bound(Vector2d(0, 1), theta_set, 0.1) - 0.03) < 1e-15);
  CHECK(vdp_disturbance_bound(Vector2d(0, -1), theta_set, 0.1) > 0.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> x(-4, 4), th(0.5, 1.5), uu(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    const Vector2d s(x(rng), x(rng));
    const VectorXd u = VectorXd::Constant(1, uu(rng));
    const VectorXd theta = VectorXd::Constant(1, th(rng));
    const VectorXd diff = vdp->f(s, u, theta) - vdp->f(s, u, theta0);
    const double expected = 0.1 * (theta[0] - 1.0) * (1 - s[0] * s[0]) * s[1];
    CHECK(diff[0] == 0.0);
    CHECK(std::abs(diff[1] - expected) <= 1e-14 * (1 + std::abs(expected)));
  }
}

TEST_CASE("Van der Pol cell bounds dominate sampled values") {
  const VanDerPol vdp(0.1);
  const VectorXd theta0 = VectorXd::Constant(1, 1.0);
  const UncertaintyBox theta_set(Box({0.7}, {1.3}));
  const VectorXd u = VectorXd::Zero(1);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0, 1);
  for (const Box cell : {Box({-0.25, -0.25}, {0.25, 0.25}), Box({1.5, 0.5}, {2.0, 1.25}), Box({-3, -3}, {-2.8, -2.7})}) {
    const double d_cell = vdp.disturbance_bound(cell, u, theta0, theta_set);
    const MatrixXd M = vdp.jacobian_bound(cell, u, theta0);
    for (int i = 0; i < 10000; ++i) {
      const Vector2d p(cell.lo(0) + cell.width(0) * unit(rng), cell.lo(1) + cell.width(1) * unit(rng));
      CHECK(vdp.disturbance_bound(p, u, theta0, theta_set) <= d_cell + 1e-15);
      // Exact Jacobian of the nominal dynamics.
      MatrixXd J(2, 2);
      J << 1, 0.1, 0.1 * (-1 - 2 * p[0] * p[1]), 1 + 0.1 * (1 - p[0] * p[0]);
      CHECK(((M - J.cwiseAbs()).array() >= -1e-15).all());
    }
  }
}
