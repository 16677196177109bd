#include <doctest.h>

#include <cmath>
#include <random>

#include "robust_synth/common/errors.hpp"
#include "robust_synth/models/van_der_pol.hpp"
#include "robust_synth/ssr/certificate.hpp"
#include "robust_synth/ssr/coupling.hpp"
#include "robust_synth/ssr/oracle.hpp"

using namespace robust_synth;
using namespace robust_synth::ssr;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;

namespace {

// mpmath, 30 digits.
constexpr double kMassVertex = 0.949257191186168378;  // ||m|| = 0.09 sqrt 2
constexpr double kDeltaVertex = 0.0507428088138316215;
constexpr double kMass2 = 0.317310507862914103;
constexpr double kMass6 = 0.00269979606326018905;
constexpr double kDeltaHalfCov = 0.0717127851703442143;
constexpr double kDeltaVdp = 0.0358926910442781349;

models::LinearModel case_linear(const MatrixXd& R) {
  return models::LinearModel(0.9 * MatrixXd::Identity(2, 2), 0.7 * MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2), R);
}

models::UncertaintyBox theta_box(double r) { return models::UncertaintyBox(Box({-r, -r}, {r, r})); }

models::NonlinearModel vdp_model() {
  return models::NonlinearModel(std::make_shared<models::VanDerPol>(0.1), MatrixXd::Identity(2, 2),
                                VectorXd::Constant(1, 1.0));
}

}  // namespace

TEST_CASE("coupling mass values") {
  CHECK(coupling_mass(Vector2d::Zero()) == 1.0);
  CHECK(std::abs(coupling_mass(Vector2d(0.09, 0.09)) - kMassVertex) < 1e-15);
  CHECK(std::abs(coupling_mass_from_norm(2.0) - kMass2) < 1e-15);
  CHECK(std::abs(coupling_mass_from_norm(6.0) - kMass6) < 1e-17);
  const auto spec = CouplingSpec::from_offset(Vector2d(0.09, 0.09));
  CHECK(std::abs(spec.delta() - kDeltaVertex) < 1e-15);
}

TEST_CASE("coupling mass is strictly decreasing in the offset norm") {
  double prev = 1.0;
  for (double r = 0.05; r <= 12.0; r += 0.05) {
    const double m = coupling_mass_from_norm(r);
    CHECK(m < prev);
    CHECK(m > 0.0);
    prev = m;
  }
}

TEST_CASE("numeric coupling oracle") {
  CHECK(std::abs(numeric_coupling_oracle(Vector2d::Zero()) - 1.0) < 1e-10);
  CHECK(std::abs(numeric_coupling_oracle(Vector2d(0.09, 0.09)) - kMassVertex) < 1e-8);
  CHECK(std::abs(numeric_coupling_oracle(VectorXd::Constant(1, 6.0)) - kMass6) < 1e-8);
  CHECK_THROWS_AS(numeric_coupling_oracle(VectorXd::Constant(1, 9.0)), InputError);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> r(0, 6), a(0, 6.283185307179586);
  for (int i = 0; i < 20; ++i) {
    const double n = r(rng), phi = a(rng);
    const Vector2d m(n * std::cos(phi), n * std::sin(phi));
    CHECK(std::abs(coupling_mass(m) - numeric_coupling_oracle(m)) < 1e-7);
  }
}

TEST_CASE("coupling acceptance ratio") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> z;
  const Vector2d m(0.3, -0.2);
  for (int i = 0; i < 200; ++i) {
    const Vector2d w(z(rng), z(rng));
    const double ratio = std::exp(-0.5 * (w + m).squaredNorm()) / std::exp(-0.5 * w.squaredNorm());
    CHECK(std::abs(coupling_acceptance(w, m) - std::min(1.0, ratio)) < 1e-14);
  }
}

TEST_CASE("linear delta") {
  const auto c = delta_linear(case_linear(MatrixXd::Identity(2, 2)), theta_box(0.09));
  CHECK(c.epsilon == 0.0);
  CHECK(std::abs(c.delta_global() - kDeltaVertex) < 1e-15);
  CHECK(c.relation.kind == RelationKind::Identity);
  CHECK(delta_linear(case_linear(MatrixXd::Identity(2, 2)), theta_box(0.0)).delta_global() == 0.0);
  const auto half = delta_linear(case_linear(std::sqrt(0.5) * MatrixXd::Identity(2, 2)), theta_box(0.09));
  CHECK(std::abs(half.delta_global() - kDeltaHalfCov) < 1e-14);
  // Enlarging Theta never decreases delta.
  double prev = 0.0;
  for (double r = 0.0; r < 1.0; r += 0.05) {
    const double d = delta_linear(case_linear(MatrixXd::Identity(2, 2)), theta_box(r)).delta_global();
    CHECK(d >= prev);
    prev = d;
  }
  CHECK_THROWS_AS(delta_linear(case_linear(MatrixXd::Identity(2, 2)), models::UncertaintyBox(Box({0}, {1}))),
                  InputError);
}

TEST_CASE("nonlinear delta for Van der Pol") {
  const auto m = vdp_model();
  const models::UncertaintyBox theta_set(Box({0.7}, {1.3}));
  const VectorXd u = VectorXd::Zero(1);
  CHECK(std::abs(delta_nonlinear(m, theta_set, Vector2d(2, 1), u) - kDeltaVdp) < 1e-15);
  for (double v : {-3.0, -0.5, 0.0, 2.0, 7.0}) {
    CHECK(delta_nonlinear(m, theta_set, Vector2d(1, v), u) == 0.0);
    CHECK(delta_nonlinear(m, theta_set, Vector2d(-1, v), u) == 0.0);
    CHECK(delta_nonlinear(m, theta_set, Vector2d(v, 0), u) == 0.0);
  }
  const models::UncertaintyBox nominal(Box({1.0}, {1.0}));
  CHECK(delta_nonlinear(m, nominal, Vector2d(2, 1), u) == 0.0);
  const models::UncertaintyBox wider(Box({0.5}, {1.3}));
  CHECK(delta_nonlinear(m, wider, Vector2d(2, 1), u) >= delta_nonlinear(m, theta_set, Vector2d(2, 1), u));
}

TEST_CASE("nonlinear delta table is a cell supremum") {
  const auto m = vdp_model();
  const models::UncertaintyBox theta_set(Box({0.7}, {1.3}));
  const std::vector<Box> cells{Box({1.5, 0.5}, {2.5, 1.5}), Box({-0.25, -0.25}, {0.25, 0.25})};
  const std::vector<VectorXd> inputs{VectorXd::Constant(1, -1.0), VectorXd::Constant(1, 1.0)};
  const auto cert = delta_nonlinear_table(m, theta_set, cells, inputs);
  REQUIRE(cert.has_table());
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0, 1);
  for (std::size_t s = 0; s < cells.size(); ++s) {
    for (std::size_t u = 0; u < inputs.size(); ++u) {
      for (int i = 0; i < 500; ++i) {
        const Vector2d p(cells[s].lo(0) + cells[s].width(0) * unit(rng), cells[s].lo(1) + cells[s].width(1) * unit(rng));
        CHECK(delta_nonlinear(m, theta_set, p, inputs[u]) <= cert.delta_at(s, u) + 1e-15);
      }
    }
  }
}

TEST_CASE("transitive composition") {
  SsrCertificate model_cert;
  model_cert.abstract_model = "nominal";
  model_cert.concrete_model = "concrete";
  model_cert.delta = 0.051;
  model_cert.provenance = {"model"};
  SsrCertificate grid_cert;
  grid_cert.provenance = {"grid"};
  grid_cert.abstract_model = "grid";
  grid_cert.concrete_model = "nominal";
  grid_cert.epsilon = 0.950;
  grid_cert.relation = Relation{RelationKind::GridCell, 9.5, "cell"};

  const auto c = compose_transitive(grid_cert, model_cert);
  CHECK(c.epsilon == 0.950);
  CHECK(c.delta_global() == 0.051);
  CHECK(c.abstract_model == "grid");
  CHECK(c.concrete_model == "concrete");
  CHECK(c.relation.kind == RelationKind::GridCell);
  CHECK(c.provenance.size() >= 3);
  // Order of the arguments does not matter.
  CHECK(compose_transitive(model_cert, grid_cert).epsilon == 0.950);

  const auto id = compose_transitive(identity_certificate(), grid_cert);
  CHECK(id.epsilon == grid_cert.epsilon);
  CHECK(id.delta_global() == 0.0);

  SsrCertificate table_cert;
  table_cert.delta = DeltaTable(1, 1, 0.2);
  SsrCertificate big;
  big.delta = 0.9;
  const auto clipped = compose_transitive(table_cert, big);
  REQUIRE(clipped.has_table());
  CHECK(clipped.delta_at(0, 0) == 1.0);

  SsrCertificate other;
  other.delta = DeltaTable(2, 1, 0.1);
  CHECK_THROWS_AS(compose_transitive(table_cert, other), NumericError);

  SsrCertificate unrelated;
  unrelated.abstract_model = "a";
  unrelated.concrete_model = "b";
  CHECK_THROWS_AS(compose_transitive(unrelated, grid_cert), NumericError);

  // Scalar associativity (no clipping) and exact epsilon additivity.
  SsrCertificate a, b, d;
  a.epsilon = 0.1;
  a.delta = 0.01;
  b.epsilon = 0.2;
  b.delta = 0.02;
  d.epsilon = 0.3;
  d.delta = 0.03;
  const auto left = compose_transitive(compose_transitive(a, b), d);
  const auto right = compose_transitive(a, compose_transitive(b, d));
  CHECK(std::abs(left.delta_global() - right.delta_global()) < 1e-15);
  CHECK(left.epsilon == (0.1 + 0.2) + 0.3);
}
