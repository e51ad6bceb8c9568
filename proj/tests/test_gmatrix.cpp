#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qbdecay/gmatrix.hpp"
#include "qbdecay/reference_models.hpp"
#include "qbdecay/regions.hpp"

using namespace qbdecay;
namespace qt = qbdecay::testing;

TEST_SUITE("gmatrix") {

TEST_CASE("scalar G matrix matches the quadratic root") {
  const BlockModel m = reference_model_m1();
  GMatrixEval g = solve_g_matrix(m, Axis::One, 1.0, 1e-12);
  CHECK(g.G(0, 0) == doctest::Approx(qt::kM1G1).epsilon(1e-10));
  CHECK(g.residual <= 1e-11);
  CHECK(g.spectral_radius == doctest::Approx(qt::kM1G1).epsilon(1e-10));
  CHECK_FALSE(g.endpoint_tolerance);
}

TEST_CASE("spectral radius of G traces the lower boundary branch") {
  const BlockModel m = reference_model_m1();
  for (double t : {-0.4, 0.0, 0.5, 1.0}) {
    GMatrixEval g1 = solve_g_matrix(m, Axis::One, std::exp(t), 1e-12);
    CHECK(g1.spectral_radius ==
          doctest::Approx(std::exp(eta(m, Axis::One, t, Branch::Lower))).epsilon(1e-9));
    GMatrixEval g2 = solve_g_matrix(m, Axis::Two, std::exp(t), 1e-12);
    CHECK(g2.spectral_radius ==
          doctest::Approx(std::exp(eta(m, Axis::Two, t, Branch::Lower))).epsilon(1e-9));
  }
}

TEST_CASE("outside the convergence interval the iteration is rejected") {
  const BlockModel m = reference_model_m1();
  CHECK_THROWS_AS(solve_g_matrix(m, Axis::One, std::exp(qt::kM1T1Hi + 0.05), 1e-12),
                  DomainError);
  CHECK_THROWS_AS(solve_g_matrix(m, Axis::One, std::exp(qt::kM1T1Lo - 0.05), 1e-12),
                  DomainError);
}

TEST_CASE("at the interval endpoint the relaxed tolerance applies") {
  const BlockModel m = reference_model_m1();
  GMatrixEval g = solve_g_matrix(m, Axis::One, std::exp(qt::kM1T1Hi), 1e-12);
  // Tangency: spr(G) == sqrt(2) up to the sublinear convergence defect.
  CHECK(std::abs(g.spectral_radius - std::sqrt(2.0)) <= 1e-2);
  CHECK(g.residual <= 1e-5);
}

TEST_CASE("first-passage partial sums are exact for short paths") {
  const BlockModel m = reference_model_m1();
  // One step down; then hold+down; then hold^2+down and up+down+down.
  CHECK(g_series_partial(m, Axis::One, 1.0, 1)(0, 0) ==
        doctest::Approx(0.2).epsilon(1e-15));
  CHECK(g_series_partial(m, Axis::One, 1.0, 2)(0, 0) ==
        doctest::Approx(0.2 + 0.12).epsilon(1e-15));
  CHECK(g_series_partial(m, Axis::One, 1.0, 3)(0, 0) ==
        doctest::Approx(0.396).epsilon(1e-14));
}

TEST_CASE("partial sums increase monotonically to G from below") {
  for (const BlockModel& m : {reference_model_m1(), reference_model_m2()}) {
    const Matrix G = solve_g_matrix(m, Axis::One, 1.0, 1e-13).G;
    Matrix prev = Matrix::Zero(m.s0(), m.s0());
    for (int n : {1, 2, 4, 8, 16}) {
      Matrix part = g_series_partial(m, Axis::One, 1.0, n);
      CHECK(((part - prev).array() >= -1e-15).all());
      CHECK(((G - part).array() >= -1e-12).all());
      prev = part;
    }
    double gap8 = (G - g_series_partial(m, Axis::One, 1.0, 8)).lpNorm<Eigen::Infinity>();
    double gap16 = (G - prev).lpNorm<Eigen::Infinity>();
    CHECK(gap16 < gap8);
  }
}

TEST_CASE("series length is capped at desk scale") {
  CHECK_THROWS_AS(g_series_partial(reference_model_m1(), Axis::One, 1.0, 19),
                  std::invalid_argument);
}

TEST_CASE("boundary kernel of a restricted-family walk has the censored form") {
  // Axis family = interior family minus the descent step, unrescaled.
  const BlockModel m = qt::scalar_model(
      {{0, 0, 0.54}, {1, 0, 0.18}, {0, 1, 0.18}},
      {{0, 0, 0.3}, {1, 0, 0.1}, {-1, 0, 0.2}, {0, 1, 0.1}},
      {{0, 0, 0.3}, {0, 1, 0.1}, {0, -1, 0.2}, {1, 0, 0.1}},
      {{0, 0, 0.3}, {1, 0, 0.1}, {-1, 0, 0.2}, {0, 1, 0.1}, {0, -1, 0.2}});
  GMatrixEval g = solve_g_matrix(m, Axis::One, 1.0, 1e-12);
  Matrix k = boundary_kernel(m, Axis::One, 1.0, g.G);
  CHECK(k(0, 0) == doctest::Approx(0.6 + 0.1 * qt::kM1G1).epsilon(1e-10));
  PhiStarEval phi = phi_star(m, Axis::One, 1.0, 1e-12);
  CHECK(phi.value(0, 0) ==
        doctest::Approx(1.0 / (1.0 - (0.6 + 0.1 * qt::kM1G1))).epsilon(1e-9));
  CHECK(phi.kernel_spr == doctest::Approx(0.6 + 0.1 * qt::kM1G1).epsilon(1e-9));
}

TEST_CASE("the axis exponent is the kernel crossing") {
  const BlockModel m = reference_model_m1();
  CHECK(boundary_kernel_spr(m, Axis::One, std::exp(qt::kM1SStar)) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(boundary_kernel_spr(m, Axis::One, 1.0) < 1.0);
  CHECK_THROWS_AS(phi_star(m, Axis::One, std::exp(qt::kM1SStar) + 1e-3, 1e-12), DomainError);
}

}  // TEST_SUITE
