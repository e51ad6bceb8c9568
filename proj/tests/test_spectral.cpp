#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qbdecay/gmatrix.hpp"
#include "qbdecay/reference_models.hpp"
#include "qbdecay/spectral.hpp"

using namespace qbdecay;

namespace {

double chi_m1(double t1, double t2) {
  return 0.3 + 0.1 * std::exp(t1) + 0.2 * std::exp(-t1) + 0.1 * std::exp(t2) +
         0.2 * std::exp(-t2);
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("perron recovers known eigensystems") {
  Matrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  PerronResult p = perron(m);
  CHECK(p.value == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(p.right(0) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(p.left(1) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(p.residual <= 1e-10);

  Matrix s(1, 1);
  s << 0.7;
  CHECK(perron(s).value == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("zero-diagonal and nilpotent matrices are handled by the shift") {
  Matrix nil = Matrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  CHECK(perron(nil).value == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(cp_finite(nil) >= 1e9);
  CHECK(cp_finite(Matrix::Zero(2, 2)) == kInf);

  Matrix cyc = Matrix::Zero(2, 2);
  cyc(0, 1) = cyc(1, 0) = 1.0;
  CHECK(perron(cyc).value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("perron vectors of an irreducible matrix are strictly positive") {
  PerronResult p = perron(reference_model_m2().interior().sum());
  for (int i = 0; i < 2; ++i) {
    CHECK(p.left(i) > 0.0);
    CHECK(p.right(i) > 0.0);
  }
  CHECK(cp_finite(reference_model_m2().interior().sum()) ==
        doctest::Approx(1.0 / p.value).epsilon(1e-10));
}

TEST_CASE("generating-function slices of the scalar interior family") {
  const BlockModel m = reference_model_m1();
  const BlockFamily& f = m.interior();
  CHECK(gf_full(f, 1.0, 1.0)(0, 0) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(gf_full(f, 2.0, 1.0)(0, 0) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(gf_sum1(f, 0, 2.0)(0, 0) == doctest::Approx(0.3 + 0.2 + 0.1).epsilon(1e-15));
  CHECK(gf_sum2(f, 0, 0.5)(0, 0) == doctest::Approx(0.3 + 0.05 + 0.4).epsilon(1e-15));
  CHECK(interior_slice(m, Axis::One, -1, 3.0)(0, 0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(interior_slice(m, Axis::One, 1, 3.0)(0, 0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(interior_slice(m, Axis::One, 0, 3.0)(0, 0) ==
        doctest::Approx(0.3 + 0.3 + 0.2 / 3.0).epsilon(1e-15));
}

TEST_CASE("chi matches the scalar closed form") {
  const BlockModel m = reference_model_m1();
  CHECK(chi(m, 0.0, 0.0) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(chi(m, std::log(2.0), 0.0) == doctest::Approx(0.9).epsilon(1e-12));
  for (double t1 : {-0.4, 0.0, 0.7, 1.1})
    for (double t2 : {-0.5, 0.2, 0.9})
      CHECK(chi(m, t1, t2) == doctest::Approx(chi_m1(t1, t2)).epsilon(1e-11));
}

TEST_CASE("chi of the reversed interior is the reflection of chi") {
  const BlockModel m = reference_model_m2();
  const ReversedModel r = reverse_model(m);
  for (double t1 : {-0.8, -0.1, 0.6, 1.9})
    for (double t2 : {-0.7, 0.3, 1.4})
      CHECK(chi(r.derived(), t1, t2) == doctest::Approx(chi(m, -t1, -t2)).epsilon(1e-10));
}

}  // TEST_SUITE
