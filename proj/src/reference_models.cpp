#include "qbdecay/reference_models.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qbdecay {

namespace {

void put(BlockFamily& fam, int i1, int i2, double w) { fam.at(i1, i2) = Matrix::Constant(1, 1, w); }

struct MassEntry {
  int i1, i2;
  double mass;
};

// Uniform double in [0.5, 1.5) from the top 53 bits of the generator.
double draw(std::mt19937_64& rng) {
  return 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// 2x2 block with positive entries summing to `mass`.
Matrix split_mass(double mass, std::mt19937_64& rng) {
  Matrix u(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) u(r, c) = draw(rng);
  return (mass / u.sum()) * u;
}

void fill_family(BlockFamily& fam, const std::vector<MassEntry>& masses, std::mt19937_64& rng) {
  for (const auto& e : masses) fam.at(e.i1, e.i2) = split_mass(e.mass, rng);
}

}  // namespace

BlockModel reference_model_m1() {
  BlockModel m(1);

  BlockFamily& in = m.interior();
  put(in, 0, 0, 0.3);
  put(in, 1, 0, 0.1);
  put(in, -1, 0, 0.2);
  put(in, 0, 1, 0.1);
  put(in, 0, -1, 0.2);

  const double r7 = 0.9 / 0.7;
  BlockFamily& a1 = m.axis1();
  put(a1, 0, 0, 0.3 * r7);
  put(a1, 1, 0, 0.1 * r7);
  put(a1, -1, 0, 0.2 * r7);
  put(a1, 0, 1, 0.1 * r7);

  BlockFamily& a2 = m.axis2();
  put(a2, 0, 0, 0.3 * r7);
  put(a2, 0, 1, 0.1 * r7);
  put(a2, 0, -1, 0.2 * r7);
  put(a2, 1, 0, 0.1 * r7);

  const double r5 = 0.9 / 0.5;
  BlockFamily& o = m.origin();
  put(o, 0, 0, 0.3 * r5);
  put(o, 1, 0, 0.1 * r5);
  put(o, 0, 1, 0.1 * r5);

  return m;
}

BlockModel reference_model_m1_zero_boundary() {
  BlockModel full = reference_model_m1();
  BlockModel m(1);
  m.interior() = full.interior();
  for (int i1 = -1; i1 <= 1; ++i1) {
    for (int i2 = -1; i2 <= 1; ++i2) {
      put(m.origin(), i1, i2, 0.0);
      put(m.axis1(), i1, i2, 0.0);
      put(m.axis2(), i1, i2, 0.0);
    }
  }
  return m;
}

BlockModel reference_model_m2() {
  std::mt19937_64 rng(424242u);
  BlockModel m(2);

  fill_family(m.origin(),
              {{0, 0, 0.30}, {1, 0, 0.20}, {0, 1, 0.20}, {1, 1, 0.05}}, rng);
  fill_family(m.axis1(),
              {{-1, 0, 0.28}, {0, 0, 0.18}, {1, 0, 0.07}, {-1, 1, 0.03}, {0, 1, 0.05}, {1, 1, 0.02}},
              rng);
  fill_family(m.axis2(),
              {{0, -1, 0.28}, {0, 0, 0.18}, {0, 1, 0.07}, {1, -1, 0.03}, {1, 0, 0.05}, {1, 1, 0.02}},
              rng);
  fill_family(m.interior(),
              {{-1, -1, 0.13}, {0, -1, 0.21}, {1, -1, 0.03},
               {-1, 0, 0.20}, {0, 0, 0.10}, {1, 0, 0.03},
               {-1, 1, 0.02}, {0, 1, 0.03}, {1, 1, 0.015}},
              rng);

  return m;
}

}  // namespace qbdecay
