#pragma once

#include <cmath>
#include <string>

#include "qbdecay/model.hpp"

namespace qbdecay::testing {

inline std::string source_dir() { return QBDECAY_SOURCE_DIR; }
inline std::string data_path(const std::string& name) {
  return source_dir() + "/data/" + name;
}

// Closed forms for the scalar reference walk (interior weights 0.3 hold,
// 0.1 right/up, 0.2 left/down).
inline constexpr double kM1T1Lo = -0.5930290478923527;
inline constexpr double kM1T1Hi = 1.2861762284522982;
inline constexpr double kM1EtaLower0 = -0.5347999967395701;
inline constexpr double kM1EtaUpper0 = 1.2279471772995154;
inline const double kM1G1 = 2.0 - std::sqrt(2.0);             // G1(1)
inline const double kM1EtaUpperSlope0 = 1.0 / (2.0 * std::sqrt(2.0));
inline constexpr double kM1SStar = 1.183342832252;            // kernel crossing
inline constexpr double kM1Gamma0Lo = -0.490195651692;
inline const double kM1Xi11 = 2.0 * std::log((0.7 + std::sqrt(0.17)) / 0.4);

// Single-phase model assembled from explicit step weights.
struct ScalarStep {
  int i1, i2;
  double w;
};

inline BlockModel scalar_model(std::initializer_list<ScalarStep> origin,
                               std::initializer_list<ScalarStep> axis1,
                               std::initializer_list<ScalarStep> axis2,
                               std::initializer_list<ScalarStep> interior) {
  BlockModel m(1);
  auto fill = [](BlockFamily& f, std::initializer_list<ScalarStep> steps) {
    for (const auto& s : steps) f.at(s.i1, s.i2)(0, 0) = s.w;
  };
  fill(m.origin(), origin);
  fill(m.axis1(), axis1);
  fill(m.axis2(), axis2);
  fill(m.interior(), interior);
  return m;
}

}  // namespace qbdecay::testing
