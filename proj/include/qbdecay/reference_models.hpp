#pragma once

#include "qbdecay/model.hpp"

namespace qbdecay {

// Scalar walk (s0 = 1): interior steps right/left/up/down with weights
// 0.1/0.2/0.1/0.2 plus 0.3 holding, total 0.9; each boundary family is
// the interior family restricted to its allowed steps and rescaled back
// to total 0.9.
BlockModel reference_model_m1();

// Same interior as reference_model_m1 but all boundary families zero, so
// the boundary feasibility intervals span the whole region slice. Useful
// for exercising the region-edge classification case; not irreducible,
// so it is for in-memory analysis only.
BlockModel reference_model_m1_zero_boundary();

// Two-phase model (s0 = 2) with fixed per-step mass totals and a
// deterministic pseudo-random split of each mass across the four phase
// entries. Strong inward drift keeps the descent-weight series tight.
BlockModel reference_model_m2();

}  // namespace qbdecay
