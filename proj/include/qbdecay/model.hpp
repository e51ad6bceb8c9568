#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "qbdecay/common.hpp"

namespace qbdecay {

// Which part of the quarter plane a lattice point belongs to.
enum class Face { Origin, Axis1, Axis2, Interior };

// One family of nearest-neighbour transition blocks, indexed by the
// increment (i1, i2) with i1, i2 in {-1, 0, 1}. Every slot holds an
// s0 x s0 matrix; slots that the face geometry forbids are kept as
// explicit zero matrices so a loaded model can be inspected before
// validation.
class BlockFamily {
 public:
  BlockFamily() = default;
  explicit BlockFamily(int s0);

  const Matrix& at(int i1, int i2) const;
  Matrix& at(int i1, int i2);

  // Entrywise sum of all nine blocks.
  Matrix sum() const;

  bool all_zero(int i1, int i2) const;

 private:
  static int slot(int i1, int i2);
  std::array<Matrix, 9> blocks_{};
};

// Block specification of a nonnegative matrix indexed by Z+^2 x {1..s0}
// with nearest-neighbour level transitions and face-dependent blocks:
// an origin family, two axis families and an interior family.
class BlockModel {
 public:
  BlockModel() = default;
  explicit BlockModel(int s0);

  int s0() const { return s0_; }

  const BlockFamily& family(Face f) const;
  BlockFamily& family(Face f);

  const BlockFamily& origin() const { return family(Face::Origin); }
  const BlockFamily& axis1() const { return family(Face::Axis1); }
  const BlockFamily& axis2() const { return family(Face::Axis2); }
  const BlockFamily& interior() const { return family(Face::Interior); }
  BlockFamily& origin() { return family(Face::Origin); }
  BlockFamily& axis1() { return family(Face::Axis1); }
  BlockFamily& axis2() { return family(Face::Axis2); }
  BlockFamily& interior() { return family(Face::Interior); }

  // The family governing transitions out of lattice point (x1, x2).
  const BlockFamily& family_at(int x1, int x2) const;

  bool operator==(const BlockModel& other) const;

 private:
  int s0_ = 0;
  std::array<BlockFamily, 4> families_;
};

struct ValidationIssue {
  std::string code;
  std::string message;
};

// Empty report means the model passed every structural check.
using ValidationReport = std::vector<ValidationIssue>;

// Time reversal of a BlockModel. The reversed operator is the transpose
// of the original one, re-read as a process on the quarter plane. Away
// from the origin it is again of nearest-neighbour block form; the rows
// at distance one from an axis carry special descent blocks, which are
// kept separately. The original model is retained so that reversal is
// an exact involution.
class ReversedModel {
 public:
  ReversedModel() = default;
  ReversedModel(BlockModel derived, BlockModel original);

  int s0() const { return derived_.s0(); }

  // Nearest-neighbour families of the reversed operator, valid away from
  // the near-axis rows. The interior family is exact everywhere in the
  // open quadrant.
  const BlockModel& derived() const { return derived_; }

  const BlockModel& original() const { return original_; }

  // Block used from a point with x_axis == 1 when stepping to x_axis == 0,
  // with increment i in {-1, 0, 1} along the other axis.
  Matrix descent(Axis axis, int i) const;

  // Transition block of the reversed operator from x to x + (d1, d2),
  // honouring the near-axis overrides. x must be a valid lattice point
  // and the target must stay in the quarter plane.
  Matrix block_at(int x1, int x2, int d1, int d2) const;

 private:
  BlockModel derived_;
  BlockModel original_;
};

// Reads a model from its JSON file form:
//   {"s0": <int>, "blocks": {"empty"|"b1"|"b2"|"b12": {"<i1>,<i2>": [[...]]}}}
// Blocks are row-major s0 x s0 arrays; missing blocks default to zero.
// Unknown keys anywhere are rejected. Structural problems (bad shapes,
// negative or non-finite entries, malformed keys) raise ParseError;
// semantic checks are left to validate_model.
BlockModel load_model(const std::string& path);
BlockModel load_model_json(const std::string& text);

// Canonical JSON form; zero blocks are omitted, floats round-trip.
std::string save_model(const BlockModel& m);
void save_model(const BlockModel& m, const std::string& path);

// Structural and spectral-precondition checks:
//  - forbidden blocks (descents off a face) are zero,
//  - the aggregated interior matrix is irreducible and aperiodic,
//  - the reachability graph of a 12x12 truncation is strongly connected
//    through level (1,1) and has period one.
// Returns the list of violations; empty means valid.
ValidationReport validate_model(const BlockModel& m);

// Exact time reversal. reverse_model(m).original() == m.
ReversedModel reverse_model(const BlockModel& m);

// FNV-1a hash of the canonical JSON form, hex-encoded. Used to tag
// reports with the model they were computed from.
std::string model_hash(const BlockModel& m);

}  // namespace qbdecay
