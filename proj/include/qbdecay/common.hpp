#pragma once

#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qbdecay {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Coordinate axis of the quarter plane. Axis::One is the x1 direction.
enum class Axis { One = 1, Two = 2 };

inline Axis other(Axis a) { return a == Axis::One ? Axis::Two : Axis::One; }
inline int axis_index(Axis a) { return a == Axis::One ? 0 : 1; }

// Malformed input files or block specifications.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// An evaluation was requested outside the convergence domain of a series
// or generating function.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative scheme failed to reach its tolerance within the iteration cap.
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// The model violates a structural precondition of the requested analysis
// (empty convergence region, no interior witness point, and so on).
struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qbdecay
