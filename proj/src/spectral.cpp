#include "qbdecay/spectral.hpp"

#include <algorithm>

namespace qbdecay {

namespace {

constexpr int kMaxIterations = 100000;

struct OneSided {
  double value;
  Vector vec;
  int iterations;
  double residual;
};

OneSided power_iterate(const Matrix& M, double tol, bool shift) {
  const int n = static_cast<int>(M.rows());
  const double eps = shift ? tol : 0.0;
  Matrix Ms = M;
  if (eps > 0.0) Ms.diagonal().array() += eps;

  Vector v = Vector::Constant(n, 1.0 / n);
  Vector w = Ms * v;
  double lambda = w.lpNorm<1>();
  if (lambda == 0.0) return {0.0, v, 1, 0.0};

  for (int iter = 1; iter <= kMaxIterations; ++iter) {
    double res = (w - lambda * v).lpNorm<Eigen::Infinity>();
    if (res <= tol * std::max(1.0, lambda))
      return {std::max(0.0, lambda - eps), v, iter, res};
    v = w / lambda;
    double s = v.lpNorm<1>();
    if (s != 1.0) v /= s;
    w = Ms * v;
    lambda = w.lpNorm<1>();
    if (lambda == 0.0) return {0.0, v, iter, 0.0};
  }
  throw ConvergenceError(
      "power iteration did not converge; matrix may be periodic or degenerate");
}

}  // namespace

PerronResult perron(const Matrix& M, double tol, bool shift) {
  if (M.rows() != M.cols() || M.rows() == 0)
    throw std::invalid_argument("perron: matrix must be square and non-empty");
  if (!(M.array() >= 0.0).all() || !M.allFinite())
    throw std::invalid_argument("perron: matrix must be nonnegative and finite");

  OneSided r = power_iterate(M, tol, shift);
  OneSided l = power_iterate(M.transpose(), tol, shift);

  PerronResult out;
  out.value = r.value;
  out.right = r.vec;
  out.left = l.vec;
  out.iterations = std::max(r.iterations, l.iterations);
  out.residual = std::max(r.residual, l.residual);
  return out;
}

double cp_finite(const Matrix& M, double tol) {
  double spr = perron(M, tol).value;
  if (spr <= 0.0) return kInf;
  return 1.0 / spr;
}

}  // namespace qbdecay
