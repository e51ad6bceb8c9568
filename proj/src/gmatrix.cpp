#include "qbdecay/gmatrix.hpp"

#include <cmath>
#include <vector>

#include "qbdecay/spectral.hpp"

namespace qbdecay {

Matrix gf_sum1(const BlockFamily& f, int i2, double x) {
  return f.at(-1, i2) / x + f.at(0, i2) + f.at(1, i2) * x;
}

Matrix gf_sum2(const BlockFamily& f, int i1, double x) {
  return f.at(i1, -1) / x + f.at(i1, 0) + f.at(i1, 1) * x;
}

Matrix gf_full(const BlockFamily& f, double z, double w) {
  return gf_sum1(f, -1, z) / w + gf_sum1(f, 0, z) + gf_sum1(f, 1, z) * w;
}

Matrix interior_slice(const BlockModel& m, Axis axis, int k, double x) {
  return axis == Axis::One ? gf_sum1(m.interior(), k, x) : gf_sum2(m.interior(), k, x);
}

double chi(const BlockModel& m, double theta1, double theta2, double tol) {
  return perron(gf_full(m.interior(), std::exp(theta1), std::exp(theta2)), tol).value;
}

GMatrixEval solve_g_matrix(const BlockModel& m, Axis axis, double x, double tol) {
  if (!(x > 0.0)) throw std::invalid_argument("solve_g_matrix: x must be positive");
  const Matrix L = interior_slice(m, axis, -1, x);
  const Matrix S = interior_slice(m, axis, 0, x);
  const Matrix U = interior_slice(m, axis, 1, x);

  const int cap = 1000000;
  const double blowup = 1e8;
  Matrix G = Matrix::Zero(m.s0(), m.s0());
  double delta = kInf;
  int iter = 0;
  for (; iter < cap; ++iter) {
    Matrix next = L + S * G + U * (G * G);
    delta = (next - G).lpNorm<Eigen::Infinity>();
    G = std::move(next);
    double scale = std::max(1.0, G.lpNorm<Eigen::Infinity>());
    if (G.lpNorm<Eigen::Infinity>() > blowup)
      throw DomainError("solve_g_matrix: iteration diverges, x outside the convergence interval");
    if (delta <= tol * scale) break;
  }

  GMatrixEval out;
  out.iterations = iter + 1;
  out.G = G;
  out.residual = (L + S * G + U * (G * G) - G).lpNorm<Eigen::Infinity>();
  if (iter >= cap) {
    double scale = std::max(1.0, G.lpNorm<Eigen::Infinity>());
    if (delta <= std::sqrt(tol) * scale) {
      out.endpoint_tolerance = true;
    } else {
      throw ConvergenceError("solve_g_matrix: no convergence within the iteration cap");
    }
  }
  out.spectral_radius = perron(G, tol).value;
  return out;
}

Matrix g_series_partial(const BlockModel& m, Axis axis, double x, int n_max) {
  if (n_max < 1 || n_max > 18)
    throw std::invalid_argument("g_series_partial: n_max must be in [1, 18]");
  if (!(x > 0.0)) throw std::invalid_argument("g_series_partial: x must be positive");
  const Matrix step[3] = {interior_slice(m, axis, -1, x), interior_slice(m, axis, 0, x),
                          interior_slice(m, axis, 1, x)};
  const int s0 = m.s0();

  // prefix[h] = sum of ordered products over admissible prefixes at height h
  std::vector<Matrix> prefix(n_max + 2, Matrix::Zero(s0, s0));
  prefix[0] = Matrix::Identity(s0, s0);
  Matrix total = Matrix::Zero(s0, s0);
  for (int len = 1; len <= n_max; ++len) {
    std::vector<Matrix> next(n_max + 2, Matrix::Zero(s0, s0));
    for (int h = 0; h <= len - 1; ++h) {
      if (prefix[h].isZero(0.0)) continue;
      for (int inc = -1; inc <= 1; ++inc) {
        int h2 = h + inc;
        if (h2 == -1) {
          total += prefix[h] * step[inc + 1];  // path ends here with total -1
        } else if (h2 >= 0 && h2 <= n_max) {
          next[h2] += prefix[h] * step[inc + 1];
        }
      }
    }
    prefix = std::move(next);
  }
  return total;
}

Matrix boundary_kernel(const BlockModel& m, Axis axis, double x, const Matrix& G) {
  if (axis == Axis::One) return gf_sum1(m.axis1(), 0, x) + gf_sum1(m.axis1(), 1, x) * G;
  return gf_sum2(m.axis2(), 0, x) + gf_sum2(m.axis2(), 1, x) * G;
}

namespace {

// Descent blocks of the reversed operator onto a face, as a generating
// function in the position along the face.
Matrix reversed_descent_gf(const ReversedModel& m, Axis axis, double x) {
  Axis drop = other(axis);  // the coordinate that steps from 1 to 0
  Matrix d = Matrix::Zero(m.s0(), m.s0());
  double w[3] = {1.0 / x, 1.0, x};
  for (int i = -1; i <= 1; ++i) d += w[i + 1] * m.descent(drop, i);
  return d;
}

}  // namespace

Matrix boundary_kernel(const ReversedModel& m, Axis axis, double x, const Matrix& G_B) {
  const BlockModel& d = m.derived();
  Matrix L0, U0;
  if (axis == Axis::One) {
    L0 = gf_sum1(d.axis1(), 0, x);
    U0 = gf_sum1(d.axis1(), 1, x);
  } else {
    L0 = gf_sum2(d.axis2(), 0, x);
    U0 = gf_sum2(d.axis2(), 1, x);
  }
  Matrix H = interior_slice(d, axis, 0, x) + interior_slice(d, axis, 1, x) * G_B;
  double hs = perron(H).value;
  if (hs >= 1.0)
    throw DomainError("reversed boundary kernel: censoring sum diverges (spr >= 1)");
  Matrix fund = (Matrix::Identity(d.s0(), d.s0()) - H).inverse();
  return L0 + U0 * fund * reversed_descent_gf(m, axis, x);
}

double boundary_kernel_spr(const BlockModel& m, Axis axis, double x, double tol) {
  GMatrixEval g = solve_g_matrix(m, axis, x, tol);
  return perron(boundary_kernel(m, axis, x, g.G), tol).value;
}

double boundary_kernel_spr(const ReversedModel& m, Axis axis, double x, double tol) {
  GMatrixEval g = solve_g_matrix(m.derived(), axis, x, tol);
  Matrix H = interior_slice(m.derived(), axis, 0, x) + interior_slice(m.derived(), axis, 1, x) * g.G;
  double hs = perron(H, tol).value;
  if (hs >= 1.0 - 1e-13) return std::max(hs, 1.0 + (hs - 1.0));
  return perron(boundary_kernel(m, axis, x, g.G), tol).value;
}

PhiStarEval phi_star(const BlockModel& m, Axis axis, double x, double tol) {
  PhiStarEval out;
  out.g = solve_g_matrix(m, axis, x, tol);
  out.kernel = boundary_kernel(m, axis, x, out.g.G);
  out.kernel_spr = perron(out.kernel, tol).value;
  if (out.kernel_spr >= 1.0)
    throw DomainError("phi_star: boundary kernel has spectral radius " +
                      std::to_string(out.kernel_spr) + " >= 1");
  out.value = (Matrix::Identity(m.s0(), m.s0()) - out.kernel).inverse();
  return out;
}

}  // namespace qbdecay
