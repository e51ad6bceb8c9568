#include "qbdecay/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qbdecay/gmatrix.hpp"

namespace qbdecay {

namespace {

constexpr std::int64_t kMaxTriplets = 160'000'000;

template <typename BlockAt>
TruncatedOperator build_generic(int s0, int N, BlockAt&& block_at) {
  if (N < 2) throw std::invalid_argument("truncation size must be at least 2");
  const std::int64_t est = static_cast<std::int64_t>(N + 1) * (N + 1) * 9 * s0 * s0;
  if (est > kMaxTriplets) throw std::invalid_argument("truncation size too large");

  TruncatedOperator op;
  op.N = N;
  op.s0 = s0;
  const int M = op.states();
  op.t01 = Matrix::Zero(s0, M);
  op.t10 = Matrix::Zero(M, s0);

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(est) / 2);
  for (int x1 = 0; x1 <= N; ++x1) {
    for (int x2 = 0; x2 <= N; ++x2) {
      for (int d1 = -1; d1 <= 1; ++d1) {
        for (int d2 = -1; d2 <= 1; ++d2) {
          const int y1 = x1 + d1, y2 = x2 + d2;
          if (y1 < 0 || y1 > N || y2 < 0 || y2 > N) continue;
          const Matrix B = block_at(x1, x2, d1, d2);
          if (B.size() == 0) continue;
          const bool from_origin = (x1 == 0 && x2 == 0);
          const bool to_origin = (y1 == 0 && y2 == 0);
          for (int j = 0; j < s0; ++j) {
            for (int k = 0; k < s0; ++k) {
              const double v = B(j, k);
              if (v == 0.0) continue;
              if (from_origin && to_origin) continue;
              if (from_origin) {
                op.t01(j, op.sid(y1, y2, k)) += v;
              } else if (to_origin) {
                op.t10(op.sid(x1, x2, j), k) += v;
              } else {
                trips.emplace_back(op.sid(x1, x2, j), op.sid(y1, y2, k), v);
              }
            }
          }
        }
      }
    }
  }
  op.That.resize(M, M);
  op.That.setFromTriplets(trips.begin(), trips.end());
  op.That.makeCompressed();
  return op;
}

struct SumState {
  int ok_streak = 0;
  int flat_streak = 0;
  double prev_norm = std::numeric_limits<double>::infinity();
  int terms = 0;
};

// Returns true when summation should stop.
bool advance(SumState& st, double term_norm, bool entrywise_ok, double tol, double acc_max) {
  ++st.terms;
  const bool abs_ok = term_norm <= tol * std::max(acc_max, 1e-300);
  if ((abs_ok && entrywise_ok) || term_norm == 0.0) {
    if (++st.ok_streak >= 3 || term_norm == 0.0) return true;
  } else {
    st.ok_streak = 0;
  }
  if (term_norm >= st.prev_norm) {
    if (++st.flat_streak >= 1000)
      throw ConvergenceError("series does not contract; operator not transient at this size");
  } else {
    st.flat_streak = 0;
  }
  st.prev_norm = term_norm;
  return false;
}

void fill_cells(OccupationField& f, const TruncatedOperator& op, const Matrix& acc) {
  const int s0 = op.s0;
  f.cells.assign(static_cast<std::size_t>((op.N + 1) * (op.N + 1)), Matrix::Zero(s0, s0));
  for (int x1 = 0; x1 <= op.N; ++x1) {
    for (int x2 = 0; x2 <= op.N; ++x2) {
      Matrix& cell = f.cells[static_cast<std::size_t>(x1 * (op.N + 1) + x2)];
      for (int j = 0; j < s0; ++j) {
        for (int k = 0; k < s0; ++k) {
          cell(j, k) = f.hitting ? acc(op.sid(x1, x2, j), k) : acc(j, op.sid(x1, x2, k));
        }
      }
    }
  }
}

double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys, double* intercept,
                 double* r2) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  if (intercept) *intercept = my - slope * mx;
  if (r2) *r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return slope;
}

double window_slope(const OccupationField& f, std::array<int, 2> c, int lo, int hi) {
  std::vector<double> xs, ys;
  for (int n = lo; n <= hi; ++n) {
    const double v = f.pooled(n * c[0], n * c[1]);
    if (v <= 0.0) throw DomainError("ray value vanished inside the fit window");
    xs.push_back(n);
    ys.push_back(std::log(v));
  }
  return ols_slope(xs, ys, nullptr, nullptr);
}

}  // namespace

TruncatedOperator build_truncated(const BlockModel& m, int N) {
  return build_generic(m.s0(), N, [&m](int x1, int x2, int d1, int d2) -> const Matrix& {
    return m.family_at(x1, x2).at(d1, d2);
  });
}

TruncatedOperator build_truncated(const ReversedModel& m, int N) {
  return build_generic(m.s0(), N,
                       [&m](int x1, int x2, int d1, int d2) { return m.block_at(x1, x2, d1, d2); });
}

OccupationField occupation_measure(const TruncatedOperator& op, double tol) {
  OccupationField f;
  f.N = op.N;
  f.s0 = op.s0;
  f.hitting = false;
  f.tol = tol;

  Matrix term = op.t01;
  Matrix acc = term;
  SumState st;
  const double rel = 1e3 * tol;
  while (true) {
    const double tn = term.maxCoeff();
    const bool entry_ok = (term.array() <= rel * acc.array()).all();
    if (advance(st, tn, entry_ok, tol, acc.maxCoeff())) break;
    term = term * op.That;
    acc += term;
  }
  f.terms = st.terms;
  f.residual = (acc - (acc * op.That + op.t01)).cwiseAbs().maxCoeff();
  fill_cells(f, op, acc);
  return f;
}

OccupationField hitting_measure(const TruncatedOperator& op, double tol) {
  OccupationField f;
  f.N = op.N;
  f.s0 = op.s0;
  f.hitting = true;
  f.tol = tol;

  Matrix term = op.t10;
  Matrix acc = term;
  SumState st;
  const double rel = 1e3 * tol;
  while (true) {
    const double tn = term.maxCoeff();
    const bool entry_ok = (term.array() <= rel * acc.array()).all();
    if (advance(st, tn, entry_ok, tol, acc.maxCoeff())) break;
    term = op.That * term;
    acc += term;
  }
  f.terms = st.terms;
  f.residual = (acc - (op.That * acc + op.t10)).cwiseAbs().maxCoeff();
  fill_cells(f, op, acc);
  return f;
}

RayEstimate empirical_decay(const OccupationField& f, std::array<int, 2> c,
                            std::array<int, 2> window, double margin_frac) {
  if (c[0] < 0 || c[1] < 0 || (c[0] == 0 && c[1] == 0))
    throw std::invalid_argument("ray direction must be a nonzero nonnegative integer pair");
  const int N = f.N;
  const int cmax = std::max(c[0], c[1]);
  const int margin = static_cast<int>(std::ceil(margin_frac * N));
  const int n_cap = (N - margin) / cmax;

  RayEstimate est;
  est.c = c;
  est.n_lo = window[0] >= 0 ? window[0] : static_cast<int>(std::lround(0.3 * N)) / cmax;
  est.n_hi = window[1] >= 0 ? window[1] : static_cast<int>(std::lround(0.7 * N)) / cmax;
  est.n_hi = std::min(est.n_hi, n_cap);
  est.n_lo = std::max(est.n_lo, 1);
  if (est.n_hi - est.n_lo < 8) throw std::invalid_argument("fit window too small for this ray");

  std::vector<double> xs, ys;
  for (int n = est.n_lo; n <= est.n_hi; ++n) {
    const double v = f.pooled(n * c[0], n * c[1]);
    if (v <= 0.0) throw DomainError("ray value vanished inside the fit window");
    xs.push_back(n);
    ys.push_back(std::log(v));
  }
  est.slope = ols_slope(xs, ys, &est.intercept, &est.r2);

  int shift = std::max(1, static_cast<int>(std::lround(0.05 * N)) / cmax);
  if (est.n_hi + shift > n_cap) shift = -std::min(shift, est.n_lo - 1);
  est.slope_offset = shift != 0 ? window_slope(f, c, est.n_lo + shift, est.n_hi + shift) : est.slope;

  est.phase_slopes = Matrix::Constant(f.s0, f.s0, std::numeric_limits<double>::quiet_NaN());
  for (int j = 0; j < f.s0; ++j) {
    for (int k = 0; k < f.s0; ++k) {
      std::vector<double> pys;
      bool ok = true;
      for (int n = est.n_lo; n <= est.n_hi && ok; ++n) {
        const double v = f.at(n * c[0], n * c[1])(j, k);
        if (v <= 0.0)
          ok = false;
        else
          pys.push_back(std::log(v));
      }
      if (ok) est.phase_slopes(j, k) = ols_slope(xs, pys, nullptr, nullptr);
    }
  }
  return est;
}

CompensationResult compensation_residual(const BlockModel& m, const OccupationField& occ,
                                         Axis axis, double z, int K, double tol) {
  if (occ.hitting) throw std::invalid_argument("compensation identity applies to occupation fields");
  if (K < 1 || K > occ.N) throw std::invalid_argument("column truncation K out of range");
  if (!(z > 0)) throw std::invalid_argument("transform point must be positive");

  const bool first = axis == Axis::One;
  auto on_axis = [&](int t) -> const Matrix& { return first ? occ.at(t, 0) : occ.at(0, t); };
  auto off_axis = [&](int t) -> const Matrix& { return first ? occ.at(0, t) : occ.at(t, 0); };

  const int s0 = occ.s0;
  Matrix left = Matrix::Zero(s0, s0);
  double zp = z;
  for (int t = 1; t <= occ.N; ++t) {
    left += zp * on_axis(t);
    zp *= z;
  }

  const auto phi = phi_star(m, axis, z, tol);
  const Matrix& G = phi.g.G;

  const BlockFamily& opp = first ? m.axis2() : m.axis1();
  auto opp_gf = [&](int step) { return first ? gf_sum1(opp, step, z) : gf_sum2(opp, step, z); };
  Matrix ahat = opp_gf(-1);
  ahat += opp_gf(0) * G;
  ahat += opp_gf(1) * G * G;
  const Matrix D = ahat - G;

  Matrix bsum = Matrix::Zero(s0, s0);
  Matrix gpow = Matrix::Identity(s0, s0);
  for (int k = 1; k <= K; ++k) {
    bsum += off_axis(k) * D * gpow;
    gpow *= G;
  }

  Matrix entry = -(occ.at(1, 0) * m.axis1().at(-1, 0) + occ.at(0, 1) * m.axis2().at(0, -1) +
                   occ.at(1, 1) * m.interior().at(-1, -1));
  // Origin source: the direct step onto the axis plus the height-one
  // steps followed by a weighted descent.
  const Matrix& o_on = first ? m.origin().at(1, 0) : m.origin().at(0, 1);
  const Matrix& o_off = first ? m.origin().at(0, 1) : m.origin().at(1, 0);
  const Matrix source = z * o_on + (o_off + z * m.origin().at(1, 1)) * G;
  const Matrix right = (source + entry + bsum) * phi.value;

  CompensationResult r;
  r.left_norm = left.cwiseAbs().maxCoeff();
  r.absolute = (left - right).cwiseAbs().maxCoeff();
  r.relative = r.absolute / std::max(r.left_norm, 1e-300);
  return r;
}

std::vector<std::string> domain_probe(const BlockModel& m,
                                      const std::vector<std::array<double, 2>>& thetas,
                                      const std::vector<int>& sizes, double tol) {
  if (sizes.size() < 3) throw std::invalid_argument("domain probe needs at least three sizes");
  std::vector<int> ns = sizes;
  std::sort(ns.begin(), ns.end());

  std::vector<OccupationField> fields;
  fields.reserve(ns.size());
  for (int n : ns) fields.push_back(occupation_measure(build_truncated(m, n), tol));

  auto log_weighted_sum = [](const OccupationField& f, double t1, double t2) {
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>((f.N + 1) * (f.N + 1)));
    for (int x1 = 0; x1 <= f.N; ++x1) {
      for (int x2 = 0; x2 <= f.N; ++x2) {
        const double v = f.pooled(x1, x2);
        if (v <= 0.0) continue;
        const double lt = t1 * x1 + t2 * x2 + std::log(v);
        logs.push_back(lt);
        peak = std::max(peak, lt);
      }
    }
    if (logs.empty()) return -std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (double lt : logs) s += std::exp(lt - peak);
    return peak + std::log(s);
  };

  std::vector<std::string> verdicts;
  verdicts.reserve(thetas.size());
  const std::size_t last = fields.size() - 1;
  for (const auto& th : thetas) {
    const double l1 = log_weighted_sum(fields[last - 2], th[0], th[1]);
    const double l2 = log_weighted_sum(fields[last - 1], th[0], th[1]);
    const double l3 = log_weighted_sum(fields[last], th[0], th[1]);
    if (l3 - l2 > 5.0) {
      verdicts.emplace_back("outside");
      continue;
    }
    if (l3 - l1 < 1e-12) {
      verdicts.emplace_back("inside");
      continue;
    }
    // Increment ratio computed after rescaling by the largest sum.
    const double s1 = std::exp(l1 - l3), s2 = std::exp(l2 - l3);
    const double d1 = s2 - s1, d2 = 1.0 - s2;
    if (d1 <= 0.0) {
      verdicts.emplace_back(d2 <= 0.0 ? "inside" : "inconclusive");
      continue;
    }
    const double ratio = d2 / d1;
    if (ratio <= 0.5)
      verdicts.emplace_back("inside");
    else if (ratio >= 2.0)
      verdicts.emplace_back("outside");
    else
      verdicts.emplace_back("inconclusive");
  }
  return verdicts;
}

}  // namespace qbdecay
