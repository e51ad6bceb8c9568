#include "qbdecay/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <utility>

namespace qbdecay {

namespace {

double rel_gap(double measured, double target) {
  return std::abs(measured - target) / std::max(std::abs(target), 1e-300);
}

std::string list_values(const std::vector<double>& v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os.str();
}

}  // namespace

VerifyReport run_verification(const BlockModel& m, const VerifyOptions& opt) {
  VerifyReport rep;
  rep.analysis = analyze_decay(m, {{1, 0}, {0, 1}, {1, 1}}, 1e-10);

  double s1 = rep.analysis.optimal.s1;
  double s2 = rep.analysis.optimal.s2;
  if (opt.override_s1 > 0) s1 = opt.override_s1;
  if (opt.override_s2 > 0) s2 = opt.override_s2;
  double xi11 = 0.0;
  for (const auto& r : rep.analysis.rates)
    if (r.c1 == 1 && r.c2 == 1) xi11 = r.xi;

  auto push = [&rep](std::string name, double value, double expected, double error, double bound,
                     std::string detail = "") -> VerifyCheck& {
    VerifyCheck c;
    c.name = std::move(name);
    c.value = value;
    c.expected = expected;
    c.error = error;
    c.bound = bound;
    c.pass = error <= bound;
    c.detail = std::move(detail);
    rep.checks.push_back(std::move(c));
    return rep.checks.back();
  };

  const double atol = opt.tol;
  const auto op = build_truncated(m, opt.N);
  const auto occ = occupation_measure(op, atol);
  const auto hit = hitting_measure(op, atol);
  push("occupation_residual", occ.residual, 0.0, occ.residual, 10 * atol);
  push("hitting_residual", hit.residual, 0.0, hit.residual, 10 * atol);

  struct RayCheck {
    std::array<int, 2> c;
    double target;
    const char* name;
  };
  const RayCheck rays[] = {{{1, 0}, s1, "slope_axis1"},
                           {{0, 1}, s2, "slope_axis2"},
                           {{1, 1}, xi11, "slope_diagonal"}};
  double phase_dev = 0.0, offset_dev = 0.0;
  for (const auto& ray : rays) {
    const RayEstimate est = empirical_decay(occ, ray.c);
    std::ostringstream det;
    det << "window [" << est.n_lo << ", " << est.n_hi << "]";
    push(ray.name, est.slope, -ray.target, rel_gap(est.slope, -ray.target), opt.slope_rtol,
         det.str());
    for (int j = 0; j < est.phase_slopes.rows(); ++j)
      for (int k = 0; k < est.phase_slopes.cols(); ++k)
        if (std::isfinite(est.phase_slopes(j, k)))
          phase_dev = std::max(phase_dev, rel_gap(est.phase_slopes(j, k), est.slope));
    offset_dev = std::max(offset_dev, rel_gap(est.slope_offset, est.slope));
  }
  push("phase_invariance", phase_dev, 0.0, phase_dev, opt.phase_rtol);
  push("offset_invariance", offset_dev, 0.0, offset_dev, opt.phase_rtol);

  const ReversedModel rm = reverse_model(m);
  {
    const auto op_small = build_truncated(m, opt.N_duality);
    const auto op_rev = build_truncated(rm, opt.N_duality);
    const auto hit_small = hitting_measure(op_small, atol);
    const auto occ_rev = occupation_measure(op_rev, atol);
    double gap = 0.0;
    for (int x1 = 0; x1 <= opt.N_duality; ++x1)
      for (int x2 = 0; x2 <= opt.N_duality; ++x2)
        gap = std::max(gap, (hit_small.at(x1, x2) - occ_rev.at(x1, x2).transpose())
                                .cwiseAbs()
                                .maxCoeff());
    push("transpose_duality", gap, 0.0, gap, 10 * atol);
  }

  const double sR1 = rep.analysis.dual.optimal.s1;
  const double sR2 = rep.analysis.dual.optimal.s2;
  {
    const RayEstimate r1 = empirical_decay(hit, {1, 0});
    push("hitting_slope_axis1", r1.slope, -sR1, rel_gap(r1.slope, -sR1), opt.slope_rtol);
    const RayEstimate r2 = empirical_decay(hit, {0, 1});
    push("hitting_slope_axis2", r2.slope, -sR2, rel_gap(r2.slope, -sR2), opt.slope_rtol);
  }

  std::vector<OccupationField> ladder;
  for (int n : opt.refine_sizes) ladder.push_back(occupation_measure(build_truncated(m, n), atol));
  double shrink = 0.0;  // worst excess of a smaller-grid entry over a larger-grid one
  for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
    const auto& a = ladder[i];
    const auto& b = ladder[i + 1];
    for (int x1 = 0; x1 <= a.N; ++x1)
      for (int x2 = 0; x2 <= a.N; ++x2)
        shrink = std::max(shrink, (a.at(x1, x2) - b.at(x1, x2)).maxCoeff());
  }
  push("monotone_refinement", shrink, 0.0, shrink, 10 * atol);

  {
    const double z = std::exp(0.3 * rep.analysis.optimal.s1);
    std::vector<double> res;
    for (const auto& field : ladder) {
      const int K = std::min(opt.compensation_K, field.N);
      res.push_back(compensation_residual(m, field, Axis::One, z, K, atol).relative);
    }
    bool decreasing = true;
    for (std::size_t i = 0; i + 1 < res.size(); ++i)
      if (res[i + 1] > res[i] + 1e-12) decreasing = false;
    auto& c = push("compensation_identity", res.back(), 0.0, res.back(), 1e-5,
                   "relative residuals: " + list_values(res));
    if (!decreasing) {
      c.pass = false;
      c.detail += " (not decreasing)";
    }
  }

  {
    const auto w = feasible_witness(m, rep.analysis.regions);
    const double off[5][2] = {{0.05, 0.05}, {0.3, 0.08}, {0.08, 0.3}, {0.6, 0.6}, {1.2, 1.2}};
    std::vector<std::array<double, 2>> pts;
    for (const auto& d : off) pts.push_back({w[0] - d[0], w[1] - d[1]});
    const int dirs[5][2] = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}};
    for (const auto& c : dirs) {
      const DirectionRate r =
          xi_direction(m, rep.analysis.regions, rep.analysis.optimal, c[0], c[1]);
      const double norm = std::hypot(static_cast<double>(c[0]), static_cast<double>(c[1]));
      const double scale = (r.xi / norm + 0.25) / norm;
      pts.push_back({scale * c[0], scale * c[1]});
    }
    const auto verdicts = domain_probe(m, pts, opt.probe_sizes, atol);
    int in_ok = 0, out_ok = 0;
    for (int i = 0; i < 5; ++i) in_ok += verdicts[static_cast<std::size_t>(i)] == "inside";
    for (int i = 5; i < 10; ++i) out_ok += verdicts[static_cast<std::size_t>(i)] == "outside";
    std::string all;
    for (const auto& v : verdicts) all += (all.empty() ? "" : ", ") + v;
    push("domain_probe_inside", in_ok, 5.0, 5.0 - in_ok, 0.0, all);
    push("domain_probe_outside", out_ok, 5.0, 5.0 - out_ok, 0.0, all);
  }

  rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                             [](const VerifyCheck& c) { return c.pass; });
  return rep;
}

}  // namespace qbdecay
