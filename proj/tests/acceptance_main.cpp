// Acceptance gate: one numbered end-to-end criterion per line, each with a
// pinned tolerance and, where stated, a wall-clock budget. Run with
// --only <k> to execute a single criterion; the exit status is nonzero
// when any executed criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qbdecay/decay.hpp"
#include "qbdecay/oracle.hpp"
#include "qbdecay/reference_models.hpp"
#include "qbdecay/verify.hpp"

using namespace qbdecay;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void note(const std::string& s) {
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
  void require(bool ok, const std::string& s) {
    if (!ok) pass = false;
    note(s + (ok ? "" : " [FAIL]"));
  }
};

std::vector<double> grid_interior(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 1; i <= n; ++i) out.push_back(lo + (hi - lo) * i / (n + 1));
  return out;
}

struct NamedModel {
  const char* name;
  BlockModel model;
};

std::vector<NamedModel> both_models() {
  return {{"m1", reference_model_m1()}, {"m2", reference_model_m2()}};
}

// 1: fixed-point residual of the G solver across the open interval.
Outcome criterion_g_residual() {
  Outcome out;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const auto& [name, m] : both_models()) {
    const Gamma12Extremes e = gamma12_extremes(m);
    for (Axis a : {Axis::One, Axis::Two}) {
      for (double t : grid_interior(e.lo(a), e.hi(a), 21)) {
        GMatrixEval g = solve_g_matrix(m, a, std::exp(t), 1e-12);
        worst = std::max(worst, g.residual);
      }
    }
  }
  const double dt = elapsed(t0);
  out.require(worst <= 1e-10, "max residual " + fmt(worst) + " <= 1e-10");
  out.require(dt < 1.0, "runtime " + fmt(dt) + " s < 1 s");
  return out;
}

// 2: spr(G) equals the exponential of the lower boundary branch.
Outcome criterion_g_spectral_radius() {
  Outcome out;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const auto& [name, m] : both_models()) {
    const Gamma12Extremes e = gamma12_extremes(m);
    for (Axis a : {Axis::One, Axis::Two}) {
      for (double t : grid_interior(e.lo(a), e.hi(a), 21)) {
        GMatrixEval g = solve_g_matrix(m, a, std::exp(t), 1e-12);
        const double want = std::exp(eta(m, a, t, Branch::Lower, 1e-12));
        worst = std::max(worst, std::abs(g.spectral_radius - want));
      }
    }
  }
  const double dt = elapsed(t0);
  out.require(worst <= 1e-8, "max |spr(G) - e^eta| " + fmt(worst) + " <= 1e-8");
  out.require(dt < 5.0, "runtime " + fmt(dt) + " s < 5 s");
  return out;
}

// 3: scalar-model region quantities against the standalone quadratic script.
Outcome criterion_scalar_script() {
  Outcome out;
  const std::string cmd = std::string("python3 ") + QBDECAY_SOURCE_DIR +
                          "/tools/scalar_oracle.py " + QBDECAY_SOURCE_DIR + "/data/m1.json";
  std::string text;
  if (FILE* pipe = popen(cmd.c_str(), "r")) {
    char buf[512];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) text.append(buf, got);
    if (pclose(pipe) != 0) {
      out.require(false, "scalar script exited nonzero");
      return out;
    }
  } else {
    out.require(false, "could not start the scalar script");
    return out;
  }
  nlohmann::json ref;
  try {
    ref = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    out.require(false, std::string("script output not JSON: ") + e.what());
    return out;
  }

  const BlockModel m = reference_model_m1();
  const Gamma12Extremes e = gamma12_extremes(m, 1e-10);
  const EtaPair p = eta_pair(m, Axis::One, 0.0, 1e-10);
  auto close = [&](const char* key, double got) {
    const double want = ref.at(key).get<double>();
    out.require(std::abs(got - want) <= 1e-8,
                std::string(key) + " diff " + fmt(std::abs(got - want)) + " <= 1e-8");
  };
  close("theta1_min", e.t1_lo);
  close("theta1_max", e.t1_hi);
  close("eta2_lower_at_0", p.lower);
  close("eta2_upper_at_0", p.upper);
  return out;
}

// 4: the first-passage partial sum approaches G. The scalar model's series
// contracts by only ~0.72 per height increment and is still O(1e-2) away
// from G at the n = 16 cap, so its gap check fails by design; the
// shrinking-gap half documents that the enumeration itself is sound.
Outcome criterion_series_oracle() {
  Outcome out;
  for (const auto& [name, m] : both_models()) {
    const Matrix G = solve_g_matrix(m, Axis::One, 1.0, 1e-13).G;
    double prev = kInf;
    bool shrinking = true;
    double gap16 = 0.0;
    for (int n : {8, 12, 16}) {
      const Matrix part = g_series_partial(m, Axis::One, 1.0, n);
      gap16 = (G - part).cwiseAbs().maxCoeff();
      if (gap16 >= prev) shrinking = false;
      prev = gap16;
    }
    out.require(gap16 <= 1e-4,
                std::string(name) + " gap at n=16 " + fmt(gap16) + " <= 1e-4");
    out.require(shrinking, std::string(name) + " gap shrinks with n");
  }
  return out;
}

// 5: optimality fixed point and agreement of the direct formulas.
Outcome criterion_optimal_fixed_point() {
  Outcome out;
  for (const auto& [name, m] : both_models()) {
    const RegionData rd = analyze_regions(m, 1e-10);
    const OptimalPair opt = solve_optimal(m, rd, 1e-10);
    const double resid = std::abs(f_axis(m, rd, Axis::One, f_axis(m, rd, Axis::Two, opt.s1)) -
                                  opt.s1);
    out.require(resid <= 1e-9, std::string(name) + " fixed-point residual " + fmt(resid));
    out.require(std::abs(opt.s1 - opt.s1_direct) <= 1e-7,
                std::string(name) + " s1 direct diff " + fmt(std::abs(opt.s1 - opt.s1_direct)));
    out.require(std::abs(opt.s2 - opt.s2_direct) <= 1e-7,
                std::string(name) + " s2 direct diff " + fmt(std::abs(opt.s2 - opt.s2_direct)));
  }
  return out;
}

// 6: occupation slopes along the axes and the diagonal at N = 200.
Outcome criterion_occupation_slopes() {
  Outcome out;
  for (const auto& [name, m] : both_models()) {
    const auto t0 = Clock::now();
    const DecaySolution sol = analyze_decay(m, {{1, 0}, {0, 1}, {1, 1}}, 1e-10);
    const OccupationField f = occupation_measure(build_truncated(m, 200), 1e-12);
    const double targets[3] = {-sol.optimal.s1, -sol.optimal.s2, -sol.rates[2].xi};
    const std::array<int, 2> dirs[3] = {{1, 0}, {0, 1}, {1, 1}};
    for (int i = 0; i < 3; ++i) {
      const RayEstimate est = empirical_decay(f, dirs[i]);
      const double rel = std::abs(est.slope - targets[i]) / std::abs(targets[i]);
      out.require(rel <= 0.05, std::string(name) + " ray " + std::to_string(dirs[i][0]) + "," +
                                   std::to_string(dirs[i][1]) + " rel err " + fmt(rel));
    }
    const double dt = elapsed(t0);
    out.require(dt < 120.0, std::string(name) + " runtime " + fmt(dt) + " s < 120 s");
  }
  return out;
}

// 7: slope estimates are invariant across phases and window offsets.
Outcome criterion_phase_invariance() {
  Outcome out;
  const BlockModel m = reference_model_m2();
  const OccupationField f = occupation_measure(build_truncated(m, 200), 1e-12);
  for (std::array<int, 2> c : {std::array<int, 2>{1, 0}, {0, 1}, {1, 1}}) {
    const RayEstimate est = empirical_decay(f, c);
    double worst = 0.0;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        worst = std::max(worst,
                         std::abs(est.phase_slopes(j, k) - est.slope) / std::abs(est.slope));
    worst = std::max(worst, std::abs(est.slope_offset - est.slope) / std::abs(est.slope));
    out.require(worst <= 0.01, "ray " + std::to_string(c[0]) + "," + std::to_string(c[1]) +
                                   " max phase/offset rel dev " + fmt(worst));
  }
  return out;
}

// 8: hitting measure = transposed occupation of the reversal; hitting
// slopes match the reversed-side exponents.
Outcome criterion_duality() {
  Outcome out;
  const BlockModel m = reference_model_m1();
  const ReversedModel r = reverse_model(m);
  const TruncatedOperator fwd = build_truncated(m, 40);
  const TruncatedOperator rev = build_truncated(r, 40);
  const OccupationField hit = hitting_measure(fwd, 1e-12);
  const OccupationField rocc = occupation_measure(rev, 1e-12);
  double gap = 0.0;
  for (int x1 = 0; x1 <= 40; ++x1)
    for (int x2 = 0; x2 <= 40; ++x2)
      gap = std::max(gap,
                     (hit.at(x1, x2) - rocc.at(x1, x2).transpose()).cwiseAbs().maxCoeff());
  out.require(gap <= 1e-10, "duality field gap " + fmt(gap) + " <= 1e-10");

  const HittingSolution h = hitting_rates(m, 1e-10);
  const OccupationField big = hitting_measure(build_truncated(m, 200), 1e-12);
  const double t1 = -h.optimal.s1, t2 = -h.optimal.s2;
  const RayEstimate e1 = empirical_decay(big, {1, 0});
  const RayEstimate e2 = empirical_decay(big, {0, 1});
  out.require(std::abs(e1.slope - t1) / std::abs(t1) <= 0.05,
              "hitting axis-1 slope rel err " + fmt(std::abs(e1.slope - t1) / std::abs(t1)));
  out.require(std::abs(e2.slope - t2) / std::abs(t2) <= 0.05,
              "hitting axis-2 slope rel err " + fmt(std::abs(e2.slope - t2) / std::abs(t2)));
  return out;
}

// 9: boundary compensation identity, interior transform point, refined
// truncations.
Outcome criterion_compensation() {
  Outcome out;
  for (const auto& [name, m] : both_models()) {
    const RegionData rd = analyze_regions(m, 1e-10);
    const OptimalPair opt = solve_optimal(m, rd, 1e-10);
    const double z = std::exp(0.3 * opt.s1);
    double prev = kInf;
    double last = kInf;
    bool trend = true;
    for (int N : {60, 100, 150}) {
      const OccupationField occ = occupation_measure(build_truncated(m, N), 1e-12);
      const CompensationResult c =
          compensation_residual(m, occ, Axis::One, z, std::min(60, N), 1e-12);
      if (c.relative > prev * 1.05 + 1e-12) trend = false;
      prev = c.relative;
      last = c.relative;
    }
    out.require(last <= 1e-5, std::string(name) + " relative residual " + fmt(last) + " <= 1e-5");
    out.require(trend, std::string(name) + " residual nonincreasing across sizes");
  }
  return out;
}

// 10: convergence-domain probe on certified inside and outside points.
Outcome criterion_domain_probe() {
  Outcome out;
  const BlockModel m = reference_model_m1();
  const RegionData rd = analyze_regions(m, 1e-10);
  const OptimalPair opt = solve_optimal(m, rd, 1e-10);

  std::vector<std::array<double, 2>> thetas;
  // Inside: points dominated by the feasibility witness.
  const double w1 = opt.witness1, w2 = opt.witness2;
  for (auto off : {std::array<double, 2>{0.05, 0.05}, {0.3, 0.08}, {0.08, 0.3}, {0.6, 0.6},
                   {1.2, 1.2}})
    thetas.push_back({w1 - off[0], w2 - off[1]});
  // Outside: along each direction, a quarter unit past the support value.
  const std::array<int, 2> dirs[5] = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}};
  for (const auto& c : dirs) {
    const DirectionRate r = xi_direction(m, rd, opt, c[0], c[1], 1e-10);
    const double norm = std::hypot(static_cast<double>(c[0]), static_cast<double>(c[1]));
    const double scale = r.xi / norm + 0.25;
    thetas.push_back({scale * c[0] / norm, scale * c[1] / norm});
  }

  const auto verdicts = domain_probe(m, thetas, {40, 80, 120}, 1e-12);
  for (int i = 0; i < 10; ++i) {
    const bool want_inside = i < 5;
    const std::string& v = verdicts[static_cast<std::size_t>(i)];
    out.require(v == (want_inside ? "inside" : "outside"),
                "point " + std::to_string(i) + " -> " + v);
  }
  return out;
}

// 11: directional rates never exceed the unconstrained support problem.
Outcome criterion_support_bound() {
  Outcome out;
  for (const auto& [name, m] : both_models()) {
    const RegionData rd = analyze_regions(m, 1e-10);
    const OptimalPair opt = solve_optimal(m, rd, 1e-10);
    for (auto c : {std::array<int, 2>{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}}) {
      const DirectionRate r = xi_direction(m, rd, opt, c[0], c[1], 1e-10);
      const SupportPoint sp = support_point(m, rd, c[0], c[1], 1e-10);
      out.require(r.xi <= sp.value + 1e-9,
                  std::string(name) + " (" + std::to_string(c[0]) + "," + std::to_string(c[1]) +
                      ") xi " + fmt(r.xi) + " <= sup " + fmt(sp.value));
    }
  }
  return out;
}

struct Criterion {
  int id;
  const char* label;
  std::function<Outcome()> fn;
};

const std::vector<Criterion>& all_criteria() {
  static const std::vector<Criterion> cs = {
      {1, "G-matrix fixed-point residual on interval grids", criterion_g_residual},
      {2, "spr(G) equals the lower boundary branch", criterion_g_spectral_radius},
      {3, "scalar region quantities vs standalone script", criterion_scalar_script},
      {4, "first-passage partial sums approach G", criterion_series_oracle},
      {5, "optimal exponents: fixed point and direct formulas", criterion_optimal_fixed_point},
      {6, "occupation decay slopes at N=200", criterion_occupation_slopes},
      {7, "phase and window invariance of slopes", criterion_phase_invariance},
      {8, "transpose duality and hitting slopes", criterion_duality},
      {9, "boundary compensation identity under refinement", criterion_compensation},
      {10, "convergence-domain probe verdicts", criterion_domain_probe},
      {11, "directional rates bounded by support values", criterion_support_bound},
  };
  return cs;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--help" || arg == "-h") {
      std::cout << "usage: acceptance [--only k]\n";
      return 0;
    } else {
      std::cerr << "unknown argument: " << arg << "\n";
      return 2;
    }
  }

  bool all_pass = true;
  for (const auto& c : all_criteria()) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("exception: ") + e.what());
    }
    all_pass = all_pass && o.pass;
    std::cout << "criterion " << c.id << " [" << c.label << "]: " << (o.pass ? "PASS" : "FAIL")
              << " (" << o.detail << ")\n";
  }
  return all_pass ? 0 : 1;
}
