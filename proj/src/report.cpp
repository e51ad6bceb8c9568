#include "qbdecay/report.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace qbdecay {

namespace {

Json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

Json axis_name(Axis a) { return a == Axis::One ? "1" : "2"; }

}  // namespace

const char* version_string() { return "0.1.0"; }

Json to_json(const ValidationReport& rep) {
  Json arr = Json::array();
  for (const auto& issue : rep) {
    arr.push_back({{"code", issue.code}, {"message", issue.message}});
  }
  return arr;
}

Json to_json(const Interval& iv) {
  return {{"lo", finite_or_null(iv.lo)},
          {"hi", finite_or_null(iv.hi)},
          {"lo_at_region_edge", iv.lo_at_region_edge},
          {"hi_at_region_edge", iv.hi_at_region_edge},
          {"empty", iv.empty()}};
}

Json to_json(const Gamma12Extremes& e) {
  return {{"theta1_min", e.t1_lo},
          {"theta1_max", e.t1_hi},
          {"theta2_min", e.t2_lo},
          {"theta2_max", e.t2_hi},
          {"theta1_min_ordinate", e.t1_lo_ord},
          {"theta1_max_ordinate", e.t1_hi_ord},
          {"theta2_min_abscissa", e.t2_lo_abs},
          {"theta2_max_abscissa", e.t2_hi_abs},
          {"chi_min", e.chi_min},
          {"argmin", {e.argmin1, e.argmin2}},
          {"tol", e.tol}};
}

Json to_json(const RegionData& rd) {
  return {{"interior", to_json(rd.ext)},
          {"axis1_interval", to_json(rd.g1)},
          {"axis2_interval", to_json(rd.g2)},
          {"tol", rd.tol}};
}

Json to_json(const OptimalPair& p) {
  return {{"s1", p.s1},
          {"s2", p.s2},
          {"s1_direct", p.s1_direct},
          {"s2_direct", p.s2_direct},
          {"iterations", p.iterations},
          {"residual", p.residual},
          {"witness", {p.witness1, p.witness2}}};
}

Json to_json(const AxisClassification& a) {
  return {{"axis", axis_name(a.axis)},
          {"case", a.case_id},
          {"form", decay_form_name(a.form)},
          {"near_degenerate", a.near_degenerate},
          {"s_star", a.s_star},
          {"interval_hi", finite_or_null(a.gamma0_hi)},
          {"theta_bar_star", finite_or_null(a.theta_bar_star)},
          {"region_hi", a.region_hi}};
}

Json to_json(const DirectionRate& r) {
  return {{"c", {r.c1, r.c2}},
          {"xi", r.xi},
          {"v1", finite_or_null(r.v1)},
          {"v2", finite_or_null(r.v2)},
          {"binding", r.binding},
          {"arg1", finite_or_null(r.arg1)},
          {"arg2", finite_or_null(r.arg2)}};
}

Json to_json(const DirectionClassification& c) {
  return {{"c", {c.c1, c.c2}},
          {"form", decay_form_name(c.form)},
          {"branch_point", c.branch_point},
          {"near_degenerate", c.near_degenerate}};
}

Json to_json(const HittingSolution& h) {
  return {{"regions", to_json(h.regions)},
          {"optimal", to_json(h.optimal)},
          {"axis1", to_json(h.axis1)},
          {"axis2", to_json(h.axis2)},
          {"reflection_check", h.reflection_check}};
}

Json to_json(const DecaySolution& d) {
  Json rates = Json::array();
  for (const auto& r : d.rates) rates.push_back(to_json(r));
  Json forms = Json::array();
  for (const auto& f : d.forms) forms.push_back(to_json(f));
  return {{"regions", to_json(d.regions)},
          {"optimal", to_json(d.optimal)},
          {"axis1", to_json(d.axis1)},
          {"axis2", to_json(d.axis2)},
          {"rates", rates},
          {"forms", forms},
          {"reversed", to_json(d.dual)},
          {"tol", d.tol}};
}

Json to_json(const RayEstimate& r) {
  Json phases = Json::array();
  for (int j = 0; j < r.phase_slopes.rows(); ++j) {
    Json row = Json::array();
    for (int k = 0; k < r.phase_slopes.cols(); ++k)
      row.push_back(finite_or_null(r.phase_slopes(j, k)));
    phases.push_back(row);
  }
  return {{"c", {r.c[0], r.c[1]}},
          {"window", {r.n_lo, r.n_hi}},
          {"slope", r.slope},
          {"intercept", r.intercept},
          {"r2", r.r2},
          {"slope_offset", r.slope_offset},
          {"phase_slopes", phases}};
}

Json to_json(const OccupationField& f) {
  return {{"kind", f.hitting ? "hitting" : "occupation"},
          {"N", f.N},
          {"s0", f.s0},
          {"terms", f.terms},
          {"tol", f.tol},
          {"residual", f.residual}};
}

Json to_json(const VerifyCheck& c) {
  return {{"name", c.name},
          {"pass", c.pass},
          {"value", finite_or_null(c.value)},
          {"expected", finite_or_null(c.expected)},
          {"error", finite_or_null(c.error)},
          {"bound", finite_or_null(c.bound)},
          {"detail", c.detail}};
}

Json to_json(const VerifyReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"all_pass", r.all_pass}, {"checks", checks}, {"analysis", to_json(r.analysis)}};
}

Json run_report(const std::string& command, const std::string& model_hash, Json parameters,
                Json results, double wall_time_s) {
  return {{"command", command},
          {"model_hash", model_hash},
          {"parameters", std::move(parameters)},
          {"results", std::move(results)},
          {"wall_time_s", wall_time_s},
          {"version", version_string()}};
}

void write_boundary_csv(std::ostream& os, const std::vector<BoundarySample>& samples) {
  os.precision(std::numeric_limits<double>::max_digits10);
  os << "theta1,eta_lower,eta_upper,degenerate\n";
  for (const auto& s : samples) {
    os << s.theta1 << ',' << s.eta_lower << ',' << s.eta_upper << ',' << (s.degenerate ? 1 : 0)
       << '\n';
  }
}

void write_ray_csv(std::ostream& os, const OccupationField& f, const std::array<int, 2>& c,
                   int n_lo, int n_hi) {
  os.precision(std::numeric_limits<double>::max_digits10);
  os << "n,value_pooled";
  for (int j = 0; j < f.s0; ++j)
    for (int k = 0; k < f.s0; ++k) os << ",value_" << j << '_' << k;
  os << '\n';
  for (int n = n_lo; n <= n_hi; ++n) {
    const Matrix& cell = f.at(n * c[0], n * c[1]);
    os << n << ',' << cell.sum();
    for (int j = 0; j < f.s0; ++j)
      for (int k = 0; k < f.s0; ++k) os << ',' << cell(j, k);
    os << '\n';
  }
}

void write_field_csv(std::ostream& os, const OccupationField& f) {
  os.precision(std::numeric_limits<double>::max_digits10);
  os << "x1,x2,value_pooled";
  for (int j = 0; j < f.s0; ++j)
    for (int k = 0; k < f.s0; ++k) os << ",value_" << j << '_' << k;
  os << '\n';
  for (int x1 = 0; x1 <= f.N; ++x1) {
    for (int x2 = 0; x2 <= f.N; ++x2) {
      const Matrix& cell = f.at(x1, x2);
      os << x1 << ',' << x2 << ',' << cell.sum();
      for (int j = 0; j < f.s0; ++j)
        for (int k = 0; k < f.s0; ++k) os << ',' << cell(j, k);
      os << '\n';
    }
  }
}

}  // namespace qbdecay
