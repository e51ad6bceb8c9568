#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbdecay/report.hpp"

namespace {

using namespace qbdecay;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void emit(const Json& payload, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << payload.dump(2) << '\n';
    return;
  }
  std::ofstream os(out);
  if (!os) throw std::invalid_argument("cannot open output file: " + out);
  os << payload.dump(2) << '\n';
}

void write_csv_file(const std::string& path, const std::function<void(std::ostream&)>& writer) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open output file: " + path);
  writer(os);
}

std::array<int, 2> parse_int_pair(const std::string& text, const char* what) {
  int a = 0, b = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%d,%d%c", &a, &b, &extra) != 2)
    throw std::invalid_argument(std::string(what) + " must be two comma-separated integers");
  return {a, b};
}

struct CommonOpts {
  std::string model_path;
  double tol = 1e-10;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--model", c.model_path, "model JSON file")->required();
  cmd->add_option("--tol", c.tol, "numerical tolerance");
  cmd->add_option("--out", c.out, "report output path (default stdout)");
}

BlockModel load_checked(const CommonOpts& c, Json& issues_json) {
  BlockModel m = load_model(c.model_path);
  const ValidationReport issues = validate_model(m);
  issues_json = to_json(issues);
  if (!issues.empty()) {
    std::string codes;
    for (const auto& i : issues) codes += (codes.empty() ? "" : ", ") + i.code;
    throw InfeasibleError("model fails validation: " + codes);
  }
  return m;
}

int run(int argc, char** argv) {
  CLI::App app{"decay-rate analysis of two-dimensional QBD-type operators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  CommonOpts validate_opts;
  auto* cmd_validate = app.add_subcommand("validate", "check a model file against the format rules");
  add_common(cmd_validate, validate_opts);

  CommonOpts regions_opts;
  int samples = 257;
  std::string regions_csv;
  auto* cmd_regions = app.add_subcommand("regions", "convergence region extremes and intervals");
  add_common(cmd_regions, regions_opts);
  cmd_regions->add_option("--samples", samples, "boundary sample count for CSV output");
  cmd_regions->add_option("--csv", regions_csv, "write boundary curve samples to this CSV file");

  CommonOpts decay_opts;
  std::vector<std::string> extra_dirs;
  auto* cmd_decay = app.add_subcommand("decay", "optimal exponents, directional rates, decay forms");
  add_common(cmd_decay, decay_opts);
  cmd_decay->add_option("--direction", extra_dirs, "extra direction c1,c2 (repeatable)");

  CommonOpts oracle_opts;
  oracle_opts.tol = 1e-12;
  int oracle_N = 100;
  std::string kind = "occupation";
  std::string ray_str, window_str, oracle_csv;
  auto* cmd_oracle = app.add_subcommand("oracle", "truncated-lattice measure and ray fits");
  add_common(cmd_oracle, oracle_opts);
  cmd_oracle->add_option("--N", oracle_N, "truncation size");
  cmd_oracle->add_option("--kind", kind, "occupation or hitting")
      ->check(CLI::IsMember({"occupation", "hitting"}));
  cmd_oracle->add_option("--ray", ray_str, "fit direction c1,c2");
  cmd_oracle->add_option("--window", window_str, "fit window a,b (defaults to [0.3N, 0.7N])");
  cmd_oracle->add_option("--csv", oracle_csv, "write ray values (with --ray) or the whole field");

  CommonOpts verify_opts;
  verify_opts.tol = 1e-12;
  int verify_N = 200;
  int duality_N = 40;
  double override_s1 = 0.0, override_s2 = 0.0;
  auto* cmd_verify = app.add_subcommand("verify", "cross-check analytic rates against the oracle");
  add_common(cmd_verify, verify_opts);
  cmd_verify->add_option("--N", verify_N, "truncation size for slope fits");
  cmd_verify->add_option("--duality-N", duality_N, "truncation size for the transpose identity");
  cmd_verify->add_option("--override-s1", override_s1, "test hook: replace s1 before slope checks")
      ->group("");
  cmd_verify->add_option("--override-s2", override_s2, "test hook: replace s2 before slope checks")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help and version exit cleanly, usage errors are input errors
  }
  const auto t0 = Clock::now();

  if (cmd_validate->parsed()) {
    const BlockModel m = load_model(validate_opts.model_path);
    const ValidationReport issues = validate_model(m);
    const Json payload =
        run_report("validate", model_hash(m), {{"model", validate_opts.model_path}},
                   {{"issues", to_json(issues)}, {"valid", issues.empty()}}, seconds_since(t0));
    emit(payload, validate_opts.out);
    return issues.empty() ? 0 : 1;
  }

  if (cmd_regions->parsed()) {
    Json issues;
    const BlockModel m = load_checked(regions_opts, issues);
    const RegionData rd = analyze_regions(m, regions_opts.tol);
    if (!regions_csv.empty()) {
      const auto samples_vec = trace_boundary(m, rd.ext, samples, regions_opts.tol);
      write_csv_file(regions_csv, [&](std::ostream& os) { write_boundary_csv(os, samples_vec); });
    }
    const Json payload = run_report(
        "regions", model_hash(m),
        {{"model", regions_opts.model_path}, {"tol", regions_opts.tol}, {"samples", samples}},
        to_json(rd), seconds_since(t0));
    emit(payload, regions_opts.out);
    return 0;
  }

  if (cmd_decay->parsed()) {
    Json issues;
    const BlockModel m = load_checked(decay_opts, issues);
    std::vector<std::array<int, 2>> dirs = {{1, 0}, {0, 1}, {1, 1}};
    for (const auto& d : extra_dirs) dirs.push_back(parse_int_pair(d, "--direction"));
    const DecaySolution sol = analyze_decay(m, dirs, decay_opts.tol);
    const Json payload =
        run_report("decay", model_hash(m),
                   {{"model", decay_opts.model_path}, {"tol", decay_opts.tol}},
                   to_json(sol), seconds_since(t0));
    emit(payload, decay_opts.out);
    return 0;
  }

  if (cmd_oracle->parsed()) {
    Json issues;
    const BlockModel m = load_checked(oracle_opts, issues);
    const TruncatedOperator op = build_truncated(m, oracle_N);
    const OccupationField field = kind == "hitting" ? hitting_measure(op, oracle_opts.tol)
                                                    : occupation_measure(op, oracle_opts.tol);
    Json results = {{"field", to_json(field)}};
    if (!ray_str.empty()) {
      const auto c = parse_int_pair(ray_str, "--ray");
      std::array<int, 2> window = {-1, -1};
      if (!window_str.empty()) window = parse_int_pair(window_str, "--window");
      const RayEstimate est = empirical_decay(field, c, window);
      results["ray"] = to_json(est);
      if (!oracle_csv.empty()) {
        const int cmax = std::max(c[0], c[1]);
        write_csv_file(oracle_csv, [&](std::ostream& os) {
          write_ray_csv(os, field, c, 0, field.N / cmax);
        });
      }
    } else if (!oracle_csv.empty()) {
      write_csv_file(oracle_csv, [&](std::ostream& os) { write_field_csv(os, field); });
    }
    const Json payload = run_report("oracle", model_hash(m),
                                    {{"model", oracle_opts.model_path},
                                     {"N", oracle_N},
                                     {"kind", kind},
                                     {"tol", oracle_opts.tol}},
                                    results, seconds_since(t0));
    emit(payload, oracle_opts.out);
    return 0;
  }

  // verify
  Json issues;
  const BlockModel m = load_checked(verify_opts, issues);
  VerifyOptions vo;
  vo.N = verify_N;
  vo.N_duality = duality_N;
  vo.tol = verify_opts.tol;
  vo.override_s1 = override_s1;
  vo.override_s2 = override_s2;
  const VerifyReport rep = run_verification(m, vo);
  const Json payload = run_report(
      "verify", model_hash(m),
      {{"model", verify_opts.model_path}, {"N", verify_N}, {"tol", verify_opts.tol}},
      to_json(rep), seconds_since(t0));
  emit(payload, verify_opts.out);
  return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << Json{{"error", {{"type", "parse"}, {"message", e.what()}}}}.dump() << '\n';
    return 2;
  } catch (const InfeasibleError& e) {
    std::cerr << Json{{"error", {{"type", "infeasible"}, {"message", e.what()}}}}.dump() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << Json{{"error", {{"type", "domain"}, {"message", e.what()}}}}.dump() << '\n';
    return 1;
  } catch (const ConvergenceError& e) {
    std::cerr << Json{{"error", {{"type", "convergence"}, {"message", e.what()}}}}.dump() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", {{"type", "input"}, {"message", e.what()}}}}.dump() << '\n';
    return 2;
  }
}
