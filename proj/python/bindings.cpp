#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "qbdecay/reference_models.hpp"
#include "qbdecay/report.hpp"

namespace py = pybind11;

namespace {

using namespace qbdecay;

BlockModel parse(const std::string& text) { return load_model_json(text); }

std::vector<std::array<int, 2>> as_dirs(const std::vector<std::pair<int, int>>& in) {
  std::vector<std::array<int, 2>> out;
  for (const auto& p : in) out.push_back({p.first, p.second});
  if (out.empty()) out = {{1, 0}, {0, 1}, {1, 1}};
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "decay-rate analysis of two-dimensional QBD-type operators (JSON-string interface)";
  m.attr("__version__") = version_string();

  py::register_exception<ParseError>(m, "ModelParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  m.def(
      "validate", [](const std::string& text) { return to_json(validate_model(parse(text))).dump(); },
      py::arg("model_json"), "Validation issues for a model document, as a JSON array string.");

  m.def(
      "model_hash", [](const std::string& text) { return model_hash(parse(text)); },
      py::arg("model_json"), "Canonical content hash of a model document.");

  m.def(
      "regions",
      [](const std::string& text, double tol) {
        return to_json(analyze_regions(parse(text), tol)).dump();
      },
      py::arg("model_json"), py::arg("tol") = 1e-10,
      "Region extremes and axis convergence intervals, as a JSON object string.");

  m.def(
      "decay",
      [](const std::string& text, const std::vector<std::pair<int, int>>& dirs, double tol) {
        return to_json(analyze_decay(parse(text), as_dirs(dirs), tol)).dump();
      },
      py::arg("model_json"), py::arg("directions") = std::vector<std::pair<int, int>>{},
      py::arg("tol") = 1e-10,
      "Optimal exponents, directional rates and decay forms, as a JSON object string.");

  m.def(
      "oracle",
      [](const std::string& text, int N, const std::string& kind, double tol,
         const std::vector<std::pair<int, int>>& rays) {
        const BlockModel model = parse(text);
        const TruncatedOperator op = build_truncated(model, N);
        const OccupationField field =
            kind == "hitting" ? hitting_measure(op, tol) : occupation_measure(op, tol);
        Json out = {{"field", to_json(field)}};
        Json fits = Json::array();
        for (const auto& r : rays) fits.push_back(to_json(empirical_decay(field, {r.first, r.second})));
        out["rays"] = fits;
        return out.dump();
      },
      py::arg("model_json"), py::arg("N") = 100, py::arg("kind") = "occupation",
      py::arg("tol") = 1e-12, py::arg("rays") = std::vector<std::pair<int, int>>{},
      "Truncated-lattice measure summary and optional ray fits, as a JSON object string.");

  m.def(
      "verify",
      [](const std::string& text, int N, double tol) {
        VerifyOptions opt;
        opt.N = N;
        opt.tol = tol;
        return to_json(run_verification(parse(text), opt)).dump();
      },
      py::arg("model_json"), py::arg("N") = 200, py::arg("tol") = 1e-12,
      "Full oracle cross-check suite, as a JSON object string.");

  m.def(
      "reference_model",
      [](const std::string& name) {
        if (name == "m1") return save_model(reference_model_m1());
        if (name == "m2") return save_model(reference_model_m2());
        throw std::invalid_argument("unknown reference model: " + name);
      },
      py::arg("name") = "m1", "Built-in reference model document (\"m1\" or \"m2\").");
}
