#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = QBDECAY_CLI_PATH;
const std::string kSrc = QBDECAY_SOURCE_DIR;

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with stdout captured to a file; stderr is left visible so
// failures show up in the test log.
RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path cap = fs::temp_directory_path() / ("qbdecay_cli_out_" +
                                                    std::to_string(counter++) + ".txt");
  const std::string cmd = kCli + " " + args + " > " + cap.string();
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(cap);
  std::stringstream buf;
  buf << in.rdbuf();
  r.out = buf.str();
  fs::remove(cap);
  return r;
}

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("version flag and usage errors") {
  RunResult v = run_cli("--version");
  CHECK(v.code == 0);
  CHECK(v.out.find("0.1.0") != std::string::npos);

  CHECK(run_cli("").code == 2);                      // missing subcommand
  CHECK(run_cli("regions").code == 2);               // missing --model
  CHECK(run_cli("regions --bogus x").code == 2);     // unknown option
  CHECK(run_cli("oracle --model " + kSrc + "/data/m1.json --kind banana").code == 2);
}

TEST_CASE("validate: clean model exits 0, broken models exit 1 or 2") {
  CHECK(run_cli("validate --model " + kSrc + "/data/m1.json").code == 0);
  CHECK(run_cli("validate --model " + kSrc + "/data/m2.json").code == 0);

  const fs::path bad = write_temp("qbdecay_forbidden.json", R"({
    "s0": 1,
    "blocks": {
      "b1": {"0,-1": [[0.1]], "0,0": [[0.4]], "1,0": [[0.2]], "-1,0": [[0.2]], "0,1": [[0.1]]},
      "b2": {"0,0": [[0.4]], "0,1": [[0.1]], "0,-1": [[0.3]], "1,0": [[0.1]]},
      "empty": {"0,0": [[0.5]], "1,0": [[0.2]], "0,1": [[0.2]]},
      "b12": {"0,0": [[0.3]], "1,0": [[0.1]], "-1,0": [[0.2]], "0,1": [[0.1]], "0,-1": [[0.2]]}
    }
  })");
  RunResult r = run_cli("validate --model " + bad.string());
  CHECK(r.code == 1);
  CHECK(r.out.find("forbidden_block") != std::string::npos);

  const fs::path garbled = write_temp("qbdecay_garbled.json", "{this is not json");
  CHECK(run_cli("validate --model " + garbled.string()).code == 2);
  CHECK(run_cli("validate --model " + kSrc + "/data/no_such_model.json").code == 2);
}

TEST_CASE("regions: report values and infeasible models") {
  const fs::path out = fs::temp_directory_path() / "qbdecay_regions.json";
  const fs::path csv = fs::temp_directory_path() / "qbdecay_boundary.csv";
  RunResult r = run_cli("regions --model " + kSrc + "/data/m1.json --out " + out.string() +
                        " --samples 65 --csv " + csv.string());
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["command"] == "regions");
  CHECK(std::abs(doc["results"]["interior"]["theta1_max"].get<double>() - 1.2861762284523) <
        1e-6);
  CHECK(std::abs(doc["results"]["axis1_interval"]["hi"].get<double>() - 1.183342832252) < 1e-6);

  const std::string curve = slurp(csv);
  CHECK(curve.rfind("theta1,", 0) == 0);
  // Header plus one line per sample.
  CHECK(std::count(curve.begin(), curve.end(), '\n') == 66);

  // Interior family scaled past total mass one: no convergence region.
  const fs::path heavy = write_temp("qbdecay_heavy.json", R"({
    "s0": 1,
    "blocks": {
      "empty": {"0,0": [[0.54]], "1,0": [[0.18]], "0,1": [[0.18]]},
      "b1": {"0,0": [[0.386]], "1,0": [[0.129]], "-1,0": [[0.257]], "0,1": [[0.129]]},
      "b2": {"0,0": [[0.386]], "0,1": [[0.129]], "0,-1": [[0.257]], "1,0": [[0.129]]},
      "b12": {"0,0": [[0.36]], "1,0": [[0.12]], "-1,0": [[0.24]], "0,1": [[0.12]], "0,-1": [[0.24]]}
    }
  })");
  CHECK(run_cli("regions --model " + heavy.string()).code == 1);
}

TEST_CASE("decay: optimal exponents and extra directions") {
  RunResult r = run_cli("decay --model " + kSrc + "/data/m1.json --direction 2,1");
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(std::abs(doc["results"]["optimal"]["s1"].get<double>() - 1.183342832252) < 1e-6);
  CHECK(doc["results"]["axis1"]["case"] == 2);
  CHECK(doc["results"]["rates"].size() == 4);
  CHECK(doc["results"]["rates"][3]["c"][0] == 2);

  CHECK(run_cli("decay --model " + kSrc + "/data/m1.json --direction nope").code == 2);
}

TEST_CASE("oracle: ray fit and csv output") {
  const fs::path csv = fs::temp_directory_path() / "qbdecay_ray.csv";
  RunResult r = run_cli("oracle --model " + kSrc + "/data/m1.json --N 60 --ray 1,0 --csv " +
                        csv.string());
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["results"]["field"]["residual"].get<double>() < 1e-10);
  const double slope = doc["results"]["ray"]["slope"].get<double>();
  CHECK(std::abs(slope + 1.183342832252) < 0.05);
  CHECK(slurp(csv).rfind("n,", 0) == 0);
}

TEST_CASE("verify: pass and negative control") {
  const std::string base = "verify --model " + kSrc + "/data/m1.json --N 100 --duality-N 20";
  RunResult ok = run_cli(base);
  CHECK(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out)["results"]["all_pass"] == true);

  RunResult bad = run_cli(base + " --override-s1 2.4");
  CHECK(bad.code == 1);
  CHECK(nlohmann::json::parse(bad.out)["results"]["all_pass"] == false);
}
