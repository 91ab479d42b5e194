#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

const char* cli_path() { return std::getenv("ENTDYN_BIN"); }

fs::path work_dir() {
  fs::path dir = fs::temp_directory_path() / "entdyn_cli_tests";
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const fs::path& out, const std::string& env = "") {
  std::string cmd = env + std::string(cli_path()) + " " + args + " >" + out.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::vector<double> split_csv_row(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  std::string piece;
  while (std::getline(in, piece, ',')) out.push_back(std::stod(piece));
  return out;
}

}  // namespace

TEST_CASE("cli: phase-reservoir trajectory reproduces the X-state determinant law") {
  if (!cli_path()) return;  // exercised through ctest
  fs::path out = work_dir() / "traj.csv";
  int code = run_cli(
      "trajectory --scenario case2b_phase --state eq2:0.3,0.2,0.2 --checkpoints 64", out);
  REQUIRE(code == 0);

  std::vector<std::string> lines = split_lines(slurp(out));
  REQUIRE(lines.size() == 66);  // header + t=0 + 64 checkpoints
  CHECK(lines[0] == "t,det_rho,det_pt,negativity,p00,p01,p10,p11,rho44");

  // det_pt(t) = p2 p3 (p1 p4 - |c(t)|^2) with c(t) = c exp(-4 gamma t).
  const double a = 0.3, b = 0.2, c = 0.2;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<double> row = split_csv_row(lines[i]);
    REQUIRE(row.size() == 9);
    double t = row[0];
    double ct = c * std::exp(-4.0 * t);
    double expected = b * b * (a * a - ct * ct);
    CHECK(row[2] == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("cli: classify emits the expected flags and death time") {
  if (!cli_path()) return;
  fs::path out = work_dir() / "classify.json";
  REQUIRE(run_cli("classify --scenario case1a --state werner:0.1", out) == 0);
  std::string text = slurp(out);
  CHECK(text.find("\"flags\": [\n    \"SDE\"\n  ]") != std::string::npos);
  CHECK(text.find("\"initial_entangled\": true") != std::string::npos);
  CHECK(text.find("\"death_time\": null") == std::string::npos);
}

TEST_CASE("cli: stationary report carries kernel dimension and class label") {
  if (!cli_path()) return;
  fs::path out = work_dir() / "stationary.json";
  REQUIRE(run_cli("stationary --scenario case2b_phase --seed 3", out) == 0);
  std::string text = slurp(out);
  CHECK(text.find("\"kernel_dimension\": 4") != std::string::npos);
  CHECK(text.find("\"class_label\": \"2b\"") != std::string::npos);
  CHECK(text.find("\"representative_states\"") != std::string::npos);
}

TEST_CASE("cli: config file supplies defaults, flags win, env seeds the rng") {
  if (!cli_path()) return;
  fs::path cfg = work_dir() / "config.json";
  {
    std::ofstream f(cfg);
    f << "{\"scenario\": \"collective_zero_t\", \"samples\": 120, \"seed\": 9,"
         " \"rates\": {\"gamma_down\": 2.0}}\n";
  }
  fs::path out1 = work_dir() / "p1.json";
  fs::path out2 = work_dir() / "p2.json";
  fs::path out3 = work_dir() / "p3.json";
  REQUIRE(run_cli("probabilities --config " + cfg.string(), out1) == 0);
  std::string text = slurp(out1);
  CHECK(text.find("\"scenario\": \"collective_zero_t\"") != std::string::npos);
  CHECK(text.find("\"n_samples\": 120") != std::string::npos);
  CHECK(text.find("\"seed\": 9") != std::string::npos);
  CHECK(text.find("\"gamma_down\": 2.0") != std::string::npos);

  // A flag overrides the same key from the file, including rate overrides.
  REQUIRE(run_cli("probabilities --config " + cfg.string() +
                      " --samples 150 --rate gamma_down=3",
                  out2) == 0);
  std::string text2 = slurp(out2);
  CHECK(text2.find("\"n_samples\": 150") != std::string::npos);
  CHECK(text2.find("\"gamma_down\": 3.0") != std::string::npos);

  // ENTDYN_SEED fills in when neither flag nor file sets one.
  REQUIRE(run_cli("probabilities --scenario collective_zero_t --samples 120", out3,
                  "ENTDYN_SEED=444 ") == 0);
  CHECK(slurp(out3).find("\"seed\": 444") != std::string::npos);
}

TEST_CASE("cli: config errors exit with code 2") {
  if (!cli_path()) return;
  fs::path out = work_dir() / "err.txt";
  CHECK(run_cli("classify --scenario case9z --state mix", out) == 2);
  CHECK(run_cli("classify --scenario case1a --state not_a_state", out) == 2);
  CHECK(run_cli("probabilities --scenario case1a --samples 10", out) == 2);
  CHECK(run_cli("trajectory --scenario case1a --rate bogus_key=1", out) == 2);
}

TEST_CASE("cli: probability json carries the event blocks") {
  if (!cli_path()) return;
  fs::path out = work_dir() / "events.json";
  REQUIRE(run_cli("probabilities --scenario collective_zero_t --samples 150 --seed 7", out) == 0);
  std::string text = slurp(out);
  for (const char* key : {"\"SDE\"", "\"ADE\"", "\"SDE_prime\"", "\"ADE_prime\"", "\"AE\"",
                          "\"SBE\"", "\"wilson95\"", "\"n_indeterminate\""})
    CHECK(text.find(key) != std::string::npos);
  CHECK(text.find("\"estimate\": 1.0") != std::string::npos);
}
