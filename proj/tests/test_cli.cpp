#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the installed binary with stderr silenced; tests assert on exit codes
// and standard output only.
RunResult run_cli(const std::string& args) {
  const std::string command = std::string(QENT_CLI_PATH) + " " + args +
                              " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  while (std::size_t n = std::fread(buffer, 1, sizeof buffer, pipe)) {
    result.out.append(buffer, n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qent_cli_test_" + name);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("compute --help").exit_code == 0);
}

TEST_CASE("compute reports the Bell projector") {
  const RunResult result =
      run_cli(R"(compute --family '{"kind":"bell","which":"phi+"}')");
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.out);
  CHECK(doc.at("gamma").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(doc.at("gamma_sup").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(doc.at("concurrence").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(!doc.at("is_ppt").get<bool>());
}

TEST_CASE("compute can restrict the measure set") {
  const RunResult result = run_cli(
      R"(compute --family '{"kind":"werner","p":0.5}' --measures gamma,concurrence,ppt)");
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.out);
  CHECK(doc.at("gamma").get<double>() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(doc.at("concurrence").get<double>() == 0.0);
  CHECK(doc.at("is_ppt").get<bool>());
  CHECK(!doc.contains("gamma_sup"));
  CHECK(!doc.contains("negativity"));
}

TEST_CASE("input errors exit with code 2 and no partial output") {
  const RunResult malformed = run_cli("compute --family 'not json'");
  CHECK(malformed.exit_code == 2);
  CHECK(malformed.out.empty());

  CHECK(run_cli(R"(compute --family '{"kind":"ghz"}')").exit_code == 2);
  CHECK(run_cli("compute").exit_code == 2);
  CHECK(run_cli("--definitely-not-a-flag").exit_code == 2);
  CHECK(run_cli(R"(sweep werner --measures gamma)").exit_code == 2);
  CHECK(run_cli(
            R"(bell-sim --family '{"kind":"bell","which":"phi+"}' --shots 10)")
            .exit_code == 2);
}

TEST_CASE("sweep writes the deterministic family grid") {
  const auto csv = temp_file("werner_sweep.csv");
  std::filesystem::remove(csv);
  const RunResult result = run_cli(
      "sweep werner --range p=0:1:5 --measures gamma,concurrence --out " +
      csv.string());
  REQUIRE(result.exit_code == 0);
  const auto rows = lines_of(read_file(csv));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "p,gamma,concurrence");
  // gamma column follows |1-4p|/3 across the grid.
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::istringstream line(rows[i]);
    std::string p_text;
    std::string gamma_text;
    std::getline(line, p_text, ',');
    std::getline(line, gamma_text, ',');
    const double p = std::stod(p_text);
    const double gamma = std::stod(gamma_text);
    CHECK(gamma == doctest::Approx(std::abs(1.0 - 4.0 * p) / 3.0)
                       .epsilon(1e-12));
  }
  std::filesystem::remove(csv);
}

TEST_CASE("bell-sim emits a reproducible trace and summary") {
  const auto csv_a = temp_file("bellsim_a.csv");
  const auto csv_b = temp_file("bellsim_b.csv");
  const std::string family = R"(--family '{"kind":"bell","which":"phi+"}')";
  const RunResult a = run_cli("bell-sim " + family +
                              " --shots 20000 --seed 5 --out " + csv_a.string());
  const RunResult b = run_cli("bell-sim " + family +
                              " --shots 20000 --seed 5 --out " + csv_b.string());
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);

  const auto doc = nlohmann::json::parse(a.out);
  CHECK(std::abs(doc.at("gamma_sup_estimate").get<double>() - 1.0) < 0.01);

  const std::string trace_a = read_file(csv_a);
  CHECK(trace_a == read_file(csv_b));
  CHECK(a.out == b.out);
  const auto rows = lines_of(trace_a);
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] ==
        "setting_index,phi,vartheta,theta_a,theta_b,n_phi_plus,n_phi_minus,"
        "n_psi_plus,n_psi_minus,estimate");
  std::filesystem::remove(csv_a);
  std::filesystem::remove(csv_b);
}

TEST_CASE("density descriptors round-trip through compute") {
  const auto dump = temp_file("dumped_state.json");
  std::filesystem::remove(dump);
  const RunResult first = run_cli(
      R"(compute --family '{"kind":"horodecki","a":0.6,"p":0.3}' --dump-state )" +
      dump.string());
  REQUIRE(first.exit_code == 0);
  const RunResult second = run_cli("compute --state " + dump.string());
  REQUIRE(second.exit_code == 0);
  CHECK(first.out == second.out);
  std::filesystem::remove(dump);
}

TEST_CASE("validate quick level passes on a fresh build") {
  const RunResult result = run_cli("validate --quick");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("0 failed") != std::string::npos);
}
