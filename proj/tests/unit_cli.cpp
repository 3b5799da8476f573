// Black-box checks of the command-line tool. Each case shells out to the
// built binary (path injected by the build) and inspects exit codes and
// stdout; stderr is silenced since error paths print diagnostics.

#include <tsketch/json_io.hpp>
#include <tsketch/toeplitz.hpp>

#include <doctest.h>

#include <Eigen/Dense>
#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run_prefixed(const std::string& env_prefix, const std::string& args) {
  const std::string cmd =
      env_prefix + std::string(TSKETCH_CLI_PATH) + " " + args + " 2>/dev/null";
  CmdResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

CmdResult run_cli(const std::string& args) { return run_prefixed("", args); }

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Drops the trailing wall-clock column from each CSV data line.
std::string mask_wall_ms(const std::string& csv) {
  std::string masked;
  for (const std::string& line : split_lines(csv)) {
    const std::size_t cut = line.rfind(',');
    masked += line.substr(0, cut) + "\n";
  }
  return masked;
}

double csv_field(const std::string& line, int index) {
  std::istringstream in(line);
  std::string cell;
  for (int i = 0; i <= index; ++i) std::getline(in, cell, ',');
  return std::stod(cell);
}

}  // namespace

TEST_CASE("help prints the subcommands and exits cleanly") {
  const CmdResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  for (const char* name : {"gen", "recover", "baseline", "verify", "levscores", "bench"})
    CHECK(help.out.find(name) != std::string::npos);
}

TEST_CASE("flag errors exit with code 2") {
  CHECK(run_cli("fourier").exit_code == 2);          // unknown subcommand
  CHECK(run_cli("gen --bogus 3").exit_code == 2);    // unknown flag
  CHECK(run_cli("recover --k 1").exit_code == 2);    // missing required --in
  CHECK(run_cli("gen --d 32,64 --k 1").exit_code == 2);  // gen takes a single d
  CHECK(run_cli("bench --d 64,x --k 1").exit_code == 2); // malformed d list
  CHECK(run_cli("gen --d 32 --k 1 --family pink").exit_code == 2);
}

TEST_CASE("missing input files exit with code 1") {
  CHECK(run_cli("recover --in /tmp/tsketch_absent_9e1.json --k 1").exit_code == 1);
  CHECK(run_cli("baseline --in /tmp/tsketch_absent_9e1.json --k 1").exit_code == 1);
}

TEST_CASE("gen emits a loadable instance") {
  const std::string path = "/tmp/tsketch_cli_test_gen.json";
  const CmdResult gen =
      run_cli("gen --family circulant --d 32 --k 2 --seed 3 --out " + path);
  REQUIRE(gen.exit_code == 0);
  const nlohmann::json j = tsketch::load_json_file(path);
  CHECK(j.contains("spec"));
  CHECK(j.contains("matrix"));
  CHECK(j.contains("truth"));
  const tsketch::SymToeplitz T = tsketch::matrix_from_any_json(j);
  CHECK(T.d == 32);
  std::remove(path.c_str());
}

TEST_CASE("recover round trip is byte-for-byte reproducible") {
  const std::string inst = "/tmp/tsketch_cli_test_rec_in.json";
  REQUIRE(run_cli("gen --family circulant --d 64 --k 1 --seed 12 --out " + inst).exit_code ==
          0);
  const std::string flags =
      "recover --in " + inst + " --k 1 --mode greedy --r1 1 --r2 2 --m1 16 --m2 16 --seed 9";
  const CmdResult first = run_cli(flags);
  REQUIRE(first.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(first.out);
  CHECK(j.contains("factor"));
  CHECK(j.at("ledger").at("total_reads") == 32);
  CHECK(j.at("config").at("mode") == "greedy");

  const CmdResult second = run_cli(flags);
  CHECK(second.exit_code == 0);
  CHECK(second.out == first.out);
  std::remove(inst.c_str());
}

TEST_CASE("an exhaustive search too large to enumerate exits with code 3") {
  const std::string inst = "/tmp/tsketch_cli_test_explode.json";
  REQUIRE(run_cli("gen --family circulant --d 256 --k 1 --seed 2 --out " + inst).exit_code ==
          0);
  const CmdResult r = run_cli("recover --in " + inst +
                              " --k 1 --mode exhaustive --r1 6 --r2 2 --m1 16 --m2 16");
  CHECK(r.exit_code == 3);
  std::remove(inst.c_str());
}

TEST_CASE("baseline reproduces the running-example error") {
  const std::string path = "/tmp/tsketch_cli_test_fig.json";
  nlohmann::json j;
  j["d"] = 3;
  j["first_column"] = {2.0, 1.0, 0.0};
  tsketch::save_json_file(path, j);
  const CmdResult r = run_cli("baseline --in " + path + " --k 1");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json out = nlohmann::json::parse(r.out);
  CHECK(out.at("d") == 3);
  CHECK(out.at("k") == 1);
  CHECK(out.at("error").get<double>() == doctest::Approx(2.0840215331199).epsilon(1e-6));
  std::remove(path.c_str());
}

TEST_CASE("verify runs its suites and exits zero on success") {
  const CmdResult r = run_cli("verify --seed 1");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json out = nlohmann::json::parse(r.out);
  CHECK(out.at("pass") == true);
  REQUIRE(out.at("suites").size() == 8);
  for (const auto& suite : out.at("suites")) {
    CHECK(suite.at("pass") == true);
    CHECK(suite.contains("name"));
  }
}

TEST_CASE("levscores reports dominated designs per dimension") {
  const CmdResult r = run_cli("levscores --d 32,64 --k 2 --seed 5");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json out = nlohmann::json::parse(r.out);
  REQUIRE(out.size() == 2);
  CHECK(out[0].at("d") == 32);
  CHECK(out[1].at("d") == 64);
  for (const auto& entry : out) {
    CHECK(entry.at("r") == 4);  // r = 2k
    CHECK(entry.at("total").get<double>() > 0.0);
    CHECK(entry.at("constant").get<double>() <= 64.0);
    CHECK(entry.at("domination").at("pass") == true);
  }
}

TEST_CASE("bench emits the frozen CSV schema with decreasing ratios") {
  const std::string flags =
      "bench --family circulant --d 64,128,256 --k 2 --m1 40 --m2 64 --seed 7";
  const CmdResult r = run_cli(flags);
  REQUIRE(r.exit_code == 0);
  const std::vector<std::string> lines = split_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "d,k,eps,mode,distinct_lags,err,opt_err,ratio,wall_ms");

  CHECK(csv_field(lines[1], 0) == 64.0);
  CHECK(csv_field(lines[2], 0) == 128.0);
  CHECK(csv_field(lines[3], 0) == 256.0);
  const double ratio64 = csv_field(lines[1], 7);
  const double ratio128 = csv_field(lines[2], 7);
  const double ratio256 = csv_field(lines[3], 7);
  CHECK(ratio64 > ratio128);
  CHECK(ratio128 > ratio256);

  // Reproducible up to the wall-clock column, including under a thread cap.
  const CmdResult again = run_cli(flags);
  CHECK(mask_wall_ms(again.out) == mask_wall_ms(r.out));
  const CmdResult capped = run_prefixed("TSKETCH_THREADS=1 ", flags);
  CHECK(capped.exit_code == 0);
  CHECK(mask_wall_ms(capped.out) == mask_wall_ms(r.out));
}
