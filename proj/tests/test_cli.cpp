#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

const std::string kCli = ENT_CLI_PATH;
const std::string kDataDir = ENT_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + kCli + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[512];
  while (fgets(buf, sizeof buf, pipe)) r.output += buf;
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path out_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "ent_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int csv_data_rows(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::string line;
  int rows = -1;  // first line is the header
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  return rows;
}

}  // namespace

TEST_CASE("encode prints the worked example") {
  const RunResult r = run("encode 78 --width 8 --scheme ours");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("{0,1,1,-1,2}") != std::string::npos);
  CHECK(r.output.find("encoded_bits=9") != std::string::npos);
  CHECK(r.output.find("decoded=78") != std::string::npos);
}

TEST_CASE("encode zero and unsigned carry") {
  CHECK(run("encode 0 --width 8").output.find("{0,0,0,0,0}") !=
        std::string::npos);
  const RunResult r = run("encode 255 --width 8 --unsigned");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("{1,0,0,0,-1}") != std::string::npos);
  CHECK(r.output.find("carry_out=1") != std::string::npos);
}

TEST_CASE("encode booth digits") {
  const RunResult r = run("encode 78 --width 8 --scheme mbe");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("{1,1,0,-2}") != std::string::npos);
  CHECK(r.output.find("encoded_bits=12") != std::string::npos);
}

TEST_CASE("encode validation failures exit 2") {
  CHECK(run("encode 200 --width 8").exit_code == 2);  // signed range
  CHECK(run("encode 5 --width 8 --scheme nope").exit_code == 2);
  CHECK(run("encode 5 --bogus-flag").exit_code == 2);
}

TEST_CASE("verify exhaustive width 8") {
  const RunResult r = run("verify --width 8 --exhaustive");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("65536 products checked") != std::string::npos);
  CHECK(r.output.find("0 mismatches") != std::string::npos);
}

TEST_CASE("verify rejects odd widths") {
  CHECK(run("verify --width 9 --exhaustive").exit_code == 2);
}

TEST_CASE("verify sampled runs are deterministic") {
  const std::string args = "verify --width 16 --sampled 2000 --seed 7";
  const RunResult a = run(args);
  const RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("sim reports the closed-form cycles") {
  const auto csv = out_dir() / "sim.csv";
  const RunResult r = run("sim --kind systolic-os --size 16 --mode baseline "
                          "--gemm 16x16x16 --out " + csv.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("cycles 46") != std::string::npos);
  CHECK(csv_data_rows(csv) == 1);
  CHECK(slurp(csv).find(",46,46,") != std::string::npos);
}

TEST_CASE("sim covers every kind and mode") {
  const auto csv = out_dir() / "sim_all.csv";
  const RunResult r =
      run("sim --size 8 --gemm 12x9x10 --out " + csv.string());
  CHECK(r.exit_code == 0);
  CHECK(csv_data_rows(csv) == 15);
  CHECK(slurp(csv).find("MISMATCH") == std::string::npos);
}

TEST_CASE("cost emits one row per kind, size, and mode") {
  const auto csv = out_dir() / "cost.csv";
  const RunResult r = run("cost --sizes 16,32,64 --modes baseline,ent-ours "
                          "--out " + csv.string());
  CHECK(r.exit_code == 0);
  CHECK(csv_data_rows(csv) == 30);  // 5 kinds x 3 sizes x 2 modes
}

TEST_CASE("cost output is byte-identical across runs") {
  const auto a = out_dir() / "cost_a.csv";
  const auto b = out_dir() / "cost_b.csv";
  CHECK(run("cost --out " + a.string()).exit_code == 0);
  CHECK(run("cost --out " + b.string()).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("sweep writes entries plus per-scale averages") {
  const auto csv = out_dir() / "sweep.csv";
  const auto avg = out_dir() / "sweep_avg.csv";
  const RunResult r = run("sweep --out " + csv.string() + " --avg-out " +
                          avg.string());
  CHECK(r.exit_code == 0);
  CHECK(csv_data_rows(csv) == 45);  // 5 kinds x 3 scales x 3 modes
  CHECK(csv_data_rows(avg) == 9);
  CHECK(r.output.find("avg energy up-ratio") != std::string::npos);
}

TEST_CASE("soc emits per-category energy with a reduction column") {
  const auto csv = out_dir() / "soc.csv";
  const RunResult r = run("soc --network " + kDataDir + "/resnet34.json "
                          "--kind matrix2d --size 32 --mode ent-ours --out " +
                          csv.string());
  CHECK(r.exit_code == 0);
  CHECK(csv_data_rows(csv) == 1);
  const std::string text = slurp(csv);
  CHECK(text.find("reduction_vs_baseline") != std::string::npos);
  CHECK(text.find("tcu_j") != std::string::npos);
  CHECK(r.output.find("reduction") != std::string::npos);
}

TEST_CASE("soc requires a readable network file") {
  CHECK(run("soc --network /nonexistent.json").exit_code == 4);
}

TEST_CASE("ENT_OUTPUT_DIR redirects relative outputs") {
  const auto dir = out_dir() / "redirect";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const RunResult r = run("cost --sizes 16 --modes baseline --out env.csv",
                          "ENT_OUTPUT_DIR=" + dir.string() + " ");
  CHECK(r.exit_code == 0);
  CHECK(std::filesystem::exists(dir / "env.csv"));
}
