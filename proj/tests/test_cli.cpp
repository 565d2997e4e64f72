#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  const std::string cmd = std::string(IONCHAIN_CLI) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "ionchain_cli_test";
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("cli exit codes") {
  const auto dir = scratch();
  CHECK(run("--help") == 0);
  CHECK(run("equilibrium --eta 20 --d0-ratio 49.795") == 0);
  CHECK(run("modes --eta 20") == 0);
  CHECK(run("steady-state --eta 60 --delta-c -3 --basis local") == 0);
  CHECK(run("entangle --eta 60 --delta-c -3 --g-list 0.1,0.5") == 0);
  CHECK(run("validity --eta 300 --delta-c -1 --d0-ratio 50") == 0);

  CHECK(run("") != 0);
  CHECK(run("no-such-command") == 1);
  CHECK(run("equilibrium --eta") == 1);
  CHECK(run("equilibrium --cooperativity -1") == 1);
  CHECK(run("equilibrium --d0-ratio 0") == 1);
  CHECK(run("equilibrium --format xml") == 1);
  CHECK(run("phase-diagram --grid eta:0:1") == 1);
  CHECK(run("phase-diagram --grid eta:0:1:2 --grid eta:0:1:2") == 1);
  CHECK(run("equilibrium --config " + (dir / "missing.cfg").string()) == 1);

  std::ofstream(dir / "bad.cfg") << "eta = 5\nnot_a_key = 3\n";
  CHECK(run("equilibrium --config " + (dir / "bad.cfg").string()) == 1);

  // a narrow eta range that cannot bracket the transition
  CHECK(run("transition-lines --grid d0_ratio:49:49.5:2 --eta-max 1 --out " + (dir / "tl.csv").string()) == 2);
}

TEST_CASE("cli scan output") {
  const auto dir = scratch();
  std::ofstream(dir / "run.cfg") << "# reference setup\n"
                                    "d0_ratio = 48.99\n"
                                    "delta_c = -3\n"
                                    "grid = eta:5:80:6\n"
                                    "threads = 2\n";
  const auto a = dir / "a.csv";
  const auto b = dir / "b.csv";
  const auto cfg = "--config " + (dir / "run.cfg").string();
  REQUIRE(run("tripartite-map " + cfg + " --no-timestamp --out " + a.string()) == 0);
  REQUIRE(run("tripartite-map " + cfg + " --no-timestamp --threads 1 --out " + b.string()) == 0);
  const auto text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.find("# d0_ratio=48.99") != std::string::npos);
  CHECK(text.find("tri_l_123") != std::string::npos);

  const auto js = dir / "a.json";
  CHECK(run("phase-diagram --grid eta:0:30:4 --format json --out " + js.string()) == 0);
  CHECK(slurp(js).find("\"records\"") != std::string::npos);

  const auto res = dir / "res.csv";
  CHECK(run("max-ent-map --grid delta_c:-8:-1:3 --grid eta:2:150:8 --d0-ratio 49 --resonance-out " + res.string() +
            " --out " + (dir / "mx.csv").string()) == 0);
  CHECK(slurp(res).find("mode,eta,delta_c") != std::string::npos);
  CHECK(slurp(dir / "mx.csv").find("max_en_m_03") != std::string::npos);
}
