#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qpulse/artifacts.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QPULSE_CLI_PATH) + " " + args +
                          " > /dev/null 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("qpulse_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int counter() {
    static int c = 0;
    return c++;
  }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("malformed config fails without artifacts") {
    TempDir tmp;
    const fs::path cfg = tmp.path / "bad.json";
    const fs::path out = tmp.path / "out";
    {
      std::ofstream f(cfg);
      f << R"({"trajectory": {"N": 1}, "command": "design"})";
    }
    CHECK(run_cli("--config " + cfg.string() + " --out " + out.string()) != 0);
    CHECK(!fs::exists(out));

    {
      std::ofstream f(cfg);
      f << R"({"trajectory": {"NN": 25}})";  // unknown key
    }
    CHECK(run_cli("--config " + cfg.string() + " --out " + out.string()) != 0);
    CHECK(!fs::exists(out));

    {
      std::ofstream f(cfg);
      f << "{not json";
    }
    CHECK(run_cli("--config " + cfg.string() + " --out " + out.string()) != 0);
    CHECK(!fs::exists(out));
  }

  TEST_CASE("identical configs give byte-identical artifacts") {
    TempDir tmp;
    const fs::path cfg = tmp.path / "cfg.json";
    {
      std::ofstream f(cfg);
      f << R"({"command": "design",
               "trajectory": {"family": "chebyshev2", "N": 51, "gamma": 0.01},
               "workers": 2})";
    }
    const fs::path out1 = tmp.path / "run1";
    const fs::path out2 = tmp.path / "run2";
    REQUIRE(run_cli("--config " + cfg.string() + " --out " + out1.string()) == 0);
    REQUIRE(run_cli("--config " + cfg.string() + " --out " + out2.string() +
                    " --workers 1") == 0);
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(out1)) {
      const fs::path name = entry.path().filename();
      if (name == "manifest.json") continue;  // records the worker override
      CHECK(slurp(entry.path()) == slurp(out2 / name));
      ++compared;
    }
    CHECK(compared >= 4);
  }

  TEST_CASE("analyze emits the prediction table") {
    TempDir tmp;
    const fs::path cfg = tmp.path / "cfg.json";
    {
      std::ofstream f(cfg);
      f << R"({"command": "analyze",
               "trajectory": {"family": "slepian", "N": 101, "NW": 2.9},
               "scan": {"td_min_ns": 40, "td_max_ns": 42, "td_step_ns": 0.5}})";
    }
    const fs::path out = tmp.path / "out";
    REQUIRE(run_cli("--config " + cfg.string() + " --out " + out.string()) == 0);
    const std::string csv = slurp(out / "slepian_analytic_pe.csv");
    CHECK(csv.rfind("td_ns,pe,method\n", 0) == 0);
    CHECK(csv.find("fourier") != std::string::npos);
  }
}
