#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "doctest.h"
#include "qent/json_io.hpp"

namespace fs = std::filesystem;
using namespace qent;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qent");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return (fs::path(QENT_FIXTURE_DIR) / name).string(); }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qent_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(QENT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("format_nats") {
  CHECK(cli::format_nats(0.6931471805599453) == "0.693147180560");
  CHECK(cli::format_nats(-1e-15) == "0.000000000000");
  CHECK(cli::format_nats(-0.5) == "-0.500000000000");
}

TEST_CASE("entropy command") {
  CHECK(run_cli({"entropy", "--state", fixture("maximally_mixed.json")}).out == "S=0.693147180560 S_q=1.386294361120\n");
  CHECK(run_cli({"entropy", "--state", fixture("pure.json")}).out == "S=0.000000000000 S_q=0.000000000000\n");
  CHECK(run_cli({"entropy", "--state", fixture("diag_quarter.json")}).out == "S=0.562335144619 S_q=1.124670289238\n");
}

TEST_CASE("compound, mutual and channel-apply commands") {
  const fs::path w = scratch("standard.json");
  REQUIRE(run_cli({"compound", "standard", "--state", fixture("maximally_mixed.json"), "-o", w.string()}).code == 0);
  const Run m = run_cli({"mutual", "--compound", w.string()});
  CHECK(m.code == 0);
  CHECK(m.out.rfind("I=1.386294361120 ", 0) == 0);
  CHECK(m.out.find("disentanglement=-0.693147180560") != std::string::npos);

  const fs::path o = scratch("o.json");
  REQUIRE(run_cli({"compound", "o", "--state", fixture("diag_quarter.json"), "-o", o.string()}).code == 0);
  CHECK(run_cli({"mutual", "--compound", o.string()}).out.rfind("I=0.562335144619 ", 0) == 0);

  const fs::path out = scratch("applied.json");
  REQUIRE(run_cli({"channel-apply", "--channel", fixture("depolarizing_half.json"), "--state", fixture("pure.json"), "-o",
                   out.string()})
              .code == 0);
  const DensityOperator rho = io::density_from_json(io::read_json_file(out));
  CHECK(distance(rho.matrix(), Matrix::diagonal({0.75, 0.25})) < 1e-12);
}

TEST_CASE("info and capacity commands") {
  CHECK(run_cli({"info", "--state", fixture("maximally_mixed.json"), "--channel", fixture("identity.json"), "--kind", "q"})
            .out == "I_q=1.386294361120\n");
  CHECK(run_cli({"info", "--state", fixture("maximally_mixed.json"), "--channel", fixture("identity.json"), "--kind", "d"})
            .out == "I_d=0.693147180560\n");
  const fs::path dump = scratch("dump.json");
  const Run r = run_cli({"info", "--state", fixture("maximally_mixed.json"), "--channel", fixture("depolarizing_half.json"),
                         "--kind", "d", "--dump", dump.string()});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("I_d=0.1308", 0) == 0);
  const auto j = io::read_json_file(dump);
  CHECK(io::ensemble_from_json(j.at("ensemble")).size() >= 2);

  CHECK(run_cli({"capacity", "--channel", fixture("identity.json"), "--kind", "d", "--restarts", "2"}).out.rfind(
            "C_d=0.6931", 0) == 0);
}

TEST_CASE("error paths map to exit codes") {
  // Dimension mismatch is a validation error.
  CHECK(run_cli({"info", "--state", fixture("qutrit_mixed.json"), "--channel", fixture("identity.json"), "--kind", "q"})
            .code == cli::kExitValidation);
  CHECK(run_cli({"info", "--state", fixture("maximally_mixed.json"), "--channel", fixture("faulty_kraus.json"), "--kind",
                 "q"})
            .code == cli::kExitValidation);
  CHECK(run_cli({"entropy", "--state", fixture("does_not_exist.json")}).code == cli::kExitIo);
  CHECK(run_cli({"entropy"}).code == cli::kExitIo);
  CHECK(run_cli({"bogus"}).code == cli::kExitIo);
  CHECK(run_cli({"sweep", "--family", "depolarizing", "--from", "0", "--to", "1", "--step", "0.5", "--state",
                 fixture("maximally_mixed.json"), "--out", "/nonexistent_dir/x.csv"})
            .code == cli::kExitIo);
  CHECK(run_cli({"sweep", "--family", "warp_drive", "--from", "0", "--to", "1", "--step", "0.5", "--state",
                 fixture("maximally_mixed.json"), "--out", scratch("x.csv").string()})
            .code == cli::kExitValidation);

  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << "{\"kind\": \"density\", \"dim\": 2, ";
  CHECK(run_cli({"entropy", "--state", bad.string()}).code == cli::kExitIo);
  const fs::path notpsd = scratch("notpsd.json");
  std::ofstream(notpsd) << R"({"kind":"density","dim":2,"matrix":{"rows":2,"cols":2,"re_im":[[0.5,0],[0.6,0],[0.6,0],[0.5,0]]}})";
  const Run r = run_cli({"entropy", "--state", notpsd.string()});
  CHECK(r.code == cli::kExitValidation);
  CHECK(r.err.find("NotPSD") != std::string::npos);
}

TEST_CASE("sweep grid and CSV") {
  CHECK(cli::sweep_grid(0.0, 1.0, 0.25).size() == 5);
  CHECK(cli::sweep_grid(0.0, 1.0, 0.1).size() == 11);
  CHECK(cli::sweep_grid(0.0, 1.0, 0.3).back() == doctest::Approx(0.9));
  CHECK(cli::sweep_grid(0.5, 0.5, 0.1).size() == 1);
  CHECK_THROWS(cli::sweep_grid(0.0, 1.0, 0.0));
  CHECK_THROWS(cli::sweep_grid(1.0, 0.0, 0.1));

  const fs::path a = scratch("a.csv"), b = scratch("b.csv");
  for (const auto& p : {a, b}) {
    REQUIRE(run_cli({"sweep", "--family", "depolarizing", "--from", "0", "--to", "1", "--step", "0.25", "--state",
                     fixture("maximally_mixed.json"), "--out", p.string(), "--seed", "3"})
                .code == 0);
  }
  const std::string csv = slurp(a);
  CHECK(csv == slurp(b));
  CHECK(csv.rfind("param,I_q,I_d,I_o\n0.000000000000,1.386294361120,0.693147180560,0.693147180560\n", 0) == 0);
  CHECK(csv.find("\n1.000000000000,0.000000000000,0.000000000000,0.000000000000\n") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("verify command") {
  const Run ok = run_cli({"verify", "--dims", "2", "--trials", "3"});
  CHECK(ok.code == cli::kExitOk);
  CHECK(ok.out.find("0 failed") != std::string::npos);

  const Run vacuous = run_cli({"verify", "--trials", "0"});
  CHECK(vacuous.code == cli::kExitOk);
  CHECK(vacuous.err.find("warning") != std::string::npos);

  const Run faulty = run_cli({"verify", "--dims", "2", "--trials", "1", "--channel", fixture("faulty_kraus.json")});
  CHECK(faulty.code == cli::kExitVerifyFailed);
  CHECK(faulty.err.find("IncompleteKraus") != std::string::npos);

  CHECK(run_cli({"verify", "--dims", "5"}).code == cli::kExitValidation);
}

TEST_CASE("installed binary exit codes") {
  CHECK(run_binary("entropy --state " + fixture("maximally_mixed.json")) == 0);
  CHECK(run_binary("entropy --state " + fixture("nope.json")) == 3);
  CHECK(run_binary("verify --dims 2 --trials 1 --channel " + fixture("faulty_kraus.json")) == 2);
  CHECK(run_binary("info --kind q --state " + fixture("qutrit_mixed.json") + " --channel " + fixture("identity.json")) == 1);
}
