// End-to-end runs of the orthant-guard binary.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "support/process.hpp"

namespace {

using Json = nlohmann::ordered_json;
using testsupport::quote;

const std::string kCli = OG_CLI_PATH;
const std::string kData = OG_TEST_DATA;

testsupport::ProcessResult cli(const std::string& args) { return testsupport::run(quote(kCli) + " " + args); }

std::string data(const std::string& name) { return quote(kData + "/" + name); }

Json json_of(const testsupport::ProcessResult& r) {
  INFO("output: " << r.out);
  return Json::parse(r.out);
}

}  // namespace

TEST_CASE("exit 0: satisfied checks and successful runs") {
  auto r = cli("check zoo:sir");
  CHECK(r.exit_code == 0);
  auto j = json_of(r);
  CHECK(j["schema"] == 1);
  CHECK(j["tool"] == "orthant-guard");
  CHECK(j["command"] == "check");
  CHECK(j["certificate"]["verdict"] == "satisfied");
  CHECK(j["exit_code"] == 0);
  CHECK_FALSE(j.contains("timing"));

  CHECK(cli("check " + data("logistic.toml") + " --rectangle").exit_code == 0);
  CHECK(cli("check zoo:chafee-infante --alpha=-1 --beta=1").exit_code == 0);
  CHECK(cli("simulate zoo:sir --u0 0.99,0.01,0 --t-end 20").exit_code == 0);
  CHECK(cli("pde " + data("logistic.toml") + " --ic 'sin(3.14159265358979*x)' --t-end 0.05").exit_code == 0);
  CHECK(cli("zoo list").exit_code == 0);
  CHECK(cli("zoo export rotation").exit_code == 0);
  CHECK(cli("--help").exit_code == 0);
}

TEST_CASE("exit 1: usage and input errors") {
  CHECK(cli("").exit_code == 1);
  CHECK(cli("check").exit_code == 1);
  CHECK(cli("check /nonexistent/model.toml").exit_code == 1);
  CHECK(cli("check " + data("bad_diffusion.toml")).exit_code == 1);
  CHECK(cli("check zoo:nope").exit_code == 1);
  CHECK(cli("check zoo:sir --format yaml").exit_code == 1);
  CHECK(cli("check zoo:sir --rectangle").exit_code == 1);
  CHECK(cli("simulate zoo:sir").exit_code == 1);
  CHECK(cli("simulate zoo:sir --u0 1,2").exit_code == 1);
  CHECK(cli("pde " + data("sqrt_drain.toml") + " --ic 1").exit_code == 1);
  CHECK(cli("pde zoo:logistic --ic 1 --scheme explicit --dt 1").exit_code == 1);
  CHECK(cli("zoo export nope").exit_code == 1);
}

TEST_CASE("exit 2: violated") {
  auto r = cli("check " + data("rotation.toml"));
  CHECK(r.exit_code == 2);
  auto j = json_of(r);
  CHECK(j["certificate"]["witness"]["face"]["index"] == 2);
  CHECK(j["certificate"]["witness"]["point"] == Json::array({10.0, 0.0}));
  CHECK(j["parameters"]["model"] == kData + "/rotation.toml");

  CHECK(cli("check zoo:nonaut-gprime").exit_code == 2);
  CHECK(cli("check zoo:nonaut-gprime --t0 0 --t1 1").exit_code == 0);
  CHECK(cli("check zoo:source --alpha 0 --beta 1").exit_code == 2);
  CHECK(cli("check zoo:rotation --clip 1 --format text").out.find("violated") != std::string::npos);
}

TEST_CASE("exit 3: marginal") {
  CHECK(cli("check " + data("marginal.toml")).exit_code == 3);
  CHECK(cli("counterexample " + data("marginal.toml")).exit_code == 3);
}

TEST_CASE("exit 4: blow-up") {
  CHECK(cli("simulate " + data("blowup.toml") + " --u0 1 --t-end 2").exit_code == 4);
  CHECK(cli("pde " + data("blowup.toml") + " --ic 2 --t-end 5").exit_code == 4);
}

TEST_CASE("exit 5: a component went negative") {
  auto r = cli("simulate zoo:rotation --u0 1.01,0.01 --t-end 5");
  CHECK(r.exit_code == 5);
  auto j = json_of(r);
  CHECK(j["trajectory"]["events"][0]["kind"] == "went_negative");
  CHECK(cli("pde zoo:rotation --ic '1;0' --t-end 0.05").exit_code == 5);
}

TEST_CASE("exit 0: a counterexample was built") {
  CHECK(cli("counterexample zoo:drain --a 0.1").exit_code == 0);
  CHECK(cli("counterexample zoo:nonaut-gprime --from-t0 2").exit_code == 0);
  auto c = json_of(cli("counterexample zoo:nonaut-gprime"));
  CHECK(c["counterexample"]["start_time"] == 2.0);
  CHECK(c["counterexample"]["crossing"]["absolute_time"].get<double>() > 2.0);
}

TEST_CASE("exit 6: nothing to construct") {
  CHECK(cli("counterexample zoo:sir").exit_code == 6);
}

TEST_CASE("exit 7: no counterexample found") {
  CHECK(cli("counterexample zoo:nonaut-gprime --from-t0 0").exit_code == 7);
}

TEST_CASE("exit 8: integrator step failure") {
  CHECK(cli("simulate " + data("sqrt_drain.toml") + " --u0 1 --t-end 5").exit_code == 8);
}

TEST_CASE("output formats") {
  const auto csv = cli("simulate zoo:lotka-volterra --u0 1,2 --t-end 1 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.rfind("t,u,v\n0,1,2\n", 0) == 0);

  const auto pde = cli("pde zoo:logistic --ic 0.5 --cells 4 --t-end 0.002 --format csv");
  CHECK(pde.out.rfind("t,x,species,value\n", 0) == 0);

  const auto text = cli("zoo list");
  CHECK(text.out.find("rotation") != std::string::npos);
  CHECK(text.out.find("nonaut-gprime") != std::string::npos);
  const auto list = json_of(cli("zoo list --format json"));
  CHECK(list["models"].size() >= 10);

  const auto timed = json_of(cli("check zoo:sir --timing"));
  CHECK(timed.contains("timing"));

  const auto pj = json_of(cli("pde zoo:logistic --bc dirichlet --ic 0.5 --t-end 0.01 --every 5"));
  CHECK(pj["pde"]["grid"]["bc"] == "dirichlet");
  CHECK(pj["pde"].contains("decay"));
  CHECK(pj["pde"]["steps"].size() == 3);
}

TEST_CASE("--out writes the report to a file") {
  const auto path = std::filesystem::temp_directory_path() / "orthant_cli_out.json";
  std::filesystem::remove(path);
  const auto r = cli("check zoo:rotation --out " + quote(path.string()));
  CHECK(r.exit_code == 2);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(Json::parse(buf.str())["certificate"]["verdict"] == "violated");
  std::filesystem::remove(path);

  const auto exported = std::filesystem::temp_directory_path() / "orthant_cli_export.toml";
  CHECK(cli("zoo export brusselator --out " + quote(exported.string())).exit_code == 0);
  CHECK(cli("check " + quote(exported.string()) + " --rectangle").exit_code == 2);
  std::filesystem::remove(exported);
}

TEST_CASE("identical invocations produce identical bytes") {
  for (const char* args : {"check zoo:brusselator --seed 3", "simulate zoo:sir --u0 1,0.1,0 --t-end 5",
                           "counterexample zoo:rotation"}) {
    const auto a = cli(args);
    const auto b = testsupport::run("ORTHANT_GUARD_THREADS=1 " + quote(kCli) + " " + args);
    INFO(args);
    CHECK(a.out == b.out);
    CHECK(a.exit_code == b.exit_code);
  }
}
