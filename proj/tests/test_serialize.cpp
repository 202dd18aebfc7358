#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "orthant/serialize.hpp"
#include "orthant/zoo.hpp"

using namespace orthant;

TEST_CASE("rectangles write infinity as a string") {
  const auto j = to_json(make_rectangle({0, 1}, {kInfinity, 2.5}));
  CHECK(j.dump() == R"({"alpha":[0.0,1.0],"beta":["inf",2.5]})");
}

TEST_CASE("certificate layout") {
  const auto rot = make_model({"u", "v"}, {"v", "-u"});
  const auto j = to_json(check_quasipositivity(rot));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"check", "verdict", "strict", "tolerance", "faces", "witness", "sampling"});
  CHECK(j["check"] == "quasipositivity");
  CHECK(j["verdict"] == "violated");
  CHECK(j["witness"]["face"]["index"] == 2);
  CHECK(j["witness"]["face"]["side"] == "low");
  CHECK(j["witness"]["point"] == Json::array({10.0, 0.0}));
  CHECK(j["witness"]["value"] == -10.0);
  CHECK_FALSE(j["witness"].contains("time"));
  CHECK(j["faces"].size() == 2);
  CHECK(j["faces"][0]["extremum"] == "min");
  CHECK(j["sampling"]["clip"] == 10.0);
  CHECK(j["sampling"]["region"]["beta"] == Json::array({10.0, 10.0}));

  const auto sat = to_json(check_quasipositivity(make_model({"u"}, {"1-u"})));
  CHECK(sat["witness"].is_null());

  const auto& g = find_model("nonaut-gprime");
  const auto nj = to_json(check_nonautonomous(g.model, *g.time_window));
  CHECK(nj["witness"]["time"] == 2.0);
  CHECK(nj["sampling"]["time_interval"] == Json::array({0.0, 2.0}));
}

TEST_CASE("serialisation is deterministic") {
  const auto& br = find_model("brusselator");
  const auto a = to_json(check_rectangle(br.model, br.rectangles[0].rect)).dump(2);
  const auto b = to_json(check_rectangle(br.model, br.rectangles[0].rect)).dump(2);
  CHECK(a == b);
}

TEST_CASE("trajectory JSON and CSV") {
  const auto m = make_model({"prey", "pred"}, {"prey*(1-pred)", "pred*(prey-1)"});
  const auto t = integrate(m, std::vector<double>{1, 2}, 1.0);
  const auto j = to_json(t, m);
  CHECK(j["names"] == Json::array({"prey", "pred"}));
  CHECK(j["status"]["kind"] == "completed");
  CHECK(j["times"].size() == t.times.size());
  CHECK(j["states"].size() == t.states.size());

  const auto csv = to_csv(t, m);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,prey,pred");
  std::getline(in, line);
  CHECK(line == "0,1,2");
  std::size_t rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == t.times.size());
}

TEST_CASE("event and counterexample JSON use one-based components") {
  const auto drain = make_model({"u"}, {"-1"});
  const auto cex = find_counterexample(drain, check_quasipositivity(drain), 0.1, 1.0);
  const auto j = to_json(cex, drain);
  CHECK(j["crossing"]["component"] == 1);
  CHECK(j["crossing"]["name"] == "u");
  CHECK(j["crossing"]["absolute_time"] == j["crossing"]["time"]);
  CHECK(j["trajectory"]["events"][0]["kind"] == "went_negative");
}

TEST_CASE("Gronwall report JSON") {
  const auto m = make_model({"u"}, {"-u"});
  const auto t = integrate(m, std::vector<double>{1.0}, 1.0);
  const auto j = to_json(gronwall_check(m, t, 0, 2.0));
  CHECK(j["component"] == 1);
  CHECK(j["holds"] == true);
}

TEST_CASE("PDE summaries and long-format CSV") {
  const auto m = make_model({"u"}, {"u*(1-u)"}, std::vector<double>{1.0});
  const auto g = make_grid(1.0, 3, BoundaryCondition::dirichlet);
  auto s = make_state(g, 1, 0.5);
  const auto t = simulate_rd(m, s, 0.01, Scheme::imex, 5e-3);
  const auto j = summary_json(t);
  CHECK(j["grid"]["bc"] == "dirichlet");
  CHECK(j["scheme"] == "imex");
  CHECK(j["steps"].size() == 3);
  CHECK(j["steps"][0].contains("min_ratio"));
  CHECK(summary_json(t, 2)["steps"].size() == 2);

  const auto csv = to_csv(t);
  CHECK(csv.rfind("t,x,species,value\n0,0.25,u,0.5\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 1 + t.frames.size() * 3);

  const auto rep = to_json(check_positivity_evolution(t), t.names);
  CHECK(rep["species"][0]["name"] == "u");
  CHECK(rep["species"][0]["strict_min"].is_null());
  CHECK(to_json(*t.eigen)["phi1"].size() == 3);
}

TEST_CASE("format_double round-trips") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
