#include "orthant/zoo.hpp"

#include "orthant/error.hpp"

namespace orthant {

namespace {

constexpr const char* kDefaultRun = "check at defaults (clip 10, grid 17, random 512, seed 0), tests/test_zoo.cpp";

ZooEntry entry(std::string name, std::vector<std::string> names, std::vector<std::string> f, std::vector<double> d,
               Verdict expected, std::string note) {
  ZooEntry e;
  e.name = std::move(name);
  e.model = make_model(std::move(names), f, std::move(d));
  e.model.pde = PdeSettings{};
  e.expected = expected;
  e.note = std::move(note);
  e.verified_by = kDefaultRun;
  return e;
}

void add_rectangle(ZooEntry& e, std::vector<double> alpha, std::vector<double> beta, Verdict expected,
                   std::string verified_by) {
  e.rectangles.push_back({make_rectangle(std::move(alpha), std::move(beta)), expected, std::move(verified_by)});
  if (!e.model.rectangle) e.model.rectangle = e.rectangles.front().rect;
}

std::vector<ZooEntry> build() {
  std::vector<ZooEntry> zoo;

  {
    auto e = entry("rotation", {"u", "v"}, {"v", "-u"}, {1.0, 1.0}, Verdict::violated,
                   "harmonic oscillator; F(0,0) = 0 yet the flow leaves the orthant through the face v = 0");
    e.known_witness = Witness{{1, Side::low}, {10.0, 0.0}, -10.0, std::nullopt};
    zoo.push_back(std::move(e));
  }
  zoo.push_back(entry("scalar-affine", {"u"}, {"1-u"}, {1.0}, Verdict::satisfied,
                      "scalar relaxation to 1; the face condition is f(0) = 1 >= 0"));
  zoo.push_back(entry("sir", {"s", "i", "r"}, {"-0.3*s*i", "0.3*s*i-0.1*i", "0.1*i"}, {1.0, 1.0, 1.0},
                      Verdict::satisfied, "SIR epidemic, beta = 0.3, gamma = 0.1; mass-action terms vanish on faces"));
  zoo.push_back(entry("lotka-volterra", {"u", "v"}, {"u*(1-v)", "v*(u-1)"}, {1.0, 1.0}, Verdict::satisfied,
                      "predator-prey with a = b = c = d = 1"));
  {
    auto e = entry("brusselator", {"u", "v"}, {"1 - 4*u + u^2*v", "3*u - u^2*v"}, {1.0, 8.0}, Verdict::satisfied,
                   "Brusselator A = 1, B = 3; no bounded invariant rectangle");
    add_rectangle(e, {0.0, 0.0}, {5.0, 5.0}, Verdict::violated,
                  "face u = 5 gives f1 = -19 + 25 v > 0 for v > 0.76; check_rectangle seed 0");
    zoo.push_back(std::move(e));
  }
  {
    auto e = entry("gray-scott", {"u", "v"}, {"-u*v^2 + 0.04*(1-u)", "u*v^2 - 0.1*v"}, {1.0, 0.5},
                   Verdict::satisfied, "Gray-Scott with feed F = 0.04, kill k = 0.06");
    add_rectangle(e, {0.0, 0.0}, {1.0, 1.0}, Verdict::violated,
                  "face v = 1 gives f2 = u - (F + k) = 0.9 > 0 at u = 1; check_rectangle seed 0");
    add_rectangle(e, {0.0, 0.0}, {1.0, 0.05}, Verdict::satisfied,
                  "face v = b needs u b <= F + k on [0,1], true for b = 0.05; check_rectangle seed 0");
    zoo.push_back(std::move(e));
  }
  {
    auto e = entry("chafee-infante", {"u"}, {"u - u^3"}, {1.0}, Verdict::satisfied,
                   "bistable cubic; f(-1) = f(0) = f(1) = 0");
    add_rectangle(e, {-1.0}, {1.0}, Verdict::satisfied, "f(-1) = 0 >= 0 and f(1) = 0 <= 0; check_rectangle seed 0");
    zoo.push_back(std::move(e));
  }
  {
    auto e = entry("logistic", {"u"}, {"u*(1-u)"}, {1.0}, Verdict::satisfied, "logistic growth");
    add_rectangle(e, {0.0}, {1.0}, Verdict::satisfied, "f(0) = f(1) = 0; check_rectangle seed 0");
    zoo.push_back(std::move(e));
  }
  {
    auto e = entry("nonaut-gprime", {"u"}, {"(1-t)*exp(-t)"}, {1.0}, Verdict::violated,
                   "u' = g'(t) with g(t) = t exp(-t) > 0 for t > 0: the face condition fails for t > 1, "
                   "yet u(0) >= 0 gives u(t) = u(0) + g(t) >= 0; started at t0 = 2 it goes negative");
    e.time_window = TimeWindow{0.0, 2.0};
    e.known_witness = Witness{{0, Side::low}, {0.0}, -0.1353352832366127, 2.0};
    e.verified_by = "check_nonautonomous on [0,2] at defaults, seed 0, tests/test_zoo.cpp";
    zoo.push_back(std::move(e));
  }
  {
    auto e = entry("drain", {"u"}, {"-1"}, {1.0}, Verdict::violated, "constant drain; f(0) = -1 < 0");
    e.known_witness = Witness{{0, Side::low}, {0.0}, -1.0, std::nullopt};
    zoo.push_back(std::move(e));
  }
  {
    auto e = entry("source", {"u"}, {"1"}, {1.0}, Verdict::satisfied,
                   "constant source; preserves the orthant but exits [0,1] through u = 1");
    add_rectangle(e, {0.0}, {1.0}, Verdict::violated, "f(1) = 1 > 0 on the high face; check_rectangle seed 0");
    zoo.push_back(std::move(e));
  }
  return zoo;
}

}  // namespace

const std::vector<ZooEntry>& list_models() {
  static const std::vector<ZooEntry> zoo = build();
  return zoo;
}

const ZooEntry& find_model(std::string_view name) {
  for (const auto& e : list_models()) {
    if (e.name == name) return e;
  }
  throw Error(ErrorKind::not_found, "no zoo model named `" + std::string(name) + "`");
}

std::string export_model_file(const ZooEntry& entry) {
  return "# " + entry.name + ": " + entry.note + "\n" + to_model_file(entry.model);
}

}  // namespace orthant
