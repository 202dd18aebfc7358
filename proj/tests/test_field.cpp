#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "orthant/error.hpp"
#include "orthant/field.hpp"
#include "orthant/sampling.hpp"

using namespace orthant;

namespace {

std::string load_error(const std::string& doc) {
  try {
    load_model(doc);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::model);
    return e.what();
  }
  FAIL("document loaded without error:\n" << doc);
  return "";
}

// Jacobian row sums of the Lotka-Volterra field, written out by hand.
double lv_row_sum_max(double u, double v) {
  const double r1 = std::fabs(1.0 - v) + std::fabs(u);
  const double r2 = std::fabs(v) + std::fabs(u - 1.0);
  return std::max(r1, r2);
}

}  // namespace

TEST_CASE("load_model: well-formed documents") {
  const auto rot = load_model(R"toml(names = ["u", "v"]
f = ["v", "-u"])toml");
  CHECK(rot.dimension() == 2);
  CHECK_FALSE(rot.time_dependent);
  CHECK_FALSE(rot.diffusion.has_value());

  const auto sir = load_model(R"toml(names = ["s", "i", "r"]
f = ["-0.3*s*i", "0.3*s*i-0.1*i", "0.1*i"]
d = [1, 2.5, 1e-1])toml");
  CHECK(sir.dimension() == 3);
  REQUIRE(sir.diffusion);
  CHECK(*sir.diffusion == std::vector<double>{1.0, 2.5, 0.1});

  const auto full = load_model(R"toml(names = ["u", "v"]
f = ["u*(1-v)", "v*(u-1)*exp(-t)"]
[rectangle]
alpha = [0, -1.5]
beta = ["inf", 2]
[pde]
bc = "dirichlet"
length = 2.0
cells = 31)toml");
  CHECK(full.time_dependent);
  REQUIRE(full.rectangle);
  CHECK(full.rectangle->alpha == std::vector<double>{0.0, -1.5});
  CHECK(std::isinf(full.rectangle->beta[0]));
  CHECK(full.rectangle->beta[1] == 2.0);
  REQUIRE(full.pde);
  CHECK(full.pde->bc == BoundaryCondition::dirichlet);
  CHECK(full.pde->length == 2.0);
  CHECK(full.pde->cells == 31);
}

TEST_CASE("load_model: diagnostics") {
  CHECK(load_error("names = [\"u\", \"v\"]\nf = [\"v\", \"-u\"]\nd = [1.0, -0.5]") ==
        "key `d[2]`: nonpositive diffusion coefficient at index 2");
  CHECK(load_error("names = [\"u\", \"v\"]\nf = [\"v\"]") ==
        "key `f`: dimension mismatch: f has 1 entries but names has 2");
  CHECK(load_error("names = [\"u\"]\nf = [\"u\"]\ng = 1") == "key `g`: unknown key");
  CHECK(load_error("names = [\"u\"]\nf = [\"u\"]\n[pde]\nbc = \"robin\"") ==
        "key `pde.bc`: expected \"neumann\" or \"dirichlet\", got \"robin\"");
  CHECK(load_error("names = [\"u\"]\nf = [\"u\"]\n[pde]\nsize = 3") == "key `pde.size`: unknown key");
  CHECK(load_error("names = [\"u\"]\nf = [\"w\"]") == "key `f[1]`: unknown identifier `w` at offset 0");
  CHECK(load_error("names = [\"u\"]\nf = [\"u\"]\n[rectangle]\nalpha = [1]\nbeta = [0]").find("rectangle") !=
        std::string::npos);
  CHECK(load_error("names = [\"u\"]\nf = [\"u\"]\n[rectangle]\nalpha = [0]\nbeta = [\"big\"]") ==
        "key `rectangle.beta[1]`: only the string \"inf\" is accepted");
  CHECK(load_error("names = [\"t\"]\nf = [\"1\"]").find("invalid variable name") != std::string::npos);
  CHECK(load_error("names = [\"u\", \"u\"]\nf = [\"1\", \"1\"]").find("duplicate") != std::string::npos);
  CHECK(load_error("f = [\"1\"]") == "key `names`: missing required key");
  CHECK(load_error("names = [\"u\"\nf = [\"1\"]").rfind("TOML parse error at line", 0) == 0);
}

TEST_CASE("model file round trip") {
  const auto a = load_model(R"toml(names = ["u", "v"]
f = ["u*(1-v)", "0.1 + v^2"]
d = [0.30000000000000004, 2]
[rectangle]
alpha = [0, 0]
beta = [1.5, "inf"]
[pde]
bc = "neumann"
length = 3
cells = 16)toml");
  const auto text = to_model_file(a);
  const auto b = load_model(text);
  CHECK(b.names == a.names);
  CHECK(*b.diffusion == *a.diffusion);
  CHECK(*b.rectangle == *a.rectangle);
  CHECK(*b.pde == *a.pde);
  for (std::size_t i = 0; i < a.dimension(); ++i) CHECK(b.f[i].structurally_equal(a.f[i]));
  CHECK(to_model_file(b) == text);
}

TEST_CASE("load_model_file") {
  const auto path = std::filesystem::temp_directory_path() / "orthant_field_test.toml";
  {
    std::ofstream out(path);
    out << "names = [\"u\"]\nf = [\"1-u\"]\n";
  }
  CHECK(load_model_file(path).dimension() == 1);
  std::filesystem::remove(path);
  try {
    load_model_file(path);
    FAIL("missing file loaded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
}

TEST_CASE("evaluate_field examples") {
  const auto rot = make_model({"u", "v"}, {"v", "-u"});
  CHECK(evaluate_field(rot, 0.0, std::vector<double>{0, 1}) == std::vector<double>{1, 0});
  CHECK(evaluate_field(rot, 0.0, std::vector<double>{1, 0}) == std::vector<double>{0, -1});
  const auto lv = make_model({"u", "v"}, {"u*(1-v)", "v*(u-1)"});
  CHECK(evaluate_field(lv, 0.0, std::vector<double>{2, 2}) == std::vector<double>{-2, 2});
  CHECK_THROWS_AS(evaluate_field(lv, 0.0, std::vector<double>{1}), Error);
}

TEST_CASE("estimate_lipschitz examples") {
  const auto decay = make_model({"u"}, {"-u"});
  CHECK(estimate_lipschitz(decay, make_rectangle({0}, {2}), 17, 64, 0).M == doctest::Approx(1.0).epsilon(1e-9));
  const auto rot = make_model({"u", "v"}, {"v", "-u"});
  CHECK(estimate_lipschitz(rot, Rectangle::cube(2, 0, 1), 17, 64, 0).M == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("estimate_lipschitz: Lotka-Volterra against a 200x200 brute-force oracle") {
  double oracle = 0.0;
  for (int a = 0; a < 200; ++a) {
    for (int b = 0; b < 200; ++b) oracle = std::max(oracle, lv_row_sum_max(2.0 * a / 199, 2.0 * b / 199));
  }
  CHECK(oracle == doctest::Approx(3.0).epsilon(1e-12));
  const auto lv = make_model({"u", "v"}, {"u*(1-v)", "v*(u-1)"});
  const auto est = estimate_lipschitz(lv, Rectangle::cube(2, 0, 2), 17, 512, 0);
  CHECK(est.M == doctest::Approx(oracle).epsilon(1e-8));
  CHECK(est.samples == 17 * 17 + 512);
  CHECK(est.method == "sampled-fd-jacobian-row-sum-inf-norm");
}

TEST_CASE("estimate_lipschitz: affine fields give the exact row-sum norm") {
  const std::vector<std::string> names{"x", "y", "z"};
  for (std::uint64_t trial = 0; trial < 25; ++trial) {
    double a[3][3];
    std::vector<std::string> f;
    double norm = 0.0;
    for (int i = 0; i < 3; ++i) {
      double row = 0.0;
      std::string s;
      for (int j = 0; j < 3; ++j) {
        a[i][j] = std::round(80.0 * counter_uniform(3, trial, i, j) - 40.0) / 8.0;
        row += std::fabs(a[i][j]);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s(%.17g)*%s", j ? " + " : "", a[i][j], names[j].c_str());
        s += buf;
      }
      f.push_back(s + " + 0.5");
      norm = std::max(norm, row);
    }
    const auto model = make_model(names, f);
    const auto est = estimate_lipschitz(model, Rectangle::cube(3, -3, 5), 3, 16, trial);
    CHECK(std::fabs(est.M - norm) <= 1e-8);
  }
}

TEST_CASE("estimate_lipschitz is monotone in the sample set") {
  const auto br = make_model({"u", "v"}, {"1 - 4*u + u^2*v", "3*u - u^2*v"});
  const auto box = Rectangle::cube(2, 0, 3);
  // 5 nodes per axis are a subset of 9, and random draws are indexed, so
  // smaller counts are prefixes of larger ones.
  CHECK(estimate_lipschitz(br, box, 5, 0, 1).M <= estimate_lipschitz(br, box, 9, 0, 1).M);
  double prev = 0.0;
  for (std::size_t r : {0u, 10u, 50u, 200u}) {
    const double m = estimate_lipschitz(br, box, 3, r, 4).M;
    CHECK(m >= prev);
    prev = m;
  }
  CHECK(estimate_lipschitz(br, box, 9, 100, 4).M == estimate_lipschitz(br, box, 9, 100, 4).M);
}

TEST_CASE("estimate_lipschitz: contract") {
  const auto root = make_model({"u"}, {"sqrt(u - 1)"});
  try {
    estimate_lipschitz(root, make_rectangle({0}, {2}), 5, 0, 0);
    FAIL("NaN not reported");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::numeric);
    CHECK(std::string(e.what()).find("(0)") != std::string::npos);
  }
  const auto decay = make_model({"u"}, {"-u"});
  CHECK_THROWS_AS(estimate_lipschitz(decay, Rectangle::orthant(1), 5, 0, 0), Error);
  CHECK_THROWS_AS(estimate_lipschitz(decay, make_rectangle({0}, {1}), 1, 0, 0), Error);
}

TEST_CASE("lipschitz_box touches the coordinate hyperplanes and pads by 10%") {
  const std::vector<std::vector<double>> states{{1, 2}, {3, 4}, {2, -1}};
  const auto box = lipschitz_box(states);
  CHECK(box.alpha[0] == doctest::Approx(-0.3));
  CHECK(box.beta[0] == doctest::Approx(3.3));
  CHECK(box.alpha[1] == doctest::Approx(-1.5));
  CHECK(box.beta[1] == doctest::Approx(4.5));
  const std::vector<std::vector<double>> zero{{0.0}};
  const auto z = lipschitz_box(zero);
  CHECK(z.alpha[0] == doctest::Approx(-0.1));
  CHECK(z.beta[0] == doctest::Approx(0.1));
}

TEST_CASE("existence_horizon") {
  CHECK(existence_horizon(1, 0, 1) == 0.5);
  CHECK(existence_horizon(2, 1, 0) == 2.0);
  CHECK(existence_horizon(1, 1, 1) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(existence_horizon(0, 0, 0), Error);
  CHECK_THROWS_AS(existence_horizon(1, 0, 0), Error);
  CHECK_THROWS_AS(existence_horizon(-1, 1, 1), Error);
  for (std::uint64_t k = 0; k < 200; ++k) {
    const double m = 0.1 + 5 * counter_uniform(9, k, 0, 0);
    const double f0 = 5 * counter_uniform(9, k, 0, 1);
    const double l = 0.01 + 5 * counter_uniform(9, k, 0, 2);
    const double b = existence_horizon(m, f0, l);
    CHECK(existence_horizon(m, f0 + 0.5, l) < b);
    CHECK(existence_horizon(m, f0, l + 0.5) < b);
  }
}
