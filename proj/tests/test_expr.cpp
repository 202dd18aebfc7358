#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "orthant/error.hpp"
#include "orthant/expr.hpp"
#include "orthant/sampling.hpp"

using namespace orthant;

namespace {

const std::vector<std::string> kUV{"u", "v"};

double eval(const std::string& src, std::vector<double> state, double t = 0.0,
            const std::vector<std::string>& vars = kUV) {
  return parse_expression(src, vars).eval(state, t);
}

ParseError parse_failure(const std::string& src, const std::vector<std::string>& vars = kUV) {
  try {
    parse_expression(src, vars);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for `" << src << "`");
  return ParseError(0, "");
}

// Random expression over u, v, t built from a counter-based stream so every
// case is reproducible from its index.
class ExprGen {
 public:
  explicit ExprGen(std::uint64_t seed) : seed_(seed) {}

  std::string make(int depth) {
    const double r = next();
    if (depth <= 0 || r < 0.25) return leaf();
    if (r < 0.35) return "-" + make(depth - 1);
    if (r < 0.5) {
      static const char* unary[] = {"sin", "cos", "exp", "abs", "sqrt", "log"};
      return std::string(unary[pick(6)]) + "(" + make(depth - 1) + ")";
    }
    if (r < 0.58) return std::string(next() < 0.5 ? "min" : "max") + "(" + make(depth - 1) + ", " + make(depth - 1) + ")";
    if (r < 0.62) return "(" + make(depth - 1) + ")^" + std::to_string(pick(3) + 1);
    static const char* ops[] = {" + ", " - ", " * ", " / "};
    return "(" + make(depth - 1) + ops[pick(4)] + make(depth - 1) + ")";
  }

  double next() { return counter_uniform(seed_, 0, counter_++, 0); }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(next() * static_cast<double>(n)) % n; }

  std::string leaf() {
    switch (pick(4)) {
      case 0: return "u";
      case 1: return "v";
      case 2: return "t";
      default: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", 10.0 * next() - 5.0);
        return buf;
      }
    }
  }

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

TEST_CASE("grammar examples") {
  CHECK(eval("u*(1 - v)", {2, 3}) == -4.0);
  CHECK(eval("-u", {3, 0}) == -3.0);
  CHECK(eval("v", {0, 5}) == 5.0);
  CHECK(eval("exp(-t)*u", {2, 0}, 0.0) == 2.0);

  const auto e = parse_expression("u*(1 - v)", kUV);
  const auto nodes = e.nodes();
  REQUIRE(!nodes.empty());
  const auto& root = nodes.back();
  CHECK(root.kind == NodeKind::binary);
  CHECK(root.op == BinaryOp::mul);
  CHECK(nodes[root.lhs].kind == NodeKind::variable);
  CHECK(nodes[root.rhs].op == BinaryOp::sub);
  CHECK(e.to_string() == "(u * (1 - v))");
}

TEST_CASE("precedence and associativity") {
  CHECK(eval("2^3^2", {0, 0}) == 512.0);
  CHECK(eval("-2^2", {0, 0}) == -4.0);
  CHECK(eval("2^-1", {0, 0}) == 0.5);
  CHECK(eval("8/4/2", {0, 0}) == 1.0);
  CHECK(eval("1-2-3", {0, 0}) == -4.0);
  CHECK(eval("0^0", {0, 0}) == 1.0);
  CHECK(eval("--u", {3, 0}) == 3.0);
  CHECK(eval("1.5e2 + .5", {0, 0}) == 150.5);
}

TEST_CASE("precedence property: a+b*c") {
  const std::vector<std::string> vars{"a", "b", "c"};
  const auto e = parse_expression("a+b*c", vars);
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const double a = 20 * counter_uniform(1, k, 0, 0) - 10;
    const double b = 20 * counter_uniform(1, k, 0, 1) - 10;
    const double c = 20 * counter_uniform(1, k, 0, 2) - 10;
    const std::vector<double> s{a, b, c};
    REQUIRE(e.eval(s) == a + (b * c));
  }
}

TEST_CASE("functions") {
  CHECK(eval("sin(0) + cos(0) + exp(0) + log(1) + sqrt(4) + abs(-2)", {0, 0}) == 6.0);
  CHECK(eval("min(u, v)", {1, 2}) == 1.0);
  CHECK(eval("max(u, v)", {1, 2}) == 2.0);
  CHECK(std::isnan(eval("log(u)", {-1, 0})));
  CHECK(std::isinf(eval("1/u", {0, 0})));
}

TEST_CASE("time symbol") {
  const auto e = parse_expression("(1-t)*exp(-t)", std::vector<std::string>{"u"});
  CHECK(e.references_time());
  CHECK(e.eval(std::vector<double>{0.0}, 2.0) == doctest::Approx(-std::exp(-2.0)));
  CHECK_FALSE(parse_expression("u", kUV).references_time());
}

TEST_CASE("errors carry offsets and names") {
  auto e = parse_failure("w + 1");
  CHECK(e.offset() == 0);
  CHECK(e.detail() == "unknown identifier `w`");
  CHECK(std::string(e.what()) == "unknown identifier `w` at offset 0");

  e = parse_failure("u + foo(v)");
  CHECK(e.offset() == 4);
  CHECK(e.detail() == "unknown function `foo`");

  e = parse_failure("min(u)");
  CHECK(e.detail() == "function `min` expects 2 argument(s), got 1");

  e = parse_failure("sin(u, v)");
  CHECK(e.detail() == "function `sin` expects 1 argument(s), got 2");

  CHECK(parse_failure("2u").offset() == 1);
  CHECK(parse_failure("u +").offset() == 3);
  CHECK(parse_failure("(u").offset() == 2);
  CHECK(parse_failure("u $ v").offset() == 2);
  CHECK(parse_failure("").offset() == 0);
  CHECK(parse_failure("1e999").offset() == 0);
}

TEST_CASE("variable names") {
  CHECK(is_valid_variable_name("u_1"));
  CHECK(is_valid_variable_name("_x"));
  CHECK_FALSE(is_valid_variable_name("t"));
  CHECK_FALSE(is_valid_variable_name("sin"));
  CHECK_FALSE(is_valid_variable_name("1u"));
  CHECK_FALSE(is_valid_variable_name(""));
  CHECK_THROWS_AS(parse_expression("u", std::vector<std::string>{"u", "u"}), Error);
  CHECK_THROWS_AS(parse_expression("u", std::vector<std::string>{}), Error);
  CHECK_THROWS_AS(parse_expression("t", std::vector<std::string>{"t"}), Error);
}

TEST_CASE("round trip: print then parse is structurally equal and evaluates identically") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    ExprGen gen(seed);
    const std::string src = gen.make(4);
    const auto a = parse_expression(src, kUV);
    const auto b = parse_expression(a.to_string(), kUV);
    INFO("source: " << src);
    REQUIRE(a.structurally_equal(b));
    REQUIRE(b.to_string() == a.to_string());
    for (std::uint64_t k = 0; k < 5; ++k) {
      const std::vector<double> s{20 * gen.next() - 10, 20 * gen.next() - 10};
      const double t = 4 * gen.next();
      REQUIRE(same_double(a.eval(s, t), b.eval(s, t)));
    }
  }
}

TEST_CASE("round trip on 1000 random states") {
  const auto a = parse_expression("u^2*v - 3*sin(u)/(1 + abs(v)) + min(u, -v)^3", kUV);
  const auto b = parse_expression(a.to_string(), kUV);
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const std::vector<double> s{20 * counter_uniform(5, k, 0, 0) - 10, 20 * counter_uniform(5, k, 0, 1) - 10};
    REQUIRE(same_double(a.eval(s), b.eval(s)));
  }
}

TEST_CASE("constants print with full precision") {
  const auto a = parse_expression("0.1 + 1/3", kUV);
  const auto b = parse_expression(parse_expression("0.30000000000000004", kUV).to_string(), kUV);
  CHECK(b.eval(std::vector<double>{0, 0}) == 0.30000000000000004);
  CHECK(parse_expression(a.to_string(), kUV).eval(std::vector<double>{0, 0}) == a.eval(std::vector<double>{0, 0}));
}
