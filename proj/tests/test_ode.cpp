#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "doctest.h"
#include "orthant/conditions.hpp"
#include "orthant/error.hpp"
#include "orthant/ode.hpp"
#include "orthant/sampling.hpp"

using namespace orthant;

namespace {

ModelSpec scalar(const std::string& f) { return make_model({"u"}, {f}); }

double final_value(const Trajectory& t, std::size_t i = 0) { return t.states.back()[i]; }

}  // namespace

TEST_CASE("closed-form solutions") {
  const auto decay = integrate(scalar("-u"), std::vector<double>{1.0}, 1.0);
  CHECK(decay.status == TrajectoryStatus::completed);
  CHECK(decay.times.front() == 0.0);
  CHECK(decay.times.back() == 1.0);
  CHECK(final_value(decay) == doctest::Approx(std::exp(-1.0)).epsilon(1e-7));

  const auto rot = make_model({"u", "v"}, {"v", "-u"});
  const auto r = integrate(rot, std::vector<double>{0.0, 1.0}, 3.0);
  CHECK(final_value(r, 0) == doctest::Approx(std::sin(3.0)).epsilon(1e-7));
  CHECK(final_value(r, 1) == doctest::Approx(std::cos(3.0)).epsilon(1e-7));

  // u' = -u + sin t, u(0) = 0.
  const auto forced = make_model({"u"}, {"-u + sin(t)"});
  const auto f = integrate(forced, std::vector<double>{0.0}, 4.0);
  const double exact = 0.5 * (std::sin(4.0) - std::cos(4.0) + std::exp(-4.0));
  CHECK(std::fabs(final_value(f) - exact) < 1e-7);
}

TEST_CASE("trajectory bookkeeping") {
  const auto t = integrate(make_model({"u", "v"}, {"u*(1-v)", "v*(u-1)"}), std::vector<double>{1, 2}, 10.0);
  REQUIRE(t.times.size() == t.states.size());
  CHECK(t.times.size() > 10);
  for (std::size_t k = 1; k < t.times.size(); ++k) CHECK(t.times[k] > t.times[k - 1]);
  for (std::size_t k = 1; k < t.times.size(); ++k) CHECK(t.times[k] - t.times[k - 1] <= 0.2 + 1e-12);
  CHECK(t.error_estimate >= 0.0);
  CHECK(t.status_time == 10.0);
  CHECK(t.events.empty());
}

TEST_CASE("tightening tolerances reduces the error") {
  // u' = -u + sin(w t), u(0) = 0, with w large enough that the step size is
  // set by the tolerance rather than the step cap.
  const double w = 10.0;
  const auto forced = make_model({"u"}, {"-u + sin(10*t)"});
  const double exact = (std::sin(4 * w) - w * std::cos(4 * w) + w * std::exp(-4.0)) / (1 + w * w);
  std::vector<double> errs;
  for (double rtol : {1e-4, 1e-6, 1e-8, 1e-10}) {
    const auto t = integrate(forced, std::vector<double>{0.0}, 4.0, {rtol, rtol * 1e-2, 0.0});
    errs.push_back(std::fabs(final_value(t) - exact));
    CHECK(errs.back() < 10 * rtol);
  }
  CHECK(errs.back() < 1e-3 * errs.front());
}

TEST_CASE("time offset shifts the clock seen by the field") {
  const auto ramp = scalar("t");
  const auto t = integrate(ramp, std::vector<double>{0.0}, 1.0, {1e-10, 1e-12, 1.0});
  CHECK(t.time_offset == 1.0);
  CHECK(t.times.back() == 1.0);
  CHECK(final_value(t) == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("blow-up is detected near the singularity") {
  const auto t = integrate(scalar("u^2"), std::vector<double>{1.0}, 2.0);
  CHECK(t.status == TrajectoryStatus::blow_up);
  CHECK(std::fabs(t.status_time - 1.0) < 0.05);
  CHECK(t.times.back() < 1.0);
}

TEST_CASE("step failure on non-finite field values") {
  const auto start = integrate(scalar("log(u - 2)"), std::vector<double>{1.0}, 1.0);
  CHECK(start.status == TrajectoryStatus::step_failure);
  CHECK(start.times.size() == 1);

  // u = (1 - t/2)^2 reaches zero at t = 2, after which sqrt(u) is NaN.
  const auto later = integrate(scalar("-sqrt(u)"), std::vector<double>{1.0}, 5.0);
  CHECK(later.status == TrajectoryStatus::step_failure);
  CHECK(std::fabs(later.status_time - 2.0) < 0.05);
}

TEST_CASE("argument validation") {
  const auto m = scalar("-u");
  CHECK_THROWS_AS(integrate(m, std::vector<double>{1.0, 2.0}, 1.0), Error);
  CHECK_THROWS_AS(integrate(m, std::vector<double>{1.0}, 0.0), Error);
  CHECK_THROWS_AS(integrate(m, std::vector<double>{1.0}, 1.0, {0.0, 1e-10, 0.0}), Error);
  CHECK_THROWS_AS(integrate(m, std::vector<double>{NAN}, 1.0), Error);
}

TEST_CASE("events") {
  const auto drain = integrate(scalar("-1"), std::vector<double>{0.5}, 2.0);
  const auto hit = first_negative_event(drain);
  REQUIRE(hit);
  CHECK(hit->component == 0);
  CHECK(std::fabs(hit->time - 0.5) < 1e-6);

  // v = 0.01 cos t - 1.01 sin t first vanishes at atan(0.01 / 1.01).
  const auto rot = make_model({"u", "v"}, {"v", "-u"});
  const auto r = first_negative_event(rot, std::vector<double>{1.01, 0.01}, 5.0);
  REQUIRE(r);
  CHECK(r->component == 1);
  CHECK(std::fabs(r->time - std::atan(0.01 / 1.01)) < 1e-6);
  const auto all = integrate(rot, std::vector<double>{1.01, 0.01}, 5.0);
  for (std::size_t k = 1; k < all.events.size(); ++k) CHECK(all.events[k - 1].time <= all.events[k].time);

  // Touching zero without going below is a first_zero event only.
  const auto touch = integrate(scalar("-u"), std::vector<double>{1.0}, 1.0);
  CHECK_FALSE(first_negative_event(touch));

  const auto sir = make_model({"s", "i", "r"}, {"-0.3*s*i", "0.3*s*i-0.1*i", "0.1*i"});
  const auto s = integrate(sir, std::vector<double>{0.99, 0.01, 0.0}, 100.0);
  CHECK(s.status == TrajectoryStatus::completed);
  CHECK_FALSE(first_negative_event(s));
  double total = 0.0;
  for (double x : s.states.back()) total += x;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("property: quasi-positive linear systems stay nonnegative") {
  const std::vector<std::string> names{"a", "b", "c"};
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    std::vector<std::string> f;
    for (int i = 0; i < 3; ++i) {
      std::string s;
      for (int j = 0; j < 3; ++j) {
        const double mag = 2.0 * counter_uniform(41, trial, i, j);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s(%.17g)*%s", j ? " + " : "", i == j ? -3 * mag : mag, names[j].c_str());
        s += buf;
      }
      f.push_back(s);
    }
    std::vector<double> u0(3);
    for (std::size_t j = 0; j < 3; ++j) {
      u0[j] = counter_uniform(42, trial, 0, j) < 0.3 ? 0.0 : 2 * counter_uniform(42, trial, 1, j);
    }
    const auto t = integrate(make_model(names, f), u0, 5.0);
    INFO("trial " << trial);
    CHECK_FALSE(first_negative_event(t));
    for (const auto& s : t.states) {
      for (double x : s) CHECK(x >= -1e-10);
    }
  }
}

TEST_CASE("Gronwall lower bound") {
  const auto decay = scalar("-u");
  const auto t = integrate(decay, std::vector<double>{1.0}, 5.0, {1e-10, 1e-12, 0.0});
  const auto tight = gronwall_check(decay, t, 0, 1.0);
  CHECK(tight.holds);
  CHECK(std::fabs(tight.min_residual) <= tight.tolerance);
  CHECK(tight.tolerance == doctest::Approx(2e-8));

  const auto loose = gronwall_check(decay, t, 0, 2.0);
  CHECK(loose.holds);
  CHECK(loose.min_residual >= 0.0);

  const auto wrong = gronwall_check(decay, t, 0, 0.5);
  CHECK_FALSE(wrong.holds);
  CHECK(wrong.min_residual < 0.0);

  const auto lv = make_model({"u", "v"}, {"u*(1-v)", "v*(u-1)"});
  const auto lt = integrate(lv, std::vector<double>{1.0, 2.0}, 5.0);
  const double m = estimate_lipschitz(lv, lipschitz_box(lt.states), 9, 256, 0).M;
  CHECK(gronwall_check(lv, lt, 0, m).holds);
  CHECK(gronwall_check(lv, lt, 1, m).holds);
  CHECK_THROWS_AS(gronwall_check(lv, lt, 2, m), Error);
}

TEST_CASE("counterexample construction") {
  const auto drain = scalar("-1");
  const auto cert = check_quasipositivity(drain);
  const auto cex = find_counterexample(drain, cert, 0.1, 1.0);
  CHECK(cex.u0 == std::vector<double>{0.1});
  CHECK(cex.a == 0.1);
  CHECK(cex.attempts == 1);
  CHECK(cex.start_time == 0.0);
  CHECK(cex.crossing.component == 0);
  CHECK(std::fabs(cex.crossing.time - 0.1) < 1e-6);

  const auto rot = make_model({"u", "v"}, {"v", "-u"});
  const auto rc = find_counterexample(rot, check_quasipositivity(rot), 0.01, 10.0);
  CHECK(rc.u0 == std::vector<double>{10.01, 0.01});
  CHECK(rc.crossing.component == 1);
  CHECK(std::fabs(rc.crossing.time - std::atan(0.01 / 10.01)) < 1e-6);
}

TEST_CASE("counterexample starts at the witness time") {
  const auto g = scalar("(1-t)*exp(-t)");
  const auto cert = check_nonautonomous(g, {0.0, 2.0});
  const auto cex = find_counterexample(g, cert, 1e-3, 10.0);
  CHECK(cex.start_time == 2.0);
  CHECK(cex.trajectory.time_offset == 2.0);
  CHECK(cex.crossing.time > 0.0);

  CounterexampleOptions from_zero;
  from_zero.start_time = 0.0;
  try {
    find_counterexample(g, cert, 1e-3, 10.0, from_zero);
    FAIL("counterexample found from t = 0");
  } catch (const CounterexampleNotFound& e) {
    CHECK(e.kind() == ErrorKind::not_found);
    CHECK(e.attempts().size() == 7);
  }
}

TEST_CASE("counterexample preconditions") {
  const auto sir = make_model({"s", "i", "r"}, {"-0.3*s*i", "0.3*s*i-0.1*i", "0.1*i"});
  try {
    find_counterexample(sir, check_quasipositivity(sir), 0.01, 10.0);
    FAIL("no error for a satisfied certificate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precondition);
  }
  const auto source = scalar("1");
  const auto high = check_rectangle(source, make_rectangle({0}, {1}));
  CHECK_THROWS_AS(find_counterexample(source, high, 0.01, 1.0), Error);
  const auto drain = scalar("-1");
  CHECK_THROWS_AS(find_counterexample(drain, check_quasipositivity(drain), 0.0, 1.0), Error);
}
