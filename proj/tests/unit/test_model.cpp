#include <doctest.h>

#include <cstdio>

#include "helmrays/model.hpp"

using namespace helmrays;
using namespace helmrays::model;

namespace {
Scenario make_reference() {
  Scenario s;
  s.d = 3;
  s.epsilons = {0.4, 0.2, 0.1, 0.05, 0.025};
  s.gamma = 1.0;
  s.q1 = {2.0, 0.0, 0.0};
  s.N = 2.1;
  s.S0 = gaussian(3, 1.0, 1.0);
  s.S1 = gaussian(3, 1.0, 1.0);
  s.id = "reference";
  return s;
}
}  // namespace

TEST_CASE("validate accepts the reference scenario") {
  auto r = validate(make_reference());
  CHECK(r.ok);
  CHECK(r.h3_threshold == doctest::Approx(2.0));
}

TEST_CASE("validate rejects H3 violation") {
  auto s = make_reference();
  s.N = 1.9;
  auto r = validate(s);
  CHECK(!r.ok);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].substr(0, 2) == "H3");
}

TEST_CASE("validate rejects q1 at the origin") {
  auto s = make_reference();
  s.q1 = {0.0, 0.0, 0.0};
  auto r = validate(s);
  CHECK(!r.ok);
  CHECK(r.violations[0].find("geometry") == 0);
}

TEST_CASE("validate rejects non-decreasing epsilon grids and bad gamma") {
  auto s = make_reference();
  s.epsilons = {0.1, 0.2};
  CHECK(!validate(s).ok);
  s = make_reference();
  s.gamma = 0.0;
  auto r = validate(s);
  CHECK(!r.ok);
  bool has_h1 = false;
  for (auto& v : r.violations)
    if (v.find("H1") == 0) has_h1 = true;
  CHECK(has_h1);
}

TEST_CASE("scenario config round trip with canonical keys") {
  auto s = make_reference();
  std::string text = scenario_to_json(s);
  CHECK(text.find("\"amplitude_re\"") != std::string::npos);
  CHECK(text.find("\"amplitude_im\"") != std::string::npos);
  CHECK(text.find("\"inv_variance\"") != std::string::npos);
  CHECK(text.find("\"modulation\"") != std::string::npos);
  CHECK(text.find("\"center\"") != std::string::npos);
  CHECK(text.find("\"epsilons\"") != std::string::npos);
  auto s2 = parse_scenario_json(text);
  CHECK(s2.d == s.d);
  CHECK(s2.epsilons == s.epsilons);
  CHECK(s2.gamma == s.gamma);
  CHECK(s2.N == s.N);
  CHECK(s2.q1 == s.q1);
  REQUIRE(s2.S0.size() == 1);
  CHECK(s2.S0.atoms[0].s.real() == doctest::Approx(1.0));
  Vec3 x{0.3, -0.2, 0.5};
  CHECK(std::abs(s2.S1.eval(x) - s.S1.eval(x)) < 1e-15);
}

TEST_CASE("scenario alpha and damping") {
  auto s = make_reference();
  CHECK(s.alpha(0.1) == doctest::Approx(0.1));
  CHECK(s.damping(0.1) == doctest::Approx(0.01));
  s.gamma = 2.0;
  CHECK(s.alpha(0.1) == doctest::Approx(0.01));
}
