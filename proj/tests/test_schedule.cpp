#include <doctest.h>

#include "scalecascade/errors.hpp"
#include "scalecascade/schedule.hpp"

using namespace scalecascade;

namespace {
Ratio q(const char* s) { return Ratio::parse(s); }
}  // namespace

TEST_CASE("power-tower schedule") {
  const auto s = make_schedule(q("1/10"), 3);
  CHECK(s.level_epsilon(0) == Ratio(0));
  CHECK(s.level_epsilon(1) == q("1/10"));
  CHECK(s.level_epsilon(2) == q("1/100"));
  CHECK(s.level_epsilon(3) == q("1/10000"));
  CHECK(s.alpha(0) == Ratio(1));
  CHECK(s.alpha(2) == q("101/100"));
  CHECK(s.invariant_violations().empty());
}

TEST_CASE("unscaled schedule") {
  const auto s = make_schedule(Ratio(0), 7);
  for (int n = 0; n <= 7; ++n) {
    CHECK(s.level_epsilon(n) == Ratio(0));
    CHECK(s.alpha(n) == Ratio(1));
  }
}

TEST_CASE("generation offset") {
  const auto s = make_schedule(q("1/10"), 4, 2);
  CHECK(s.level_epsilon(1) == Ratio(0));
  CHECK(s.level_epsilon(2) == q("1/10"));
  CHECK(s.level_epsilon(3) == q("1/100"));
  CHECK(s.level_epsilon(4) == q("1/10000"));
}

TEST_CASE("literal exponent convention") {
  const auto s = make_schedule(q("1/10"), 3, 1, ScheduleRule::literal_power);
  CHECK(s.level_epsilon(1) == q("1/100"));
  CHECK(s.level_epsilon(2) == q("1/10000"));
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(make_schedule(q("3/2"), 3), DomainError);
  CHECK_THROWS_AS(make_schedule(Ratio(1), 3), DomainError);
  CHECK_THROWS_AS(make_schedule(q("-1/10"), 3), DomainError);
  CHECK_THROWS_AS(make_schedule(q("1/10"), 2, 3), DomainError);
  CHECK_THROWS_AS(make_schedule(q("1/10"), 2, 0), DomainError);
  CHECK_THROWS_AS(make_schedule(q("1/10"), 3, 1, ScheduleRule::explicit_list, {Ratio(0)}),
                  DomainError);
}

TEST_CASE("explicit list keeps corrupt values for the invariant report") {
  const auto s = make_schedule(Ratio(0), 3, 1, ScheduleRule::explicit_list,
                               {q("1/2"), q("1/10"), q("3/2")});
  CHECK(s.level_epsilon(0) == q("1/2"));
  CHECK(s.level_epsilon(3) == Ratio(0));
  const auto v = s.invariant_violations();
  REQUIRE(v.size() == 2);
  CHECK(v[0].find("eps_0") != std::string::npos);
  CHECK(v[1].find("eps_2") != std::string::npos);
}
