#include <doctest.h>

#include "generators.hpp"
#include "scalecascade/errors.hpp"
#include "scalecascade/jet.hpp"

using namespace scalecascade;

namespace {

Jet ints(std::size_t order, std::initializer_list<long> c) {
  std::vector<Ratio> v;
  for (long x : c) v.emplace_back(x);
  return Jet(order, std::move(v));
}

Jet unit(std::size_t order) { return Jet::constant(order, Ratio(1)); }

}  // namespace

TEST_CASE("jet_recip examples") {
  CHECK(jet_recip(ints(3, {1, 1})) == ints(3, {1, -1, 1, -1}));
  CHECK(jet_recip(unit(0)) == unit(0));
  CHECK(jet_recip(unit(9)) == unit(9));
  CHECK_THROWS_AS(jet_recip(ints(4, {0, 1})), DomainError);
}

TEST_CASE("(1 - x) / (1 - x^4) against a geometric-series oracle") {
  // 1/(1 - x^4) = sum_j x^(4j); multiply by (1 - x) by hand.
  const std::size_t k = 5;
  std::vector<Ratio> geometric(k + 1);
  for (std::size_t i = 0; i <= k; i += 4) geometric[i] = Ratio(1);
  std::vector<Ratio> oracle(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    oracle[i] = geometric[i] - (i > 0 ? geometric[i - 1] : Ratio(0));
  }
  const Jet got = ints(k, {1, -1}) * jet_recip(ints(k, {1, 0, 0, 0, -1}));
  CHECK(got == Jet(k, oracle));
  CHECK(got == ints(k, {1, -1, 0, 0, 1, -1}));
}

TEST_CASE("jet_derive and jet_log examples") {
  const Jet d = jet_derive(ints(2, {1, -1, 1}));
  CHECK(d.order() == 1);
  CHECK(d == ints(1, {-1, 2}));
  CHECK(jet_derive(unit(0)) == Jet(0));

  const Jet l = jet_log(ints(3, {1, 1}));
  CHECK(l[0] == Ratio(0));
  CHECK(l[1] == Ratio(1));
  CHECK(l[2] == Ratio::parse("-1/2"));
  CHECK(l[3] == Ratio::parse("1/3"));

  const Jet a = ints(6, {1, -1});
  CHECK(jet_log(a * jet_recip(a)).is_zero());
  CHECK_THROWS_AS(jet_log(ints(3, {2, 1})), DomainError);
}

TEST_CASE("jet truncation rules") {
  const Jet a = ints(5, {1, 2, 3, 4, 5, 6});
  const Jet b = ints(3, {1, 1});
  CHECK((a * b).order() == 3);
  CHECK((a + b).order() == 3);
  CHECK(a.truncated(2) == ints(2, {1, 2, 3}));
  CHECK_THROWS_AS(b.truncated(4), DomainError);
  CHECK(a.reflected() == ints(5, {1, -2, 3, -4, 5, -6}));
  CHECK(a.leading_order() == 0u);
  CHECK(ints(4, {0, 0, 7}).leading_order() == 2u);
  CHECK_FALSE(Jet(4).leading_order().has_value());
}

TEST_CASE("jet algebraic properties on random operands") {
  testing::Gen gen(31);
  for (int i = 0; i < 40; ++i) {
    const std::size_t k = gen.size(0, 12);
    const Jet a = gen.jet(k), b = gen.jet(k), c = gen.jet(k);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);

    if (!a[0].is_zero()) {
      const Jet one = a * jet_recip(a);
      CHECK(one == unit(k));
    }

    const Jet u = gen.unit_jet(k);
    if (k >= 1) {
      CHECK(jet_derive(jet_log(u)) == jet_derive(u) * jet_recip(u));
    }
  }
}
