#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "olk/error.hpp"
#include "olk/stepfn.hpp"
#include "oracles.hpp"

using namespace olk;

namespace {

// Random lattice function: up to 8 pieces on multiples of 1/64 in [0, 1).
std::vector<oracle::Seg> random_segs(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 8);
  std::uniform_int_distribution<int> cell(0, 63);
  std::uniform_int_distribution<int> val(-4, 4);
  std::vector<int> cuts;
  const int n = count(rng);
  for (int i = 0; i < 2 * n; ++i) cuts.push_back(cell(rng));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<oracle::Seg> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); i += 2) {
    out.push_back({cuts[i] / 64.0, (cuts[i + 1] - cuts[i]) / 64.0, double(val(rng))});
  }
  return out;
}

StepFunction to_fn(const std::vector<oracle::Seg>& segs, double domain = 1.0) {
  std::vector<Piece> pieces;
  for (const auto& s : segs) pieces.push_back({s.start, s.length, s.value});
  return StepFunction::make(domain, pieces);
}

}  // namespace

TEST_CASE("canonical form") {
  const auto x = StepFunction::make(1.0, {{0.5, 0.25, 2}, {0, 0.25, 1}, {0.25, 0.25, 1},
                                          {0.75, 0.25, 0}});
  REQUIRE(x.pieces().size() == 2);
  CHECK(x.pieces()[0] == Piece{0, 0.5, 1});
  CHECK(x.pieces()[1] == Piece{0.5, 0.25, 2});
  CHECK(x(0.6) == 2);
  CHECK(x(0.8) == 0);
  CHECK(x.sup_abs() == 2);

  CHECK_THROWS_AS(StepFunction::make(1.0, {{0, 0.5, 1}, {0.25, 0.5, 1}}), Error);  // overlap
  CHECK_THROWS_AS(StepFunction::make(1.0, {{0.5, 0.75, 1}}), Error);               // past γ
  CHECK_THROWS_AS(StepFunction::make(1.0, {{0, kInfinity, 1}}), Error);
  CHECK_THROWS_AS(StepFunction::make(1.0, {{0, 0.5, NAN}}), Error);

  // A constant tail absorbs the equal piece before it; a zero tail vanishes.
  const auto t = StepFunction::make(kInfinity, {{0, 1, 3}, {1, kInfinity, 3}});
  CHECK(t.pieces().empty());
  REQUIRE(t.tail());
  CHECK(t.tail()->start == 0);
  CHECK(StepFunction::make(kInfinity, {}, Tail{2, 0, 0}).is_zero());
}

TEST_CASE("alternating tail") {
  const auto y = StepFunction::make(kInfinity, {}, Tail{0, 1, -1});
  CHECK(y(0.5) == 1);
  CHECK(y(1.5) == -1);
  CHECK(y(10.2) == 1);
  const auto r = rearrange(y);
  REQUIRE(r.levels.size() == 1);
  CHECK(r.levels[0] == Level{1, kInfinity});
  CHECK(distribution(y, 0.5) == kInfinity);
  CHECK(distribution(y, 1.0) == 0);
}

TEST_CASE("property: rearrangement matches the sorting oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto segs = random_segs(rng);
    const auto x = to_fn(segs);
    const auto r = rearrange(x);
    const auto expect = oracle::levels(segs);
    REQUIRE(r.levels.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
      CHECK(r.levels[i].value == expect[i].first);
      CHECK(r.levels[i].measure == expect[i].second);
    }
    for (double theta : {0.0, 0.5, 1.0, 2.5, 4.0}) {
      CHECK(distribution(x, theta) == oracle::distribution(segs, theta));
      CHECK(r.distribution(theta) == oracle::distribution(segs, theta));
    }
    // x* is non-increasing and equimeasurable with |x| under scaling by −1.
    CHECK(rearrange(scale(x, -1.0)) == r);
  }
}

TEST_CASE("property: combine is pointwise") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = to_fn(random_segs(rng));
    const auto y = to_fn(random_segs(rng));
    const auto s = half_sum(x, y);
    const auto d = half_difference(x, y);
    for (int k = 0; k < 64; ++k) {
      const double t = (k + 0.5) / 64.0;
      CHECK(s(t) == 0.5 * (x(t) + y(t)));
      CHECK(d(t) == 0.5 * (x(t) - y(t)));
    }
    CHECK(combine(x, x, CombineOp::Sub).is_zero());
  }
  CHECK_THROWS_AS(combine(StepFunction::zero(1.0), StepFunction::zero(kInfinity), CombineOp::Add),
                  Error);
}

TEST_CASE("combine with tails") {
  const auto x = StepFunction::make(kInfinity, {}, Tail{0, 1, 1});
  const auto y = StepFunction::make(kInfinity, {}, Tail{0, 1, -1});
  const auto s = half_sum(x, y);
  const auto d = half_difference(x, y);
  for (double t : {0.2, 1.2, 2.7, 3.1, 100.5}) {
    CHECK(s(t) == 0.5 * (x(t) + y(t)));
    CHECK(d(t) == 0.5 * (x(t) - y(t)));
  }
  CHECK(rearrange(s) == rearrange(d));
  CHECK(rearrange(s).levels[0].measure == kInfinity);

  const auto z = StepFunction::make(kInfinity, {{0, 3.5, 2}}, Tail{5, 0, 1});
  const auto w = combine(z, x, CombineOp::Add);
  for (double t : {0.5, 3.7, 4.5, 5.5, 6.5, 41.5}) CHECK(w(t) == z(t) + x(t));
}

TEST_CASE("align gives a measure-preserving sigma") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = to_fn(random_segs(rng));
    const auto a = align(x);
    const auto r = rearrange(x);
    CHECK(a.sigma.measure() == r.total_measure());
    for (int k = 0; k < 128; ++k) {
      const double t = (k + 0.5) / 128.0 * r.total_measure();
      if (r.total_measure() == 0) break;
      CHECK(a.layout(t) == r(t));
      CHECK(std::fabs(x(a.sigma.forward(t))) == r(t));
      CHECK(a.sigma.inverse(a.sigma.forward(t)) == doctest::Approx(t));
    }
  }
  CHECK(align(StepFunction::indicator(1.0, 0, 0.5)).sigma.is_identity());
  CHECK_THROWS_AS(align(StepFunction::make(kInfinity, {}, Tail{0, 1, 1})), Error);
}

TEST_CASE("steps text round trip") {
  const auto x = parse_steps("# comment\n0 0.5 1\n\n0.5 0.25 -2  # trailing\n", 1.0);
  CHECK(x == StepFunction::make(1.0, {{0, 0.5, 1}, {0.5, 0.25, -2}}));
  CHECK(parse_steps(format_steps(x), 1.0) == x);

  const auto t = parse_steps("0 1 2\n1 inf 1 -1\n", kInfinity);
  REQUIRE(t.tail());
  CHECK(t.tail()->odd_value == -1);
  CHECK(parse_steps(format_steps(t), kInfinity) == t);

  try {
    parse_steps("0 0.5 1\n0.5 abc 1\n", 1.0);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.key() == "line 2");
  }
  CHECK_THROWS_AS(parse_steps("0 inf 1\n", 1.0), ParseError);
  CHECK_THROWS_AS(parse_steps("0 1\n", 1.0), ParseError);
}
