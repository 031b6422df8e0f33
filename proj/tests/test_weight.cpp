#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "olk/error.hpp"
#include "olk/weight.hpp"

using namespace olk;

namespace {

// Trapezoid quadrature of ω on [a, b] with a geometric grid near 0.
double integrate_density(const Weight& w, double a, double b) {
  const int n = 200000;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = a + (b - a) * (i + 0.5) / n;
    total += w.density(s);
  }
  return total * (b - a) / n;
}

}  // namespace

TEST_CASE("closed-form antiderivatives") {
  const auto c = Weight::constant(2.0, kInfinity);
  CHECK(c.W(3.0) == 6.0);
  CHECK(c.W(kInfinity) == kInfinity);
  CHECK(c.alpha() == kInfinity);

  const auto tr = Weight::truncated(1.0, 0.4, 1.0);
  CHECK(tr.W(0.2) == doctest::Approx(0.2));
  CHECK(tr.W(0.9) == doctest::Approx(0.4));
  CHECK(tr.alpha() == doctest::Approx(0.4));
  CHECK_FALSE(tr.positive_on_domain());
  CHECK(tr.density(0.5) == 0.0);

  const auto pd = Weight::power_decay(0.5, kInfinity);
  CHECK(pd.W(4.0) == doctest::Approx(2.0));
  CHECK(pd.density(4.0) == doctest::Approx(0.25));

  const auto ex = Weight::exp_decay(1.0, kInfinity);
  CHECK(ex.W(kInfinity) == 1.0);
  CHECK(ex.total_mass() == 1.0);
  CHECK(ex.mass(1e-12, 2e-12) == doctest::Approx(1e-12).epsilon(1e-9));
  CHECK(ex.mass(40.0, 41.0) > 0.0);  // no cancellation to zero

  const auto st = Weight::step({{0.5, 2.0}, {1.0, 1.0}, {kInfinity, 0.25}}, kInfinity);
  CHECK(st.W(0.25) == doctest::Approx(0.5));
  CHECK(st.W(2.0) == doctest::Approx(1.0 + 1.0 + 0.125));
  CHECK(st.W(kInfinity) == kInfinity);
  CHECK(W(st, 1.5) == st.W(1.5));
}

TEST_CASE("W agrees with quadrature of the density") {
  const std::vector<Weight> ws = {
      Weight::constant(1.5, 1.0), Weight::truncated(2.0, 0.75, 1.0),
      Weight::exp_decay(3.0, kInfinity),
      Weight::step({{0.3, 3.0}, {0.3, 2.0}, {kInfinity, 1.0}}, kInfinity)};
  for (const auto& w : ws) {
    for (double t : {0.1, 0.5, 0.9}) {
      CHECK_MESSAGE(w.W(t) == doctest::Approx(integrate_density(w, 0, t)).epsilon(1e-5),
                    w.describe());
    }
  }
  // Integrable singularity at 0: check increments away from it.
  const auto pd = Weight::power_decay(0.3, 1.0);
  CHECK(pd.mass(0.2, 0.9) == doctest::Approx(integrate_density(pd, 0.2, 0.9)).epsilon(1e-6));
}

TEST_CASE("weight validation") {
  CHECK_THROWS_AS(Weight::constant(0.0, 1.0), Error);
  CHECK_THROWS_AS(Weight::constant(1.0, 2.0), Error);  // γ must be 1 or ∞
  CHECK_THROWS_AS(Weight::truncated(1.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(Weight::power_decay(1.0, kInfinity), Error);
  CHECK_THROWS_AS(Weight::exp_decay(-1.0, kInfinity), Error);
  CHECK_THROWS_AS(Weight::step({{0.5, 1.0}, {0.5, 2.0}}, 1.0), Error);  // increasing
  CHECK_THROWS_AS(Weight::constant(1.0, 1.0).W(2.0), Error);
}

TEST_CASE("weighted integral over rearrangements") {
  const auto w = Weight::constant(1.0, kInfinity);
  Rearrangement r{{{2.0, 0.5}, {1.0, 0.25}}};
  CHECK(weighted_integral(w, r) == doctest::Approx(1.25));
  CHECK(weighted_integral(w, Rearrangement{{{1.0, kInfinity}}}) == kInfinity);
  const auto ex = Weight::exp_decay(1.0, kInfinity);
  CHECK(weighted_integral(ex, Rearrangement{{{3.0, kInfinity}}}) == doctest::Approx(3.0));

  const auto x = StepFunction::make(1.0, {{0.5, 0.5, -2}, {0, 0.5, 1}});
  const auto dec = Weight::truncated(1.0, 0.5, 1.0);
  // x* = 2 on [0, ½): only that level sees ω.
  CHECK(l1w_norm(dec, x) == doctest::Approx(1.0));
}
