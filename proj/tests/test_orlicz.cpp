#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "olk/error.hpp"
#include "olk/orlicz.hpp"
#include "oracles.hpp"

using namespace olk;

namespace {

std::vector<DerivativeNode> flat_nodes() { return {{0, 0}, {1, 1}, {2, 1}, {3, 3}}; }
std::vector<DerivativeNode> jump_nodes() { return {{0, 0}, {1, 1}, {1, 2}, {2, 3}}; }

double rel(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

}  // namespace

TEST_CASE("closed-form values and derivatives") {
  const auto p2 = OrliczFunction::power(2);
  const auto p3 = OrliczFunction::power(3);
  const auto ex = OrliczFunction::exp_minus_linear();
  const auto ll = OrliczFunction::log_linear();
  for (double u : {1e-9, 1e-4, 0.3, 1.0, 2.5, 10.0}) {
    CHECK(rel(p2(u), oracle::power_phi(2, u)) < 1e-14);
    CHECK(rel(p3(-u), oracle::power_phi(3, u)) < 1e-14);
    if (u >= 0.1) CHECK(rel(ex(u), oracle::exp_phi(u)) < 1e-14);
    CHECK(ll.derivative(u) == doctest::Approx(std::log1p(u)).epsilon(1e-14));
    CHECK(ex.derivative(u) == doctest::Approx(std::expm1(u)).epsilon(1e-14));
    CHECK(p3.derivative(u) == doctest::Approx(u * u).epsilon(1e-14));
  }
  // Small-argument accuracy: the naive expression loses every digit here.
  CHECK(ex(1e-9) == doctest::Approx(5e-19).epsilon(1e-8));
  CHECK(ll(1e-9) == doctest::Approx(5e-19).epsilon(1e-8));
  CHECK(ex(1e4) == oracle::inf);
  CHECK_THROWS_AS(p2.derivative(-1.0), Error);
}

TEST_CASE("tabulated function integrates its derivative") {
  const auto f = OrliczFunction::tabulated(flat_nodes());
  CHECK(f(1.0) == doctest::Approx(0.5));
  CHECK(f(2.0) == doctest::Approx(1.5));
  CHECK(f(3.0) == doctest::Approx(3.5));
  CHECK(f(4.0) == doctest::Approx(3.5 + 3.0 + 1.0));  // slope 2 continues
  CHECK(f.derivative(1.5) == 1.0);

  const auto j = OrliczFunction::tabulated(jump_nodes());
  CHECK(j.derivative(1.0) == 2.0);  // right limit at the jump
  CHECK(j.derivative(0.999) == doctest::Approx(0.999));
}

TEST_CASE("tabulated validation") {
  using N = std::vector<DerivativeNode>;
  CHECK_THROWS_AS(OrliczFunction::tabulated(N{{0, 0}}), Error);
  CHECK_THROWS_AS(OrliczFunction::tabulated(N{{0, 1}, {1, 2}}), Error);          // p(0) ≠ 0
  CHECK_THROWS_AS(OrliczFunction::tabulated(N{{0, 0}, {1, 2}, {2, 1}}), Error);  // p decreasing
  CHECK_THROWS_AS(OrliczFunction::tabulated(N{{0, 0}, {1, 1}, {2, 1}}), Error);  // flat at the end
  CHECK_THROWS_AS(OrliczFunction::tabulated(N{{0, 0}, {0, 1}, {1, 2}}), Error);  // jump at 0
  CHECK_THROWS_AS(OrliczFunction::power(1.0), Error);
}

TEST_CASE("midpoint convexity on a grid, every family") {
  const std::vector<OrliczFunction> fs = {
      OrliczFunction::power(1.5), OrliczFunction::power(4),
      OrliczFunction::exp_minus_linear(), OrliczFunction::log_linear(),
      OrliczFunction::tabulated(flat_nodes()), OrliczFunction::tabulated(jump_nodes())};
  for (const auto& f : fs) {
    int violations = 0;
    for (int i = 0; i < 48; ++i) {
      for (int j = 0; j < 48; ++j) {
        const double a = std::ldexp(1.0, i / 4 - 6);
        const double b = -std::ldexp(1.0, j / 4 - 6) * (1 + j % 4);
        const double lhs = f(0.5 * (a + b));
        const double rhs = 0.5 * (f(a) + f(b));
        if (lhs > rhs * (1 + 1e-12)) ++violations;
      }
    }
    CHECK_MESSAGE(violations == 0, f.describe());
    CHECK(f(0.0) == 0.0);
  }
}

TEST_CASE("conjugate families") {
  const auto c3 = conjugate(OrliczFunction::power(3));
  CHECK(c3.psi.family() == OrliczFamily::Power);
  CHECK(c3.psi.exponent() == doctest::Approx(1.5));
  CHECK(conjugate(OrliczFunction::exp_minus_linear()).psi.family() == OrliczFamily::LogLinear);
  CHECK(conjugate(OrliczFunction::log_linear()).psi.family() == OrliczFamily::ExpMinusLinear);

  const auto tab = OrliczFunction::tabulated(jump_nodes());
  const auto ct = conjugate(tab);
  for (double v : {0.1, 0.7, 1.0, 1.5, 2.0, 2.7, 5.0}) {
    const double expect = oracle::legendre_grid([&](double u) { return tab(u); }, v);
    CHECK(ct.psi(v) == doctest::Approx(expect).epsilon(1e-9));
  }
  // Conjugating twice returns the original nodes.
  CHECK(conjugate(ct.psi).psi.nodes() == tab.nodes());
}

TEST_CASE("pointwise Legendre transform") {
  const auto p2 = OrliczFunction::power(2);
  for (double v : {0.0, 0.5, 3.0, 40.0}) {
    CHECK(legendre_transform(p2, v) == doctest::Approx(v * v / 2).epsilon(1e-12));
  }
  const auto ll = OrliczFunction::log_linear();
  CHECK(legendre_transform(ll, 2.0) == doctest::Approx(oracle::exp_phi(2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(legendre_transform(p2, 1e9, 1e8), Error);
}

TEST_CASE("inverse values") {
  const auto ll = OrliczFunction::log_linear();
  const auto ex = OrliczFunction::exp_minus_linear();
  for (double w : {1e-6, 0.25, 1.0, 7.0, 1e3}) {
    CHECK(inverse_value(ll, w) ==
          doctest::Approx(oracle::bisect_inverse(oracle::loglin_phi, w)).epsilon(1e-11));
    CHECK(inverse_value(ex, w) ==
          doctest::Approx(oracle::bisect_inverse(oracle::exp_phi, w)).epsilon(1e-11));
  }
  // ψ = LogLinear for φ = ExpMinusLinear: ψ⁻¹(1) solves (1+v)ln(1+v) − v = 1.
  const auto cp = conjugate(ex);
  CHECK(psi_inverse(cp, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
  CHECK(psi_inverse(conjugate(OrliczFunction::power(2)), 2.5) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(inverse_value(ll, 0.0) == 0.0);
}

TEST_CASE("Delta2 classification") {
  const auto pw = classify_delta2(OrliczFunction::power(3), Delta2Regime::AllValues);
  CHECK(pw.holds);
  CHECK_FALSE(pw.heuristic);
  CHECK(*pw.constant == doctest::Approx(8.0));

  const auto ex = OrliczFunction::exp_minus_linear();
  CHECK_FALSE(classify_delta2(ex, Delta2Regime::AllValues).holds);
  CHECK_FALSE(classify_delta2(ex, Delta2Regime::LargeValues).holds);
  CHECK(classify_nabla2(ex, Delta2Regime::AllValues).holds);

  const auto ll = classify_delta2(OrliczFunction::log_linear(), Delta2Regime::LargeValues);
  CHECK(ll.holds);
  CHECK(*ll.constant == doctest::Approx(4.0));
  CHECK_FALSE(classify_nabla2(OrliczFunction::log_linear(), Delta2Regime::LargeValues).holds);

  const auto tab = classify_delta2(OrliczFunction::tabulated(flat_nodes()),
                                   Delta2Regime::AllValues);
  CHECK(tab.heuristic);
  CHECK(tab.holds);
  CHECK(tab.max_ratio <= 8.0);
}

TEST_CASE("property: the Delta2 constant bounds the doubling ratio") {
  for (double r : {1.1, 1.5, 2.0, 3.7, 6.0}) {
    const auto f = OrliczFunction::power(r);
    const auto c = classify_delta2(f, Delta2Regime::AllValues);
    for (double u = 1e-6; u < 1e6; u *= 3.1) CHECK(f(2 * u) <= *c.constant * f(u) * (1 + 1e-12));
  }
  const auto ll = OrliczFunction::log_linear();
  for (double u = 1e-6; u < 1e6; u *= 3.1) CHECK(ll(2 * u) <= 4.0 * ll(u) * (1 + 1e-12));
}
