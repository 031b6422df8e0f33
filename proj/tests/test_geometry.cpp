#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>

#include "olk/error.hpp"
#include "olk/geometry.hpp"

using namespace olk;

namespace {

SpaceConfig space(const OrliczFunction& phi, const Weight& w) { return SpaceConfig::make(phi, w); }

bool same_stats(const ProbeStats& a, const ProbeStats& b) {
  return a.max_defect == b.max_defect && a.argmax == b.argmax && a.argmax_x == b.argmax_x &&
         a.argmax_y == b.argmax_y && a.at_or_above_one == b.at_or_above_one;
}

}  // namespace

TEST_CASE("predictions") {
  const auto p2 = OrliczFunction::power(2);
  const auto c_inf = predict(space(p2, Weight::constant(1, kInfinity)));
  CHECK(c_inf.size() == 4);
  CHECK(c_inf.at("NS_infty").verdict == Verdict::Holds);
  CHECK(c_inf.at("LUNS_infty").verdict == Verdict::Holds);

  const auto e_inf = predict(space(p2, Weight::exp_decay(1, kInfinity)));
  CHECK(e_inf.at("NS_infty").verdict == Verdict::Fails);
  CHECK(e_inf.at("NS_infty").reason == "W(inf)=1 < inf");

  const auto t04 = predict(space(p2, Weight::truncated(1, 0.4, 1)));
  CHECK(t04.at("NS_unit").verdict == Verdict::Fails);
  CHECK(t04.at("NS_unit").reason == "alpha=0.4 \xe2\x89\xa4 1/2");

  const auto t075 = predict(space(p2, Weight::truncated(1, 0.75, 1)));
  CHECK(t075.at("NS_unit").verdict == Verdict::Holds);
  CHECK(t075.at("LUNS_unit").verdict == Verdict::UndeterminedByPaper);

  const auto ll = predict(space(OrliczFunction::log_linear(), Weight::constant(1, 1)));
  CHECK(ll.at("LUNS_unit").verdict == Verdict::Fails);
  CHECK(ll.at("SM_L1w").verdict == Verdict::Holds);

  const auto tab = predict(space(OrliczFunction::tabulated({{0, 0}, {1, 1}, {2, 3}}),
                                 Weight::constant(1, 1)));
  CHECK(tab.at("LUNS_unit").heuristic);
  CHECK_FALSE(tab.at("NS_unit").heuristic);
}

TEST_CASE("witness constructions") {
  const auto ex = space(OrliczFunction::power(2), Weight::exp_decay(1, kInfinity));
  const auto w = build_witness_infty(ex);
  CHECK(w.scale == doctest::Approx(1 / std::sqrt(2.0)));
  const auto chk = verify_witness(ex, w);
  CHECK(chk.norm_x == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(chk.norm_y == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(chk.norm_half_sum == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(chk.norm_half_diff == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(chk.equimeasurable);
  CHECK(square_defect(ex, w.x, w.y).value == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(build_witness_infty(space(OrliczFunction::power(2), Weight::constant(1, kInfinity))),
                  Error);
  CHECK_THROWS_AS(build_witness_unit(space(OrliczFunction::power(2), Weight::truncated(1, 0.6, 1))),
                  Error);
  CHECK_THROWS_AS(build_witness_unit(ex), Error);

  // Power(2), α = 0.4: c = 1/(ψ⁻¹(2.5)·0.4) = 1/(√5·0.4).
  const auto tr = space(OrliczFunction::power(2), Weight::truncated(1, 0.4, 1));
  const auto u = build_witness_unit(tr);
  CHECK(u.scale == doctest::Approx(1 / (std::sqrt(5.0) * 0.4)));
  const auto uc = verify_witness(tr, u);
  CHECK(uc.norm_half_sum == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(uc.norm_half_diff == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("square defect") {
  const auto cfg = space(OrliczFunction::power(2), Weight::constant(1, 1));
  const auto x = normalize(cfg, StepFunction::indicator(1.0, 0, 0.5));
  const auto y = normalize(cfg, StepFunction::indicator(1.0, 0.5, 0.5));
  CHECK(square_defect(cfg, x, x).value == 0.0);
  CHECK(square_defect(cfg, x, scale(x, -1)).value == 0.0);
  // Disjoint equal-measure supports: x+y and x−y are equimeasurable.
  const auto d = square_defect(cfg, x, y);
  CHECK(d.half_sum == doctest::Approx(d.half_diff).epsilon(1e-12));
  CHECK(d.value < 1.0);
  const auto swapped = square_defect(cfg, y, x);
  const auto negated = square_defect(cfg, x, scale(y, -1));
  CHECK(swapped.value == doctest::Approx(d.value).epsilon(1e-12));
  CHECK(negated.half_sum == doctest::Approx(d.half_diff).epsilon(1e-12));
  CHECK(negated.half_diff == doctest::Approx(d.half_sum).epsilon(1e-12));
  CHECK_THROWS_AS(square_defect(cfg, scale(x, 2), y), Error);
}

TEST_CASE("random step functions live on the lattice") {
  for (double gamma : {1.0, kInfinity}) {
    const double span = std::isinf(gamma) ? 16.0 : 1.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
      SampleStream s(3, i);
      const auto x = random_step_function(gamma, s);
      CHECK(x.pieces().size() <= 8);
      CHECK_FALSE(x.tail());
      for (const auto& p : x.pieces()) {
        CHECK(p.end() <= span);
        const double cell = span / 1024;
        CHECK(std::fmod(p.start, cell) == 0.0);
        CHECK(std::fmod(p.length, cell) == 0.0);
        CHECK(std::fabs(p.value) <= 8.0);
        CHECK(p.value == std::round(p.value));
      }
    }
  }
}

TEST_CASE("probe is seeded and worker-independent") {
  const auto cfg = space(OrliczFunction::log_linear(), Weight::constant(1, 1));
  const auto a = probe_nonsquare(cfg, 42, 64, 1);
  const auto b = probe_nonsquare(cfg, 42, 64, 4);
  CHECK(same_stats(a, b));
  CHECK(a.max_defect < 1.0);
  CHECK(a.at_or_above_one == 0);
  const auto c = probe_nonsquare(cfg, 43, 64, 3);
  CHECK_FALSE(same_stats(a, c));

  const auto empty = probe_nonsquare(cfg, 1, 0, 2);
  CHECK(empty.samples == 0);
  CHECK_FALSE(empty.argmax);

  CHECK_THROWS_AS(
      probe_nonsquare(space(OrliczFunction::power(2), Weight::exp_decay(1, kInfinity)), 1, 4, 1),
      Error);
}

TEST_CASE("LUNS estimates") {
  const auto cfg = space(OrliczFunction::power(2), Weight::constant(1, 1));
  const auto x = normalize(cfg, StepFunction::indicator(1.0, 0, 1));
  const auto a = estimate_luns_delta(cfg, x, 7, 100, 1);
  const auto b = estimate_luns_delta(cfg, x, 7, 100, 5);
  CHECK(a.delta_hat == b.delta_hat);
  CHECK(a.xi_lower == b.xi_lower);
  CHECK(a.delta_hat > 0.0);
  CHECK_FALSE(a.exploratory);
  CHECK(a.xi_lower <= a.xi_upper);

  const auto ll = space(OrliczFunction::log_linear(), Weight::constant(1, 1));
  const auto e = estimate_luns_delta(ll, normalize(ll, StepFunction::indicator(1.0, 0, 1)), 7, 50, 2);
  CHECK(e.exploratory);
  CHECK_THROWS_AS(estimate_luns_delta(cfg, StepFunction::indicator(1.0, 0, 1), 7, 10, 1), Error);
}

TEST_CASE("k bounds under Delta2 of psi") {
  const auto cfg = space(OrliczFunction::power(3), Weight::constant(1, 1));
  const auto kb = sample_k_bounds(cfg, 9, 100, 2);
  // Power(3): every unit x has k = (2ρ)^(−1/3) with ρ fixed by ‖x‖° = 1.
  CHECK(kb.min_k_star == doctest::Approx(kb.max_k_double_star).epsilon(1e-8));
  CHECK(kb.min_k_star > 1.0);
}

TEST_CASE("parallel_for") {
  std::atomic<int> sum{0};
  parallel_for(100, 4, [&](std::uint64_t i) { sum += int(i); });
  CHECK(sum == 4950);
  try {
    parallel_for(50, 4, [](std::uint64_t i) {
      if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected rethrow");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "7");
  }
  CHECK(resolve_workers(3) == 3);
  CHECK(resolve_workers(0) >= 1);
}
