#include "olk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

#include "olk/error.hpp"

namespace olk {

namespace {

std::string fmt(const char* pattern, double value) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

}  // namespace

const char* verdict_name(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::UndeterminedByPaper: return "UndeterminedByPaper";
  }
  return "unknown";
}

Predictions predict(const SpaceConfig& cfg) {
  Predictions out;
  const bool infinite = std::isinf(cfg.gamma);
  const double a = cfg.omega.alpha();

  // L_{1,ω} monotonicity: ω > 0 on [0,γ) and W(∞) = ∞ when γ = ∞.
  {
    PropertyVerdict v;
    const bool positive = cfg.omega.positive_on_domain();
    const bool tail_ok = !infinite || std::isinf(cfg.omega.total_mass());
    if (!positive) {
      v.verdict = Verdict::Fails;
      v.reason = fmt("omega vanishes past alpha=%.12g", a);
    } else if (!tail_ok) {
      v.verdict = Verdict::Fails;
      v.reason = fmt("W(inf)=%.12g < inf", cfg.omega.total_mass());
    } else {
      v.verdict = Verdict::Holds;
      v.reason = infinite ? "omega > 0 on [0,inf) and W(inf)=inf" : "omega > 0 on [0,1)";
    }
    out["SM_L1w"] = v;
    out["LLUM_L1w"] = v;
  }

  if (infinite) {
    const double w_inf = cfg.omega.total_mass();
    PropertyVerdict ns;
    if (std::isinf(w_inf)) {
      ns.verdict = Verdict::Holds;
      ns.reason = "W(inf)=inf";
    } else {
      ns.verdict = Verdict::Fails;
      ns.reason = fmt("W(inf)=%.12g < inf", w_inf);
    }
    out["NS_infty"] = ns;

    const Classification psi_class =
        classify_delta2(cfg.phi.psi, Delta2Regime::AllValues, cfg.delta2);
    PropertyVerdict luns;
    luns.heuristic = psi_class.heuristic;
    if (!psi_class.holds) {
      luns.verdict = Verdict::Fails;
      luns.reason = "psi not in Delta2(R)";
    } else if (!std::isinf(w_inf)) {
      luns.verdict = Verdict::Fails;
      luns.reason = fmt("W(inf)=%.12g < inf", w_inf);
    } else {
      luns.verdict = Verdict::Holds;
      luns.reason = "psi in Delta2(R) and W(inf)=inf";
    }
    out["LUNS_infty"] = luns;
  } else {
    PropertyVerdict ns;
    if (a > 0.5) {
      ns.verdict = Verdict::Holds;
      ns.reason = fmt("alpha=%.12g in (1/2,1]", a);
    } else {
      ns.verdict = Verdict::Fails;
      ns.reason = fmt("alpha=%.12g \xe2\x89\xa4 1/2", a);
    }
    out["NS_unit"] = ns;

    PropertyVerdict luns;
    if (a <= 0.5) {
      luns.verdict = Verdict::Fails;
      luns.reason = fmt("not non-square (alpha=%.12g \xe2\x89\xa4 1/2)", a);
    } else if (a >= 1.0) {
      const Classification psi_class =
          classify_delta2(cfg.phi.psi, Delta2Regime::LargeValues, cfg.delta2);
      luns.heuristic = psi_class.heuristic;
      luns.verdict = psi_class.holds ? Verdict::Holds : Verdict::Fails;
      luns.reason = psi_class.holds ? "alpha=1 and psi in Delta2(inf)"
                                    : "alpha=1 and psi not in Delta2(inf)";
    } else {
      luns.verdict = Verdict::UndeterminedByPaper;
      luns.reason = fmt("alpha=%.12g in (1/2,1): no characterization", a);
    }
    out["LUNS_unit"] = luns;
  }
  return out;
}

WitnessPair build_witness_infty(const SpaceConfig& cfg) {
  if (!std::isinf(cfg.gamma)) {
    throw Error(ErrorKind::Precondition, "infinite witness needs gamma = inf");
  }
  const double w_inf = cfg.omega.total_mass();
  if (std::isinf(w_inf)) {
    throw Error(ErrorKind::Precondition, "infinite witness needs W(inf) < inf");
  }
  const double c = 1.0 / (psi_inverse(cfg.phi, 1.0 / w_inf, cfg.tol_root) * w_inf);
  WitnessPair pair;
  pair.scale = c;
  pair.x = StepFunction::make(kInfinity, {}, Tail{0.0, c, c});
  pair.y = StepFunction::make(kInfinity, {}, Tail{0.0, c, -c});
  return pair;
}

WitnessPair build_witness_unit(const SpaceConfig& cfg) {
  if (std::isinf(cfg.gamma)) {
    throw Error(ErrorKind::Precondition, "unit witness needs gamma = 1");
  }
  const double a = cfg.omega.alpha();
  if (a > 0.5) {
    throw Error(ErrorKind::Precondition, fmt("unit witness needs alpha <= 1/2, got %.12g", a));
  }
  const double c = 1.0 / (psi_inverse(cfg.phi, 1.0 / cfg.omega.W(a), cfg.tol_root) *
                          cfg.omega.W(2.0 * a));
  WitnessPair pair;
  pair.scale = c;
  pair.x = StepFunction::make(1.0, {{0.0, 2.0 * a, c}});
  pair.y = StepFunction::make(1.0, {{0.0, a, c}, {a, a, -c}});
  return pair;
}

WitnessCheck verify_witness(const SpaceConfig& cfg, const WitnessPair& pair) {
  WitnessCheck check;
  check.norm_x = orlicz_norm(cfg, pair.x);
  check.norm_y = orlicz_norm(cfg, pair.y);
  check.norm_half_sum = orlicz_norm(cfg, half_sum(pair.x, pair.y));
  check.norm_half_diff = orlicz_norm(cfg, half_difference(pair.x, pair.y));
  check.equimeasurable = rearrange(pair.x) == rearrange(pair.y);
  return check;
}

SquareDefect square_defect(const SpaceConfig& cfg, const StepFunction& x,
                           const StepFunction& y) {
  const double limit = 1.0 + cfg.tol_norm;
  if (orlicz_norm(cfg, x) > limit || orlicz_norm(cfg, y) > limit) {
    throw Error(ErrorKind::Precondition, "square defect needs x and y in the unit ball");
  }
  SquareDefect d;
  d.half_sum = orlicz_norm(cfg, half_sum(x, y));
  d.half_diff = orlicz_norm(cfg, half_difference(x, y));
  d.value = std::min(d.half_sum, d.half_diff);
  return d;
}

StepFunction random_step_function(double gamma, SampleStream& stream) {
  constexpr std::uint64_t kCells = 1024;
  const double cell = std::isinf(gamma) ? 16.0 / kCells : 1.0 / kCells;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const std::uint64_t n = 1 + stream.below(8);
    std::vector<std::uint64_t> cuts(2 * n);
    for (auto& c : cuts) c = stream.below(kCells + 1);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Piece> pieces;
    for (std::uint64_t k = 0; k < n; ++k) {
      const auto lo = cuts[2 * k];
      const auto hi = cuts[2 * k + 1];
      const double value = static_cast<double>(stream.below(17)) - 8.0;
      if (hi > lo && value != 0.0) {
        pieces.push_back({static_cast<double>(lo) * cell,
                          static_cast<double>(hi - lo) * cell, value});
      }
    }
    if (!pieces.empty()) return StepFunction::make(gamma, std::move(pieces));
  }
  return StepFunction::indicator(gamma, 0.0, 0.5);
}

StepFunction normalize(const SpaceConfig& cfg, const StepFunction& x) {
  const double norm = orlicz_norm(cfg, x);
  if (norm == 0.0) throw Error(ErrorKind::InvalidArgument, "cannot normalize x = 0");
  return scale(x, 1.0 / norm);
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("OLK_THREADS")) {
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) {
      return static_cast<unsigned>(std::min<unsigned long>(value, 1024));
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::uint64_t n, unsigned workers,
                  const std::function<void(std::uint64_t)>& body) {
  if (n == 0) return;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), n));
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](unsigned w) {
    for (std::uint64_t i = w; i < n; i += workers) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ProbeStats probe_nonsquare(const SpaceConfig& cfg, std::uint64_t seed,
                           std::uint64_t n_samples, unsigned workers) {
  const Predictions pred = predict(cfg);
  const char* key = std::isinf(cfg.gamma) ? "NS_infty" : "NS_unit";
  if (pred.at(key).verdict != Verdict::Holds) {
    throw Error(ErrorKind::Precondition,
                std::string("probe requires non-squareness to be predicted (") +
                    pred.at(key).reason + ")");
  }

  struct Sample {
    StepFunction x;
    StepFunction y;
    double defect = 0.0;
  };
  std::vector<Sample> results(n_samples);
  parallel_for(n_samples, resolve_workers(workers), [&](std::uint64_t i) {
    SampleStream stream(seed, i);
    Sample s;
    s.x = normalize(cfg, random_step_function(cfg.gamma, stream));
    s.y = normalize(cfg, random_step_function(cfg.gamma, stream));
    s.defect = square_defect(cfg, s.x, s.y).value;
    results[i] = std::move(s);
  });

  ProbeStats stats;
  stats.seed = seed;
  stats.samples = n_samples;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const auto& s = results[i];
    if (s.defect >= 1.0) ++stats.at_or_above_one;
    if (!stats.argmax || s.defect > stats.max_defect) {
      stats.max_defect = s.defect;
      stats.argmax = i;
    }
  }
  if (stats.argmax) {
    stats.argmax_x = results[*stats.argmax].x;
    stats.argmax_y = results[*stats.argmax].y;
  }
  return stats;
}

LunsEstimate estimate_luns_delta(const SpaceConfig& cfg, const StepFunction& x,
                                 std::uint64_t seed, std::uint64_t n_samples,
                                 unsigned workers) {
  const double norm = orlicz_norm(cfg, x);
  if (std::fabs(norm - 1.0) > std::max(cfg.tol_norm, 1e-9)) {
    throw Error(ErrorKind::Precondition, fmt("LUNS estimate needs a unit x, got norm %.12g", norm));
  }
  const Predictions pred = predict(cfg);
  const char* key = std::isinf(cfg.gamma) ? "LUNS_infty" : "LUNS_unit";

  LunsEstimate est;
  est.seed = seed;
  est.samples = n_samples;
  est.exploratory = pred.at(key).verdict != Verdict::Holds;
  const KInterval kx = k_interval(cfg, x);
  est.xi_lower = kx.k_star;
  est.xi_upper = kx.k_double_star;

  struct Sample {
    double defect = 0.0;
    std::optional<KInterval> k;  // set for unit-radius samples
  };
  std::vector<Sample> results(n_samples);
  parallel_for(n_samples, resolve_workers(workers), [&](std::uint64_t i) {
    Sample s;
    if (i == 0) {
      s.defect = square_defect(cfg, x, x).value;
      results[i] = s;
      return;
    }
    SampleStream stream(seed, i);
    StepFunction y = normalize(cfg, random_step_function(cfg.gamma, stream));
    if (stream.below(2) == 0) {
      s.k = k_interval(cfg, y);
    } else {
      y = scale(y, stream.unit());
    }
    s.defect = square_defect(cfg, x, y).value;
    results[i] = s;
  });

  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const auto& s = results[i];
    if (!est.argmax || s.defect > est.max_defect) {
      est.max_defect = s.defect;
      est.argmax = i;
    }
    if (s.k) {
      est.xi_lower = std::min(est.xi_lower, s.k->k_star);
      est.xi_upper = std::max(est.xi_upper, s.k->k_double_star);
    }
  }
  est.delta_hat = 1.0 - est.max_defect;
  return est;
}

KBounds sample_k_bounds(const SpaceConfig& cfg, std::uint64_t seed,
                        std::uint64_t n_samples, unsigned workers) {
  std::vector<KInterval> ks(n_samples);
  parallel_for(n_samples, resolve_workers(workers), [&](std::uint64_t i) {
    SampleStream stream(seed, i);
    ks[i] = k_interval(cfg, normalize(cfg, random_step_function(cfg.gamma, stream)));
  });
  KBounds bounds;
  bounds.samples = n_samples;
  for (const auto& k : ks) {
    bounds.min_k_star = std::min(bounds.min_k_star, k.k_star);
    bounds.max_k_double_star = std::max(bounds.max_k_double_star, k.k_double_star);
  }
  return bounds;
}

}  // namespace olk
