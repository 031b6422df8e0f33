#include "olk/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "olk/error.hpp"

namespace olk {

namespace {

constexpr int kMaxBracketSteps = 2200;

WeightedLevels levels_in_space(const SpaceConfig& cfg, const StepFunction& x) {
  if (x.domain_len() != cfg.gamma) {
    throw Error(ErrorKind::DomainMismatch, "function domain does not match the space");
  }
  WeightedLevels levels(cfg.omega, rearrange(x));
  if (levels.has_infinite_mass()) {
    throw Error(ErrorKind::OutsideSpace,
                "infinite-measure level with W(inf) = inf: no finite multiple has finite modular");
  }
  return levels;
}

// Bisection on a monotone predicate: `lo` fails, `hi` holds; returns the
// tightest `hi` representable.
template <class Pred>
std::pair<double, double> bisect(double lo, double hi, Pred holds) {
  while (true) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (holds(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

}  // namespace

SpaceConfig SpaceConfig::make(const OrliczFunction& phi, const Weight& omega,
                              double tol_root, double tol_norm, double k_horizon,
                              Delta2Options delta2) {
  if (!(tol_root > 0.0) || !(tol_norm > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
  }
  if (!(k_horizon > 1.0) || !std::isfinite(k_horizon)) {
    throw Error(ErrorKind::InvalidArgument, "k_horizon must be finite and > 1");
  }
  return SpaceConfig{conjugate(phi), omega, omega.domain_len(), tol_root, tol_norm,
                     k_horizon, delta2};
}

std::string SpaceConfig::describe() const {
  std::string g = std::isinf(gamma) ? "inf" : "1";
  return "phi=" + phi.phi.describe() + ", psi=" + phi.psi.describe() +
         ", omega=" + omega.describe() + ", gamma=" + g;
}

WeightedLevels::WeightedLevels(const Weight& omega, const Rearrangement& r) {
  double cursor = 0.0;
  for (const auto& level : r.levels) {
    const double end = std::min(cursor + level.measure, omega.domain_len());
    values_.push_back(level.value);
    masses_.push_back(omega.mass(cursor, end));
    cursor = end;
  }
}

bool WeightedLevels::has_infinite_mass() const noexcept {
  return std::any_of(masses_.begin(), masses_.end(),
                     [](double m) { return std::isinf(m); });
}

double modular(const OrliczFunction& f, const Weight& omega, const StepFunction& x) {
  return weighted_integral(omega, rearrange(compose_phi(f, x)));
}

double modular(const SpaceConfig& cfg, const StepFunction& x) {
  return modular(cfg.phi.phi, cfg.omega, x);
}

double conjugate_modular(const SpaceConfig& cfg, const StepFunction& y) {
  return modular(cfg.phi.psi, cfg.omega, y);
}

double luxemburg_norm(const SpaceConfig& cfg, const StepFunction& x) {
  if (x.is_zero()) return 0.0;
  const WeightedLevels levels = levels_in_space(cfg, x);
  const auto& phi = cfg.phi.phi;
  auto rho_at = [&](double eps) { return levels.integrate(phi, 1.0 / eps); };

  double hi = x.sup_abs();
  for (int i = 0; rho_at(hi) > 1.0; ++i) {
    if (i > kMaxBracketSteps) {
      throw Error(ErrorKind::OutsideSpace, "no finite scaling brings the modular below 1");
    }
    hi *= 2.0;
  }
  double lo = hi;
  for (int i = 0; rho_at(lo) <= 1.0; ++i) {
    if (i > kMaxBracketSteps) return 0.0;
    lo /= 2.0;
  }
  return bisect(lo, hi, [&](double eps) { return rho_at(eps) <= 1.0; }).second;
}

double k_level(const SpaceConfig& cfg, const StepFunction& x, double h) {
  const WeightedLevels levels = levels_in_space(cfg, x);
  const auto& cp = cfg.phi;
  return levels.integrate([&](double u) { return cp.psi(cp.phi.derivative(u)); }, h);
}

KInterval k_interval(const SpaceConfig& cfg, const StepFunction& x) {
  if (x.is_zero()) {
    throw Error(ErrorKind::InvalidArgument, "K(x) is undefined for x = 0");
  }
  const WeightedLevels levels = levels_in_space(cfg, x);
  const auto& cp = cfg.phi;
  auto g = [&](double h) {
    return levels.integrate([&](double u) { return cp.psi(cp.phi.derivative(u)); }, h);
  };
  const double horizon = cfg.k_horizon;

  // k* = inf{h : g(h) ≥ 1}
  double lo = 0.0;
  double hi = 0.0;
  if (g(1.0) >= 1.0) {
    hi = 1.0;
    lo = 0.5;
    for (int i = 0; g(lo) >= 1.0; ++i) {
      if (i > kMaxBracketSteps) {
        throw Error(ErrorKind::Inconsistent, "g does not fall below 1 near 0");
      }
      hi = lo;
      lo /= 2.0;
    }
  } else {
    lo = 1.0;
    hi = 2.0;
    while (g(hi) < 1.0) {
      lo = hi;
      hi *= 2.0;
      if (hi >= horizon) {
        if (g(horizon) < 1.0) {
          char buf[128];
          std::snprintf(buf, sizeof buf,
                        "rho_psi(p(h|x|)) stays below 1 up to the horizon %.12g", horizon);
          throw Error(ErrorKind::HorizonExceeded, buf);
        }
        hi = horizon;
        break;
      }
    }
  }
  const auto [below, k_star] = bisect(lo, hi, [&](double h) { return g(h) >= 1.0; });

  KInterval result;
  result.k_star = k_star;

  // k** = sup{h : g(h) ≤ 1}
  double lo2 = below;
  double hi2 = k_star;
  if (g(k_star) <= 1.0) {
    lo2 = k_star;
    hi2 = k_star * 2.0;
    while (g(hi2) <= 1.0) {
      lo2 = hi2;
      hi2 *= 2.0;
      if (hi2 >= horizon) {
        if (g(horizon) <= 1.0) {
          result.k_double_star = kInfinity;
          result.horizon_exceeded = true;
          return result;
        }
        hi2 = horizon;
        break;
      }
    }
  }
  const double k_double_star =
      bisect(lo2, hi2, [&](double h) { return g(h) > 1.0; }).first;
  result.k_double_star = std::max(k_double_star, k_star);
  result.unique = result.k_double_star - result.k_star <= cfg.tol_root * result.k_star;
  return result;
}

double amemiya(const SpaceConfig& cfg, const StepFunction& x, double k) {
  if (!(k > 0.0)) throw Error(ErrorKind::InvalidArgument, "Amemiya parameter must be > 0");
  return (1.0 + modular(cfg, scale(x, k))) / k;
}

OrliczNormDetail orlicz_norm_detail(const SpaceConfig& cfg, const StepFunction& x) {
  OrliczNormDetail detail;
  if (x.is_zero()) return detail;
  const WeightedLevels levels = levels_in_space(cfg, x);
  const auto& phi = cfg.phi.phi;
  auto F = [&](double k) { return (1.0 + levels.integrate(phi, k)) / k; };

  detail.k = k_interval(cfg, x);
  detail.k_route = F(detail.k.k_star);

  // Golden section on s = ln k; F is unimodal in k, hence in s.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = -std::log(cfg.k_horizon);
  double b = std::log(cfg.k_horizon);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = F(std::exp(c));
  double fd = F(std::exp(d));
  double best_s = fc <= fd ? c : d;
  double best_f = std::min(fc, fd);
  for (int iter = 0; iter < 400 && b - a > 1e-13; ++iter) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = F(std::exp(c));
      if (fc < best_f) {
        best_f = fc;
        best_s = c;
      }
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = F(std::exp(d));
      if (fd < best_f) {
        best_f = fd;
        best_s = d;
      }
    }
  }
  detail.golden_route = best_f;
  detail.golden_k = std::exp(best_s);
  detail.value = detail.k_route;
  return detail;
}

double orlicz_norm(const SpaceConfig& cfg, const StepFunction& x) {
  const OrliczNormDetail detail = orlicz_norm_detail(cfg, x);
  const double gap = std::fabs(detail.k_route - detail.golden_route);
  if (gap > cfg.tol_norm * std::max(1.0, detail.value)) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "K-interval route %.17g and direct minimization %.17g disagree",
                  detail.k_route, detail.golden_route);
    throw Error(ErrorKind::Inconsistent, buf);
  }
  return detail.value;
}

double indicator_orlicz_norm(const SpaceConfig& cfg, double measure) {
  if (!(measure >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "measure must be >= 0");
  }
  if (measure == 0.0) return 0.0;
  const double w = std::isinf(measure) ? cfg.omega.total_mass()
                                       : cfg.omega.W(std::min(measure, cfg.gamma));
  if (std::isinf(w)) {
    throw Error(ErrorKind::OutsideSpace, "indicator of an infinite set with W(inf) = inf");
  }
  if (w == 0.0) return 0.0;
  return psi_inverse(cfg.phi, 1.0 / w, cfg.tol_root) * w;
}

double dual_pairing_check(const SpaceConfig& cfg, const StepFunction& x,
                          const StepFunction& y) {
  const double rho_psi = conjugate_modular(cfg, y);
  if (rho_psi > 1.0 + cfg.tol_norm) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "rho_psi(y) = %.12g exceeds 1", rho_psi);
    throw Error(ErrorKind::Precondition, buf);
  }
  const Rearrangement rx = rearrange(x);
  const Rearrangement ry = rearrange(y);
  double total = 0.0;
  double t = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  double rem_x = rx.levels.empty() ? 0.0 : rx.levels[0].measure;
  double rem_y = ry.levels.empty() ? 0.0 : ry.levels[0].measure;
  while (i < rx.levels.size() && j < ry.levels.size()) {
    const double step = std::min(rem_x, rem_y);
    const double end = std::min(t + step, cfg.gamma);
    const double m = cfg.omega.mass(t, end);
    if (m > 0.0) total += rx.levels[i].value * ry.levels[j].value * m;
    if (std::isinf(step)) break;
    t = end;
    rem_x -= step;
    rem_y -= step;
    if (rem_x == 0.0 && ++i < rx.levels.size()) rem_x = rx.levels[i].measure;
    if (rem_y == 0.0 && ++j < ry.levels.size()) rem_y = ry.levels[j].measure;
  }
  return total;
}

StepFunction holder_witness(const SpaceConfig& cfg, const StepFunction& x) {
  const KInterval k = k_interval(cfg, x);
  const auto& p = cfg.phi.phi;
  std::vector<Piece> pieces = x.pieces();
  for (auto& piece : pieces) piece.value = p.derivative(k.k_star * std::fabs(piece.value));
  std::optional<Tail> tail = x.tail();
  if (tail) {
    tail->even_value = p.derivative(k.k_star * std::fabs(tail->even_value));
    tail->odd_value = p.derivative(k.k_star * std::fabs(tail->odd_value));
  }
  StepFunction y = StepFunction::make(x.domain_len(), std::move(pieces), tail);
  if (conjugate_modular(cfg, y) <= 1.0) return y;
  const double lambda =
      bisect(0.0, 1.0, [&](double s) { return conjugate_modular(cfg, scale(y, s)) > 1.0; })
          .first;
  return scale(y, lambda);
}

bool check_property_i(const SpaceConfig& cfg, const StepFunction& x) {
  const double norm = orlicz_norm(cfg, x);
  if (norm > 1.0 + cfg.tol_norm) {
    throw Error(ErrorKind::Precondition, "property (i) needs an Orlicz norm <= 1");
  }
  return modular(cfg, x) <= norm + cfg.tol_norm;
}

}  // namespace olk
