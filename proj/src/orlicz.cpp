#include "olk/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "olk/error.hpp"

namespace olk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// e^u − u − 1 for u ≥ 0 without cancellation near zero.
double exp_minus_linear_value(double u) {
  if (u < 0.1) {
    double term = u * u / 2.0;
    double sum = 0.0;
    for (int n = 3; term > 1e-18 * sum || sum == 0.0; ++n) {
      sum += term;
      term *= u / n;
      if (term == 0.0) break;
    }
    return sum;
  }
  const double value = std::expm1(u) - u;
  return std::isfinite(value) ? value : kInf;
}

// (1+v) ln(1+v) − v for v ≥ 0 without cancellation near zero.
double log_linear_value(double v) {
  if (v < 0.1) {
    // Σ_{n≥2} (−1)^n v^n / (n(n−1))
    double power = v * v;
    double sum = 0.0;
    for (int n = 2; n < 40; ++n) {
      const double term = power / (static_cast<double>(n) * (n - 1));
      sum += (n % 2 == 0) ? term : -term;
      if (term < 1e-18 * sum) break;
      power *= v;
    }
    return sum;
  }
  return (1.0 + v) * std::log1p(v) - v;
}

void validate_nodes(const std::vector<DerivativeNode>& nodes) {
  if (nodes.size() < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "tabulated Orlicz function needs at least two derivative nodes");
  }
  if (nodes.front().u != 0.0 || nodes.front().p != 0.0) {
    throw Error(ErrorKind::InvalidArgument,
                "tabulated derivative must start at the node (0, 0)");
  }
  for (const auto& node : nodes) {
    if (!std::isfinite(node.u) || !std::isfinite(node.p)) {
      throw Error(ErrorKind::InvalidArgument, "tabulated nodes must be finite");
    }
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const auto& a = nodes[i - 1];
    const auto& b = nodes[i];
    if (b.u < a.u || b.p < a.p) {
      throw Error(ErrorKind::InvalidArgument,
                  "tabulated nodes must be non-decreasing in both u and p");
    }
    if (b.u == a.u && b.p == a.p) {
      throw Error(ErrorKind::InvalidArgument, "duplicate tabulated node");
    }
  }
  // p > 0 right after 0 keeps φ positive off zero; a jump at 0 would break
  // φ(u)/u → 0.
  if (nodes[1].u <= 0.0 || nodes[1].p <= 0.0) {
    throw Error(ErrorKind::InvalidArgument,
                "first tabulated segment must rise from (0,0) with u > 0 and p > 0");
  }
  const auto& last = nodes[nodes.size() - 1];
  const auto& prev = nodes[nodes.size() - 2];
  if (last.u <= prev.u || last.p <= prev.p) {
    throw Error(ErrorKind::InvalidArgument,
                "last tabulated segment must have positive finite slope");
  }
}

}  // namespace

const char* family_name(OrliczFamily family) noexcept {
  switch (family) {
    case OrliczFamily::Power: return "power";
    case OrliczFamily::ExpMinusLinear: return "exp_minus_linear";
    case OrliczFamily::LogLinear: return "log_linear";
    case OrliczFamily::PiecewiseTabulated: return "tabulated";
  }
  return "unknown";
}

const char* regime_name(Delta2Regime regime) noexcept {
  return regime == Delta2Regime::AllValues ? "all_values" : "large_values";
}

OrliczFunction OrliczFunction::power(double exponent) {
  if (!(exponent > 1.0) || !std::isfinite(exponent)) {
    throw Error(ErrorKind::InvalidArgument, "power exponent must be finite and > 1");
  }
  OrliczFunction f;
  f.family_ = OrliczFamily::Power;
  f.exponent_ = exponent;
  return f;
}

OrliczFunction OrliczFunction::exp_minus_linear() {
  OrliczFunction f;
  f.family_ = OrliczFamily::ExpMinusLinear;
  f.exponent_ = std::numeric_limits<double>::quiet_NaN();
  return f;
}

OrliczFunction OrliczFunction::log_linear() {
  OrliczFunction f;
  f.family_ = OrliczFamily::LogLinear;
  f.exponent_ = std::numeric_limits<double>::quiet_NaN();
  return f;
}

OrliczFunction OrliczFunction::tabulated(std::vector<DerivativeNode> nodes) {
  validate_nodes(nodes);
  OrliczFunction f;
  f.family_ = OrliczFamily::PiecewiseTabulated;
  f.exponent_ = std::numeric_limits<double>::quiet_NaN();
  f.nodes_ = std::move(nodes);
  f.cumulative_.assign(f.nodes_.size(), 0.0);
  for (std::size_t i = 1; i < f.nodes_.size(); ++i) {
    const auto& a = f.nodes_[i - 1];
    const auto& b = f.nodes_[i];
    f.cumulative_[i] = f.cumulative_[i - 1] + (b.u - a.u) * (a.p + b.p) / 2.0;
  }
  const auto& last = f.nodes_.back();
  const auto& prev = f.nodes_[f.nodes_.size() - 2];
  f.tail_slope_ = (last.p - prev.p) / (last.u - prev.u);
  return f;
}

double OrliczFunction::operator()(double u) const {
  u = std::fabs(u);
  if (u == 0.0) return 0.0;
  switch (family_) {
    case OrliczFamily::Power: {
      const double value = std::pow(u, exponent_) / exponent_;
      return std::isfinite(value) ? value : kInf;
    }
    case OrliczFamily::ExpMinusLinear:
      return exp_minus_linear_value(u);
    case OrliczFamily::LogLinear:
      return log_linear_value(u);
    case OrliczFamily::PiecewiseTabulated: {
      // Last node with u_i ≤ u.
      const auto it = std::upper_bound(
          nodes_.begin(), nodes_.end(), u,
          [](double value, const DerivativeNode& node) { return value < node.u; });
      const auto i = static_cast<std::size_t>(std::distance(nodes_.begin(), it)) - 1;
      const double pu = derivative(u);
      const double value = cumulative_[i] + (u - nodes_[i].u) * (nodes_[i].p + pu) / 2.0;
      return std::isfinite(value) ? value : kInf;
    }
  }
  return kInf;
}

double OrliczFunction::derivative(double u) const {
  if (u < 0.0 || std::isnan(u)) {
    throw Error(ErrorKind::InvalidArgument, "right derivative requires u >= 0");
  }
  if (u == 0.0) return 0.0;
  switch (family_) {
    case OrliczFamily::Power:
      return std::pow(u, exponent_ - 1.0);
    case OrliczFamily::ExpMinusLinear:
      return std::expm1(u);
    case OrliczFamily::LogLinear:
      return std::log1p(u);
    case OrliczFamily::PiecewiseTabulated: {
      const auto it = std::upper_bound(
          nodes_.begin(), nodes_.end(), u,
          [](double value, const DerivativeNode& node) { return value < node.u; });
      const auto i = static_cast<std::size_t>(std::distance(nodes_.begin(), it)) - 1;
      if (i + 1 == nodes_.size()) {
        return nodes_[i].p + tail_slope_ * (u - nodes_[i].u);
      }
      // Right limit: node i is the last one at or left of u, so the segment
      // to i+1 has positive length.
      const auto& a = nodes_[i];
      const auto& b = nodes_[i + 1];
      return a.p + (b.p - a.p) * (u - a.u) / (b.u - a.u);
    }
  }
  return 0.0;
}

std::string OrliczFunction::describe() const {
  char buf[64];
  switch (family_) {
    case OrliczFamily::Power:
      std::snprintf(buf, sizeof buf, "power(p=%.12g)", exponent_);
      return buf;
    case OrliczFamily::ExpMinusLinear:
      return "exp_minus_linear";
    case OrliczFamily::LogLinear:
      return "log_linear";
    case OrliczFamily::PiecewiseTabulated:
      std::snprintf(buf, sizeof buf, "tabulated(%zu nodes)", nodes_.size());
      return buf;
  }
  return "unknown";
}

double eval_phi(const OrliczFunction& f, double u) {
  if (!std::isfinite(u)) {
    throw Error(ErrorKind::InvalidArgument, "eval_phi requires a finite argument");
  }
  return f(u);
}

double right_derivative(const OrliczFunction& f, double u) { return f.derivative(u); }

ConjugatePair conjugate(const OrliczFunction& f) {
  switch (f.family()) {
    case OrliczFamily::Power: {
      const double r = f.exponent();
      return {f, OrliczFunction::power(r / (r - 1.0))};
    }
    case OrliczFamily::ExpMinusLinear:
      return {f, OrliczFunction::log_linear()};
    case OrliczFamily::LogLinear:
      return {f, OrliczFunction::exp_minus_linear()};
    case OrliczFamily::PiecewiseTabulated: {
      std::vector<DerivativeNode> swapped;
      swapped.reserve(f.nodes().size());
      for (const auto& node : f.nodes()) swapped.push_back({node.p, node.u});
      return {f, OrliczFunction::tabulated(std::move(swapped))};
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown Orlicz family");
}

double legendre_transform(const OrliczFunction& f, double v, double horizon) {
  v = std::fabs(v);
  if (v == 0.0) return 0.0;
  if (f.derivative(horizon) < v) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "p does not reach %.12g on the search horizon %.12g", v, horizon);
    throw Error(ErrorKind::HorizonExceeded, buf);
  }
  double lo = 0.0;
  double hi = horizon;
  while (true) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (f.derivative(mid) >= v) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return v * hi - f(hi);
}

double inverse_value(const OrliczFunction& f, double w, double tol) {
  if (!(w >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "inverse requires w >= 0");
  }
  if (w == 0.0) return 0.0;
  if (std::isinf(w)) return w;
  if (f.family() == OrliczFamily::Power) {
    const double r = f.exponent();
    return std::pow(r * w, 1.0 / r);
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; f(hi) < w; ++i) {
    if (i > 2000) {
      throw Error(ErrorKind::HorizonExceeded, "inverse bracket did not close");
    }
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > tol * hi) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < w) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / 2.0;
}

double psi_inverse(const ConjugatePair& cp, double w, double tol) {
  return inverse_value(cp.psi, w, tol);
}

Classification classify_delta2(const OrliczFunction& f, Delta2Regime regime,
                               const Delta2Options& options) {
  Classification result;
  result.regime = regime;
  result.grid_start =
      regime == Delta2Regime::AllValues ? options.u0_all : options.u0_large;
  result.horizon = options.horizon;

  const int n = std::max(options.grid_points, 2);
  const double log_lo = std::log(result.grid_start);
  const double log_hi = std::log(result.horizon);
  for (int k = 0; k < n; ++k) {
    const double u = std::exp(log_lo + (log_hi - log_lo) * k / (n - 1));
    const double num = f(2.0 * u);
    const double den = f(u);
    const double ratio = std::isinf(num) ? kInf : num / den;
    result.max_ratio = std::max(result.max_ratio, ratio);
  }

  switch (f.family()) {
    case OrliczFamily::Power:
      result.holds = true;
      result.constant = std::pow(2.0, f.exponent());
      break;
    case OrliczFamily::ExpMinusLinear:
      result.holds = false;
      break;
    case OrliczFamily::LogLinear:
      // φ(2u)/φ(u) decreases from 4 (as u → 0) to 2 (as u → ∞).
      result.holds = true;
      result.constant = 4.0;
      break;
    case OrliczFamily::PiecewiseTabulated:
      result.heuristic = true;
      result.holds = result.max_ratio <= options.ratio_cap;
      if (result.holds) result.constant = result.max_ratio;
      break;
  }
  return result;
}

Classification classify_nabla2(const OrliczFunction& f, Delta2Regime regime,
                               const Delta2Options& options) {
  return classify_delta2(conjugate(f).psi, regime, options);
}

}  // namespace olk
