#include "olk/weight.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "olk/error.hpp"

namespace olk {

namespace {

void check_domain(double domain_len) {
  if (domain_len != 1.0 && !(std::isinf(domain_len) && domain_len > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "weight domain must be 1 or +inf");
  }
}

}  // namespace

const char* weight_family_name(WeightFamily family) noexcept {
  switch (family) {
    case WeightFamily::Constant: return "constant";
    case WeightFamily::TruncatedConstant: return "truncated";
    case WeightFamily::PowerDecay: return "power_decay";
    case WeightFamily::ExpDecay: return "exp";
    case WeightFamily::Step: return "step";
  }
  return "unknown";
}

Weight Weight::constant(double c, double domain_len) {
  check_domain(domain_len);
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorKind::InvalidArgument, "constant weight level must be finite and > 0");
  }
  Weight w;
  w.family_ = WeightFamily::Constant;
  w.domain_len_ = domain_len;
  w.c_ = c;
  return w;
}

Weight Weight::truncated(double c, double alpha, double domain_len) {
  check_domain(domain_len);
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorKind::InvalidArgument, "truncated weight level must be finite and > 0");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha) || alpha > domain_len) {
    throw Error(ErrorKind::InvalidArgument, "truncation point must lie in (0, gamma]");
  }
  Weight w;
  w.family_ = WeightFamily::TruncatedConstant;
  w.domain_len_ = domain_len;
  w.c_ = c;
  w.rate_ = alpha;
  return w;
}

Weight Weight::power_decay(double a, double domain_len) {
  check_domain(domain_len);
  if (!(a >= 0.0 && a < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "power decay exponent must lie in [0, 1)");
  }
  Weight w;
  w.family_ = WeightFamily::PowerDecay;
  w.domain_len_ = domain_len;
  w.rate_ = a;
  return w;
}

Weight Weight::exp_decay(double lambda, double domain_len) {
  check_domain(domain_len);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::InvalidArgument, "exponential rate must be finite and > 0");
  }
  Weight w;
  w.family_ = WeightFamily::ExpDecay;
  w.domain_len_ = domain_len;
  w.rate_ = lambda;
  return w;
}

Weight Weight::step(std::vector<WeightPiece> pieces, double domain_len) {
  check_domain(domain_len);
  if (pieces.empty()) {
    throw Error(ErrorKind::InvalidArgument, "step weight needs at least one piece");
  }
  double extent = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& piece = pieces[i];
    if (!(piece.length > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "step weight lengths must be positive");
    }
    if (std::isinf(piece.length) && i + 1 != pieces.size()) {
      throw Error(ErrorKind::InvalidArgument, "only the last step weight piece may be infinite");
    }
    if (!(piece.value >= 0.0) || !std::isfinite(piece.value)) {
      throw Error(ErrorKind::InvalidArgument, "step weight values must be finite and >= 0");
    }
    if (i > 0 && piece.value > pieces[i - 1].value) {
      throw Error(ErrorKind::InvalidArgument, "step weight values must be non-increasing");
    }
    extent += piece.length;
  }
  if (extent > domain_len) {
    throw Error(ErrorKind::InvalidArgument, "step weight extends past the domain");
  }
  if (!(pieces.front().value > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "step weight must be positive near 0");
  }
  Weight w;
  w.family_ = WeightFamily::Step;
  w.domain_len_ = domain_len;
  w.pieces_ = std::move(pieces);
  return w;
}

double Weight::density(double t) const {
  if (!(t >= 0.0) || t >= domain_len_) {
    throw Error(ErrorKind::InvalidArgument, "weight evaluated outside [0, gamma)");
  }
  switch (family_) {
    case WeightFamily::Constant: return c_;
    case WeightFamily::TruncatedConstant: return t < rate_ ? c_ : 0.0;
    case WeightFamily::PowerDecay:
      return rate_ == 0.0 ? 1.0 : (1.0 - rate_) * std::pow(t, -rate_);
    case WeightFamily::ExpDecay: return rate_ * std::exp(-rate_ * t);
    case WeightFamily::Step: {
      double cursor = 0.0;
      for (const auto& piece : pieces_) {
        cursor += piece.length;
        if (t < cursor) return piece.value;
      }
      return 0.0;
    }
  }
  return 0.0;
}

double Weight::mass(double a, double b) const {
  if (!(a >= 0.0) || !(b >= a)) {
    throw Error(ErrorKind::InvalidArgument, "mass requires 0 <= a <= b");
  }
  if (b > domain_len_) {
    throw Error(ErrorKind::InvalidArgument, "mass requested past the domain");
  }
  if (a == b) return 0.0;
  switch (family_) {
    case WeightFamily::Constant:
      return c_ * (b - a);
    case WeightFamily::TruncatedConstant:
      return c_ * (std::min(b, rate_) - std::min(a, rate_));
    case WeightFamily::PowerDecay: {
      if (std::isinf(b)) return kInfinity;
      const double e = 1.0 - rate_;
      return std::pow(b, e) - std::pow(a, e);
    }
    case WeightFamily::ExpDecay: {
      const double head = std::exp(-rate_ * a);
      if (std::isinf(b)) return head;
      return head * -std::expm1(-rate_ * (b - a));
    }
    case WeightFamily::Step: {
      double total = 0.0;
      double cursor = 0.0;
      for (const auto& piece : pieces_) {
        const double lo = std::max(a, cursor);
        const double hi = std::min(b, cursor + piece.length);
        if (hi > lo && piece.value > 0.0) {
          if (std::isinf(hi)) return kInfinity;
          total += piece.value * (hi - lo);
        }
        cursor += piece.length;
        if (cursor >= b) break;
      }
      return total;
    }
  }
  return 0.0;
}

double Weight::W(double t) const {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "W requires t >= 0");
  if (t > domain_len_) throw Error(ErrorKind::InvalidArgument, "W requested past gamma");
  return mass(0.0, t);
}

double Weight::alpha() const noexcept {
  switch (family_) {
    case WeightFamily::TruncatedConstant:
      return rate_;
    case WeightFamily::Step: {
      double cursor = 0.0;
      double last_positive = 0.0;
      for (const auto& piece : pieces_) {
        cursor += piece.length;
        if (piece.value > 0.0) last_positive = cursor;
      }
      return last_positive;
    }
    default:
      return domain_len_;
  }
}

double Weight::total_mass() const { return mass(0.0, domain_len_); }

bool Weight::positive_on_domain() const noexcept { return alpha() >= domain_len_; }

std::string Weight::describe() const {
  char buf[96];
  switch (family_) {
    case WeightFamily::Constant:
      std::snprintf(buf, sizeof buf, "constant(c=%.12g)", c_);
      break;
    case WeightFamily::TruncatedConstant:
      std::snprintf(buf, sizeof buf, "truncated(c=%.12g, alpha=%.12g)", c_, rate_);
      break;
    case WeightFamily::PowerDecay:
      std::snprintf(buf, sizeof buf, "power_decay(a=%.12g)", rate_);
      break;
    case WeightFamily::ExpDecay:
      std::snprintf(buf, sizeof buf, "exp(lambda=%.12g)", rate_);
      break;
    case WeightFamily::Step:
      std::snprintf(buf, sizeof buf, "step(%zu pieces)", pieces_.size());
      break;
  }
  return buf;
}

double W(const Weight& w, double t) { return w.W(t); }

double alpha(const Weight& w) { return w.alpha(); }

double weighted_integral(const Weight& w, const Rearrangement& r) {
  double total = 0.0;
  double cursor = 0.0;
  for (const auto& level : r.levels) {
    const double end = std::min(cursor + level.measure, w.domain_len());
    const double m = w.mass(cursor, end);
    cursor = end;
    if (m == 0.0 || level.value == 0.0) continue;
    total += level.value * m;
  }
  return total;
}

double l1w_norm(const Weight& w, const StepFunction& x) {
  return weighted_integral(w, rearrange(x));
}

}  // namespace olk
