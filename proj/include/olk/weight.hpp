#ifndef OLK_WEIGHT_HPP
#define OLK_WEIGHT_HPP

#include <string>
#include <vector>

#include "olk/stepfn.hpp"

namespace olk {

enum class WeightFamily { Constant, TruncatedConstant, PowerDecay, ExpDecay, Step };

const char* weight_family_name(WeightFamily family) noexcept;

/// Consecutive piece of a step weight; pieces are laid out from t = 0.
struct WeightPiece {
  double length = 0.0;  // may be +inf for the last piece
  double value = 0.0;

  friend bool operator==(const WeightPiece&, const WeightPiece&) = default;
};

/// Non-increasing, locally integrable weight ω on [0, γ), γ ∈ {1, ∞}, with
/// closed-form antiderivative W(t) = ∫₀ᵗ ω.
///
///   Constant(c)              ω = c
///   TruncatedConstant(c, α)  ω = c on [0, α), 0 after
///   PowerDecay(a)            ω(t) = (1 − a) t^(−a), a ∈ [0, 1), W(t) = t^(1−a)
///   ExpDecay(λ)              ω(t) = λ e^(−λt), W(t) = 1 − e^(−λt)
///   Step(pieces)             piecewise constant, non-increasing values
class Weight {
 public:
  static Weight constant(double c, double domain_len);
  static Weight truncated(double c, double alpha, double domain_len);
  static Weight power_decay(double a, double domain_len);
  static Weight exp_decay(double lambda, double domain_len);
  static Weight step(std::vector<WeightPiece> pieces, double domain_len);

  WeightFamily family() const noexcept { return family_; }
  double domain_len() const noexcept { return domain_len_; }
  double level() const noexcept { return c_; }
  double rate() const noexcept { return rate_; }
  const std::vector<WeightPiece>& pieces() const noexcept { return pieces_; }

  /// ω(t) for t in [0, γ).
  double density(double t) const;
  /// W(t); t = +inf gives W(∞) on an infinite domain.
  double W(double t) const;
  /// W(b) − W(a) for 0 ≤ a ≤ b, computed without cancellation.
  double mass(double a, double b) const;
  /// α = sup{t ≥ 0 : ω(t) > 0}.
  double alpha() const noexcept;
  /// W(γ), i.e. W(∞) on an infinite domain.
  double total_mass() const;
  /// ω > 0 on all of [0, γ).
  bool positive_on_domain() const noexcept;

  std::string describe() const;

 private:
  Weight() = default;

  WeightFamily family_ = WeightFamily::Constant;
  double domain_len_ = 1.0;
  double c_ = 1.0;      // Constant / TruncatedConstant level
  double rate_ = 0.0;   // α for truncated, a for power decay, λ for exp decay
  std::vector<WeightPiece> pieces_;
};

double W(const Weight& w, double t);
double alpha(const Weight& w);

/// Σᵢ vᵢ (W(tᵢ) − W(tᵢ₋₁)) over the level layout of r. +∞ when a positive
/// level of infinite measure meets W(∞) = ∞.
double weighted_integral(const Weight& w, const Rearrangement& r);

/// ‖x‖_{1,ω} = ∫ x* ω.
double l1w_norm(const Weight& w, const StepFunction& x);

}  // namespace olk

#endif  // OLK_WEIGHT_HPP
