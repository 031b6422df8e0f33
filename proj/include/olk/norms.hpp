#ifndef OLK_NORMS_HPP
#define OLK_NORMS_HPP

#include <string>
#include <vector>

#include "olk/orlicz.hpp"
#include "olk/stepfn.hpp"
#include "olk/weight.hpp"

namespace olk {

/// One Orlicz–Lorentz space Λ_{φ,ω}[0,γ) plus numeric tolerances.
struct SpaceConfig {
  ConjugatePair phi;
  Weight omega;
  double gamma = 1.0;
  double tol_root = 1e-12;
  double tol_norm = 1e-10;
  double k_horizon = 1e8;
  Delta2Options delta2;

  /// Builds and validates: gamma must match omega's domain and the
  /// tolerances must be positive.
  static SpaceConfig make(const OrliczFunction& phi, const Weight& omega,
                          double tol_root = 1e-12, double tol_norm = 1e-10,
                          double k_horizon = 1e8, Delta2Options delta2 = {});

  std::string describe() const;
};

/// x* paired with the ω-mass of each level: integrals ∫ f(s·x*) ω reduce
/// to Σ f(s·vᵢ) Mᵢ.
class WeightedLevels {
 public:
  WeightedLevels(const Weight& omega, const Rearrangement& r);

  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& masses() const noexcept { return masses_; }
  bool has_infinite_mass() const noexcept;
  bool empty() const noexcept { return values_.empty(); }

  /// Σ f(s·vᵢ) Mᵢ, skipping zero-mass levels.
  template <class F>
  double integrate(F&& f, double s) const {
    double total = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (masses_[i] == 0.0) continue;
      const double fv = f(s * values_[i]);
      if (fv == 0.0) continue;
      total += fv * masses_[i];
    }
    return total;
  }

 private:
  std::vector<double> values_;
  std::vector<double> masses_;
};

struct KInterval {
  double k_star = 0.0;
  double k_double_star = 0.0;  // +inf when g stays ≤ 1 up to the horizon
  bool unique = false;         // k* and k** agree within tol_root
  bool horizon_exceeded = false;
};

/// Both routes to ‖x‖°: F(k) = (1 + ρ(kx))/k at k ∈ K(x), and golden-section
/// minimization of F over log k ∈ [−ln H, ln H].
struct OrliczNormDetail {
  double value = 0.0;
  double k_route = 0.0;
  double golden_route = 0.0;
  double golden_k = 0.0;
  KInterval k;
};

/// ρ_{f,ω}(x) = ∫ f(x*) ω for any Orlicz function f.
double modular(const OrliczFunction& f, const Weight& omega, const StepFunction& x);
double modular(const SpaceConfig& cfg, const StepFunction& x);
/// ρ_{ψ,ω}(y).
double conjugate_modular(const SpaceConfig& cfg, const StepFunction& y);

double luxemburg_norm(const SpaceConfig& cfg, const StepFunction& x);

/// g(h) = ρ_{ψ,ω}(p(h|x|)).
double k_level(const SpaceConfig& cfg, const StepFunction& x, double h);
KInterval k_interval(const SpaceConfig& cfg, const StepFunction& x);

/// F(k) = (1 + ρ(kx))/k.
double amemiya(const SpaceConfig& cfg, const StepFunction& x, double k);

OrliczNormDetail orlicz_norm_detail(const SpaceConfig& cfg, const StepFunction& x);
/// ‖x‖°. Throws Inconsistent if the two routes disagree beyond tol_norm.
double orlicz_norm(const SpaceConfig& cfg, const StepFunction& x);

/// ‖χ_A‖° = ψ⁻¹(1/W(t)) W(t) for μA = t (t may be +inf when W(∞) < ∞).
double indicator_orlicz_norm(const SpaceConfig& cfg, double measure);

/// ∫ x* y* ω. Rejects y with ρ_ψ(y) > 1 + tol_norm.
double dual_pairing_check(const SpaceConfig& cfg, const StepFunction& x,
                          const StepFunction& y);

/// p(k*|x|) scaled into the ψ-unit ball (scaled down only when ρ_ψ > 1).
StepFunction holder_witness(const SpaceConfig& cfg, const StepFunction& x);

/// ρ(x) ≤ ‖x‖° + tol_norm. Rejects x with ‖x‖° > 1 + tol_norm.
bool check_property_i(const SpaceConfig& cfg, const StepFunction& x);

}  // namespace olk

#endif  // OLK_NORMS_HPP
