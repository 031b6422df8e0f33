#ifndef OLK_ORLICZ_HPP
#define OLK_ORLICZ_HPP

#include <optional>
#include <string>
#include <vector>

namespace olk {

enum class OrliczFamily { Power, ExpMinusLinear, LogLinear, PiecewiseTabulated };

const char* family_name(OrliczFamily family) noexcept;

/// Node of a tabulated right derivative. Consecutive nodes with equal `u`
/// encode an upward jump of p; consecutive nodes with equal `p` a flat piece.
struct DerivativeNode {
  double u = 0.0;
  double p = 0.0;

  friend bool operator==(const DerivativeNode&, const DerivativeNode&) = default;
};

/// An Orlicz function φ: convex, even, φ(0)=0, positive off zero,
/// φ(u)/u → 0 at 0 and → ∞ at ∞.
///
/// Families:
///   Power(r)            φ(u) = |u|^r / r, r > 1
///   ExpMinusLinear      φ(u) = e^|u| − |u| − 1
///   LogLinear           φ(u) = (1+|u|) ln(1+|u|) − |u|
///   PiecewiseTabulated  φ(u) = ∫₀^|u| p, p piecewise linear through the
///                       nodes and extended past the last node with the
///                       last segment's slope.
class OrliczFunction {
 public:
  static OrliczFunction power(double exponent);
  static OrliczFunction exp_minus_linear();
  static OrliczFunction log_linear();
  static OrliczFunction tabulated(std::vector<DerivativeNode> nodes);

  OrliczFamily family() const noexcept { return family_; }
  /// Exponent r of a Power family; NaN otherwise.
  double exponent() const noexcept { return exponent_; }
  const std::vector<DerivativeNode>& nodes() const noexcept { return nodes_; }

  /// φ(|u|). Returns +inf when the value leaves the double range.
  double operator()(double u) const;
  /// Right derivative p(u) for u ≥ 0.
  double derivative(double u) const;

  std::string describe() const;

  friend bool operator==(const OrliczFunction&, const OrliczFunction&) = default;

 private:
  OrliczFunction() = default;

  OrliczFamily family_ = OrliczFamily::Power;
  double exponent_ = 2.0;
  std::vector<DerivativeNode> nodes_;
  std::vector<double> cumulative_;  // φ(u_i) for tabulated nodes
  double tail_slope_ = 0.0;
};

double eval_phi(const OrliczFunction& f, double u);
double right_derivative(const OrliczFunction& f, double u);

/// φ together with its complementary function ψ(v) = sup_u {|uv| − φ(u)}.
struct ConjugatePair {
  OrliczFunction phi;
  OrliczFunction psi;

  /// Right derivative of ψ, the generalized inverse of p.
  double q(double v) const { return psi.derivative(v); }
};

/// Closed-form conjugate: Power(r) ↔ Power(r/(r−1)),
/// ExpMinusLinear ↔ LogLinear, tabulated p ↔ tabulated p⁻¹.
ConjugatePair conjugate(const OrliczFunction& f);

/// Pointwise Legendre transform v·u − φ(u) at u = inf{u ≥ 0 : p(u) ≥ v},
/// found by monotone bisection on [0, horizon]. Throws HorizonExceeded when
/// p(horizon) < v.
double legendre_transform(const OrliczFunction& f, double v, double horizon = 1e8);

/// The unique v ≥ 0 with f(v) = w. Closed form for Power, bracketed
/// bisection to relative tolerance `tol` otherwise.
double inverse_value(const OrliczFunction& f, double w, double tol = 1e-12);

/// ψ⁻¹(w).
double psi_inverse(const ConjugatePair& cp, double w, double tol = 1e-12);

enum class Delta2Regime { AllValues, LargeValues };

const char* regime_name(Delta2Regime regime) noexcept;

struct Delta2Options {
  double u0_large = 1.0;  // threshold for Δ₂(∞)
  double u0_all = 1e-8;   // grid start for Δ₂(ℝ)
  double horizon = 1e8;
  int grid_points = 64;
  double ratio_cap = 1e3;  // heuristic boundedness threshold, tabulated only
};

struct Classification {
  Delta2Regime regime = Delta2Regime::AllValues;
  bool holds = false;
  /// A valid Δ₂ constant K when one is known in closed form.
  std::optional<double> constant;
  /// True when the verdict comes from the finite grid index.
  bool heuristic = false;
  /// sup of φ(2u)/φ(u) over the grid; informational for closed families.
  double max_ratio = 0.0;
  double grid_start = 0.0;
  double horizon = 0.0;
};

/// Δ₂ classification of f. Exact for parametric families; tabulated
/// families get the grid index sup φ(2u)/φ(u) ≤ ratio_cap, flagged heuristic.
Classification classify_delta2(const OrliczFunction& f, Delta2Regime regime,
                               const Delta2Options& options = {});

/// ∇₂ of φ is Δ₂ of ψ.
Classification classify_nabla2(const OrliczFunction& f, Delta2Regime regime,
                               const Delta2Options& options = {});

}  // namespace olk

#endif  // OLK_ORLICZ_HPP
