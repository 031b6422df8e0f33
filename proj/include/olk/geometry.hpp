#ifndef OLK_GEOMETRY_HPP
#define OLK_GEOMETRY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "olk/norms.hpp"
#include "olk/random.hpp"

namespace olk {

enum class Verdict { Holds, Fails, UndeterminedByPaper };

const char* verdict_name(Verdict verdict) noexcept;

struct PropertyVerdict {
  Verdict verdict = Verdict::UndeterminedByPaper;
  std::string reason;
  bool heuristic = false;
};

/// Keyed by NS_infty, LUNS_infty (γ = ∞), NS_unit, LUNS_unit (γ = 1),
/// SM_L1w and LLUM_L1w (both regimes).
using Predictions = std::map<std::string, PropertyVerdict>;

/// Non-squareness and local uniform non-squareness of Λ°_{φ,ω}, plus strict
/// and lower local uniform monotonicity of L_{1,ω}, decided from W(∞), α and
/// the Δ₂ class of ψ.
Predictions predict(const SpaceConfig& cfg);

struct WitnessPair {
  StepFunction x;
  StepFunction y;
  double scale = 0.0;  // the common value c of |x| and |y|
};

/// γ = ∞, W(∞) < ∞: x = c·χ_[0,∞), y = c on even unit cells and −c on odd
/// ones, c = 1/(ψ⁻¹(1/W(∞)) W(∞)).
WitnessPair build_witness_infty(const SpaceConfig& cfg);

/// γ = 1, α ≤ ½: x = c·χ_[0,2α), y = c·χ_[0,α) − c·χ_[α,2α),
/// c = 1/(ψ⁻¹(1/W(α)) W(2α)).
WitnessPair build_witness_unit(const SpaceConfig& cfg);

struct WitnessCheck {
  double norm_x = 0.0;
  double norm_y = 0.0;
  double norm_half_sum = 0.0;
  double norm_half_diff = 0.0;
  bool equimeasurable = false;  // rearrange(x) == rearrange(y), exactly
};

WitnessCheck verify_witness(const SpaceConfig& cfg, const WitnessPair& pair);

struct SquareDefect {
  double half_sum = 0.0;   // ‖(x+y)/2‖°
  double half_diff = 0.0;  // ‖(x−y)/2‖°
  double value = 0.0;      // the smaller of the two
};

/// min(‖(x+y)/2‖°, ‖(x−y)/2‖°) for x, y in the closed unit ball.
SquareDefect square_defect(const SpaceConfig& cfg, const StepFunction& x,
                           const StepFunction& y);

/// Random simple function on the space's domain: ≤ 8 pieces with breakpoints
/// on a 1024-cell dyadic lattice over [0,1) (γ = 1) or [0,16) (γ = ∞) and
/// integer values in [−8, 8].
StepFunction random_step_function(double gamma, SampleStream& stream);

/// x / ‖x‖°.
StepFunction normalize(const SpaceConfig& cfg, const StepFunction& x);

struct ProbeStats {
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  double max_defect = 0.0;
  std::optional<std::uint64_t> argmax;
  std::optional<StepFunction> argmax_x;
  std::optional<StepFunction> argmax_y;
  std::uint64_t at_or_above_one = 0;
};

/// Seeded search over random unit pairs for the largest square defect.
/// Requires non-squareness to be predicted.
ProbeStats probe_nonsquare(const SpaceConfig& cfg, std::uint64_t seed,
                           std::uint64_t n_samples, unsigned workers = 0);

struct LunsEstimate {
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  double delta_hat = 1.0;
  double max_defect = 0.0;
  std::optional<std::uint64_t> argmax;
  double xi_lower = 0.0;  // min k* over x and the unit-radius samples
  double xi_upper = 0.0;  // max k** over the same
  bool exploratory = false;
};

/// δ̂(x) = 1 − max square_defect(x, y) over seeded y in the unit ball
/// (sample 0 is y = x). `exploratory` is set when LUNS is not predicted.
LunsEstimate estimate_luns_delta(const SpaceConfig& cfg, const StepFunction& x,
                                 std::uint64_t seed, std::uint64_t n_samples,
                                 unsigned workers = 0);

struct KBounds {
  double min_k_star = kInfinity;
  double max_k_double_star = 0.0;
  std::uint64_t samples = 0;
};

/// Empirical range of K(x) over seeded unit-norm random x.
KBounds sample_k_bounds(const SpaceConfig& cfg, std::uint64_t seed,
                        std::uint64_t n_samples, unsigned workers = 0);

/// Worker count: `requested` when nonzero, else OLK_THREADS when set and
/// nonzero, else the hardware concurrency.
unsigned resolve_workers(unsigned requested);

/// Runs body(i) for i in [0, n) on `workers` threads. Exceptions propagate
/// from the lowest failing index.
void parallel_for(std::uint64_t n, unsigned workers,
                  const std::function<void(std::uint64_t)>& body);

}  // namespace olk

#endif  // OLK_GEOMETRY_HPP
