#ifndef OLK_STEPFN_HPP
#define OLK_STEPFN_HPP

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olk/orlicz.hpp"

namespace olk {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A constant piece on the half-open interval [start, start + length).
struct Piece {
  double start = 0.0;
  double length = 0.0;
  double value = 0.0;

  double end() const noexcept { return start + length; }

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// Infinite piece on [start, ∞). Takes `even_value` on cells [2k, 2k+1) and
/// `odd_value` on cells [2k+1, 2k+2); equal values give a constant tail.
struct Tail {
  double start = 0.0;
  double even_value = 0.0;
  double odd_value = 0.0;

  bool is_constant() const noexcept { return even_value == odd_value; }
  double value_at(double t) const;

  friend bool operator==(const Tail&, const Tail&) = default;
};

/// A simple function on [0, γ), γ ∈ (0, ∞], kept in canonical form:
/// finite pieces sorted and disjoint, no zero-valued pieces, contiguous
/// pieces of equal value merged, and at most one infinite tail (γ = ∞ only).
/// Gaps are zero.
class StepFunction {
 public:
  StepFunction() = default;

  static StepFunction make(double domain_len, std::vector<Piece> pieces,
                           std::optional<Tail> tail = std::nullopt);
  static StepFunction zero(double domain_len);
  static StepFunction indicator(double domain_len, double start, double length,
                                double value = 1.0);

  double domain_len() const noexcept { return domain_len_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  const std::optional<Tail>& tail() const noexcept { return tail_; }

  bool is_zero() const noexcept { return pieces_.empty() && !tail_; }
  bool has_infinite_support() const noexcept { return tail_.has_value(); }
  /// End of the last finite piece (0 when there are none).
  double finite_extent() const noexcept;
  double sup_abs() const noexcept;

  double operator()(double t) const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  double domain_len_ = 1.0;
  std::vector<Piece> pieces_;
  std::optional<Tail> tail_;
};

/// One level of x*: value v held on a set of the given measure.
struct Level {
  double value = 0.0;
  double measure = 0.0;

  friend bool operator==(const Level&, const Level&) = default;
};

/// Decreasing rearrangement x* as a right-continuous non-increasing step
/// function: levels with strictly decreasing positive values laid out
/// consecutively from t = 0. Only the last level may have infinite measure.
struct Rearrangement {
  std::vector<Level> levels;

  double total_measure() const noexcept;
  double operator()(double t) const;
  double distribution(double theta) const;

  friend bool operator==(const Rearrangement&, const Rearrangement&) = default;
};

/// d_x(θ) = μ{|x| > θ}; may be +∞.
double distribution(const StepFunction& x, double theta);

Rearrangement rearrange(const StepFunction& x);

enum class CombineOp { Add, Sub };

/// Pointwise x ± y on the common refinement. Throws DomainMismatch when the
/// domains differ.
StepFunction combine(const StepFunction& x, const StepFunction& y, CombineOp op);
StepFunction scale(const StepFunction& x, double c);

/// (x + y)/2 and (x − y)/2.
StepFunction half_sum(const StepFunction& x, const StepFunction& y);
StepFunction half_difference(const StepFunction& x, const StepFunction& y);

/// φ ∘ x, piecewise. Values that overflow become +inf.
StepFunction compose_phi(const OrliczFunction& f, const StepFunction& x);

/// Piecewise translation taking [dst, dst + length) onto [src, src + length).
struct MapSegment {
  double dst = 0.0;
  double src = 0.0;
  double length = 0.0;

  friend bool operator==(const MapSegment&, const MapSegment&) = default;
};

/// Measure-preserving σ : [0, μ(supp x)) → supp x with x* = |x| ∘ σ.
class MeasurePreservingMap {
 public:
  MeasurePreservingMap() = default;
  explicit MeasurePreservingMap(std::vector<MapSegment> segments);

  const std::vector<MapSegment>& segments() const noexcept { return segments_; }
  double measure() const noexcept;
  bool is_identity() const noexcept;

  double forward(double t) const;
  double inverse(double s) const;

 private:
  std::vector<MapSegment> segments_;
};

struct Alignment {
  StepFunction layout;  // x* laid out on [0, μ(supp x))
  MeasurePreservingMap sigma;
};

/// Rearranged layout with an explicit σ. Rejects infinite-measure support.
/// Pieces of equal |value| keep their left-to-right order.
Alignment align(const StepFunction& x);

/// Parses `.steps` text: one `start length value` per line, `inf` allowed
/// for the length; an infinite line may carry a fourth column giving the
/// value on odd unit cells. `#` starts a comment.
StepFunction parse_steps(std::string_view text, double domain_len);
std::string format_steps(const StepFunction& x);

}  // namespace olk

#endif  // OLK_STEPFN_HPP
