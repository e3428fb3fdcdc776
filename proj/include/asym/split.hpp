#ifndef ASYM_SPLIT_HPP
#define ASYM_SPLIT_HPP

#include <cstddef>
#include <span>

#include "asym/impurity.hpp"

namespace asym {

/// Aggregate of a weighted two-class node: total weight and positive prevalence.
class NodeSummary {
 public:
  /// Throws std::invalid_argument unless weight > 0 and prevalence in [0,1].
  NodeSummary(double weight, double prevalence);

  double weight() const noexcept { return weight_; }
  double prevalence() const noexcept { return prevalence_; }

 private:
  double weight_;
  double prevalence_;
};

/// Left (lower) and right (higher) child prevalences of one candidate split.
struct SplitPoint {
  double left = 0.0;
  double right = 0.0;

  /// (c,c), the node kept whole.
  bool is_degenerate() const noexcept { return left == right; }

  friend bool operator==(const SplitPoint&, const SplitPoint&) = default;
};

/// (c,c) or 0 <= a < c < b <= 1.
bool is_valid_for(const SplitPoint& s, double c) noexcept;

struct ChildWeights {
  double left = 0.0;
  double right = 0.0;
};

/// W(b-c)/(b-a) and W(c-a)/(b-a); the degenerate split gives (W, 0).
ChildWeights child_weights(const NodeSummary& node, const SplitPoint& s);

/// W((b-c)/(b-a) f(a) + (c-a)/(b-a) f(b)), or W f(c) at (c,c).
double split_impurity(const ImpurityFn& f, const NodeSummary& node, const SplitPoint& s);

enum class TieBreak {
  kMaxRight,  ///< largest b, then smallest a
  kMinLeft,   ///< smallest a, then largest b
};

/// Relative band inside which two split impurities count as tied.
inline constexpr double kTieEpsilon = 1e-12;

/// Index of the minimizer of `values`; entries within kTieEpsilon * max|v| of the
/// minimum are ordered by `tie`. Throws std::invalid_argument on empty input.
std::size_t select_optimal(std::span<const double> values, std::span<const SplitPoint> splits,
                           TieBreak tie = TieBreak::kMaxRight);

std::size_t optimal_split_index(const ImpurityFn& f, const NodeSummary& node,
                                std::span<const SplitPoint> candidates,
                                TieBreak tie = TieBreak::kMaxRight);

SplitPoint optimal_split(const ImpurityFn& f, const NodeSummary& node,
                         std::span<const SplitPoint> candidates,
                         TieBreak tie = TieBreak::kMaxRight);

/// One-split classifier: left child predicted negative, right child positive.
struct ConfusionMatrix {
  double tp = 0.0;
  double fn = 0.0;
  double fp = 0.0;
  double tn = 0.0;

  double total() const noexcept { return tp + fn + fp + tn; }
  double ppv() const noexcept { return tp / (tp + fp); }
  double npv() const noexcept { return tn / (tn + fn); }
};

/// Requires a < c < b.
ConfusionMatrix confusion(const NodeSummary& node, const SplitPoint& s);

/// W f(c) minus the split impurity; zero at (c,c).
double impurity_reduction(const ImpurityFn& f, const NodeSummary& node, const SplitPoint& s);

struct ReductionCheck {
  double reduction = 0.0;   ///< W f(c) - split impurity
  double quadrature = 0.0;  ///< W times the weighted integrals of -f''
  double discrepancy = 0.0;
};

/// Evaluates the reduction directly and as
///   (b-c)/(b-a) int_a^c -f''(t)(t-a) dt + (c-a)/(b-a) int_c^b -f''(t)(b-t) dt
/// by adaptive Gauss-Kronrod quadrature. Requires a < c < b.
ReductionCheck impurity_reduction_checked(const ImpurityFn& f, const NodeSummary& node,
                                          const SplitPoint& s);

}  // namespace asym

#endif  // ASYM_SPLIT_HPP
