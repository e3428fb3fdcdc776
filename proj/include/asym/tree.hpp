#ifndef ASYM_TREE_HPP
#define ASYM_TREE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "asym/impurity.hpp"
#include "asym/split.hpp"
#include "asym/weighting.hpp"

namespace asym {

struct LabeledPoint {
  double x = 0.0;
  double y = 0.0;
  int label = 0;  ///< 0 or 1
  double weight = 1.0;
};

/// Nonempty set of weighted two-class planar points.
class WeightedDataset {
 public:
  /// Throws std::invalid_argument if empty, a label is not 0/1, or a weight is not > 0.
  explicit WeightedDataset(std::vector<LabeledPoint> points);

  const std::vector<LabeledPoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

  /// Copy with every Class-1 weight multiplied by w.
  WeightedDataset with_class1_weight(WeightFactor w) const;

  /// CSV with header "x,y,label,weight".
  static WeightedDataset read_csv(std::istream& in);
  void write_csv(std::ostream& out) const;

 private:
  std::vector<LabeledPoint> points_;
};

enum class Axis { kX = 0, kY = 1 };

struct AxisMask {
  bool x = true;
  bool y = true;
};

/// One axis-aligned threshold split of a point subset.
struct Candidate {
  Axis axis = Axis::kX;
  double threshold = 0.0;
  SplitPoint split;           ///< (lower prevalence, higher prevalence)
  double left_weight = 0.0;   ///< weight of the lower-prevalence side
  double right_weight = 0.0;
  bool left_is_below = true;  ///< lower-prevalence side is coordinate < threshold
};

/// Midpoint thresholds between consecutive distinct coordinates on each enabled axis.
std::vector<Candidate> enumerate_candidates(const WeightedDataset& data, AxisMask axes = {});

/// Same, restricted to points[i] for i in `subset`.
std::vector<Candidate> enumerate_candidates(const std::vector<LabeledPoint>& points,
                                            const std::vector<std::size_t>& subset,
                                            AxisMask axes = {});

/// W_l f(a) + W_r f(b).
double candidate_impurity(const ImpurityFn& f, const Candidate& cand);

struct GrowOptions {
  int max_depth = 8;
  double min_leaf_weight = 0.0;
  AxisMask axes{};
  bool allow_improper = false;  ///< skip the up-front concavity check
};

struct SplitRecord {
  Axis axis = Axis::kX;
  double threshold = 0.0;
  bool left_is_below = true;
  SplitPoint split;
  double split_impurity = 0.0;
  double reduction = 0.0;
  double ppv = 0.0;  ///< right-child prevalence b
  double npv = 0.0;  ///< 1 - a
};

struct TreeNode {
  double weight = 0.0;
  double prevalence = 0.0;
  double impurity = 0.0;  ///< W f(c)
  int depth = 0;
  int predicted = 1;
  std::optional<SplitRecord> split;
  int left = -1;   ///< lower-prevalence child
  int right = -1;
};

class Tree {
 public:
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  std::size_t leaf_count() const;
  int predict(double x, double y) const;

 private:
  friend class TreeBuilder;
  std::vector<TreeNode> nodes_;
};

/// Greedy growth with split impurity under f. Throws std::invalid_argument when f is
/// not proper and options.allow_improper is false.
Tree grow(const WeightedDataset& data, const ImpurityFn& f, const GrowOptions& options = {});

/// Scales Class-1 weights by w, then grows with f. Picks the same (axis, threshold) at
/// every node as grow(data, apply_tw(f, w)).
Tree grow_weighted(const WeightedDataset& data, const ImpurityFn& f, WeightFactor w,
                   const GrowOptions& options = {});

/// Two-cluster planar mixture used for the class-weighting demonstrations.
struct MixtureParams {
  std::size_t class0_count = 60;
  std::size_t class1_count = 40;
  double class0_x = -1.0;
  double class0_y = 0.0;
  double class0_spread = 1.0;
  double class1_x = 1.0;
  double class1_y = 0.5;
  double class1_spread = 0.9;
};

WeightedDataset make_mixture(std::uint64_t seed, const MixtureParams& params = {});

/// Unit-weight points with labels drawn from a seeded random rule; for property tests.
WeightedDataset make_random_dataset(std::uint64_t seed, std::size_t n, bool random_weights = true);

}  // namespace asym

#endif  // ASYM_TREE_HPP
