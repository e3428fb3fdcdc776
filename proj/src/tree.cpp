#include "asym/tree.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "asym/fn_spec.hpp"
#include "asym/random.hpp"

namespace asym {

WeightedDataset::WeightedDataset(std::vector<LabeledPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("dataset must be nonempty");
  for (const auto& pt : points_) {
    if (pt.label != 0 && pt.label != 1) throw std::invalid_argument("labels must be 0 or 1");
    if (!(pt.weight > 0.0) || !std::isfinite(pt.weight)) {
      throw std::invalid_argument("weights must be positive");
    }
    if (!std::isfinite(pt.x) || !std::isfinite(pt.y)) {
      throw std::invalid_argument("coordinates must be finite");
    }
  }
}

WeightedDataset WeightedDataset::with_class1_weight(WeightFactor w) const {
  auto copy = points_;
  for (auto& pt : copy) {
    if (pt.label == 1) pt.weight *= w.value();
  }
  return WeightedDataset(std::move(copy));
}

WeightedDataset WeightedDataset::read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("dataset CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y,label,weight") {
    throw std::invalid_argument("dataset CSV header must be 'x,y,label,weight'");
  }
  std::vector<LabeledPoint> points;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> fields;
    try {
      fields = parse_real_list(line);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("row " + std::to_string(row) + ": " + e.what());
    }
    if (fields.size() != 4) {
      throw std::invalid_argument("row " + std::to_string(row) + ": expected 4 fields");
    }
    if (fields[2] != 0.0 && fields[2] != 1.0) {
      throw std::invalid_argument("row " + std::to_string(row) + ": label must be 0 or 1");
    }
    points.push_back({fields[0], fields[1], static_cast<int>(fields[2]), fields[3]});
  }
  return WeightedDataset(std::move(points));
}

void WeightedDataset::write_csv(std::ostream& out) const {
  out << "x,y,label,weight\n";
  for (const auto& pt : points_) {
    out << format_g17(pt.x) << ',' << format_g17(pt.y) << ',' << pt.label << ','
        << format_g17(pt.weight) << '\n';
  }
}

std::vector<Candidate> enumerate_candidates(const std::vector<LabeledPoint>& points,
                                            const std::vector<std::size_t>& subset,
                                            AxisMask axes) {
  std::vector<Candidate> out;
  const std::size_t n = subset.size();
  if (n < 2) return out;

  for (Axis axis : {Axis::kX, Axis::kY}) {
    if ((axis == Axis::kX && !axes.x) || (axis == Axis::kY && !axes.y)) continue;
    const auto coord = [&](std::size_t i) {
      return axis == Axis::kX ? points[i].x : points[i].y;
    };
    std::vector<std::size_t> order = subset;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return coord(i) < coord(j); });

    // Prefix sums from below and suffix sums from above keep a pure side exactly pure.
    std::vector<double> below_w(n + 1, 0.0), below_pos(n + 1, 0.0);
    std::vector<double> above_w(n + 1, 0.0), above_pos(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& pt = points[order[k]];
      below_w[k + 1] = below_w[k] + pt.weight;
      below_pos[k + 1] = below_pos[k] + (pt.label == 1 ? pt.weight : 0.0);
    }
    for (std::size_t k = n; k-- > 0;) {
      const auto& pt = points[order[k]];
      above_w[k] = above_w[k + 1] + pt.weight;
      above_pos[k] = above_pos[k + 1] + (pt.label == 1 ? pt.weight : 0.0);
    }

    for (std::size_t k = 1; k < n; ++k) {
      const double lo = coord(order[k - 1]);
      const double hi = coord(order[k]);
      if (!(lo < hi)) continue;
      const double prev_below = below_pos[k] / below_w[k];
      const double prev_above = above_pos[k] / above_w[k];
      Candidate cand;
      cand.axis = axis;
      cand.threshold = 0.5 * (lo + hi);
      cand.left_is_below = prev_below <= prev_above;
      if (cand.left_is_below) {
        cand.split = {prev_below, prev_above};
        cand.left_weight = below_w[k];
        cand.right_weight = above_w[k];
      } else {
        cand.split = {prev_above, prev_below};
        cand.left_weight = above_w[k];
        cand.right_weight = below_w[k];
      }
      out.push_back(cand);
    }
  }
  return out;
}

std::vector<Candidate> enumerate_candidates(const WeightedDataset& data, AxisMask axes) {
  std::vector<std::size_t> all(data.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return enumerate_candidates(data.points(), all, axes);
}

double candidate_impurity(const ImpurityFn& f, const Candidate& cand) {
  return cand.left_weight * f(cand.split.left) + cand.right_weight * f(cand.split.right);
}

std::size_t Tree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return !n.split; }));
}

int Tree::predict(double x, double y) const {
  std::size_t at = 0;
  while (nodes_[at].split) {
    const auto& s = *nodes_[at].split;
    const double v = s.axis == Axis::kX ? x : y;
    const bool below = v < s.threshold;
    at = static_cast<std::size_t>(below == s.left_is_below ? nodes_[at].left : nodes_[at].right);
  }
  return nodes_[at].predicted;
}

class TreeBuilder {
 public:
  TreeBuilder(const WeightedDataset& data, const ImpurityFn& f, const GrowOptions& options)
      : points_(data.points()), f_(f), options_(options) {}

  Tree build() {
    std::vector<std::size_t> all(points_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    grow_node(all, 0);
    return std::move(tree_);
  }

 private:
  // Order among near-equal impurities: larger b, lower axis, lower threshold.
  static bool preferred(const Candidate& i, const Candidate& j) {
    const double db = i.split.right - j.split.right;
    if (std::abs(db) > kTieEpsilon * std::max(std::abs(i.split.right), std::abs(j.split.right))) {
      return db > 0.0;
    }
    if (i.axis != j.axis) return i.axis < j.axis;
    return i.threshold < j.threshold;
  }

  int grow_node(const std::vector<std::size_t>& subset, int depth) {
    double weight = 0.0;
    double pos = 0.0;
    double neg = 0.0;
    for (std::size_t i : subset) {
      weight += points_[i].weight;
      (points_[i].label == 1 ? pos : neg) += points_[i].weight;
    }
    TreeNode node;
    node.weight = weight;
    node.prevalence = neg == 0.0 ? 1.0 : pos / weight;
    node.impurity = weight * f_(node.prevalence);
    node.depth = depth;
    node.predicted = pos >= neg ? 1 : 0;

    const int index = static_cast<int>(tree_.nodes_.size());
    tree_.nodes_.push_back(node);
    if (depth >= options_.max_depth || pos == 0.0 || neg == 0.0) return index;

    auto candidates = enumerate_candidates(points_, subset, options_.axes);
    std::erase_if(candidates, [&](const Candidate& c) {
      return c.left_weight < options_.min_leaf_weight || c.right_weight < options_.min_leaf_weight;
    });
    if (candidates.empty()) return index;

    std::vector<double> values;
    values.reserve(candidates.size());
    double lowest = 0.0;
    double scale = 0.0;
    for (const auto& c : candidates) {
      values.push_back(candidate_impurity(f_, c));
      lowest = values.size() == 1 ? values.back() : std::min(lowest, values.back());
      scale = std::max(scale, std::abs(values.back()));
    }
    const double band = kTieEpsilon * scale;
    std::size_t best = candidates.size();
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (values[k] > lowest + band) continue;
      if (best == candidates.size() || preferred(candidates[k], candidates[best])) best = k;
    }

    const auto& chosen = candidates[best];
    const double reduction = node.impurity - values[best];
    if (reduction <= kTieEpsilon * std::abs(node.impurity)) return index;

    SplitRecord record;
    record.axis = chosen.axis;
    record.threshold = chosen.threshold;
    record.left_is_below = chosen.left_is_below;
    record.split = chosen.split;
    record.split_impurity = values[best];
    record.reduction = reduction;
    record.ppv = chosen.split.right;
    record.npv = 1.0 - chosen.split.left;

    std::vector<std::size_t> lower_side, upper_side;
    for (std::size_t i : subset) {
      const double v = chosen.axis == Axis::kX ? points_[i].x : points_[i].y;
      (v < chosen.threshold ? lower_side : upper_side).push_back(i);
    }
    const auto& left_subset = chosen.left_is_below ? lower_side : upper_side;
    const auto& right_subset = chosen.left_is_below ? upper_side : lower_side;

    tree_.nodes_[static_cast<std::size_t>(index)].split = record;
    const int left = grow_node(left_subset, depth + 1);
    const int right = grow_node(right_subset, depth + 1);
    tree_.nodes_[static_cast<std::size_t>(index)].left = left;
    tree_.nodes_[static_cast<std::size_t>(index)].right = right;
    return index;
  }

  const std::vector<LabeledPoint>& points_;
  const ImpurityFn& f_;
  const GrowOptions& options_;
  Tree tree_;
};

Tree grow(const WeightedDataset& data, const ImpurityFn& f, const GrowOptions& options) {
  if (options.max_depth < 0) throw std::invalid_argument("max_depth must be nonnegative");
  if (!(options.min_leaf_weight >= 0.0)) {
    throw std::invalid_argument("min_leaf_weight must be nonnegative");
  }
  if (!options.allow_improper && !is_proper(f)) {
    throw std::invalid_argument("grow: " + f.spec() +
                                " is not proper (not concave); splits could increase impurity");
  }
  return TreeBuilder(data, f, options).build();
}

Tree grow_weighted(const WeightedDataset& data, const ImpurityFn& f, WeightFactor w,
                   const GrowOptions& options) {
  return grow(data.with_class1_weight(w), f, options);
}

WeightedDataset make_mixture(std::uint64_t seed, const MixtureParams& params) {
  Rng rng(seed);
  std::vector<LabeledPoint> points;
  points.reserve(params.class0_count + params.class1_count);
  for (std::size_t i = 0; i < params.class0_count; ++i) {
    points.push_back({params.class0_x + params.class0_spread * rng.normal(),
                      params.class0_y + params.class0_spread * rng.normal(), 0, 1.0});
  }
  for (std::size_t i = 0; i < params.class1_count; ++i) {
    points.push_back({params.class1_x + params.class1_spread * rng.normal(),
                      params.class1_y + params.class1_spread * rng.normal(), 1, 1.0});
  }
  return WeightedDataset(std::move(points));
}

WeightedDataset make_random_dataset(std::uint64_t seed, std::size_t n, bool random_weights) {
  Rng rng(seed);
  const double angle = rng.uniform(0.0, 6.283185307179586);
  const double offset = rng.uniform(-0.3, 0.3);
  const double noise = rng.uniform(0.05, 0.3);
  std::vector<LabeledPoint> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    LabeledPoint pt;
    pt.x = rng.uniform(-1.0, 1.0);
    pt.y = rng.uniform(-1.0, 1.0);
    const bool side = pt.x * std::cos(angle) + pt.y * std::sin(angle) > offset;
    const bool flip = rng.uniform() < noise;
    pt.label = (side != flip) ? 1 : 0;
    pt.weight = random_weights ? rng.uniform(0.5, 2.0) : 1.0;
    points.push_back(pt);
  }
  return WeightedDataset(std::move(points));
}

}  // namespace asym
