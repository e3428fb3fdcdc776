#include "asym/split.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace asym {
namespace {

void require_valid(const SplitPoint& s, double c) {
  if (!is_valid_for(s, c)) {
    throw std::invalid_argument("split (" + std::to_string(s.left) + ", " +
                                std::to_string(s.right) + ") is not valid for prevalence " +
                                std::to_string(c));
  }
}

void require_proper_split(const SplitPoint& s, double c) {
  if (!(0.0 <= s.left && s.left < c && c < s.right && s.right <= 1.0)) {
    throw std::invalid_argument("operation requires a non-degenerate split a < c < b");
  }
}

// True when candidate i beats candidate j under the tie order.
bool preferred(const SplitPoint& i, const SplitPoint& j, TieBreak tie) {
  if (tie == TieBreak::kMaxRight) {
    if (i.right != j.right) return i.right > j.right;
    return i.left < j.left;
  }
  if (i.left != j.left) return i.left < j.left;
  return i.right > j.right;
}

}  // namespace

NodeSummary::NodeSummary(double weight, double prevalence)
    : weight_(weight), prevalence_(prevalence) {
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw std::invalid_argument("node weight must be positive");
  }
  if (!(prevalence >= 0.0 && prevalence <= 1.0)) {
    throw std::invalid_argument("node prevalence must lie in [0,1]");
  }
}

bool is_valid_for(const SplitPoint& s, double c) noexcept {
  if (s.left == c && s.right == c) return true;
  return 0.0 <= s.left && s.left < c && c < s.right && s.right <= 1.0;
}

ChildWeights child_weights(const NodeSummary& node, const SplitPoint& s) {
  const double c = node.prevalence();
  require_valid(s, c);
  if (s.is_degenerate()) return {node.weight(), 0.0};
  const double span = s.right - s.left;
  return {node.weight() * (s.right - c) / span, node.weight() * (c - s.left) / span};
}

double split_impurity(const ImpurityFn& f, const NodeSummary& node, const SplitPoint& s) {
  const double c = node.prevalence();
  require_valid(s, c);
  if (s.is_degenerate()) return node.weight() * f(c);
  const double span = s.right - s.left;
  return node.weight() * ((s.right - c) / span * f(s.left) + (c - s.left) / span * f(s.right));
}

std::size_t select_optimal(std::span<const double> values, std::span<const SplitPoint> splits,
                           TieBreak tie) {
  if (values.empty()) throw std::invalid_argument("empty candidate set");
  if (values.size() != splits.size()) throw std::invalid_argument("values/splits size mismatch");
  double lowest = values[0];
  double scale = 0.0;
  for (double v : values) {
    lowest = std::min(lowest, v);
    scale = std::max(scale, std::abs(v));
  }
  const double band = kTieEpsilon * scale;
  std::size_t best = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > lowest + band) continue;
    if (best == values.size() || preferred(splits[i], splits[best], tie)) best = i;
  }
  return best;
}

std::size_t optimal_split_index(const ImpurityFn& f, const NodeSummary& node,
                                std::span<const SplitPoint> candidates, TieBreak tie) {
  if (candidates.empty()) throw std::invalid_argument("optimal_split: empty candidate set");
  std::vector<double> values;
  values.reserve(candidates.size());
  for (const auto& s : candidates) values.push_back(split_impurity(f, node, s));
  return select_optimal(values, candidates, tie);
}

SplitPoint optimal_split(const ImpurityFn& f, const NodeSummary& node,
                         std::span<const SplitPoint> candidates, TieBreak tie) {
  return candidates[optimal_split_index(f, node, candidates, tie)];
}

ConfusionMatrix confusion(const NodeSummary& node, const SplitPoint& s) {
  const double c = node.prevalence();
  require_proper_split(s, c);
  const double a = s.left;
  const double b = s.right;
  const double k = node.weight() / (b - a);
  return {k * (c - a) * b, k * (b - c) * a, k * (c - a) * (1.0 - b), k * (b - c) * (1.0 - a)};
}

double impurity_reduction(const ImpurityFn& f, const NodeSummary& node, const SplitPoint& s) {
  require_valid(s, node.prevalence());
  if (s.is_degenerate()) return 0.0;
  return node.weight() * f(node.prevalence()) - split_impurity(f, node, s);
}

ReductionCheck impurity_reduction_checked(const ImpurityFn& f, const NodeSummary& node,
                                          const SplitPoint& s) {
  const double c = node.prevalence();
  require_proper_split(s, c);
  const double a = s.left;
  const double b = s.right;
  using Integrator = boost::math::quadrature::gauss_kronrod<double, 61>;
  constexpr unsigned kMaxDepth = 20;
  constexpr double kTol = 1e-13;
  const double left = Integrator::integrate(
      [&](double t) { return -f.deriv(2, t) * (t - a); }, a, c, kMaxDepth, kTol);
  const double right = Integrator::integrate(
      [&](double t) { return -f.deriv(2, t) * (b - t); }, c, b, kMaxDepth, kTol);

  ReductionCheck out;
  out.reduction = impurity_reduction(f, node, s);
  out.quadrature = node.weight() * ((b - c) / (b - a) * left + (c - a) / (b - a) * right);
  out.discrepancy = std::abs(out.reduction - out.quadrature);
  return out;
}

}  // namespace asym
