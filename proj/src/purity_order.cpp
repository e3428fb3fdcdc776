#include "asym/purity_order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "asym/fn_spec.hpp"
#include "asym/parallel.hpp"
#include "asym/random.hpp"

namespace asym {
namespace {

std::vector<double> second_derivative_ratio(const ImpurityFn& f, const ImpurityFn& g,
                                            const std::vector<double>& grid) {
  std::vector<double> ratio;
  ratio.reserve(grid.size());
  for (double p : grid) {
    const double fd = f.deriv(2, p);
    const double gd = g.deriv(2, p);
    if (!(fd < 0.0) || !(gd < 0.0)) {
      throw std::domain_error("ratio_monotone: " + (fd < 0.0 ? g.spec() : f.spec()) +
                              " is not strictly concave at p = " + format_g17(p));
    }
    ratio.push_back(fd / gd);
  }
  return ratio;
}

// Line through (a, f(a)) and (b, f(b)) subtracted from f, evaluated at p.
double chord_residual(const ImpurityFn& f, double a, double b, double p) {
  const double fa = f(a);
  const double fb = f(b);
  return f(p) - (fa + (fb - fa) * (p - a) / (b - a));
}

// Abscissa where the chord from (a2, h(a2)) to (b2, h(b2)) crosses zero.
double zero_crossing(double a2, double b2, double ha2, double hb2) {
  return (b2 * ha2 - a2 * hb2) / (ha2 - hb2);
}

template <typename Compare>
EmpiricalReport run_trials(std::size_t trials, std::uint64_t seed, Compare&& violates) {
  EmpiricalReport report;
  report.seed = seed;
  report.trials = trials;
  std::mutex mu;
  std::size_t first = std::numeric_limits<std::size_t>::max();
  parallel_chunks(trials, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      if (violates(sample_instance(seed, t))) {
        std::lock_guard lock(mu);
        first = std::min(first, t);
        return;
      }
    }
  });
  if (first != std::numeric_limits<std::size_t>::max()) {
    report.passed = false;
    report.failing_trial = first;
    report.counterexample = sample_instance(seed, first);
  }
  return report;
}

}  // namespace

std::string to_string(PurityRelation r) {
  switch (r) {
    case PurityRelation::kFMorePositivelyPure: return "f-more-positively-pure";
    case PurityRelation::kGMorePositivelyPure: return "g-more-positively-pure";
    case PurityRelation::kEquivalent: return "equivalent";
    case PurityRelation::kNeither: return "neither";
  }
  return "neither";
}

PurityVerdict ratio_monotone(const ImpurityFn& f, const ImpurityFn& g, int grid, double tol) {
  PurityVerdict verdict;
  auto& ev = verdict.evidence;
  ev.p = interior_grid(grid);
  ev.ratio = second_derivative_ratio(f, g, ev.p);

  const auto [lo, hi] = std::minmax_element(ev.ratio.begin(), ev.ratio.end());
  ev.min_ratio = *lo;
  ev.max_ratio = *hi;

  for (std::size_t i = 0; i + 1 < ev.ratio.size(); ++i) {
    const double band = tol * (1.0 + std::abs(ev.ratio[i]));
    const double step = ev.ratio[i + 1] - ev.ratio[i];
    if (step > band) {
      ++ev.increasing_steps;
      if (!ev.first_increase) ev.first_increase = i;
    } else if (step < -band) {
      ++ev.decreasing_steps;
      if (!ev.first_decrease) ev.first_decrease = i;
    }
  }

  const std::size_t steps = ev.ratio.size() - 1;
  const double max_abs = std::max(std::abs(ev.min_ratio), std::abs(ev.max_ratio));
  if (ev.max_ratio - ev.min_ratio <= tol * (1.0 + max_abs)) {
    verdict.relation = PurityRelation::kEquivalent;
  } else if (ev.decreasing_steps == 0 && ev.increasing_steps > 0) {
    verdict.relation = PurityRelation::kFMorePositivelyPure;
    ev.strict = ev.increasing_steps == steps;
  } else if (ev.increasing_steps == 0 && ev.decreasing_steps > 0) {
    verdict.relation = PurityRelation::kGMorePositivelyPure;
    ev.strict = ev.decreasing_steps == steps;
  } else if (ev.increasing_steps == 0 && ev.decreasing_steps == 0) {
    // Slow drift hidden inside the per-step band; decide by net change.
    verdict.relation = ev.ratio.back() >= ev.ratio.front() ? PurityRelation::kFMorePositivelyPure
                                                           : PurityRelation::kGMorePositivelyPure;
  } else {
    verdict.relation = PurityRelation::kNeither;
  }
  return verdict;
}

PurityInstance sample_instance(std::uint64_t seed, std::size_t trial) {
  Rng rng(seed, trial);
  PurityInstance inst;
  do {
    inst.c = rng.uniform();
  } while (inst.c <= 0.0);
  for (auto& s : inst.splits) {
    do {
      s.left = inst.c * rng.uniform();
    } while (!(s.left < inst.c));
    do {
      s.right = 1.0 - (1.0 - inst.c) * rng.uniform();
    } while (!(s.right > inst.c));
  }
  return inst;
}

EmpiricalReport empirical_purity_check(const ImpurityFn& f, const ImpurityFn& g,
                                       std::size_t trials, std::uint64_t seed) {
  auto report = run_trials(trials, seed, [&](const PurityInstance& inst) {
    const NodeSummary node(1.0, inst.c);
    const auto bf = optimal_split(f, node, inst.splits, TieBreak::kMaxRight);
    const auto bg = optimal_split(g, node, inst.splits, TieBreak::kMaxRight);
    return bf.right < bg.right;
  });
  if (report.counterexample) {
    const NodeSummary node(1.0, report.counterexample->c);
    report.chosen_by_f = optimal_split(f, node, report.counterexample->splits);
    report.chosen_by_g = optimal_split(g, node, report.counterexample->splits);
  }
  return report;
}

EmpiricalReport empirical_negative_purity_check(const ImpurityFn& g, const ImpurityFn& f,
                                                std::size_t trials, std::uint64_t seed) {
  auto report = run_trials(trials, seed, [&](const PurityInstance& inst) {
    const NodeSummary node(1.0, inst.c);
    const auto ag = optimal_split(g, node, inst.splits, TieBreak::kMinLeft);
    const auto af = optimal_split(f, node, inst.splits, TieBreak::kMinLeft);
    return ag.left > af.left;
  });
  if (report.counterexample) {
    const NodeSummary node(1.0, report.counterexample->c);
    report.chosen_by_f = optimal_split(f, node, report.counterexample->splits, TieBreak::kMinLeft);
    report.chosen_by_g = optimal_split(g, node, report.counterexample->splits, TieBreak::kMinLeft);
  }
  return report;
}

std::optional<Witness> find_witness(const ImpurityFn& f, const ImpurityFn& g, int grid,
                                    double tol) {
  const auto p = interior_grid(grid);
  const auto ratio = second_derivative_ratio(f, g, p);

  std::size_t i = 0;
  while (i + 1 < ratio.size()) {
    const auto drops = [&](std::size_t k) {
      return ratio[k] > ratio[k + 1] + tol * (1.0 + std::abs(ratio[k]));
    };
    if (!drops(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < ratio.size() && drops(j)) ++j;
    // r strictly decreases on [p[i], p[j]].
    const double lo = p[i];
    const double width = p[j] - lo;
    i = j;

    const double a1 = lo + 0.2 * width;
    const double a2 = lo + 0.4 * width;
    const double b1 = lo + 0.6 * width;
    const double b2 = lo + 0.8 * width;
    const double fa2 = chord_residual(f, a1, b1, a2);
    const double fb2 = chord_residual(f, a1, b1, b2);
    const double ga2 = chord_residual(g, a1, b1, a2);
    const double gb2 = chord_residual(g, a1, b1, b2);

    Witness w;
    w.lower = zero_crossing(a2, b2, ga2, gb2);
    w.upper = zero_crossing(a2, b2, fa2, fb2);
    if (!(w.lower < w.upper)) continue;
    w.c = 0.5 * (w.lower + w.upper);
    w.splits = {SplitPoint{a1, b1}, SplitPoint{a2, b2}};
    if (!(a2 < w.c && w.c < b1)) continue;

    const NodeSummary node(1.0, w.c);
    const auto by_f = optimal_split(f, node, w.splits);
    const auto by_g = optimal_split(g, node, w.splits);
    if (by_f == w.splits[0] && by_g == w.splits[1]) return w;
  }
  return std::nullopt;
}

RealizedDataset realize_splits(double c, const SplitPoint& s1, const SplitPoint& s2) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("realize_splits requires c in (0,1)");
  if (!is_valid_for(s1, c) || !is_valid_for(s2, c)) {
    throw std::invalid_argument("realize_splits: splits must lie in [0,c) x (c,1] or be (c,c)");
  }

  // Class-1 weight R[i] and Class-0 weight B[i] for quadrant i+1.
  std::array<double, 4> red{};
  std::array<double, 4> blue{};
  const bool deg1 = s1.is_degenerate();
  const bool deg2 = s2.is_degenerate();
  if (!deg1 && !deg2) {
    const double a1 = s1.left, b1 = s1.right, a2 = s2.left, b2 = s2.right;
    red = {b1 * a2 * (c - a1) * (b2 - c) * (1 - c), a1 * a2 * (b1 - c) * (b2 - c) * (1 - c),
           a1 * b2 * (b1 - c) * (c - a2) * (1 - c), b1 * b2 * (c - a1) * (c - a2) * (1 - c)};
    blue = {(1 - b1) * (1 - a2) * (c - a1) * (b2 - c) * c,
            (1 - a1) * (1 - a2) * (b1 - c) * (b2 - c) * c,
            (1 - a1) * (1 - b2) * (b1 - c) * (c - a2) * c,
            (1 - b1) * (1 - b2) * (c - a1) * (c - a2) * c};
  } else if (!deg1) {
    // Horizontal split is (c,c): quadrants pair up left/right.
    const double a1 = s1.left, b1 = s1.right;
    red = {b1 * (c - a1), a1 * (b1 - c), a1 * (b1 - c), b1 * (c - a1)};
    blue = {(1 - b1) * (c - a1), (1 - a1) * (b1 - c), (1 - a1) * (b1 - c), (1 - b1) * (c - a1)};
  } else if (!deg2) {
    // Vertical split is (c,c): quadrants pair up upper/lower.
    const double a2 = s2.left, b2 = s2.right;
    red = {a2 * (b2 - c), a2 * (b2 - c), b2 * (c - a2), b2 * (c - a2)};
    blue = {(1 - a2) * (b2 - c), (1 - a2) * (b2 - c), (1 - b2) * (c - a2), (1 - b2) * (c - a2)};
  } else {
    red.fill(c);
    blue.fill(1 - c);
  }

  static constexpr double kX[4] = {1.0, -1.0, -1.0, 1.0};
  static constexpr double kY[4] = {1.0, 1.0, -1.0, -1.0};
  RealizedDataset out;
  for (int q = 0; q < 4; ++q) {
    out.points[2 * q] = {q + 1, 1, red[q], kX[q], kY[q]};
    out.points[2 * q + 1] = {q + 1, 0, blue[q], kX[q], kY[q]};
  }
  return out;
}

HalfPlanePrevalences measure_prevalences(const RealizedDataset& data) {
  struct Acc {
    double pos = 0.0;
    double all = 0.0;
    double prevalence() const { return pos / all; }
  } total, left, right, upper, lower;
  for (const auto& pt : data.points) {
    const double pos = pt.label == 1 ? pt.weight : 0.0;
    for (Acc* acc : {&total, pt.x < 0 ? &left : &right, pt.y > 0 ? &upper : &lower}) {
      acc->pos += pos;
      acc->all += pt.weight;
    }
  }
  return {total.prevalence(), left.prevalence(), right.prevalence(), upper.prevalence(),
          lower.prevalence()};
}

MaximizerOrder maximizer_order_check(const ImpurityFn& f, const ImpurityFn& g, double tol) {
  constexpr double kEndpointTol = 1e-12;
  for (const auto* fn : {&f, &g}) {
    if (std::abs(fn->at_zero()) > kEndpointTol || std::abs(fn->at_one()) > kEndpointTol) {
      throw std::invalid_argument("maximizer_order_check: " + fn->spec() +
                                  " does not vanish at the endpoints; apply standard_form first");
    }
  }
  const auto verdict = ratio_monotone(f, g);
  if (verdict.relation != PurityRelation::kFMorePositivelyPure &&
      verdict.relation != PurityRelation::kEquivalent) {
    throw std::invalid_argument("maximizer_order_check: f does not split more positively purely "
                                "than g (verdict " + to_string(verdict.relation) + ")");
  }
  MaximizerOrder out;
  out.maximizer_f = maximizer(f);
  out.maximizer_g = maximizer(g);
  out.passed = out.maximizer_f >= out.maximizer_g - tol;
  return out;
}

}  // namespace asym
