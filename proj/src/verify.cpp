#include "asym/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "asym/fn_spec.hpp"
#include "asym/impurity.hpp"
#include "asym/purity_order.hpp"
#include "asym/random.hpp"
#include "asym/split.hpp"
#include "asym/tree.hpp"
#include "asym/weighting.hpp"

namespace asym {
namespace {

std::vector<ImpurityFn> concave_catalog() {
  return {entropy(),   gini(),           power_minus(3.0),      power_minus(1.5),
          power_plus(0.5), mzr(0.3),     mzr(0.5),              km_sqrt(),
          cost_insensitive(0.3), sym_quartic(), polynomial({0.0, 1.0, 0.0, -1.0})};
}

std::string at(double p) { return "p=" + format_g17(p); }

CheckResult check(std::string name, const std::function<std::string()>& body) {
  CheckResult r;
  r.name = std::move(name);
  try {
    r.detail = body();
    r.passed = r.detail.empty();
    if (r.passed) r.detail = "ok";
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

SuiteReport axioms_suite(std::uint64_t seed) {
  SuiteReport rep{"axioms", seed, {}};
  auto fns = concave_catalog();
  fns.push_back(quartic_degenerate());

  rep.checks.push_back(check("derivative consistency", [&]() -> std::string {
    Rng rng(seed, 1);
    for (const auto& f : fns) {
      for (int i = 0; i < 100; ++i) {
        const double p = rng.uniform(0.01, 0.99);
        const double h = 1e-3 * std::min(p, 1.0 - p);
        for (int k = 1; k <= 4; ++k) {
          const auto lower = [&](double x) { return k == 1 ? f(x) : f.deriv(k - 1, x); };
          const double fd = central_difference(lower, p, h);
          const double exact = f.deriv(k, p);
          if (std::abs(fd - exact) > 1e-5 * std::max(1.0, std::abs(exact))) {
            return f.spec() + " order " + std::to_string(k) + " " + at(p) +
                   " exact=" + format_g17(exact) + " fd=" + format_g17(fd);
          }
        }
      }
    }
    return {};
  }));

  rep.checks.push_back(check("preimpurity verdicts", []() -> std::string {
    for (const auto& f : {gini(), entropy(), km_sqrt(), sym_quartic()}) {
      if (!is_preimpurity(f)) return f.spec() + " should be a preimpurity function";
    }
    if (is_preimpurity(quartic_degenerate())) return "quartic-degenerate should fail";
    if (is_proper(quartic_degenerate())) return "quartic-degenerate should be improper";
    if (!is_proper(polynomial({0.0, 1.0}))) return "linear polynomial should be proper";
    return {};
  }));

  rep.checks.push_back(check("standard_form idempotence", [&]() -> std::string {
    for (const auto& f : concave_catalog()) {
      const auto once = standard_form(f);
      const auto twice = standard_form(once);
      for (double p : interior_grid(257)) {
        if (std::abs(once(p) - twice(p)) > 1e-12) return f.spec() + " " + at(p);
      }
      if (std::abs(once.at_zero()) > 1e-12 || std::abs(once.at_one()) > 1e-12) {
        return f.spec() + " standard form does not vanish at endpoints";
      }
    }
    return {};
  }));

  rep.checks.push_back(check("equivalence is an equivalence relation", [&]() -> std::string {
    std::vector<ImpurityFn> pool = {gini(), affine(gini(), 2.0, 1.0, -3.0), entropy(),
                                    affine(entropy(), 0.5, -2.0, 1.0), power_minus(3.0),
                                    km_sqrt()};
    const auto eq = [](const ImpurityFn& a, const ImpurityFn& b) {
      return are_equivalent(a, b, 1e-9).has_value();
    };
    for (const auto& a : pool) {
      if (!eq(a, a)) return "not reflexive at " + a.spec();
      for (const auto& b : pool) {
        if (eq(a, b) != eq(b, a)) return "not symmetric at " + a.spec() + " / " + b.spec();
        for (const auto& c : pool) {
          if (eq(a, b) && eq(b, c) && !eq(a, c)) {
            return "not transitive at " + a.spec() + " / " + b.spec() + " / " + c.spec();
          }
        }
      }
    }
    return {};
  }));

  rep.checks.push_back(check("affine recovery", [&]() -> std::string {
    Rng rng(seed, 2);
    for (const auto& f : concave_catalog()) {
      for (int i = 0; i < 5; ++i) {
        const double A = rng.uniform(1e-3, 10.0);
        const double B = rng.uniform(-10.0, 10.0);
        const double C = rng.uniform(-10.0, 10.0);
        const auto map = are_equivalent(f, affine(f, A, B, C), 1e-9);
        if (!map) return f.spec() + " not recognised as equivalent to its affine image";
        if (std::abs(map->scale - A) > 1e-8 || std::abs(map->slope - B) > 1e-8 ||
            std::abs(map->offset - C) > 1e-8) {
          return f.spec() + " recovered (" + format_g17(map->scale) + "," +
                 format_g17(map->slope) + "," + format_g17(map->offset) + ")";
        }
      }
    }
    return {};
  }));
  return rep;
}

SuiteReport weighting_suite(std::uint64_t seed) {
  SuiteReport rep{"weighting", seed, {}};
  const std::vector<ImpurityFn> fns = {gini(), entropy(), power_minus(3.0), mzr(0.3),
                                       cost_insensitive(0.3)};

  rep.checks.push_back(check("T-group-law", [&]() -> std::string {
    Rng rng(seed, 3);
    for (const auto& f : fns) {
      for (int i = 0; i < 20; ++i) {
        const WeightFactor w1(std::exp(rng.uniform(-2.0, 2.0)));
        const WeightFactor w2(std::exp(rng.uniform(-2.0, 2.0)));
        const auto lhs = apply_tw(apply_tw(f, w2), w1);
        const auto rhs = apply_tw(f, WeightFactor(w1.value() * w2.value()));
        const double p = rng.uniform();
        if (std::abs(lhs(p) - rhs(p)) > 1e-10 * (1.0 + std::abs(rhs(p)))) {
          return f.spec() + " w1=" + format_g17(w1.value()) + " w2=" + format_g17(w2.value()) +
                 " " + at(p);
        }
      }
    }
    return {};
  }));

  rep.checks.push_back(check("T inversion", [&]() -> std::string {
    Rng rng(seed, 4);
    for (const auto& f : fns) {
      for (int i = 0; i < 20; ++i) {
        const double w = std::exp(rng.uniform(-2.0, 2.0));
        const auto back = apply_tw(apply_tw(f, WeightFactor(w)), WeightFactor(1.0 / w));
        const double p = rng.uniform();
        if (std::abs(back(p) - f(p)) > 1e-10 * (1.0 + std::abs(f(p)))) {
          return f.spec() + " w=" + format_g17(w) + " " + at(p);
        }
      }
    }
    return {};
  }));

  rep.checks.push_back(check("phi identities", [&]() -> std::string {
    Rng rng(seed, 5);
    for (int i = 0; i < 1000; ++i) {
      const double w = std::exp(rng.uniform(-2.0, 2.0));
      const double p = rng.uniform(0.001, 0.999);
      const WeightFactor wf(w);
      const double ph = phi(wf, p);
      const double u = 1.0 + (w - 1.0) * p;
      const double core = (w - (w - 1.0) * ph) * (w - (w - 1.0) * ph);
      const double hw = 1e-5 * std::max(1.0, w);
      const auto phi_w = [&](double ww) { return phi(WeightFactor(ww), p); };
      // d(phi)/dp differentiated by hand from the definition; the w-derivative is numeric.
      const auto dphi_dp = [&](double ww) {
        const double uu = 1.0 + (ww - 1.0) * p;
        return ww / (uu * uu);
      };
      const double lhs[4] = {1.0 / (u * u), central_difference(phi_w, w, hw),
                             central_difference([&](double pp) { return phi(wf, pp); }, p, 1e-5),
                             central_difference(dphi_dp, w, hw)};
      const double rhs[4] = {core / (w * w), ph * (1.0 - ph) / w, core / w,
                             (1.0 - 2.0 * ph) * core / (w * w)};
      for (int k = 0; k < 4; ++k) {
        if (std::abs(lhs[k] - rhs[k]) > 1e-8 * std::max(1.0, std::abs(rhs[k]))) {
          return "identity " + std::to_string(k + 1) + " w=" + format_g17(w) + " " + at(p);
        }
      }
    }
    return {};
  }));

  rep.checks.push_back(check("G constants", []() -> std::string {
    const std::pair<ImpurityFn, double> cases[] = {
        {entropy(), 1.0}, {gini(), 3.0}, {power_minus(1.5), 2.5}, {power_minus(2.0), 3.0},
        {power_minus(3.0), 4.0}, {power_plus(0.3), 1.3}, {power_plus(0.5), 1.5},
        {cost_insensitive(0.3), 0.0}, {km_sqrt(), 0.0}};
    for (const auto& [f, expected] : cases) {
      const auto prof = g_profile(f);
      for (std::size_t i = 0; i < prof.p.size(); ++i) {
        if (std::abs(prof.g[i] - expected) > 1e-7) {
          return f.spec() + " G=" + format_g17(prof.g[i]) + " " + at(prof.p[i]);
        }
      }
    }
    if (respects_class_weighting(sym_quartic())) return "sym-quartic should fail";
    return {};
  }));

  rep.checks.push_back(check("purity order preserved by T_w", []() -> std::string {
    const auto base = ratio_monotone(power_minus(3.0), gini()).relation;
    for (double w : {0.5, 2.0}) {
      const auto rel = ratio_monotone(apply_tw(power_minus(3.0), WeightFactor(w)),
                                      apply_tw(gini(), WeightFactor(w)))
                           .relation;
      if (rel != base) return "w=" + format_g17(w) + " gave " + to_string(rel);
    }
    return {};
  }));

  rep.checks.push_back(check("monotone weighting family", []() -> std::string {
    const double ws[] = {0.5, 1.0, 2.0, 5.0};
    for (const auto& f : {gini(), entropy(), power_minus(3.0)}) {
      for (double w1 : ws) {
        for (double w2 : ws) {
          if (w1 >= w2) continue;
          const auto rel = ratio_monotone(apply_tw(f, WeightFactor(w1)),
                                          apply_tw(f, WeightFactor(w2)))
                               .relation;
          if (rel != PurityRelation::kFMorePositivelyPure && rel != PurityRelation::kEquivalent) {
            return f.spec() + " w1=" + format_g17(w1) + " w2=" + format_g17(w2) + " gave " +
                   to_string(rel);
          }
        }
      }
    }
    return {};
  }));
  return rep;
}

SuiteReport purity_suite(std::uint64_t seed) {
  SuiteReport rep{"purity", seed, {}};
  const std::pair<ImpurityFn, ImpurityFn> ordered[] = {
      {power_minus(3.0), gini()},
      {cost_insensitive(0.7), cost_insensitive(0.3)},
      {mzr(0.7), mzr(0.3)},
      {entropy(), entropy()},
  };
  const std::pair<ImpurityFn, ImpurityFn> unordered[] = {
      {gini(), power_minus(3.0)},
      {sym_quartic(), gini()},
      {cost_insensitive(0.3), cost_insensitive(0.7)},
  };

  rep.checks.push_back(check("soundness (ratio increasing => empirical pass)", [&]() -> std::string {
    for (const auto& [f, g] : ordered) {
      const auto verdict = ratio_monotone(f, g).relation;
      if (verdict != PurityRelation::kFMorePositivelyPure && verdict != PurityRelation::kEquivalent) {
        return f.spec() + " vs " + g.spec() + " verdict " + to_string(verdict);
      }
      const auto rep2 = empirical_purity_check(f, g, 10000, seed);
      if (!rep2) {
        return f.spec() + " vs " + g.spec() + " failed at trial " +
               std::to_string(*rep2.failing_trial);
      }
    }
    return {};
  }));

  rep.checks.push_back(check("completeness (ratio not increasing => witness)", [&]() -> std::string {
    for (const auto& [f, g] : unordered) {
      if (!find_witness(f, g)) return "no witness for " + f.spec() + " vs " + g.spec();
    }
    for (const auto& [f, g] : ordered) {
      if (find_witness(f, g)) return "spurious witness for " + f.spec() + " vs " + g.spec();
    }
    return {};
  }));

  rep.checks.push_back(check("duality (negative purity with roles swapped)", [&]() -> std::string {
    for (const auto& [f, g] : ordered) {
      const auto r = empirical_negative_purity_check(g, f, 10000, seed);
      if (!r) return g.spec() + " vs " + f.spec() + " failed at trial " +
                     std::to_string(*r.failing_trial);
    }
    return {};
  }));

  rep.checks.push_back(check("key lemma ratio inequality", [&]() -> std::string {
    Rng rng(seed, 6);
    for (const auto& [f, g] : ordered) {
      for (int i = 0; i < 1000; ++i) {
        std::array<double, 4> q{};
        for (auto& x : q) x = rng.uniform(0.001, 0.999);
        std::sort(q.begin(), q.end());
        const double a1 = q[0], a2 = q[1], b1 = q[2], b2 = q[3];
        if (!(a1 < a2 && a2 < b1 && b1 < b2)) continue;
        const auto resid = [&](const ImpurityFn& h, double p) {
          return h(p) - (h(a1) + (h(b1) - h(a1)) * (p - a1) / (b1 - a1));
        };
        const double lhs = resid(f, a2) / resid(g, a2);
        const double rhs = resid(f, b2) / resid(g, b2);
        if (lhs > rhs + 1e-9 * (1.0 + std::abs(rhs))) {
          return f.spec() + " vs " + g.spec() + " a1=" + format_g17(a1) + " a2=" +
                 format_g17(a2) + " b1=" + format_g17(b1) + " b2=" + format_g17(b2);
        }
      }
    }
    return {};
  }));

  rep.checks.push_back(check("argmin invariant under affine maps", [&]() -> std::string {
    Rng rng(seed, 9);
    const auto fns = concave_catalog();
    for (int i = 0; i < 2000; ++i) {
      const auto& f = fns[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(fns.size()) - 1))];
      const double c = rng.uniform(0.01, 0.99);
      std::vector<SplitPoint> s;
      const auto n = rng.integer(1, 6);
      for (std::int64_t k = 0; k < n; ++k) s.push_back({c * rng.uniform(), 1.0 - (1.0 - c) * rng.uniform()});
      if (rng.uniform() < 0.3) s.push_back({c, c});
      const auto g = affine(f, rng.uniform(0.01, 10.0), rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
      const NodeSummary node(1.0, c);
      if (optimal_split_index(f, node, s) != optimal_split_index(g, node, s)) {
        return g.spec() + " c=" + format_g17(c) + " trial " + std::to_string(i);
      }
    }
    return {};
  }));

  rep.checks.push_back(check("purity tradeoff", [&]() -> std::string {
    Rng rng(seed, 10);
    const auto fns = concave_catalog();
    const auto pick = [&]() -> const ImpurityFn& {
      return fns[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(fns.size()) - 1))];
    };
    for (int i = 0; i < 10000; ++i) {
      const auto& f = pick();
      const auto& g = pick();
      const double c = rng.uniform(0.01, 0.99);
      const std::array<SplitPoint, 2> s = {SplitPoint{c * rng.uniform(), 1.0 - (1.0 - c) * rng.uniform()},
                                           SplitPoint{c * rng.uniform(), 1.0 - (1.0 - c) * rng.uniform()}};
      const NodeSummary node(1.0, c);
      const auto sf = optimal_split(f, node, s);
      const auto sg = optimal_split(g, node, s);
      if (sf.right > sg.right && !(sf.left > sg.left)) {
        return f.spec() + " vs " + g.spec() + " c=" + format_g17(c) + " trial " + std::to_string(i);
      }
    }
    return {};
  }));

  rep.checks.push_back(check("maximizer order on mzr family", []() -> std::string {
    const double ms[] = {0.2, 0.3, 0.5, 0.7, 0.8};
    for (double m1 : ms) {
      for (double m2 : ms) {
        if (m1 < m2) continue;
        const auto r = maximizer_order_check(mzr(m1), mzr(m2));
        if (!r) return "m1=" + format_g17(m1) + " m2=" + format_g17(m2);
      }
    }
    return {};
  }));
  return rep;
}

SuiteReport realizer_suite(std::uint64_t seed) {
  SuiteReport rep{"realizer", seed, {}};
  rep.checks.push_back(check("realizer round-trip", [&]() -> std::string {
    Rng rng(seed, 7);
    for (int i = 0; i < 1000; ++i) {
      const double c = rng.uniform(0.01, 0.99);
      const auto draw = [&]() {
        if (rng.uniform() < 0.2) return SplitPoint{c, c};
        return SplitPoint{c * rng.uniform(), 1.0 - (1.0 - c) * rng.uniform()};
      };
      const SplitPoint s1 = draw();
      const SplitPoint s2 = draw();
      const auto prev = measure_prevalences(realize_splits(c, s1, s2));
      const double expected[5] = {c, s1.left, s1.right, s2.left, s2.right};
      const double got[5] = {prev.total, prev.left, prev.right, prev.upper, prev.lower};
      for (int k = 0; k < 5; ++k) {
        if (std::abs(expected[k] - got[k]) > 1e-10) {
          return "c=" + format_g17(c) + " s1=(" + format_g17(s1.left) + "," +
                 format_g17(s1.right) + ") s2=(" + format_g17(s2.left) + "," +
                 format_g17(s2.right) + ")";
        }
      }
    }
    return {};
  }));
  return rep;
}

bool same_splits(const Tree& a, const Tree& b) {
  if (a.nodes().size() != b.nodes().size()) return false;
  for (std::size_t i = 0; i < a.nodes().size(); ++i) {
    const auto& sa = a.nodes()[i].split;
    const auto& sb = b.nodes()[i].split;
    if (sa.has_value() != sb.has_value()) return false;
    if (sa && (sa->axis != sb->axis || sa->threshold != sb->threshold)) return false;
  }
  return true;
}

SuiteReport tree_suite(std::uint64_t seed) {
  SuiteReport rep{"tree", seed, {}};
  GrowOptions opts;
  opts.max_depth = 6;

  rep.checks.push_back(check("weighting/transform equivalence", [&]() -> std::string {
    Rng rng(seed, 8);
    for (int d = 0; d < 10; ++d) {
      const auto n = static_cast<std::size_t>(rng.integer(30, 100));
      const auto data = make_random_dataset(seed * 1000 + static_cast<std::uint64_t>(d), n);
      for (const auto& f : {gini(), entropy(), power_minus(3.0)}) {
        for (double w : {0.2, 0.5, 2.0, 5.0}) {
          const auto weighted = grow_weighted(data, f, WeightFactor(w), opts);
          const auto transformed = grow(data, apply_tw(f, WeightFactor(w)), opts);
          if (!same_splits(weighted, transformed)) {
            return "dataset " + std::to_string(d) + " " + f.spec() + " w=" + format_g17(w);
          }
        }
      }
    }
    return {};
  }));

  rep.checks.push_back(check("impurity monotone along paths", [&]() -> std::string {
    for (int d = 0; d < 10; ++d) {
      const auto data = make_random_dataset(seed * 1000 + 500 + static_cast<std::uint64_t>(d), 60);
      const auto tree = grow(data, entropy(), opts);
      for (const auto& node : tree.nodes()) {
        if (!node.split) continue;
        const double children = tree.nodes()[static_cast<std::size_t>(node.left)].impurity +
                                tree.nodes()[static_cast<std::size_t>(node.right)].impurity;
        if (!(children < node.impurity)) return "dataset " + std::to_string(d);
      }
    }
    return {};
  }));

  rep.checks.push_back(check("cost-insensitive stability", [&]() -> std::string {
    for (int d = 0; d < 5; ++d) {
      const auto data = make_random_dataset(seed * 1000 + 900 + static_cast<std::uint64_t>(d), 50);
      for (double alpha : {0.3, 0.5}) {
        const auto f = cost_insensitive(alpha);
        const auto base = grow(data, f, opts);
        for (double w : {0.25, 0.5, 2.0, 4.0}) {
          if (!same_splits(base, grow_weighted(data, f, WeightFactor(w), opts))) {
            return "dataset " + std::to_string(d) + " alpha=" + format_g17(alpha) +
                   " w=" + format_g17(w);
          }
        }
      }
    }
    return {};
  }));

  rep.checks.push_back(check("leaf prediction is majority", [&]() -> std::string {
    const auto data = make_mixture(seed);
    const auto tree = grow(data, gini(), opts);
    for (const auto& node : tree.nodes()) {
      if (node.split) continue;
      const int majority = node.prevalence >= 0.5 ? 1 : 0;
      if (node.predicted != majority) return "leaf with prevalence " + format_g17(node.prevalence);
    }
    return {};
  }));
  return rep;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"axioms", "weighting", "purity", "realizer",
                                                 "tree"};
  return names;
}

std::vector<SuiteReport> run_suite(std::string_view suite, std::uint64_t seed) {
  using Runner = SuiteReport (*)(std::uint64_t);
  const std::pair<std::string_view, Runner> runners[] = {
      {"axioms", axioms_suite},     {"weighting", weighting_suite}, {"purity", purity_suite},
      {"realizer", realizer_suite}, {"tree", tree_suite},
  };
  std::vector<SuiteReport> out;
  for (const auto& [name, run] : runners) {
    if (suite == "all" || suite == name) out.push_back(run(seed));
  }
  if (out.empty()) throw std::invalid_argument("unknown suite: " + std::string(suite));
  return out;
}

}  // namespace asym
