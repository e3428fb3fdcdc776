#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "asym/fn_spec.hpp"
#include "asym/impurity.hpp"
#include "asym/purity_order.hpp"
#include "asym/split.hpp"
#include "asym/tree.hpp"
#include "asym/verify.hpp"
#include "asym/weighting.hpp"

namespace asym::cli {
namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Output {
  std::string body;
  int code = 0;
};

Json split_json(const SplitPoint& s) { return Json{{"a", s.left}, {"b", s.right}}; }

SplitPoint parse_split(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw UsageError("split must be a:b, got '" + std::string(text) + "'");
  const auto a = parse_real_list(text.substr(0, colon));
  const auto b = parse_real_list(text.substr(colon + 1));
  if (a.size() != 1 || b.size() != 1) throw UsageError("split must be a:b, got '" + std::string(text) + "'");
  return {a[0], b[0]};
}

std::vector<SplitPoint> parse_split_list(std::string_view text) {
  std::vector<SplitPoint> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_split(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void require_valid(const std::vector<SplitPoint>& splits, double c) {
  for (const auto& s : splits) {
    if (!is_valid_for(s, c)) {
      throw UsageError("split (" + format_shortest(s.left) + "," + format_shortest(s.right) +
                       ") is not valid for c=" + format_shortest(c));
    }
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_row(std::initializer_list<double> values) {
  std::string line;
  for (double v : values) {
    if (!line.empty()) line += ',';
    line += format_g17(v);
  }
  return line + "\n";
}

MixtureParams mixture_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("mixture file must hold a JSON object");
  MixtureParams m;
  for (const auto& [key, value] : j.items()) {
    if (key == "class0_count") m.class0_count = value.get<std::size_t>();
    else if (key == "class1_count") m.class1_count = value.get<std::size_t>();
    else if (key == "class0_x") m.class0_x = value.get<double>();
    else if (key == "class0_y") m.class0_y = value.get<double>();
    else if (key == "class0_spread") m.class0_spread = value.get<double>();
    else if (key == "class1_x") m.class1_x = value.get<double>();
    else if (key == "class1_y") m.class1_y = value.get<double>();
    else if (key == "class1_spread") m.class1_spread = value.get<double>();
    else throw UsageError("unknown mixture key: " + key);
  }
  if (m.class0_count + m.class1_count == 0) throw UsageError("mixture has no points");
  return m;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// catalog ---------------------------------------------------------------------

Output cmd_catalog(std::uint64_t seed) {
  Json list = Json::array();
  for (const auto& entry : catalog_entries()) {
    const auto f = catalog_lookup(entry.name, entry.example_params);
    Json item{{"name", entry.name},
              {"formula", entry.formula},
              {"parameters", entry.param_range},
              {"arity", entry.arity},
              {"example", f.spec()}};
    const bool pre = static_cast<bool>(is_preimpurity(f));
    item["preimpurity"] = pre;
    item["proper"] = static_cast<bool>(is_proper(f));
    item["vanishes_at_endpoints"] = f.at_zero() == 0.0 && f.at_one() == 0.0;
    if (pre) {
      const auto g = g_profile(f);
      const auto [lo, hi] = std::minmax_element(g.g.begin(), g.g.end());
      Json gs{{"min", *lo}, {"max", *hi}};
      gs["constant"] = *hi - *lo <= 2.0 * kDefaultGTol ? Json(std::round((*lo + *hi) * 5e8) / 1e9) : Json(nullptr);
      item["G"] = gs;
      item["respects_class_weighting"] = static_cast<bool>(respects_class_weighting(f));
      item["cost_insensitive"] = static_cast<bool>(is_cost_insensitive(f));
      item["maximizer"] = maximizer(f);
    } else {
      item["G"] = nullptr;
      item["respects_class_weighting"] = nullptr;
      item["cost_insensitive"] = nullptr;
      item["maximizer"] = nullptr;
    }
    list.push_back(item);
  }
  return {dump(Json{{"seed", seed}, {"functions", list}})};
}

// split -----------------------------------------------------------------------

struct SplitArgs {
  std::string fn;
  double c = 0.0;
  double weight = 1.0;
  std::string candidates;
  std::string tie = "max-right";
};

Output cmd_split(const SplitArgs& a, std::uint64_t seed) {
  const auto f = parse_fn_spec(a.fn);
  const NodeSummary node(a.weight, a.c);
  const auto splits = parse_split_list(a.candidates);
  require_valid(splits, a.c);
  const TieBreak tie = a.tie == "min-left" ? TieBreak::kMinLeft : TieBreak::kMaxRight;

  Json rows = Json::array();
  for (const auto& s : splits) {
    const auto w = child_weights(node, s);
    Json row = split_json(s);
    row["left_weight"] = w.left;
    row["right_weight"] = w.right;
    row["impurity"] = split_impurity(f, node, s);
    row["reduction"] = impurity_reduction(f, node, s);
    if (s.is_degenerate()) {
      row["ppv"] = nullptr;
      row["npv"] = nullptr;
    } else {
      const auto m = confusion(node, s);
      row["ppv"] = m.ppv();
      row["npv"] = m.npv();
      row["confusion"] = Json{{"tp", m.tp}, {"fn", m.fn}, {"fp", m.fp}, {"tn", m.tn}};
    }
    rows.push_back(row);
  }
  const auto best = optimal_split_index(f, node, splits, tie);
  Json out{{"seed", seed},     {"fn", f.spec()},      {"c", a.c},
           {"weight", a.weight}, {"node_impurity", a.weight * f(a.c)}, {"tie_break", a.tie},
           {"candidates", rows}, {"winner", best},     {"winning_split", split_json(splits[best])}};
  return {dump(out)};
}

// compare ---------------------------------------------------------------------

struct CompareArgs {
  std::string f;
  std::string g;
  std::size_t trials = 10000;
  int grid = kDefaultGrid;
};

Json empirical_json(const EmpiricalReport& r, const std::string& claim) {
  Json j{{"claim", claim}, {"passed", r.passed}, {"trials", r.trials}, {"seed", r.seed}};
  if (r.failing_trial) {
    j["failing_trial"] = *r.failing_trial;
    j["counterexample"] = Json{{"c", r.counterexample->c},
                               {"splits", Json::array({split_json(r.counterexample->splits[0]),
                                                       split_json(r.counterexample->splits[1])})},
                               {"chosen_by_first", split_json(r.chosen_by_f)},
                               {"chosen_by_second", split_json(r.chosen_by_g)}};
  } else {
    j["failing_trial"] = nullptr;
    j["counterexample"] = nullptr;
  }
  return j;
}

Output cmd_compare(const CompareArgs& a, std::uint64_t seed) {
  const auto f = parse_fn_spec(a.f);
  const auto g = parse_fn_spec(a.g);
  const auto verdict = ratio_monotone(f, g, a.grid);
  const auto& ev = verdict.evidence;
  const auto at = [&](const std::optional<std::size_t>& i) {
    return i ? Json(ev.p[*i]) : Json(nullptr);
  };
  Json out{{"seed", seed}, {"f", f.spec()}, {"g", g.spec()}, {"verdict", to_string(verdict.relation)}};
  out["evidence"] = Json{{"grid", a.grid},
                         {"min_ratio", ev.min_ratio},
                         {"max_ratio", ev.max_ratio},
                         {"increasing_steps", ev.increasing_steps},
                         {"decreasing_steps", ev.decreasing_steps},
                         {"first_increase_p", at(ev.first_increase)},
                         {"first_decrease_p", at(ev.first_decrease)},
                         {"strict", ev.strict}};
  out["positive_check"] = empirical_json(empirical_purity_check(f, g, a.trials, seed),
                                         "f splits more positively purely than g");
  out["negative_check"] = empirical_json(empirical_negative_purity_check(g, f, a.trials, seed),
                                         "g splits more negatively purely than f");
  if (const auto w = find_witness(f, g, a.grid)) {
    out["witness"] = Json{{"c", w->c},
                          {"splits", Json::array({split_json(w->splits[0]), split_json(w->splits[1])})},
                          {"c_lower", w->lower},
                          {"c_upper", w->upper},
                          {"chosen_by_f", split_json(optimal_split(f, NodeSummary(1.0, w->c), w->splits))},
                          {"chosen_by_g", split_json(optimal_split(g, NodeSummary(1.0, w->c), w->splits))}};
  } else {
    out["witness"] = nullptr;
  }
  if (f.at_zero() == 0.0 && f.at_one() == 0.0 && g.at_zero() == 0.0 && g.at_one() == 0.0) {
    out["maximizers"] = Json{{"f", maximizer(f)}, {"g", maximizer(g)}};
  } else {
    out["maximizers"] = nullptr;
  }
  return {dump(out)};
}

// transform -------------------------------------------------------------------

struct TransformArgs {
  std::string fn;
  double w = 1.0;
  int points = 101;
  std::string format = "json";
};

Output cmd_transform(const TransformArgs& a, std::uint64_t seed) {
  const auto f = parse_fn_spec(a.fn);
  const auto t = apply_tw(f, WeightFactor(a.w));
  if (a.points < 2) throw UsageError("--points must be at least 2");
  if (a.format == "csv") {
    std::string body = "p,f,tw\n";
    for (int i = 0; i < a.points; ++i) {
      const double p = static_cast<double>(i) / (a.points - 1);
      body += csv_row({p, f(p), t(p)});
    }
    return {body};
  }
  Json samples = Json::array();
  for (int i = 0; i < a.points; ++i) {
    const double p = static_cast<double>(i) / (a.points - 1);
    samples.push_back(Json{{"p", p}, {"f", f(p)}, {"tw", t(p)}});
  }
  Json out{{"seed", seed}, {"fn", f.spec()}, {"w", a.w}, {"spec", t.spec()}};
  out["preimpurity"] = static_cast<bool>(is_preimpurity(t));
  out["vanishes_at_endpoints"] = t.at_zero() == 0.0 && t.at_one() == 0.0;
  if (const auto eq = are_equivalent(f, t, 1e-8)) {
    out["equivalent_to_input"] = Json{{"scale", eq->scale}, {"slope", eq->slope}, {"offset", eq->offset}};
  } else {
    out["equivalent_to_input"] = nullptr;
  }
  out["samples"] = samples;
  return {dump(out)};
}

// gprofile --------------------------------------------------------------------

struct GProfileArgs {
  std::string fn;
  int grid = kDefaultGrid;
  std::string format = "csv";
};

Output cmd_gprofile(const GProfileArgs& a, std::uint64_t seed) {
  const auto f = parse_fn_spec(a.fn);
  const auto prof = g_profile(f, a.grid);
  if (a.format == "csv") {
    std::string body = "p,G,H,Hprime\n";
    for (std::size_t i = 0; i < prof.p.size(); ++i) {
      body += csv_row({prof.p[i], prof.g[i], prof.h[i], prof.h_prime[i]});
    }
    return {body};
  }
  const auto respects = respects_class_weighting(f, a.grid);
  const auto insensitive = is_cost_insensitive(f, a.grid);
  Json rows = Json::array();
  for (std::size_t i = 0; i < prof.p.size(); ++i) {
    rows.push_back(Json{{"p", prof.p[i]}, {"G", prof.g[i]}, {"H", prof.h[i]}, {"Hprime", prof.h_prime[i]}});
  }
  Json out{{"seed", seed},
           {"fn", f.spec()},
           {"grid", a.grid},
           {"min_G", respects.min_g},
           {"argmin_p", respects.argmin_p},
           {"max_abs_G", insensitive.max_abs_g},
           {"respects_class_weighting", respects.respects},
           {"cost_insensitive", insensitive.insensitive},
           {"profile", rows}};
  return {dump(out)};
}

// realize ---------------------------------------------------------------------

struct RealizeArgs {
  double c = 0.5;
  std::string s1;
  std::string s2;
  std::string format = "csv";
};

Output cmd_realize(const RealizeArgs& a, std::uint64_t seed) {
  const auto data = realize_splits(a.c, parse_split(a.s1), parse_split(a.s2));
  if (a.format == "csv") {
    std::string body = "quadrant,class,weight,x,y\n";
    for (const auto& pt : data.points) {
      body += std::to_string(pt.quadrant) + "," + std::to_string(pt.label) + "," + format_g17(pt.weight) + "," +
              format_g17(pt.x) + "," + format_g17(pt.y) + "\n";
    }
    return {body};
  }
  Json pts = Json::array();
  for (const auto& pt : data.points) {
    pts.push_back(Json{{"quadrant", pt.quadrant}, {"class", pt.label}, {"weight", pt.weight}, {"x", pt.x}, {"y", pt.y}});
  }
  const auto prev = measure_prevalences(data);
  Json out{{"seed", seed}, {"c", a.c}, {"points", pts}};
  out["prevalences"] = Json{{"total", prev.total}, {"left", prev.left}, {"right", prev.right},
                            {"upper", prev.upper}, {"lower", prev.lower}};
  return {dump(out)};
}

// grow ------------------------------------------------------------------------

struct GrowArgs {
  std::string data;
  std::string mixture;
  std::string fn;
  double class1_weight = 1.0;
  int max_depth = 8;
  double min_leaf_weight = 0.0;
  std::string axes = "xy";
  bool allow_improper = false;
};

Json node_json(const Tree& t, int index) {
  const auto& n = t.nodes()[index];
  Json j{{"W", n.weight}, {"c", n.prevalence}, {"impurity", n.impurity}, {"depth", n.depth},
         {"predicted", n.predicted}};
  if (!n.split) {
    j["leaf"] = true;
    return j;
  }
  const auto& s = *n.split;
  j["leaf"] = false;
  j["axis"] = s.axis == Axis::kX ? "x" : "y";
  j["threshold"] = s.threshold;
  j["left_is_below"] = s.left_is_below;
  j["a"] = s.split.left;
  j["b"] = s.split.right;
  j["split_impurity"] = s.split_impurity;
  j["reduction"] = s.reduction;
  j["ppv"] = s.ppv;
  j["npv"] = s.npv;
  j["left"] = node_json(t, n.left);
  j["right"] = node_json(t, n.right);
  return j;
}

Output cmd_grow(const GrowArgs& a, std::uint64_t seed) {
  const auto f = parse_fn_spec(a.fn);
  std::optional<WeightedDataset> data;
  Json source;
  if (!a.data.empty()) {
    std::ifstream in(a.data);
    if (!in) throw std::runtime_error("cannot open " + a.data);
    data = WeightedDataset::read_csv(in);
    source = Json{{"csv", a.data}};
  } else {
    const MixtureParams params = a.mixture.empty() ? MixtureParams{} : mixture_from_json(read_json_file(a.mixture));
    data = make_mixture(seed, params);
    source = Json{{"mixture", a.mixture.empty() ? Json("default") : Json(a.mixture)}, {"seed", seed}};
  }
  GrowOptions opts;
  opts.max_depth = a.max_depth;
  opts.min_leaf_weight = a.min_leaf_weight;
  opts.allow_improper = a.allow_improper;
  if (a.axes == "x") opts.axes = AxisMask{true, false};
  else if (a.axes == "y") opts.axes = AxisMask{false, true};
  const auto tree = grow_weighted(*data, f, WeightFactor(a.class1_weight), opts);
  Json out{{"seed", seed},
           {"fn", f.spec()},
           {"class1_weight", a.class1_weight},
           {"max_depth", a.max_depth},
           {"min_leaf_weight", a.min_leaf_weight},
           {"axes", a.axes},
           {"data", source},
           {"points", data->size()},
           {"nodes", tree.nodes().size()},
           {"leaves", tree.leaf_count()},
           {"tree", node_json(tree, 0)}};
  return {dump(out)};
}

// plotdata --------------------------------------------------------------------

struct PlotArgs {
  std::string fn;
  double c = 0.5;
  std::string splits;
  int points = 512;
  std::string format = "csv";
};

Output cmd_plotdata(const PlotArgs& a, std::uint64_t seed) {
  const auto f = parse_fn_spec(a.fn);
  if (a.points < 2) throw UsageError("--points must be at least 2");
  std::vector<SplitPoint> splits;
  if (!a.splits.empty()) splits = parse_split_list(a.splits);
  require_valid(splits, a.c);
  const NodeSummary unit(1.0, a.c);
  if (a.format == "csv") {
    std::string body = "row,p,f,a,fa,b,fb,c,chord\n";
    for (int i = 0; i < a.points; ++i) {
      const double p = static_cast<double>(i) / (a.points - 1);
      body += "curve," + format_g17(p) + "," + format_g17(f(p)) + ",,,,,,\n";
    }
    for (const auto& s : splits) {
      body += "chord,,," + format_g17(s.left) + "," + format_g17(f(s.left)) + "," + format_g17(s.right) + "," +
              format_g17(f(s.right)) + "," + format_g17(a.c) + "," + format_g17(split_impurity(f, unit, s)) + "\n";
    }
    return {body};
  }
  Json curve = Json::array();
  for (int i = 0; i < a.points; ++i) {
    const double p = static_cast<double>(i) / (a.points - 1);
    curve.push_back(Json{{"p", p}, {"f", f(p)}});
  }
  Json chords = Json::array();
  for (const auto& s : splits) {
    chords.push_back(Json{{"a", s.left}, {"fa", f(s.left)}, {"b", s.right}, {"fb", f(s.right)},
                          {"c", a.c}, {"chord", split_impurity(f, unit, s)}});
  }
  return {dump(Json{{"seed", seed}, {"fn", f.spec()}, {"curve", curve}, {"chords", chords}})};
}

// verify ----------------------------------------------------------------------

Output cmd_verify(const std::string& suite, std::uint64_t seed) {
  const auto reports = run_suite(suite, seed);
  bool all = true;
  Json suites = Json::array();
  for (const auto& r : reports) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
      checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    suites.push_back(Json{{"suite", r.suite}, {"passed", r.passed()}, {"checks", checks}});
    all = all && r.passed();
  }
  return {dump(Json{{"seed", seed}, {"suite", suite}, {"passed", all}, {"suites", suites}}), all ? 0 : 1};
}

// driver ----------------------------------------------------------------------

std::string config_value(const Json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return format_shortest(v.get<double>());
  if (v.is_array()) {
    std::string joined;
    for (const auto& e : v) {
      if (!joined.empty()) joined += ',';
      if (e.is_array() && e.size() == 2) {
        joined += config_value(e[0], key) + ":" + config_value(e[1], key);
      } else {
        joined += config_value(e, key);
      }
    }
    return joined;
  }
  throw UsageError("unsupported value for config key '" + key + "'");
}

// Expands a JSON config into flags inserted right after the subcommand name, so
// flags given on the command line (which come later) take precedence.
std::vector<std::string> apply_config(const Json& cfg, std::vector<std::string> args, CLI::App& app) {
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  const auto is_sub = [&](const std::string& s) { return app.get_subcommand_no_throw(s) != nullptr; };
  if (args.empty() || !is_sub(args.front())) {
    if (!cfg.contains("command") || !cfg["command"].is_string()) {
      throw UsageError("no subcommand given on the command line or as config key 'command'");
    }
    args.insert(args.begin(), cfg["command"].get<std::string>());
  }
  if (!is_sub(args.front())) throw UsageError("unknown command: " + args.front());
  if (cfg.contains("command") && cfg["command"] != args.front()) {
    throw UsageError("config is for command '" + cfg["command"].get<std::string>() + "'");
  }
  CLI::App* sub = app.get_subcommand(args.front());
  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") continue;
    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("unknown config key for " + args.front() + ": " + key);
    if (opt->get_expected_min() == 0) {
      if (!value.is_boolean()) throw UsageError("config key '" + key + "' must be true or false");
      if (value.get<bool>()) extra.push_back("--" + key);
      continue;
    }
    extra.push_back("--" + key);
    extra.push_back(config_value(value, key));
  }
  args.insert(args.begin() + 1, extra.begin(), extra.end());
  return args;
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << Json{{"error", Json{{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Impurity functions, purity orderings and class weighting for decision trees", "asym"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", "asym 1.0.0");

  std::uint64_t seed = 1;
  std::string output;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Random seed, echoed in the output")->capture_default_str();
    sub->add_option("--output", output, "Write to this file instead of stdout");
  };
  const auto format_opt = [](CLI::App* sub, std::string& target) {
    sub->add_option("--format", target, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  };
  const auto fn_check = CLI::Validator(
      [](std::string& s) {
        try {
          parse_fn_spec(s);
        } catch (const std::exception& e) {
          return std::string(e.what());
        }
        return std::string();
      },
      "SPEC");

  std::function<Output()> action;

  auto* catalog = app.add_subcommand("catalog", "List catalog functions and their properties");
  common(catalog);
  catalog->callback([&] { action = [&] { return cmd_catalog(seed); }; });

  SplitArgs split_args;
  auto* split = app.add_subcommand("split", "Score candidate splits of one node");
  common(split);
  split->add_option("--fn", split_args.fn, "Impurity function spec")->required();
  split->add_option("--c", split_args.c, "Node prevalence")->required();
  split->add_option("--weight", split_args.weight, "Node weight")->capture_default_str();
  split->add_option("--candidates", split_args.candidates, "a1:b1,a2:b2,...")->required();
  split->add_option("--tie", split_args.tie, "Tie-break order")
      ->check(CLI::IsMember({"max-right", "min-left"}))
      ->capture_default_str();
  split->callback([&] { action = [&] { return cmd_split(split_args, seed); }; });

  CompareArgs compare_args;
  auto* compare = app.add_subcommand("compare", "Decide the purity ordering of two functions");
  common(compare);
  compare->add_option("--f", compare_args.f, "First function spec")->required();
  compare->add_option("--g", compare_args.g, "Second function spec")->required();
  compare->add_option("--trials", compare_args.trials, "Empirical trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  compare->add_option("--grid", compare_args.grid, "Ratio grid size")->check(CLI::Range(3, 1000000))->capture_default_str();
  compare->callback([&] { action = [&] { return cmd_compare(compare_args, seed); }; });

  TransformArgs transform_args;
  auto* transform = app.add_subcommand("transform", "Apply the class-weight transform T_w");
  common(transform);
  transform->add_option("--fn", transform_args.fn, "Impurity function spec")->required();
  transform->add_option("--w", transform_args.w, "Class-1 weight factor")->required();
  transform->add_option("--points", transform_args.points, "Sample count")->capture_default_str();
  format_opt(transform, transform_args.format);
  transform->callback([&] { action = [&] { return cmd_transform(transform_args, seed); }; });

  GProfileArgs gprofile_args;
  auto* gprofile = app.add_subcommand("gprofile", "Tabulate G, H and H' on a grid");
  common(gprofile);
  gprofile->add_option("--fn", gprofile_args.fn, "Impurity function spec")->required();
  gprofile->add_option("--grid", gprofile_args.grid, "Grid size")->check(CLI::Range(2, 10000000))->capture_default_str();
  format_opt(gprofile, gprofile_args.format);
  gprofile->callback([&] { action = [&] { return cmd_gprofile(gprofile_args, seed); }; });

  RealizeArgs realize_args;
  auto* realize = app.add_subcommand("realize", "Build an eight-point dataset realizing two splits");
  common(realize);
  realize->add_option("--c", realize_args.c, "Overall prevalence")->required();
  realize->add_option("--s1", realize_args.s1, "Vertical split a:b")->required();
  realize->add_option("--s2", realize_args.s2, "Horizontal split a:b")->required();
  format_opt(realize, realize_args.format);
  realize->callback([&] { action = [&] { return cmd_realize(realize_args, seed); }; });

  GrowArgs grow_args;
  auto* grow_cmd = app.add_subcommand("grow", "Grow a classification tree");
  common(grow_cmd);
  auto* data_opt = grow_cmd->add_option("--data", grow_args.data, "CSV with header x,y,label,weight");
  grow_cmd->add_option("--mixture", grow_args.mixture, "JSON mixture parameters (used when --data is absent)")
      ->excludes(data_opt);
  grow_cmd->add_option("--fn", grow_args.fn, "Impurity function spec")->required();
  grow_cmd->add_option("--class1-weight", grow_args.class1_weight, "Class-1 weight factor")->capture_default_str();
  grow_cmd->add_option("--max-depth", grow_args.max_depth, "Depth limit")->check(CLI::NonNegativeNumber)->capture_default_str();
  grow_cmd->add_option("--min-leaf-weight", grow_args.min_leaf_weight, "Minimum child weight")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  grow_cmd->add_option("--axes", grow_args.axes, "Split axes")->check(CLI::IsMember({"x", "y", "xy"}))->capture_default_str();
  grow_cmd->add_flag("--allow-improper", grow_args.allow_improper, "Allow non-concave functions");
  grow_cmd->callback([&] { action = [&] { return cmd_grow(grow_args, seed); }; });

  PlotArgs plot_args;
  auto* plot = app.add_subcommand("plotdata", "Curve samples plus split chords");
  common(plot);
  plot->add_option("--fn", plot_args.fn, "Impurity function spec")->required();
  plot->add_option("--c", plot_args.c, "Node prevalence")->required();
  plot->add_option("--splits", plot_args.splits, "a1:b1,a2:b2,...");
  plot->add_option("--points", plot_args.points, "Curve samples")->capture_default_str();
  format_opt(plot, plot_args.format);
  plot->callback([&] { action = [&] { return cmd_plotdata(plot_args, seed); }; });

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  common(verify);
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("suite,--suite", suite, "Suite name")->check(CLI::IsMember(suites))->capture_default_str();
  verify->callback([&] { action = [&] { return cmd_verify(suite, seed); }; });

  for (auto* sub : {split, compare, transform, gprofile, grow_cmd, plot}) {
    for (const char* name : {"--fn", "--f", "--g"}) {
      if (auto* opt = sub->get_option_no_throw(name)) opt->check(fn_check);
    }
  }

  try {
    std::optional<std::string> config_path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config") {
        if (i + 1 >= args.size()) throw UsageError("--config needs a path");
        config_path = args[++i];
      } else if (args[i].rfind("--config=", 0) == 0) {
        config_path = args[i].substr(9);
      } else {
        rest.push_back(args[i]);
      }
    }
    if (config_path) rest = apply_config(read_json_file(*config_path), std::move(rest), app);

    std::reverse(rest.begin(), rest.end());
    try {
      app.parse(rest);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      emit_error(err, "usage", e.what());
      return 2;
    }

    const Output result = action();
    if (output.empty()) {
      out << result.body;
    } else {
      std::ofstream file(output, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write " + output);
      file << result.body;
    }
    return result.code;
  } catch (const UsageError& e) {
    emit_error(err, "usage", e.what());
  } catch (const std::invalid_argument& e) {
    emit_error(err, "invalid-argument", e.what());
  } catch (const std::domain_error& e) {
    emit_error(err, "domain", e.what());
  } catch (const Json::exception& e) {
    emit_error(err, "config", e.what());
  } catch (const std::exception& e) {
    emit_error(err, "runtime", e.what());
  }
  return 2;
}

}  // namespace asym::cli
