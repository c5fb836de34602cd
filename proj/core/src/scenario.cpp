#include "suptail/scenario.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "suptail/bounds.hpp"
#include "suptail/covering.hpp"
#include "suptail/discretize.hpp"
#include "suptail/dyadic.hpp"
#include "suptail/halving.hpp"
#include "suptail/intro_example.hpp"
#include "suptail/report.hpp"
#include "suptail/serialize.hpp"
#include "suptail/tail_exact.hpp"
#include "suptail/tail_mc.hpp"
#include "suptail/vc.hpp"

namespace suptail {

namespace {

using Json = nlohmann::ordered_json;

struct RunContext {
  std::uint64_t seed = 1;
  int workers = 1;
  std::filesystem::path out_dir;
  std::filesystem::path scenario_dir;
  long assertion_failures = 0;
  std::vector<std::string> artifacts;
  std::ostringstream summary;
};

[[noreturn]] void fail(const std::string& context, const std::string& message) {
  throw ScenarioError(context + ": " + message);
}

void require_keys(const Json& obj, const std::string& context,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
  if (!obj.is_object()) fail(context, "expected an object");
  for (const char* key : required) {
    if (!obj.contains(key)) fail(context, std::string("missing key '") + key + "'");
  }
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : required) known = known || key == k;
    for (const char* k : optional) known = known || key == k;
    if (!known) fail(context, "unknown key '" + key + "'");
  }
}

Rat json_rational(const Json& value, const std::string& context) {
  try {
    if (value.is_number_integer()) return Rat(value.get<long long>());
    if (value.is_string()) return parse_rational(value.get<std::string>());
  } catch (const std::exception& err) {
    fail(context, err.what());
  }
  fail(context, "expected a rational as integer or \"p/q\" string");
}

long json_long(const Json& value, const std::string& context) {
  if (!value.is_number_integer()) fail(context, "expected an integer");
  return value.get<long>();
}

bool json_bool(const Json& value, const std::string& context) {
  if (!value.is_boolean()) fail(context, "expected a boolean");
  return value.get<bool>();
}

std::string json_string(const Json& value, const std::string& context) {
  if (!value.is_string()) fail(context, "expected a string");
  return value.get<std::string>();
}

FiniteSpace parse_space(const Json& spec, const RunContext& ctx, const std::string& context) {
  require_keys(spec, context, {}, {"uniform", "weights", "file"});
  if (spec.size() != 1) fail(context, "give exactly one of: uniform, weights, file");
  try {
    if (spec.contains("uniform")) {
      return FiniteSpace::uniform(static_cast<int>(json_long(spec["uniform"], context)));
    }
    if (spec.contains("weights")) {
      std::vector<Rat> weights;
      for (const auto& w : spec["weights"]) weights.push_back(json_rational(w, context));
      return FiniteSpace(std::move(weights));
    }
    return load_space((ctx.scenario_dir / json_string(spec["file"], context)).string());
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& err) {
    fail(context, err.what());
  }
}

FunctionTable parse_table(const Json& spec, const RunContext& ctx, const std::string& context) {
  require_keys(spec, context, {}, {"singletons", "subsets", "rows", "file"});
  if (spec.size() != 1) fail(context, "give exactly one of: singletons, subsets, rows, file");
  try {
    if (spec.contains("singletons")) {
      const int n = static_cast<int>(json_long(spec["singletons"], context));
      return subset_indicator_class(n, 1);
    }
    if (spec.contains("subsets")) {
      const Json& sub = spec["subsets"];
      require_keys(sub, context + ".subsets", {"points", "max_size"}, {});
      return subset_indicator_class(static_cast<int>(json_long(sub["points"], context)),
                                    static_cast<int>(json_long(sub["max_size"], context)));
    }
    if (spec.contains("rows")) {
      std::vector<std::vector<Rat>> rows;
      for (const auto& row : spec["rows"]) {
        rows.emplace_back();
        for (const auto& v : row) rows.back().push_back(json_rational(v, context));
      }
      return FunctionTable(std::move(rows));
    }
    return load_table((ctx.scenario_dir / json_string(spec["file"], context)).string());
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& err) {
    fail(context, err.what());
  }
}

void emit(RunContext& ctx, const ReportTable& table) {
  std::filesystem::create_directories(ctx.out_dir);
  const auto csv_path = ctx.out_dir / (table.name + ".csv");
  const auto json_path = ctx.out_dir / (table.name + ".json");
  {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path.string());
    write_csv(out, table);
  }
  {
    std::ofstream out(json_path);
    if (!out) throw std::runtime_error("cannot write " + json_path.string());
    write_json(out, table);
  }
  ctx.artifacts.push_back(csv_path.string());
  ctx.artifacts.push_back(json_path.string());
  write_human(ctx.summary, table);
}

std::string order_text(IvalOrder order) {
  switch (order) {
    case IvalOrder::True: return "true";
    case IvalOrder::False: return "false";
    default: return "unknown";
  }
}

std::vector<std::string> bound_row(const std::string& statement, const std::string& params,
                                   const Rat& lhs, const BoundComparison& cmp) {
  return {statement,          params,
          format_rational(lhs), format_double(cmp.value),
          format_bool(cmp.in_regime), format_bool(cmp.satisfied),
          format_double(cmp.margin_log10)};
}

const std::vector<std::string> kBoundColumns = {
    "statement", "params", "lhs_exact", "rhs_bound", "in_regime", "satisfied", "margin_log10"};

// ---- kind: tail ------------------------------------------------------------

void run_tail(const Json& doc, RunContext& ctx) {
  require_keys(doc, "tail", {"kind", "space", "class", "n", "u"},
               {"seed", "out", "workers", "strict", "method", "samples", "bounds"});
  const FiniteSpace space = parse_space(doc["space"], ctx, "tail.space");
  const FunctionTable table = parse_table(doc["class"], ctx, "tail.class");
  const long n = json_long(doc["n"], "tail.n");
  const Rat u = json_rational(doc["u"], "tail.u");
  const bool strict = doc.contains("strict") && json_bool(doc["strict"], "tail.strict");
  const std::string method =
      doc.contains("method") ? json_string(doc["method"], "tail.method") : "exact";
  if (method != "exact" && method != "mc" && method != "both") {
    fail("tail.method", "expected exact, mc or both");
  }

  ReportTable exact_table{"tail_exact", kBoundColumns, {}};
  std::optional<Rat> exact;
  if (method != "mc") {
    TailResult result = exact_sup_tail(table, space, n, u, strict);
    exact = result.probability;
    const std::string params = "n=" + std::to_string(n) + ";u=" + format_rational(u) +
                               (strict ? ";strict" : "");
    if (doc.contains("bounds")) {
      const Json& bounds = doc["bounds"];
      require_keys(bounds, "tail.bounds", {"D", "L"}, {"rho", "statements"});
      const Rat density_param = json_rational(bounds["D"], "tail.bounds.D");
      const Rat density_exponent = json_rational(bounds["L"], "tail.bounds.L");
      const Rat rho = bounds.contains("rho") ? json_rational(bounds["rho"], "tail.bounds.rho")
                                             : sup_mean(table, space);
      std::vector<std::string> statements = {"thm1"};
      if (bounds.contains("statements")) {
        statements.clear();
        for (const auto& s : bounds["statements"]) {
          statements.push_back(json_string(s, "tail.bounds.statements"));
        }
      }
      for (const std::string& statement : statements) {
        RegimeParams params_block;
        params_block.density_param = density_param;
        params_block.density_exponent = density_exponent;
        params_block.mean_cap = rho;
        params_block.sample_size = n;
        params_block.threshold = u;
        params_block.power = static_cast<long>(to_double(u));
        BoundComparison cmp;
        if (statement == "thm1") {
          const bool regime = in_regime(regime_check(Statement::Theorem1, params_block));
          // D * rho^(u/50): exact comparison via the power comparator
          cmp = compare_power_bound("thm1", result.probability, density_param, rho,
                                    static_cast<long>(numerator(u)),
                                    static_cast<long>(denominator(u) * 50), regime);
        } else if (statement == "lemma31") {
          const bool regime = in_regime(regime_check(Statement::Lemma31, params_block));
          cmp = compare_power_bound("lemma31", result.probability, 2 * density_param, rho,
                                    static_cast<long>(numerator(u)),
                                    static_cast<long>(denominator(u) * 25), regime);
        } else {
          fail("tail.bounds.statements", "expected thm1 or lemma31 for tail scenarios");
        }
        if (cmp.in_regime && !cmp.satisfied) ++ctx.assertion_failures;
        exact_table.add_row(bound_row(cmp.name, params, result.probability, cmp));
      }
    } else {
      BoundComparison none;
      none.name = "exact";
      none.value = to_double(result.probability);
      none.margin_log10 = 0;
      exact_table.add_row(bound_row("exact", params, result.probability, none));
    }
    emit(ctx, exact_table);
  }

  if (method != "exact") {
    if (!doc.contains("samples")) fail("tail", "mc method needs 'samples'");
    McConfig config;
    config.sample_count = static_cast<std::uint64_t>(json_long(doc["samples"], "tail.samples"));
    config.seed = ctx.seed;
    config.worker_count = ctx.workers;
    const McEstimate estimate = mc_sup_tail(table, space, n, u, strict, config);
    ReportTable mc_table{"tail_mc",
                         {"estimate", "ci_low", "ci_high", "hit_count", "seed"},
                         {}};
    mc_table.add_row({format_double(estimate.estimate), format_double(estimate.ci_low),
                      format_double(estimate.ci_high), std::to_string(estimate.hit_count),
                      std::to_string(config.seed)});
    if (exact.has_value()) {
      // report-class: ~1% of seeds legitimately miss
      const bool inside = rational_from_double(estimate.ci_low) <= *exact &&
                          *exact <= rational_from_double(estimate.ci_high);
      mc_table.columns.push_back("exact_inside_ci");
      for (auto& row : mc_table.rows) row.push_back(format_bool(inside));
    }
    emit(ctx, mc_table);
  }
}

// ---- kind: cover -----------------------------------------------------------

void run_cover(const Json& doc, RunContext& ctx) {
  require_keys(doc, "cover", {"kind", "class", "epsilons"},
               {"seed", "out", "workers", "exponents"});
  const FunctionTable table = parse_table(doc["class"], ctx, "cover.class");
  std::vector<Rat> epsilons;
  for (const auto& e : doc["epsilons"]) epsilons.push_back(json_rational(e, "cover.epsilons"));
  std::vector<double> exponents = {1.0, 2.0};
  if (doc.contains("exponents")) {
    exponents.clear();
    for (const auto& e : doc["exponents"]) {
      if (!e.is_number()) fail("cover.exponents", "expected numbers");
      exponents.push_back(e.get<double>());
    }
  }
  FitOptions options;
  options.seed = ctx.seed;
  const DenseParams fit = fit_dense_params(table, epsilons, exponents, options);

  ReportTable report{"cover",
                     {"epsilon", "measure_id", "m_greedy", "m_exact", "D_implied"},
                     {}};
  for (const DenseEvidence& e : fit.evidence) {
    const double implied =
        nudge_up(static_cast<double>(e.best_size()) * std::pow(to_double(e.epsilon), fit.exponent));
    report.add_row({format_rational(e.epsilon), e.measure_id, std::to_string(e.greedy_size),
                    e.exact_size >= 0 ? std::to_string(e.exact_size) : "",
                    format_double(implied)});
  }
  emit(ctx, report);
  ctx.summary << "fit: D=" << format_double(fit.parameter) << " L=" << format_double(fit.exponent)
              << "  (" << kDenseFitCaveat << ")\n";
}

// ---- kind: vc --------------------------------------------------------------

void run_vc(const Json& doc, RunContext& ctx) {
  require_keys(doc, "vc", {"kind", "system", "B", "K", "n_min", "n_max"},
               {"seed", "out", "workers"});
  const Json& system_spec = doc["system"];
  require_keys(system_spec, "vc.system", {}, {"subsets", "sets", "points"});
  SetSystem system;
  if (system_spec.contains("subsets")) {
    const Json& sub = system_spec["subsets"];
    require_keys(sub, "vc.system.subsets", {"points", "max_size"}, {});
    system = subsets_system(static_cast<int>(json_long(sub["points"], "vc.system")),
                            static_cast<int>(json_long(sub["max_size"], "vc.system")));
  } else if (system_spec.contains("sets") && system_spec.contains("points")) {
    system.ground_size = static_cast<int>(json_long(system_spec["points"], "vc.system.points"));
    for (const auto& set : system_spec["sets"]) {
      std::uint32_t mask = 0;
      for (const auto& p : set) {
        const long point = json_long(p, "vc.system.sets");
        if (point < 0 || point >= system.ground_size) fail("vc.system.sets", "point out of range");
        mask |= 1u << point;
      }
      system.sets.push_back(mask);
    }
  } else {
    fail("vc.system", "give either subsets or sets+points");
  }
  if (!doc["B"].is_number()) fail("vc.B", "expected a number");
  const double parameter = doc["B"].get<double>();
  const int exponent = static_cast<int>(json_long(doc["K"], "vc.K"));
  const VcParams params = check_vc_bound(system, parameter, exponent,
                                         static_cast<int>(json_long(doc["n_min"], "vc.n_min")),
                                         static_cast<int>(json_long(doc["n_max"], "vc.n_max")));
  ReportTable report{"vc", {"n", "trace_count", "bound", "holds"}, {}};
  for (const VcPerN& row : params.per_n) {
    report.add_row({std::to_string(row.n), row.trace_count.str(), format_double(row.bound),
                    format_bool(row.holds)});  // report-class: never fails the run
  }
  emit(ctx, report);
  ctx.summary << "vc_dimension=" << vc_dimension(system) << "\n";
}

// ---- kind: bp --------------------------------------------------------------

std::unique_ptr<IndicatorFamily> parse_family(const Json& spec, const RunContext& ctx,
                                              const std::string& context) {
  require_keys(spec, context, {"type"}, {"measures", "core"});
  const std::string type = json_string(spec["type"], context + ".type");
  std::vector<Rat> measures;
  if (spec.contains("measures")) {
    for (const auto& m : spec["measures"]) measures.push_back(json_rational(m, context));
  }
  if (type == "disjoint") return disjoint_family(std::move(measures));
  if (type == "nested") return nested_family(std::move(measures));
  if (type == "sunflower") {
    if (!spec.contains("core")) fail(context, "sunflower needs 'core'");
    return sunflower_family(json_rational(spec["core"], context), std::move(measures));
  }
  fail(context + ".type", "expected disjoint, nested or sunflower");
}

void run_bp(const Json& doc, RunContext& ctx) {
  require_keys(doc, "bp", {"kind", "p"},
               {"seed", "out", "workers", "family", "class", "space", "D", "L", "rho"});
  const long power = json_long(doc["p"], "bp.p");

  TailResult result;
  Rat rho;
  std::string family_name;
  if (doc.contains("family")) {
    auto family = parse_family(doc["family"], ctx, "bp.family");
    result = bp_measure(*family, power);
    family_name = family->describe();
    Rat max_single = 0;
    for (int i = 0; i < family->size(); ++i) {
      max_single = std::max(max_single, family->intersection_measure(1u << i));
    }
    rho = 2 * max_single;  // the statement requires means <= rho/2
  } else if (doc.contains("class") && doc.contains("space")) {
    const FiniteSpace space = parse_space(doc["space"], ctx, "bp.space");
    const FunctionTable table = parse_table(doc["class"], ctx, "bp.class");
    result = bp_measure(table, space, power);
    family_name = "table";
    rho = 2 * sup_mean(table, space);
  } else {
    fail("bp", "give either family or class+space");
  }
  if (doc.contains("rho")) rho = json_rational(doc["rho"], "bp.rho");
  const Rat density_param =
      doc.contains("D") ? json_rational(doc["D"], "bp.D") : Rat(1);
  const Rat density_exponent =
      doc.contains("L") ? json_rational(doc["L"], "bp.L") : Rat(1);

  RegimeParams regime_params;
  regime_params.density_param = density_param;
  regime_params.density_exponent = density_exponent;
  regime_params.mean_cap = rho;
  regime_params.power = power;
  const bool regime_1a = in_regime(regime_check(Statement::Theorem1A, regime_params));
  const bool regime_21 = in_regime(regime_check(Statement::Lemma21, regime_params));

  ReportTable report{"bp", kBoundColumns, {}};
  const std::string params = "family=" + family_name + ";p=" + std::to_string(power) +
                             ";rho=" + format_rational(rho);
  BoundComparison thm1a = compare_power_bound("thm1A", result.probability, 2 * density_param,
                                              rho, power, 4, regime_1a);
  BoundComparison lemma21 = compare_power_bound("lemma21", result.probability, density_param,
                                                rho, power, 4, regime_21);
  if (thm1a.in_regime && !thm1a.satisfied) ++ctx.assertion_failures;
  report.add_row(bound_row("thm1A", params, result.probability, thm1a));
  report.add_row(bound_row("lemma21", params, result.probability, lemma21));
  emit(ctx, report);
}

// ---- kind: halving ---------------------------------------------------------

void run_halving(const Json& doc, RunContext& ctx) {
  require_keys(doc, "halving", {"kind", "rho", "N0", "k_max"},
               {"seed", "out", "workers", "p", "D", "L", "chain_level"});
  const Rat rho = json_rational(doc["rho"], "halving.rho");
  BigInt base_points;
  if (doc["N0"].is_number_integer()) {
    base_points = doc["N0"].get<long long>();
  } else {
    base_points = BigInt(json_string(doc["N0"], "halving.N0"));
  }
  const int k_max = static_cast<int>(json_long(doc["k_max"], "halving.k_max"));
  const HalvingSchedule schedule = build_schedule(rho, base_points, k_max);

  ReportTable report{"halving",
                     {"k", "N_k", "rho_k_low", "rho_k_high", "C_k", "chain_step", "lhs_log",
                      "rhs_log", "holds"},
                     {}};
  for (const HalvingLevel& level : schedule.levels) {
    report.add_row({std::to_string(level.level), level.points.str(),
                    format_double(level.mean_cap.lo), format_double(level.mean_cap.hi),
                    format_rational(level.correction),
                    "cap_at_least_half:" + order_text(level.at_least_half_base), "", "", ""});
  }
  if (doc.contains("p")) {
    const long power = json_long(doc["p"], "halving.p");
    const Rat density_param =
        doc.contains("D") ? json_rational(doc["D"], "halving.D") : Rat(1);
    const Rat density_exponent =
        doc.contains("L") ? json_rational(doc["L"], "halving.L") : Rat(1);
    const int level = doc.contains("chain_level")
                          ? static_cast<int>(json_long(doc["chain_level"], "halving.chain_level"))
                          : 0;
    for (const ChainRow& row :
         chain_report(rho, base_points, level, power, density_param, density_exponent)) {
      report.add_row({std::to_string(level), "", "", "", "", row.step,
                      row.boolean_only ? "" : format_double(row.lhs_log),
                      row.boolean_only ? "" : format_double(row.rhs_log),
                      order_text(row.holds)});
    }
  }
  emit(ctx, report);
}

// ---- kind: dyadic ----------------------------------------------------------

void run_dyadic(const Json& doc, RunContext& ctx) {
  require_keys(doc, "dyadic", {"kind", "space", "class", "n", "u"},
               {"seed", "out", "workers", "D", "L", "trials"});
  const FiniteSpace space = parse_space(doc["space"], ctx, "dyadic.space");
  const FunctionTable table = parse_table(doc["class"], ctx, "dyadic.class");
  const long n = json_long(doc["n"], "dyadic.n");
  const Rat u = json_rational(doc["u"], "dyadic.u");
  const Rat density_param = doc.contains("D") ? json_rational(doc["D"], "dyadic.D") : Rat(1);
  const long density_exponent = doc.contains("L") ? json_long(doc["L"], "dyadic.L") : 1;
  const long trials = doc.contains("trials") ? json_long(doc["trials"], "dyadic.trials") : 200;

  const SubadditivityReport subadd =
      subadditivity_check(table, space, n, u, density_param, density_exponent);
  ReportTable report{"dyadic",
                     {"row_kind", "level", "hits_needed", "measure", "bound_name", "bound_value",
                      "satisfied", "margin_log10"},
                     {}};
  for (const LevelTail& level : subadd.levels) {
    if (level.bounds.empty()) {
      report.add_row({"level", std::to_string(level.level), std::to_string(level.hits_needed),
                      format_rational(level.measure), "", "", "", ""});
    }
    for (const BoundComparison& cmp : level.bounds) {
      report.add_row({"level", std::to_string(level.level), std::to_string(level.hits_needed),
                      format_rational(level.measure), cmp.name, format_double(cmp.value),
                      format_bool(cmp.satisfied), format_double(cmp.margin_log10)});
    }
  }
  report.add_row({"subadditivity", "", "", format_rational(subadd.whole_tail), "level_sum",
                  format_rational(subadd.level_sum) /* exact rational, not a float */,
                  format_bool(subadd.holds), ""});
  if (!subadd.holds) ++ctx.assertion_failures;

  const DominationReport domination = domination_check(table, space, n, trials, ctx.seed);
  report.add_row({"domination", "", "", "", "violations",
                  std::to_string(domination.violations),
                  format_bool(domination.violations == 0),
                  format_rational(domination.min_slack)});
  if (domination.violations != 0) ++ctx.assertion_failures;
  emit(ctx, report);
}

// ---- kind: discretize ------------------------------------------------------

void run_discretize(const Json& doc, RunContext& ctx) {
  require_keys(doc, "discretize", {"kind", "space", "class", "bins", "k", "n", "u"},
               {"seed", "out", "workers", "strict", "sweep_min", "sweep_max"});
  const FiniteSpace space = parse_space(doc["space"], ctx, "discretize.space");
  const FunctionTable table = parse_table(doc["class"], ctx, "discretize.class");
  const long bins = json_long(doc["bins"], "discretize.bins");
  const int grid = static_cast<int>(json_long(doc["k"], "discretize.k"));
  const long n = json_long(doc["n"], "discretize.n");
  const Rat u = json_rational(doc["u"], "discretize.u");
  const bool strict = doc.contains("strict") && json_bool(doc["strict"], "discretize.strict");

  const CellPartition cells = cell_partition(table, space, bins);
  std::vector<Rat> masses;
  for (const ValueCell& cell : cells.cells) masses.push_back(cell.measure);
  const RoundedMeasure rounded = round_measure(masses, grid);

  ReportTable rounding{"discretize_rounding",
                       {"cell_signature", "original_mass", "rounded_mass", "alpha"},
                       {}};
  for (int c = 0; c < cells.cell_count(); ++c) {
    std::string signature;
    for (int s : cells.cells[static_cast<std::size_t>(c)].signature) {
      signature += (signature.empty() ? "" : "|") + std::to_string(s);
    }
    rounding.add_row({signature, format_rational(masses[static_cast<std::size_t>(c)]),
                      format_rational(rounded.masses[static_cast<std::size_t>(c)]),
                      rounded.multipliers[static_cast<std::size_t>(c)].str()});
  }
  emit(ctx, rounding);

  const FunctionTable hat_values = bin_top_table(cells);
  const HatCheck check = hat_distribution_check(cells, rounded, hat_values, n, u, strict);
  ReportTable hat{"discretize_hat",
                  {"grid_exponent", "cell_tail", "hat_tail", "equal", "gap", "envelope",
                   "within"},
                  {}};
  hat.add_row({std::to_string(grid), format_rational(check.cell_tail),
               format_rational(check.hat_tail), format_bool(check.equal), "", "", ""});
  if (!check.equal) ++ctx.assertion_failures;
  if (doc.contains("sweep_min") || doc.contains("sweep_max")) {
    const int sweep_min = doc.contains("sweep_min")
                              ? static_cast<int>(json_long(doc["sweep_min"], "discretize"))
                              : 4;
    const int sweep_max = doc.contains("sweep_max")
                              ? static_cast<int>(json_long(doc["sweep_max"], "discretize"))
                              : 16;
    for (const HatSweepRow& row :
         hat_convergence_sweep(cells, hat_values, n, u, strict, sweep_min, sweep_max)) {
      hat.add_row({std::to_string(row.grid_exponent), format_rational(row.tail), "", "",
                   format_rational(row.gap), format_rational(row.envelope),
                   format_bool(row.within)});
    }
  }
  emit(ctx, hat);
}

// ---- kind: full-report -----------------------------------------------------

void run_full_report(const Json& doc, RunContext& ctx) {
  require_keys(doc, "full-report", {"kind"}, {"seed", "out", "workers"});
  ReportTable report{"full_report", kBoundColumns, {}};

  {  // exact tail of the four-singleton instance
    const FunctionTable table = subset_indicator_class(4, 1);
    const FiniteSpace space = FiniteSpace::uniform(4);
    const TailResult tail = exact_sup_tail(table, space, 2, Rat(2), false);
    BoundComparison cmp;
    cmp.name = "exact";
    cmp.value = to_double(tail.probability);
    report.add_row(bound_row("tail_exact", "singletons4;n=2;u=2", tail.probability, cmp));
  }
  {  // intro example
    const TailResult pn = intro_example_Pn(4, 1, 3);
    for (const BoundComparison& cmp : pn.bounds) {
      if (!cmp.satisfied) ++ctx.assertion_failures;
      report.add_row(bound_row("intro_Pn:" + cmp.name, "N=4;L=1;n=3", pn.probability, cmp));
    }
  }
  {  // a genuinely in-regime product-hit check on an implicit family
    const Rat rho = pow_rational(Rat(2), -400);
    std::vector<Rat> measures(20, rho / 2);
    const auto family = disjoint_family(measures);
    const long power = 8;
    const TailResult bp = bp_measure(*family, power);
    RegimeParams params;
    params.mean_cap = rho;
    params.power = power;
    params.density_param = 2;
    const bool regime = in_regime(regime_check(Statement::Theorem1A, params));
    BoundComparison cmp =
        compare_power_bound("thm1A", bp.probability, Rat(4), rho, power, 4, regime);
    if (cmp.in_regime && !cmp.satisfied) ++ctx.assertion_failures;
    report.add_row(bound_row("bp_thm1A", "disjoint20;rho=2^-400;p=8", bp.probability, cmp));
  }
  {  // the documented boundary finding: the cap halving fails at rho = 1e-3
    const HalvingSchedule schedule = build_schedule(Rat(1, 1000), BigInt(2048), 1);
    BoundComparison cmp;
    cmp.name = "cap_at_least_half";
    cmp.satisfied = schedule.levels[1].at_least_half_base != IvalOrder::False;
    cmp.in_regime = false;  // report-class by design
    cmp.value = schedule.levels[1].mean_cap.hi;
    report.add_row(bound_row("schedule_boundary", "rho=1/1000;N0=2048", Rat(0), cmp));
  }
  emit(ctx, report);
}

}  // namespace

ScenarioResult run_scenario(const std::string& path, const ScenarioOverrides& overrides) {
  ScenarioResult result;
  RunContext ctx;
  try {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::parse_error& err) {
      throw ScenarioError(std::string("scenario parse error: ") + err.what());
    }
    if (!doc.is_object() || !doc.contains("kind")) {
      throw ScenarioError("scenario: missing 'kind'");
    }
    const std::string kind = json_string(doc["kind"], "kind");

    ctx.scenario_dir = std::filesystem::path(path).parent_path();
    ctx.out_dir = ctx.scenario_dir;
    if (doc.contains("out")) ctx.out_dir = ctx.scenario_dir / json_string(doc["out"], "out");
    if (overrides.out_dir) ctx.out_dir = *overrides.out_dir;
    if (doc.contains("seed")) ctx.seed = static_cast<std::uint64_t>(json_long(doc["seed"], "seed"));
    if (overrides.seed) ctx.seed = *overrides.seed;
    if (doc.contains("workers")) ctx.workers = static_cast<int>(json_long(doc["workers"], "workers"));
    if (overrides.workers) ctx.workers = *overrides.workers;

    if (kind == "tail") {
      run_tail(doc, ctx);
    } else if (kind == "cover") {
      run_cover(doc, ctx);
    } else if (kind == "vc") {
      run_vc(doc, ctx);
    } else if (kind == "bp") {
      run_bp(doc, ctx);
    } else if (kind == "halving") {
      run_halving(doc, ctx);
    } else if (kind == "dyadic") {
      run_dyadic(doc, ctx);
    } else if (kind == "discretize") {
      run_discretize(doc, ctx);
    } else if (kind == "full-report") {
      run_full_report(doc, ctx);
    } else {
      throw ScenarioError("unknown scenario kind '" + kind + "'");
    }
  } catch (const ScenarioError& err) {
    result.exit_code = 2;
    result.summary = err.what();
    return result;
  } catch (const std::exception& err) {
    result.exit_code = 2;
    result.summary = std::string("input error: ") + err.what();
    return result;
  }
  result.assertion_failures = ctx.assertion_failures;
  result.exit_code = ctx.assertion_failures > 0 ? 1 : 0;
  result.artifacts = ctx.artifacts;
  result.summary = ctx.summary.str();
  return result;
}

}  // namespace suptail
