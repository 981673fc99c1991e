#include "scalecascade/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "scalecascade/errors.hpp"

namespace scalecascade {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

Ratio parse_ratio_flag(const std::string& flag, const std::string& text) {
  try {
    return Ratio::parse(text);
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::vector<Ratio> parse_ratio_list(const std::string& flag, const std::string& text) {
  std::vector<Ratio> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_ratio_flag(flag, item));
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

void check_unit_interval(const std::string& flag, const Ratio& r) {
  if (r < Ratio(0) || r >= Ratio(1)) {
    throw UsageError(flag + ": " + r.str() + " violates the constraint 0 <= epsilon < 1");
  }
}

Command command_from(const std::string& name) {
  static const std::pair<const char*, Command> table[] = {
      {"jets", Command::jets},           {"verify", Command::verify},
      {"residual", Command::residual},   {"jump-scan", Command::jump_scan},
      {"parity", Command::parity},       {"generation", Command::generation},
      {"telescope", Command::telescope}, {"compare", Command::compare},
      {"schedule", Command::schedule},
  };
  for (const auto& [n, c] : table) {
    if (name == n) return c;
  }
  throw UsageError("unknown command '" + name + "'");
}

// ---------------------------------------------------------------------------
// Serialization helpers
// ---------------------------------------------------------------------------

json ratio_array(std::span<const Ratio> values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(v.str());
  return arr;
}

json decimal_block(std::span<const Ratio> values, long precision) {
  json vals = json::array();
  for (const auto& v : values) vals.push_back(BigFloat(v, precision).to_string());
  return json{{"precision_bits", precision}, {"values", std::move(vals)}};
}

json series_json(const Jet& jet, const RunConfig& config) {
  json j{{"coefficients", ratio_array(jet.coefficients())}};
  if (config.decimal) j["decimal"] = decimal_block(jet.coefficients(), config.precision);
  return j;
}

json optional_order(const std::optional<std::size_t>& order) {
  return order ? json(*order) : json(nullptr);
}

std::string rule_name(ScheduleRule r) { return to_string(r); }

std::string reflect_name(ReflectMode m) { return m == ReflectMode::level0 ? "level0" : "all"; }

json config_json(const RunConfig& c) {
  return json{
      {"command", to_string(c.command)},
      {"epsilon", c.epsilon.str()},
      {"levels", c.levels},
      {"jet_order", c.jet_order},
      {"generation", c.generation},
      {"closure", to_string(c.closure)},
      {"rule", rule_name(c.rule)},
      {"schedule_list", ratio_array(c.schedule_list)},
      {"precision", c.precision},
      {"format", c.format == OutputFormat::json ? "json" : "csv"},
      {"output", c.output},
      {"verbosity", c.verbosity},
      {"grid", ratio_array(c.grid)},
      {"t_lo", c.t_lo.str()},
      {"t_hi", c.t_hi.str()},
      {"steps", c.steps},
      {"reflect", reflect_name(c.reflect)},
      {"decimal", c.decimal},
      {"poly_cap", c.poly_cap},
  };
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

class Csv {
 public:
  explicit Csv(const RunConfig& config) {
    // Header comment lines echo the configuration for reproducibility.
    out_ << "# " << config_json(config).dump() << "\n";
  }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << csv_field(fields[i]);
    }
    out_ << "\n";
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

BranchSolution branch_for(const RunConfig& config) {
  return build_branch(schedule_for(config), config.levels, config.closure);
}

std::size_t order_of(const RunConfig& c) { return static_cast<std::size_t>(c.jet_order); }

// ---------------------------------------------------------------------------
// Verification suite
// ---------------------------------------------------------------------------

class CheckList {
 public:
  void add(std::string name, bool passed, std::string expected, std::string actual,
           std::string anchor) {
    checks_.push_back({std::move(name), passed, std::move(expected), std::move(actual),
                       std::move(anchor)});
  }
  std::vector<Check> take() { return std::move(checks_); }

 private:
  std::vector<Check> checks_;
};

std::string order_str(const std::optional<std::size_t>& o) {
  return o ? std::to_string(*o) : std::string("none");
}

bool all_levels_unscaled(const ScaleSchedule& s, int depth) {
  for (int n = 0; n <= depth; ++n) {
    if (!s.level_epsilon(n).is_zero()) return false;
  }
  return true;
}

}  // namespace

std::string to_string(Command command) {
  switch (command) {
    case Command::jets: return "jets";
    case Command::verify: return "verify";
    case Command::residual: return "residual";
    case Command::jump_scan: return "jump-scan";
    case Command::parity: return "parity";
    case Command::generation: return "generation";
    case Command::telescope: return "telescope";
    case Command::compare: return "compare";
    case Command::schedule: return "schedule";
  }
  return "unknown";
}

RunConfig parse_config(std::span<const std::string> args) {
  CLI::App app{"Exact scale-cascade solutions of t * dtau/dt = tau", "scalecascade"};
  app.require_subcommand(1);

  std::string epsilon = "0";
  std::string closure = "one";
  std::string rule = "power-tower";
  std::string schedule_list;
  std::string format = "json";
  std::string grid;
  std::string grid_range;
  std::string t_range;
  std::string reflect = "level0";
  RunConfig c;

  app.add_option("--epsilon", epsilon, "scaling parameter as p/q, 0 <= eps < 1");
  app.add_option("--levels", c.levels, "cascade depth N")->check(CLI::Range(1, 1 << 16));
  app.add_option("--jet-order", c.jet_order, "jet order K")->check(CLI::Range(1, 1 << 16));
  app.add_option("--generation", c.generation, "generation k")->check(CLI::Range(1, 1 << 16));
  app.add_option("--closure", closure, "one | linear")
      ->check(CLI::IsMember({"one", "linear"}));
  app.add_option("--rule", rule, "power-tower | literal | explicit")
      ->check(CLI::IsMember({"power-tower", "literal", "explicit"}));
  app.add_option("--schedule-list", schedule_list, "explicit eps_0,eps_1,... (rule explicit)");
  app.add_option("--precision", c.precision, "floating precision in bits")
      ->check(CLI::Range(2L, 1L << 20));
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", c.output, "output file (default: standard output)");
  app.add_flag("-v,--verbose", c.verbosity, "progress on standard error");
  app.add_option("--grid", grid, "jump-scan epsilon list p/q,p/q,...");
  app.add_option("--grid-range", grid_range, "jump-scan grid lo,hi,steps");
  app.add_option("--t-range", t_range, "compare range lo,hi");
  app.add_option("--steps", c.steps, "compare grid points")->check(CLI::Range(2, 1 << 24));
  app.add_option("--reflect", reflect, "parity reflection: level0 | all")
      ->check(CLI::IsMember({"level0", "all"}));
  app.add_flag("--decimal", c.decimal, "add decimal renderings next to exact values");
  app.add_option("--poly-cap", c.poly_cap, "polynomial expansion level cap")
      ->check(CLI::Range(1, 20));

  for (const char* name : {"jets", "verify", "residual", "jump-scan", "parity", "generation",
                           "telescope", "compare", "schedule"}) {
    app.add_subcommand(name)->fallthrough();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  c.command = command_from(app.get_subcommands().front()->get_name());
  c.epsilon = parse_ratio_flag("--epsilon", epsilon);
  check_unit_interval("--epsilon", c.epsilon);
  c.closure = closure == "one" ? Closure::one : Closure::linear;
  c.rule = rule == "power-tower" ? ScheduleRule::power_tower
           : rule == "literal"   ? ScheduleRule::literal_power
                                 : ScheduleRule::explicit_list;
  if (!schedule_list.empty()) {
    if (c.rule != ScheduleRule::explicit_list) {
      throw UsageError("--schedule-list: requires --rule explicit");
    }
    c.schedule_list = parse_ratio_list("--schedule-list", schedule_list);
  }
  if (c.rule == ScheduleRule::explicit_list &&
      c.schedule_list.size() < static_cast<std::size_t>(c.levels)) {
    throw UsageError("--schedule-list: needs at least --levels (" + std::to_string(c.levels) +
                     ") entries");
  }
  if (c.generation > c.levels) {
    throw UsageError("--generation: " + std::to_string(c.generation) + " exceeds --levels " +
                     std::to_string(c.levels));
  }
  c.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  c.reflect = reflect == "level0" ? ReflectMode::level0 : ReflectMode::all;

  if (!grid.empty() && !grid_range.empty()) {
    throw UsageError("--grid-range: cannot be combined with --grid");
  }
  if (!grid.empty()) {
    c.grid = parse_ratio_list("--grid", grid);
  } else if (!grid_range.empty()) {
    const auto parts = split(grid_range, ',');
    if (parts.size() != 3) throw UsageError("--grid-range: expected lo,hi,steps");
    const Ratio lo = parse_ratio_flag("--grid-range", parts[0]);
    const Ratio hi = parse_ratio_flag("--grid-range", parts[1]);
    const Ratio n = parse_ratio_flag("--grid-range", parts[2]);
    if (!n.is_integer() || n < Ratio(2) || n > Ratio(100000) || hi < lo) {
      throw UsageError("--grid-range: need lo <= hi and an integer steps >= 2");
    }
    const long count = n.numerator().get_si();
    for (long i = 0; i < count; ++i) c.grid.push_back(lo + (hi - lo) * Ratio(i) / Ratio(count - 1));
  } else {
    c.grid = {c.epsilon};
  }
  for (const auto& g : c.grid) check_unit_interval(grid.empty() ? "--grid-range" : "--grid", g);
  std::sort(c.grid.begin(), c.grid.end());
  c.grid.erase(std::unique(c.grid.begin(), c.grid.end()), c.grid.end());

  if (!t_range.empty()) {
    const auto parts = split(t_range, ',');
    if (parts.size() != 2) throw UsageError("--t-range: expected lo,hi");
    c.t_lo = parse_ratio_flag("--t-range", parts[0]);
    c.t_hi = parse_ratio_flag("--t-range", parts[1]);
    if (c.t_lo.sign() <= 0 || c.t_hi < c.t_lo) {
      throw UsageError("--t-range: need 0 < lo <= hi");
    }
  }
  return c;
}

ScaleSchedule schedule_for(const RunConfig& config) {
  return make_schedule(config.epsilon, config.levels, config.generation, config.rule,
                       config.schedule_list);
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

VerifyReport run_verify_suite(const RunConfig& config) {
  const auto schedule = schedule_for(config);
  const int depth = config.levels;
  const std::size_t order = order_of(config);
  const bool unscaled = all_levels_unscaled(schedule, depth);
  CheckList checks;

  const auto violations = schedule.invariant_violations();
  {
    std::string actual;
    for (const auto& v : violations) actual += (actual.empty() ? "" : "; ") + v;
    checks.add("schedule.invariants", violations.empty(), "eps_0 = 0 and 0 <= eps_n < 1",
               violations.empty() ? "ok" : actual, "scaling schedule");
  }

  const auto branch = build_branch(schedule, depth, config.closure);
  const Jet tau = branch_jet(branch, order + 1);

  checks.add("normalization.value_at_zero", tau[0] == Ratio(1), "1/1", tau[0].str(),
             "initial condition tau(1) = 1");
  checks.add("continuity.first_derivative", tau[1] == Ratio(-1) && branch.plus_branch.coeff(1) == Ratio(1),
             "dtau_-/deta0 = -1/1, dtau_+/deta0 = 1/1",
             "dtau_-/deta0 = " + tau[1].str() + ", dtau_+/deta0 = " + branch.plus_branch.coeff(1).str(),
             "first derivative continuous at t = 1");

  {
    const auto levels = cascade_jets(schedule, depth - 1, std::min<std::size_t>(order, 2));
    std::string bad;
    for (std::size_t n = 1; n < levels.size(); ++n) {
      if (!levels[n].eta_prime[1].is_zero()) bad += " n=" + std::to_string(n);
    }
    checks.add("cascade.flat_at_origin", bad.empty(), "[eta0^1] eta'_n = 0 for n >= 1",
               bad.empty() ? "all zero" : "nonzero at" + bad, "cascade variables flat at eta0 = 0");
  }
  {
    const auto polys = cascade_polys(schedule, depth - 1, config.poly_cap);
    std::string bad;
    for (const auto& level : polys) {
      if (level.eta_prime.degree() != (1 << level.n)) {
        bad += " n=" + std::to_string(level.n) + ":" + std::to_string(level.eta_prime.degree());
      }
    }
    checks.add("cascade.degree", bad.empty(), "deg eta'_n = 2^n",
               bad.empty() ? "deg eta'_n = 2^n for n < " + std::to_string(depth) : "mismatch" + bad,
               "eta'_n polynomial of degree 2^n");
  }
  {
    // polynomial route: num == den * tau (mod eta0^(K+1)); throws past the cap
    const auto rf = branch_rational(branch, config.poly_cap);
    const Jet lhs = Jet::from_poly(rf.numerator, order);
    const Jet rhs = Jet::from_poly(rf.denominator, order) * tau.truncated(order);
    const Jet diff = lhs - rhs;
    checks.add("branch.rational_agreement", diff.is_zero(),
               "rational form and jet agree through order " + std::to_string(order),
               diff.is_zero() ? "agree" : "differ from order " + order_str(diff.leading_order()),
               "polynomial and series constructions of tau_-");
  }

  {
    const Jet s = log_derivative_sum(branch, order);
    const Jet lhs = jet_derive(tau) + tau.truncated(order) * s;
    checks.add("derivative.two_path", lhs.is_zero(),
               "dtau/deta0 + tau*S = 0 through order " + std::to_string(order),
               lhs.is_zero() ? "0" : "nonzero from order " + order_str(lhs.leading_order()),
               "log-derivative sum");
    checks.add("derivative.sum_at_zero", s[0] == Ratio(1), "S(0) = 1/1", "S(0) = " + s[0].str(),
               "first derivative continuous at t = 1");
  }

  if (depth >= 2) {
    const auto jump = jump_decomposition(branch);
    Ratio sum;
    for (const auto& t : jump.terms) sum += t;
    const Ratio rhs = jump.base - sum + jump.closure_term;
    checks.add("jump.identity", jump.identity_holds && jump.total == Ratio(2) * tau[2],
               "total = 2*c2 = base - sum(T_k) + closure = " + rhs.str(),
               "total = " + jump.total.str() + ", 2*c2 = " + (Ratio(2) * tau[2]).str(),
               "second-derivative jump decomposition");
    if (schedule.generation() == 1 && schedule.rule() != ScheduleRule::explicit_list) {
      const Ratio e1 = schedule.level_epsilon(1);
      const Ratio expected = Ratio(2) * (Ratio(1) + e1) / (Ratio(1) - e1);
      checks.add("jump.first_term", jump.terms.front() == expected, expected.str(),
                 jump.terms.front().str(), "second-derivative jump decomposition");
    }
    if (unscaled) {
      const bool zero = jump.total.is_zero();
      checks.add("jump.vanishes_unscaled", zero, "0/1", jump.total.str(),
                 "standard solution has no second-derivative jump");
    }
  }

  for (int n = 0; n <= std::min(depth - 1, 3); ++n) {
    const auto v = selfsimilar_identity(schedule, n, config.poly_cap);
    checks.add("identity.level_" + std::to_string(n), v.holds, "LHS - 1 = 0",
               v.holds ? "0" : "numerator degree " + std::to_string(v.lhs_minus_one.numerator.degree()),
               "self-similar identity");
  }

  {
    const auto parity = parity_analysis(branch, order, config.reflect);
    const std::size_t big = std::size_t{1} << std::min(depth, 62);
    if (unscaled) {
      // One-closure truncation differs from tau_s at order 2^N.
      const std::size_t upto = config.closure == Closure::one ? std::min(order, big - 1) : order;
      const auto limited = parity_analysis(branch, std::max<std::size_t>(upto, 1), config.reflect);
      checks.add("parity.symmetric_unscaled", limited.asymmetry.is_zero(),
                 "0/1 through order " + std::to_string(upto), limited.asymmetry.str(),
                 "standard solution is parity symmetric");
    } else if (order >= (std::size_t{1} << std::min(schedule.generation(), 62))) {
      checks.add("parity.broken", parity.asymmetry > Ratio(0), "> 0", parity.asymmetry.str(),
                 "parity broken by the scaled solution");
    }
    checks.add("parity.reflected_residual_order",
               parity.residual_order == parity.reflected_residual_order,
               order_str(parity.residual_order), order_str(parity.reflected_residual_order),
               "reflected branch solves the equation to the same order");
  }

  if (unscaled) {
    const std::size_t m = std::size_t{1} << std::min(depth, 62);
    if (config.closure == Closure::linear) {
      const auto rf = branch_rational(branch, config.poly_cap);
      const RationalFunction standard{Ratio(1) - Poly::variable(), Poly::constant(Ratio(1))};
      checks.add("standard.telescoping", rf.equivalent_to(standard), "tau_- = 1 - eta0",
                 rf.equivalent_to(standard) ? "tau_- = 1 - eta0" : "differs",
                 "reduces to the standard solution");
    } else {
      const auto r = ode_residual(branch, order);
      const bool expect_visible = order >= m - 1;
      const bool ok = expect_visible
                          ? (r.leading_order == m - 1 && r.leading_coefficient == -Ratio(m))
                          : !r.leading_order.has_value();
      checks.add("standard.residual_law", ok,
                 expect_visible ? "order " + std::to_string(m - 1) + ", coefficient " + (-Ratio(m)).str()
                                : "none through order " + std::to_string(order),
                 "order " + order_str(r.leading_order) +
                     (r.leading_order ? ", coefficient " + r.leading_coefficient.str() : ""),
                 "truncated product vs the standard solution");
    }
    if (depth <= config.poly_cap) {
      Poly product = Ratio(1) - Poly::variable();
      for (int j = 0; j < depth; ++j) product = product * (Ratio(1) + Poly::monomial(Ratio(1), std::size_t{1} << j));
      const Poly expected = Ratio(1) - Poly::monomial(Ratio(1), m);
      checks.add("standard.telescoping_product", product == expected,
                 "(1 - eta0) prod (1 + eta0^2^j) = 1 - eta0^" + std::to_string(m),
                 product == expected ? "exact equality" : "differs",
                 "reduces to the standard solution");
    }
  }

  {
    const Ratio c = normalization_constant(branch);
    const bool scaled_levels = !all_levels_unscaled(schedule, depth) ||
                               !schedule.level_epsilon(0).is_zero();
    const bool ok = scaled_levels ? c != Ratio(1) : c == Ratio(1);
    checks.add("normalization.constant", ok, scaled_levels ? "C != 1/1" : "C = 1/1", c.str(),
               "normalizing constant of the infinite product");
  }

  if (!unscaled && schedule.rule() != ScheduleRule::explicit_list) {
    const std::size_t want = std::size_t{1} << std::min(schedule.generation(), 62);
    if (order >= want) {
      const auto dev = generation_deviation(branch, order);
      checks.add("generation.deviation_order", dev.leading_order == want,
                 "first nonzero order " + std::to_string(want), order_str(dev.leading_order),
                 "generation-k deviation from tau_s");
    }
  }

  {
    const Jet phi = phi_residual(config.epsilon, branch, order);
    const auto r = ode_residual(branch, order);
    const Jet expected =
        config.epsilon * (jet_recip(Ratio(1) - Jet::variable(order)) * r.residual);
    checks.add("phi.residual_law", phi == expected, "t*dphi/dt = (eps/t)*r",
               phi == expected ? "equal through order " + std::to_string(order) : "differs",
               "one-parameter family phi = eps*tau/t");
  }

  if (schedule.rule() == ScheduleRule::power_tower && schedule.generation() == 1 &&
      config.epsilon > Ratio(0) && config.epsilon <= Ratio(1, 4) && depth <= 8 && depth >= 2) {
    const auto conv = convergence_diagnostics(schedule, depth);
    bool decreasing = true;
    for (std::size_t i = 1; i + 1 < conv.tail_offsets.size(); ++i) {
      decreasing = decreasing && conv.tail_offsets[i + 1] < conv.tail_offsets[i];
    }
    checks.add("convergence.tail_decreasing", decreasing,
               "|t'_n+(0) - 1| strictly decreasing for n >= 2", decreasing ? "yes" : "no",
               "convergent normalizing product");
  }

  return VerifyReport{checks.take()};
}

std::string render_report(const RunConfig& config, int& exit_status) {
  exit_status = exit_code::ok;
  const std::size_t order = order_of(config);
  const bool csv = config.format == OutputFormat::csv;
  json doc{{"config", config_json(config)}};

  switch (config.command) {
    case Command::jets: {
      const auto branch = branch_for(config);
      const Jet tau = branch_jet(branch, order);
      if (csv) {
        Csv out(config);
        out.row({"order", "tau_minus", "tau_plus"});
        for (std::size_t i = 0; i <= order; ++i) {
          out.row({std::to_string(i), tau[i].str(), branch.plus_branch.coeff(i).str()});
        }
        return out.str();
      }
      doc["coefficients"] = ratio_array(tau.coefficients());
      if (config.decimal) doc["decimal"] = decimal_block(tau.coefficients(), config.precision);
      doc["plus_branch"] = ratio_array(branch.plus_branch.coefficients());
      doc["normalization"] = branch.normalization.str();
      doc["normalization_constant"] = normalization_constant(branch).str();
      return dump(doc);
    }
    case Command::verify: {
      const auto report = run_verify_suite(config);
      exit_status = report.passed() ? exit_code::ok : exit_code::invariant_failure;
      if (csv) {
        Csv out(config);
        out.row({"name", "status", "expected", "actual", "anchor"});
        for (const auto& c : report.checks) {
          out.row({c.name, c.passed ? "pass" : "fail", c.expected, c.actual, c.anchor});
        }
        out.row({"overall", report.passed() ? "pass" : "fail", "", "", ""});
        return out.str();
      }
      json checks = json::array();
      for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"status", c.passed ? "pass" : "fail"},
                          {"expected", c.expected},
                          {"actual", c.actual},
                          {"anchor", c.anchor}});
      }
      doc["checks"] = std::move(checks);
      doc["overall"] = report.passed() ? "pass" : "fail";
      return dump(doc);
    }
    case Command::residual: {
      const auto r = ode_residual(branch_for(config), order);
      if (csv) {
        Csv out(config);
        out.row({"order", "residual"});
        for (std::size_t i = 0; i <= r.residual.order(); ++i) {
          out.row({std::to_string(i), r.residual[i].str()});
        }
        return out.str();
      }
      doc["residual"] = series_json(r.residual, config);
      doc["leading_order"] = optional_order(r.leading_order);
      doc["leading_coefficient"] =
          r.leading_order ? json(r.leading_coefficient.str()) : json(nullptr);
      return dump(doc);
    }
    case Command::jump_scan: {
      if (config.levels < 2) throw UsageError("--levels: jump-scan needs at least 2");
      const auto rows =
          jump_scan(config.grid, config.levels, config.generation, config.rule, config.closure);
      if (csv) {
        Csv out(config);
        std::vector<std::string> header{"epsilon", "total"};
        for (int k = 1; k < config.levels; ++k) header.push_back("T" + std::to_string(k));
        if (config.closure == Closure::linear) header.push_back("closure_term");
        out.row(header);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          std::vector<std::string> fields{config.grid[i].str(), rows[i].total.str()};
          for (const auto& t : rows[i].terms) fields.push_back(t.str());
          if (config.closure == Closure::linear) fields.push_back(rows[i].closure_term.str());
          out.row(fields);
        }
        return out.str();
      }
      json arr = json::array();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        arr.push_back({{"epsilon", config.grid[i].str()},
                       {"total", rows[i].total.str()},
                       {"base", rows[i].base.str()},
                       {"terms", ratio_array(rows[i].terms)},
                       {"closure_term", rows[i].closure_term.str()},
                       {"identity_holds", rows[i].identity_holds}});
      }
      doc["rows"] = std::move(arr);
      return dump(doc);
    }
    case Command::parity: {
      const auto p = parity_analysis(branch_for(config), order, config.reflect);
      if (csv) {
        Csv out(config);
        out.row({"order", "tau_minus", "tau_plus", "reflected_minus", "reflected_plus"});
        for (std::size_t i = 0; i <= order; ++i) {
          out.row({std::to_string(i), p.tau_minus[i].str(), p.tau_plus[i].str(),
                   p.reflected_minus[i].str(), p.reflected_plus[i].str()});
        }
        return out.str();
      }
      doc["asymmetry"] = p.asymmetry.str();
      doc["tau_minus"] = ratio_array(p.tau_minus.coefficients());
      doc["tau_plus"] = ratio_array(p.tau_plus.coefficients());
      doc["reflected_minus"] = ratio_array(p.reflected_minus.coefficients());
      doc["reflected_plus"] = ratio_array(p.reflected_plus.coefficients());
      doc["residual_order"] = optional_order(p.residual_order);
      doc["reflected_residual_order"] = optional_order(p.reflected_residual_order);
      return dump(doc);
    }
    case Command::generation: {
      const auto d = generation_deviation(branch_for(config), order);
      if (csv) {
        Csv out(config);
        out.row({"order", "log_ratio"});
        for (std::size_t i = 0; i <= order; ++i) {
          out.row({std::to_string(i), d.log_ratio[i].str()});
        }
        return out.str();
      }
      doc["leading_order"] = optional_order(d.leading_order);
      doc["leading_coefficient"] =
          d.leading_order ? json(d.leading_coefficient.str()) : json(nullptr);
      doc["log_ratio"] = series_json(d.log_ratio, config);
      return dump(doc);
    }
    case Command::telescope: {
      const auto rf = branch_rational(branch_for(config), config.poly_cap);
      const RationalFunction standard{Ratio(1) - Poly::variable(), Poly::constant(Ratio(1))};
      const bool reduces = rf.equivalent_to(standard);
      if (csv) {
        Csv out(config);
        out.row({"power", "numerator", "denominator"});
        const auto n = static_cast<std::size_t>(
            std::max(rf.numerator.degree(), rf.denominator.degree()) + 1);
        for (std::size_t i = 0; i < n; ++i) {
          out.row({std::to_string(i), rf.numerator.coeff(i).str(), rf.denominator.coeff(i).str()});
        }
        return out.str();
      }
      doc["numerator"] = ratio_array(rf.numerator.coefficients());
      doc["denominator"] = ratio_array(rf.denominator.coefficients());
      doc["reduces_to_standard"] = reduces;
      return dump(doc);
    }
    case Command::compare: {
      const auto rows = long_horizon_compare(config.epsilon, config.t_lo, config.t_hi,
                                             config.steps, config.precision);
      if (csv) {
        Csv out(config);
        out.row({"t", "tau_s", "tau_g", "abs_dev", "rel_dev"});
        for (const auto& r : rows) {
          out.row({r.t.to_string(), r.tau_s.to_string(), r.tau_g.to_string(),
                   r.abs_dev.to_string(), r.rel_dev.to_string()});
        }
        return out.str();
      }
      doc["tau_convention"] = "tau(t) = t (standard branch)";
      doc["precision_bits"] = config.precision;
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"t", r.t.to_string()},
                       {"tau_s", r.tau_s.to_string()},
                       {"tau_g", r.tau_g.to_string()},
                       {"abs_dev", r.abs_dev.to_string()},
                       {"rel_dev", r.rel_dev.to_string()}});
      }
      doc["rows"] = std::move(arr);
      return dump(doc);
    }
    case Command::schedule: {
      const auto schedule = schedule_for(config);
      const auto conv = convergence_diagnostics(schedule, config.levels);
      const auto branch = branch_for(config);
      if (csv) {
        Csv out(config);
        out.row({"n", "epsilon", "alpha", "tail_offset", "partial_product"});
        for (int n = 0; n <= config.levels; ++n) {
          const auto idx = static_cast<std::size_t>(n);
          out.row({std::to_string(n), schedule.level_epsilon(n).str(), schedule.alpha(n).str(),
                   n == 0 ? "" : conv.tail_offsets[idx - 1].str(),
                   n == 0 ? "" : conv.partial_products[idx - 1].str()});
        }
        return out.str();
      }
      json levels = json::array();
      for (int n = 0; n <= config.levels; ++n) {
        levels.push_back({{"n", n},
                          {"epsilon", schedule.level_epsilon(n).str()},
                          {"alpha", schedule.alpha(n).str()}});
      }
      doc["levels"] = std::move(levels);
      doc["tail_offsets"] = ratio_array(conv.tail_offsets);
      doc["partial_products"] = ratio_array(conv.partial_products);
      doc["normalization_constant"] = normalization_constant(branch).str();
      return dump(doc);
    }
  }
  return dump(doc);
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_config(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return exit_code::ok;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_code::usage;
  }

  std::string text;
  int status = exit_code::ok;
  try {
    if (config.verbosity > 0) err << "running " << to_string(config.command) << "\n";
    text = render_report(config, status);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return exit_code::resource;
  } catch (const DomainError& e) {
    err << "invariant failure: " << e.what() << "\n";
    return exit_code::invariant_failure;
  }

  if (config.output.empty()) {
    out << text;
    out.flush();
    if (!out) {
      err << "i/o error: cannot write standard output\n";
      return exit_code::io;
    }
  } else {
    std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
    if (file) file << text;
    file.close();
    if (!file) {
      err << "i/o error: cannot write '" << config.output << "'\n";
      return exit_code::io;
    }
  }
  if (config.verbosity > 0) err << "done, exit " << status << "\n";
  return status;
}

}  // namespace scalecascade
