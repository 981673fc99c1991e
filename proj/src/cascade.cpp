#include "scalecascade/cascade.hpp"

#include <algorithm>

#include "scalecascade/errors.hpp"

namespace scalecascade {

namespace {

template <class Series>
std::vector<CascadeLevel<Series>> build_levels(const ScaleSchedule& schedule, int last_level,
                                               Series eta0) {
  if (last_level < 0) throw DomainError("negative cascade level");
  std::vector<CascadeLevel<Series>> levels;
  levels.reserve(static_cast<std::size_t>(last_level) + 1);
  for (int n = 0; n <= last_level; ++n) {
    CascadeLevel<Series> level;
    level.n = n;
    level.eps = schedule.level_epsilon(n);
    level.alpha = Ratio(1) + level.eps;
    if (n == 0) {
      level.eta = eta0;
    } else {
      const auto& prev = levels.back();
      level.eta = (prev.alpha * prev.alpha) * (prev.eta_prime * prev.eta_prime);
    }
    level.eta_prime = level.eta - level.eps / level.alpha;
    level.scaled = level.alpha * level.eta_prime;
    level.t_plus = Ratio(1) + level.scaled;
    level.t_minus = Ratio(1) - level.scaled;
    levels.push_back(std::move(level));
  }
  return levels;
}

void check_cap(int level, int cap) {
  if (level > cap) {
    throw ResourceError("polynomial expansion to level " + std::to_string(level) +
                        " exceeds the cap of " + std::to_string(cap) + " (degree " +
                        std::to_string(1L << std::min(cap, 62)) + ")");
  }
}

}  // namespace

std::vector<JetLevel> cascade_jets(const ScaleSchedule& schedule, int last_level,
                                   std::size_t order) {
  return build_levels(schedule, last_level, Jet::variable(order));
}

std::vector<PolyLevel> cascade_polys(const ScaleSchedule& schedule, int last_level,
                                     int level_cap) {
  check_cap(last_level, level_cap);
  return build_levels(schedule, last_level, Poly::variable());
}

JetLevel eta_level(const ScaleSchedule& schedule, int n, std::size_t order) {
  return cascade_jets(schedule, n, order).back();
}

PolyLevel eta_level_poly(const ScaleSchedule& schedule, int n, int level_cap) {
  return cascade_polys(schedule, n, level_cap).back();
}

std::vector<LevelConstants> level_constants(const ScaleSchedule& schedule, int last_level) {
  std::vector<LevelConstants> out;
  Ratio prev_scaled;  // alpha_{n-1} * eta'_{n-1}(0)
  for (int n = 0; n <= last_level; ++n) {
    const Ratio eps = schedule.level_epsilon(n);
    const Ratio alpha = Ratio(1) + eps;
    LevelConstants c;
    c.eta = n == 0 ? Ratio() : prev_scaled * prev_scaled;
    c.eta_prime = c.eta - eps / alpha;
    prev_scaled = alpha * c.eta_prime;
    c.t_plus = Ratio(1) + prev_scaled;
    out.push_back(std::move(c));
  }
  return out;
}

std::string to_string(Closure closure) { return closure == Closure::one ? "one" : "linear"; }

BranchSolution build_branch(const ScaleSchedule& schedule, int depth, Closure closure) {
  if (depth < 1) throw DomainError("branch depth must be >= 1");
  const auto consts = level_constants(schedule, depth);
  BranchSolution b{schedule, depth, closure, {}, Ratio(1), Ratio(1), Poly()};
  for (int j = 0; j < depth; ++j) {
    const Ratio& v = consts[static_cast<std::size_t>(j)].t_plus;
    if (v.is_zero()) {
      throw DomainError("factor t'_" + std::to_string(j) + "+ vanishes at eta0 = 0");
    }
    b.factor_values.push_back(v);
    b.normalization *= v;
  }
  b.closure_value = Ratio(1);
  if (closure == Closure::linear) {
    b.closure_value = Ratio(1) - consts[static_cast<std::size_t>(depth)].eta;
    if (b.closure_value.is_zero()) throw DomainError("linear closure vanishes at eta0 = 0");
  }
  b.plus_branch = Ratio(1) + Poly::variable();
  return b;
}

Ratio normalization_constant(const BranchSolution& branch) {
  const auto consts = level_constants(branch.schedule, branch.depth);
  Ratio c(1);
  for (int k = 1; k <= branch.depth; ++k) c *= consts[static_cast<std::size_t>(k)].t_plus;
  return c;
}

BranchFactorJets branch_factor_jets(const BranchSolution& branch, std::size_t order) {
  const int last = branch.closure == Closure::linear ? branch.depth : branch.depth - 1;
  const auto levels = cascade_jets(branch.schedule, last, order);
  BranchFactorJets out{.factors = {}, .closure = Jet::constant(order, Ratio(1))};
  for (int j = 0; j < branch.depth; ++j) {
    out.factors.push_back(levels[static_cast<std::size_t>(j)].t_plus);
  }
  if (branch.closure == Closure::linear) {
    const Jet t_minus = Ratio(1) - levels.back().eta;
    out.closure = branch.closure_value.reciprocal() * t_minus;
  }
  return out;
}

Jet branch_jet(const BranchSolution& branch, std::size_t order) {
  const auto parts = branch_factor_jets(branch, order);
  Jet denominator = Jet::constant(order, Ratio(1));
  for (const auto& f : parts.factors) denominator = denominator * f;
  return branch.normalization * (parts.closure * jet_recip(denominator));
}

RationalFunction branch_rational(const BranchSolution& branch, int level_cap) {
  const int last = branch.closure == Closure::linear ? branch.depth : branch.depth - 1;
  if (branch.depth > level_cap) {
    throw ResourceError("rational form at depth " + std::to_string(branch.depth) +
                        " exceeds the cap of " + std::to_string(level_cap));
  }
  const auto levels = cascade_polys(branch.schedule, last, level_cap);
  Poly denominator = Poly::constant(branch.closure_value);
  for (int j = 0; j < branch.depth; ++j) {
    denominator = denominator * levels[static_cast<std::size_t>(j)].t_plus;
  }
  Poly numerator = Poly::constant(branch.normalization);
  if (branch.closure == Closure::linear) {
    numerator = branch.normalization * (Ratio(1) - levels.back().eta);
  }
  return {std::move(numerator), std::move(denominator)};
}

}  // namespace scalecascade
