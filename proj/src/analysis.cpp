#include "scalecascade/analysis.hpp"

#include <exception>

#include "scalecascade/errors.hpp"

namespace scalecascade {

namespace {

Jet one_minus_eta(std::size_t order) { return Ratio(1) - Jet::variable(order); }

Jet product_of(const std::vector<Jet>& factors, std::size_t order) {
  Jet acc = Jet::constant(order, Ratio(1));
  for (const auto& f : factors) acc = acc * f;
  return acc;
}

template <class Report>
void fill_leading(Report& report, const Jet& series) {
  report.leading_order = series.leading_order();
  if (report.leading_order) report.leading_coefficient = series[*report.leading_order];
}

}  // namespace

ResidualReport residual_of(const Jet& tau, Side side) {
  if (tau.order() < 1) throw DomainError("residual needs a jet of order >= 1");
  const std::size_t k = tau.order() - 1;
  const Jet d = jet_derive(tau);
  const Jet eta = Jet::variable(k);
  ResidualReport report;
  if (side == Side::minus) {
    report.residual = (Ratio(1) - eta) * (-d) - tau.truncated(k);
  } else {
    report.residual = (Ratio(1) + eta) * d - tau.truncated(k);
  }
  fill_leading(report, report.residual);
  return report;
}

ResidualReport ode_residual(const BranchSolution& branch, std::size_t order) {
  if (order < 1) throw DomainError("residual order must be >= 1");
  return residual_of(branch_jet(branch, order + 1), Side::minus);
}

Jet log_derivative_sum(const BranchSolution& branch, std::size_t order) {
  const auto parts = branch_factor_jets(branch, order + 1);
  Jet s(order);
  for (const auto& f : parts.factors) s += jet_derive(f) * jet_recip(f);
  s -= jet_derive(parts.closure) * jet_recip(parts.closure);
  return s;
}

JumpDecomposition jump_decomposition(const BranchSolution& branch) {
  if (branch.depth < 2) throw DomainError("jump decomposition needs depth >= 2");
  const auto parts = branch_factor_jets(branch, 2);
  JumpDecomposition out;
  out.total = Ratio(2) * branch_jet(branch, 2)[2];

  const Jet& f0 = parts.factors.front();
  const Ratio slope = f0[1] / f0[0];
  out.base = Ratio(2) * slope * slope - Ratio(2) * f0[2] / f0[0];

  Ratio sum;
  for (std::size_t k = 1; k < parts.factors.size(); ++k) {
    const Jet& f = parts.factors[k];
    out.terms.push_back(Ratio(2) * f[2] / f[0]);
    sum += out.terms.back();
  }
  out.closure_term = Ratio(2) * parts.closure[2];
  out.identity_holds = out.total == out.base - sum + out.closure_term;
  return out;
}

std::vector<JumpDecomposition> jump_scan_serial(std::span<const Ratio> epsilons, int depth,
                                                int generation, ScheduleRule rule,
                                                Closure closure) {
  std::vector<JumpDecomposition> rows;
  rows.reserve(epsilons.size());
  for (const auto& eps : epsilons) {
    const auto schedule = make_schedule(eps, depth, generation, rule);
    rows.push_back(jump_decomposition(build_branch(schedule, depth, closure)));
  }
  return rows;
}

std::vector<JumpDecomposition> jump_scan(std::span<const Ratio> epsilons, int depth,
                                         int generation, ScheduleRule rule, Closure closure) {
  std::vector<JumpDecomposition> rows(epsilons.size());
  std::vector<std::exception_ptr> errors(epsilons.size());
  const auto n = static_cast<std::ptrdiff_t>(epsilons.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      const auto schedule = make_schedule(epsilons[idx], depth, generation, rule);
      rows[idx] = jump_decomposition(build_branch(schedule, depth, closure));
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

IdentityVerdict selfsimilar_identity(const ScaleSchedule& schedule, int level, int level_cap) {
  if (level < 0) throw DomainError("negative cascade level");
  const auto levels = cascade_polys(schedule, level + 1, level_cap);
  const auto& here = levels[static_cast<std::size_t>(level)];
  const Poly f = Ratio(1) - levels.back().eta;
  const Poly df = f.derivative();
  const Poly dbar = here.scaled.derivative();

  IdentityVerdict v;
  v.level = level;
  const Poly f_dbar = f * dbar;
  v.lhs_minus_one.numerator =
      here.t_minus * f_dbar - here.t_minus * here.t_plus * df - here.t_plus * f_dbar;
  v.lhs_minus_one.denominator = here.t_plus * f_dbar;
  v.holds = v.lhs_minus_one.is_identically_zero();
  return v;
}

ParityReport parity_analysis(const BranchSolution& branch, std::size_t order, ReflectMode mode) {
  if (order < 1) throw DomainError("parity order must be >= 1");
  const std::size_t k1 = order + 1;
  const Jet tau_minus = branch_jet(branch, k1);

  Jet reflected_plus(k1);
  if (mode == ReflectMode::all) {
    reflected_plus = tau_minus.reflected();
  } else {
    auto parts = branch_factor_jets(branch, k1);
    parts.factors.front() = parts.factors.front().reflected();
    reflected_plus =
        branch.normalization * (parts.closure * jet_recip(product_of(parts.factors, k1)));
  }

  ParityReport r;
  r.tau_minus = tau_minus.truncated(order);
  r.tau_plus = Jet::from_poly(branch.plus_branch, order);
  r.reflected_minus = one_minus_eta(order);
  r.reflected_plus = reflected_plus.truncated(order);
  for (std::size_t i = 0; i <= order; ++i) {
    r.asymmetry += (r.reflected_minus[i] - r.tau_minus[i]).abs();
    r.asymmetry += (r.reflected_plus[i] - r.tau_plus[i]).abs();
  }
  r.residual_order = residual_of(tau_minus, Side::minus).leading_order;
  r.reflected_residual_order = residual_of(reflected_plus, Side::plus).leading_order;
  return r;
}

DeviationReport generation_deviation(const BranchSolution& branch, std::size_t order) {
  const Jet tau = branch_jet(branch, order);
  DeviationReport out;
  out.log_ratio = jet_log(tau * jet_recip(one_minus_eta(order)));
  fill_leading(out, out.log_ratio);
  return out;
}

Jet phi_jet(const Ratio& epsilon, const BranchSolution& branch, std::size_t order) {
  return epsilon * (branch_jet(branch, order) * jet_recip(one_minus_eta(order)));
}

Jet phi_residual(const Ratio& epsilon, const BranchSolution& branch, std::size_t order) {
  if (order < 1) throw DomainError("phi residual order must be >= 1");
  const Jet phi = phi_jet(epsilon, branch, order + 1);
  return one_minus_eta(order) * (-jet_derive(phi));
}

ConvergenceReport convergence_diagnostics(const ScaleSchedule& schedule, int depth) {
  if (depth < 1) throw DomainError("diagnostics depth must be >= 1");
  const auto consts = level_constants(schedule, depth);
  ConvergenceReport out;
  Ratio c(1);
  for (int n = 1; n <= depth; ++n) {
    const Ratio& t = consts[static_cast<std::size_t>(n)].t_plus;
    out.tail_offsets.push_back((t - Ratio(1)).abs());
    c *= t;
    out.partial_products.push_back(c);
  }
  return out;
}

std::vector<CompareRow> long_horizon_compare(const Ratio& epsilon, const Ratio& t_lo,
                                             const Ratio& t_hi, int steps, long precision_bits) {
  if (t_lo.sign() <= 0) throw DomainError("t_lo must be positive");
  if (t_hi < t_lo) throw DomainError("t_hi must not be below t_lo");
  if (steps < 2) throw DomainError("steps must be >= 2");
  const BigFloat eps(epsilon, precision_bits);
  const Ratio step = (t_hi - t_lo) / Ratio(steps - 1);
  std::vector<CompareRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const BigFloat t(t_lo + Ratio(i) * step, precision_bits);
    const BigFloat& tau = t;  // standard branch tau(t) = t
    BigFloat tau_g = t + eps * tau;
    BigFloat abs_dev = (tau_g - t).abs();
    BigFloat rel_dev = abs_dev / t.abs();
    rows.push_back({t, t, std::move(tau_g), std::move(abs_dev), std::move(rel_dev)});
  }
  return rows;
}

}  // namespace scalecascade
