#pragma once

// Verification and measurement on top of the cascade: ODE residuals for
// t * dtau/dt = tau, the log-derivative sum, the second-derivative jump,
// the base self-similar identity, parity, generation deviation orders,
// convergence of the normalizing product and the long-horizon comparison.
//
// All series are in eta0. On the minus branch t = 1 - eta0 and
// d/dt = -d/deta0; on the plus branch t = 1 + eta0 and d/dt = d/deta0.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scalecascade/bigfloat.hpp"
#include "scalecascade/cascade.hpp"
#include "scalecascade/jet.hpp"
#include "scalecascade/poly.hpp"
#include "scalecascade/ratio.hpp"

namespace scalecascade {

enum class Side { minus, plus };

struct ResidualReport {
  Jet residual;
  std::optional<std::size_t> leading_order;  // nullopt: zero through K
  Ratio leading_coefficient;
};

/// r = t * dtau/dt - tau for a jet of tau on the given side. The result has
/// order tau.order() - 1.
ResidualReport residual_of(const Jet& tau, Side side);

/// Residual of the branch's tau_- through eta0^order (order >= 1).
ResidualReport ode_residual(const BranchSolution& branch, std::size_t order);

/// S with dtau_-/deta0 = -tau_- * S:
/// S = sum_j (t'_{j+})' / t'_{j+} - g'/g over all factors and the closure.
Jet log_derivative_sum(const BranchSolution& branch, std::size_t order);

struct JumpDecomposition {
  Ratio total;          // d^2 tau_-/deta0^2 at 0, i.e. 2 * c_2
  Ratio base;           // level-0 contribution (2 for an unscaled level 0)
  std::vector<Ratio> terms;  // T_k = alpha_k eta_k''(0) / (1 + alpha_k eta_k'(0)), k = 1..N-1
  Ratio closure_term;   // g''(0); 0 for the one closure
  bool identity_holds = false;  // total == base - sum(T_k) + closure_term
};

/// Requires depth >= 2.
JumpDecomposition jump_decomposition(const BranchSolution& branch);

/// Jump decompositions for one branch shape over a grid of epsilon values,
/// rows in grid order. The parallel version spreads grid points over OpenMP
/// threads; the serial one is its reference.
std::vector<JumpDecomposition> jump_scan(std::span<const Ratio> epsilons, int depth,
                                         int generation, ScheduleRule rule, Closure closure);
std::vector<JumpDecomposition> jump_scan_serial(std::span<const Ratio> epsilons, int depth,
                                                int generation, ScheduleRule rule,
                                                Closure closure);

struct IdentityVerdict {
  int level = 0;
  /// t'_-/t'_+ - t'_- * f'/f - 1 with f = 1 - eta_{n+1} the linear solution
  /// of the next self-similar equation and ' = d/d(alpha_n eta'_n).
  RationalFunction lhs_minus_one;
  bool holds = false;
};

IdentityVerdict selfsimilar_identity(const ScaleSchedule& schedule, int level,
                                     int level_cap = default_poly_level_cap);

enum class ReflectMode {
  /// Only the level-0 factor t_+ is reflected (tau^P_+ = C/(t_- t'_1+ ...)).
  level0,
  /// Every factor and the closure are reflected: tau_-(-eta0).
  all,
};

struct ParityReport {
  Jet tau_minus;
  Jet tau_plus;
  Jet reflected_minus;  // P tau_+ = 1 - eta0
  Jet reflected_plus;   // P tau_-
  Ratio asymmetry;      // sum of |differences| of both branches through K
  std::optional<std::size_t> residual_order;            // of tau_- (minus side)
  std::optional<std::size_t> reflected_residual_order;  // of P tau_- (plus side)
};

ParityReport parity_analysis(const BranchSolution& branch, std::size_t order,
                             ReflectMode mode = ReflectMode::level0);

struct DeviationReport {
  Jet log_ratio;  // ln(tau_- / (1 - eta0))
  std::optional<std::size_t> leading_order;
  Ratio leading_coefficient;
};

DeviationReport generation_deviation(const BranchSolution& branch, std::size_t order);

/// phi = epsilon * tau_- / t on the minus branch, through eta0^order.
Jet phi_jet(const Ratio& epsilon, const BranchSolution& branch, std::size_t order);

/// t * dphi/dt on the minus branch for phi = epsilon * tau_- / t, computed
/// directly from phi. Equals (epsilon / t) * r for the branch residual r.
Jet phi_residual(const Ratio& epsilon, const BranchSolution& branch, std::size_t order);

struct ConvergenceReport {
  std::vector<Ratio> tail_offsets;      // |t'_{n+}(0) - 1|, n = 1..N
  std::vector<Ratio> partial_products;  // C_n = prod_{k=1..n} t'_{k+}(0)
};

ConvergenceReport convergence_diagnostics(const ScaleSchedule& schedule, int depth);

struct CompareRow {
  BigFloat t;
  BigFloat tau_s;
  BigFloat tau_g;
  BigFloat abs_dev;
  BigFloat rel_dev;
};

/// tau_s = t against tau_g = t + epsilon * tau(t) with the standard branch
/// tau(t) = t, on `steps` equally spaced points of [t_lo, t_hi]. Grid points
/// are exact rationals rounded once to the working precision.
std::vector<CompareRow> long_horizon_compare(const Ratio& epsilon, const Ratio& t_lo,
                                             const Ratio& t_hi, int steps, long precision_bits);

}  // namespace scalecascade
