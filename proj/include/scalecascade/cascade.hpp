#pragma once

// Recursive scale cascade and the truncated product solutions built on it.
//
// Level 0 is the variable eta0 itself (t_+ = 1 + eta0). For n >= 1
//
//   eta_n  = alpha_{n-1}^2 * (eta'_{n-1})^2
//   eta'_n = eta_n - eps_n / alpha_n
//   t'_{n+} = 1 + alpha_n * eta'_n,   t'_{n-} = 1 - alpha_n * eta'_n
//
// The minus branch at depth N is
//
//   tau_-(eta0) = C * g(eta0) / (t'_{0+} t'_{1+} ... t'_{(N-1)+})
//
// where g is the closure (1, or t_{N-}/t_{N-}(0) with t_{N-} = 1 - eta_N) and
// C is chosen so that tau_-(0) = 1. The plus branch is tau_+ = 1 + eta0.

#include <cstddef>
#include <string>
#include <vector>

#include "scalecascade/jet.hpp"
#include "scalecascade/poly.hpp"
#include "scalecascade/ratio.hpp"
#include "scalecascade/schedule.hpp"

namespace scalecascade {

template <class Series>
struct CascadeLevel {
  int n = 0;
  Ratio eps;
  Ratio alpha;
  Series eta;        // eta_n
  Series eta_prime;  // eta'_n
  Series scaled;     // alpha_n * eta'_n (eta0 itself at level 0)
  Series t_plus;     // 1 + alpha_n * eta'_n
  Series t_minus;    // 1 - alpha_n * eta'_n
};

using JetLevel = CascadeLevel<Jet>;
using PolyLevel = CascadeLevel<Poly>;

/// Full polynomial expansion is refused past this level (degree 2^12).
inline constexpr int default_poly_level_cap = 12;

/// Levels 0..last_level as jets of the given order.
std::vector<JetLevel> cascade_jets(const ScaleSchedule& schedule, int last_level,
                                   std::size_t order);

/// Levels 0..last_level as full polynomials. Throws ResourceError if
/// last_level exceeds level_cap.
std::vector<PolyLevel> cascade_polys(const ScaleSchedule& schedule, int last_level,
                                     int level_cap = default_poly_level_cap);

JetLevel eta_level(const ScaleSchedule& schedule, int n, std::size_t order);
PolyLevel eta_level_poly(const ScaleSchedule& schedule, int n,
                         int level_cap = default_poly_level_cap);

/// Values of eta_n, eta'_n and t'_{n+} at eta0 = 0, by scalar recursion.
struct LevelConstants {
  Ratio eta;
  Ratio eta_prime;
  Ratio t_plus;
};

std::vector<LevelConstants> level_constants(const ScaleSchedule& schedule, int last_level);

enum class Closure { one, linear };

std::string to_string(Closure closure);

struct BranchSolution {
  ScaleSchedule schedule;
  int depth = 1;
  Closure closure = Closure::one;
  /// t'_{j+}(0) for j = 0..depth-1; their reciprocals multiply into tau_-.
  std::vector<Ratio> factor_values;
  /// Product of factor_values, so that tau_-(0) = 1.
  Ratio normalization;
  /// t_{N-}(0) for the linear closure, 1 for the one closure.
  Ratio closure_value;
  Poly plus_branch;
};

/// Throws DomainError for depth < 1 or when a factor or the linear closure
/// vanishes at eta0 = 0.
BranchSolution build_branch(const ScaleSchedule& schedule, int depth, Closure closure);

/// C_N = t'_{1+}(0) t'_{2+}(0) ... t'_{N+}(0), the infinite-product constant
/// truncated after N scaled levels. Equals 1 iff every one of those levels
/// is unscaled.
Ratio normalization_constant(const BranchSolution& branch);

struct BranchFactorJets {
  std::vector<Jet> factors;  // t'_{j+}, j = 0..depth-1
  Jet closure;               // g, normalized so g(0) = 1
};

BranchFactorJets branch_factor_jets(const BranchSolution& branch, std::size_t order);

/// Exact Taylor coefficients of tau_- through eta0^order.
Jet branch_jet(const BranchSolution& branch, std::size_t order);

/// tau_- as an unreduced (numerator, denominator) pair of full polynomials.
/// Throws ResourceError if depth exceeds level_cap.
RationalFunction branch_rational(const BranchSolution& branch,
                                 int level_cap = default_poly_level_cap);

}  // namespace scalecascade
