#pragma once

#include <string>
#include <vector>

#include "scalecascade/ratio.hpp"

namespace scalecascade {

enum class ScheduleRule {
  /// eps_n = eps^(2^(n-k)) for n >= k: eps_k = eps, then eps^2, eps^4, ...
  power_tower,
  /// eps_n = eps^(2^(n-k+1)) for n >= k: eps_k = eps^2, then eps^4, ...
  literal_power,
  /// Values supplied per level starting at level 0; unlisted levels are 0.
  explicit_list,
};

std::string to_string(ScheduleRule rule);

/// Scaling parameters eps_n and alpha_n = 1 + eps_n per cascade level.
/// Levels below the generation k are unscaled (eps_n = 0).
class ScaleSchedule {
 public:
  const Ratio& epsilon() const { return epsilon_; }
  int depth() const { return depth_; }
  int generation() const { return generation_; }
  ScheduleRule rule() const { return rule_; }

  /// eps_n for any level n >= 0 (not limited to depth).
  Ratio level_epsilon(int n) const;
  Ratio alpha(int n) const { return Ratio(1) + level_epsilon(n); }

  /// Human-readable descriptions of every broken schedule invariant
  /// (eps_0 = 0, 0 <= eps_n < 1). Empty when the schedule is well formed.
  std::vector<std::string> invariant_violations() const;

  friend ScaleSchedule make_schedule(const Ratio& epsilon, int depth, int generation,
                                     ScheduleRule rule, std::vector<Ratio> explicit_list);

 private:
  ScaleSchedule() = default;

  Ratio epsilon_;
  int depth_ = 0;
  int generation_ = 1;
  ScheduleRule rule_ = ScheduleRule::power_tower;
  std::vector<Ratio> explicit_;
};

/// Throws DomainError when eps is outside [0, 1), generation < 1,
/// generation > depth, or an explicit list is shorter than depth.
/// Explicit values are not range-checked here; see invariant_violations().
ScaleSchedule make_schedule(const Ratio& epsilon, int depth, int generation = 1,
                            ScheduleRule rule = ScheduleRule::power_tower,
                            std::vector<Ratio> explicit_list = {});

}  // namespace scalecascade
