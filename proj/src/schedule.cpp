#include "scalecascade/schedule.hpp"

#include "scalecascade/errors.hpp"

namespace scalecascade {

std::string to_string(ScheduleRule rule) {
  switch (rule) {
    case ScheduleRule::power_tower:
      return "power-tower";
    case ScheduleRule::literal_power:
      return "literal";
    case ScheduleRule::explicit_list:
      return "explicit";
  }
  return "unknown";
}

Ratio ScaleSchedule::level_epsilon(int n) const {
  if (n < 0) throw DomainError("negative cascade level");
  switch (rule_) {
    case ScheduleRule::explicit_list:
      return static_cast<std::size_t>(n) < explicit_.size() ? explicit_[static_cast<std::size_t>(n)]
                                                            : Ratio();
    case ScheduleRule::power_tower:
    case ScheduleRule::literal_power: {
      if (n == 0 || n < generation_) return Ratio();
      const int shift = n - generation_ + (rule_ == ScheduleRule::literal_power ? 1 : 0);
      if (shift >= 63) throw ResourceError("schedule exponent 2^" + std::to_string(shift));
      return epsilon_.pow(1UL << shift);
    }
  }
  return Ratio();
}

std::vector<std::string> ScaleSchedule::invariant_violations() const {
  std::vector<std::string> out;
  const Ratio eps0 = level_epsilon(0);
  if (!eps0.is_zero()) out.push_back("eps_0 = " + eps0.str() + " (must be 0)");
  for (int n = 1; n <= depth_; ++n) {
    const Ratio e = level_epsilon(n);
    if (e < Ratio(0) || e >= Ratio(1)) {
      out.push_back("eps_" + std::to_string(n) + " = " + e.str() + " outside [0, 1)");
    }
  }
  return out;
}

ScaleSchedule make_schedule(const Ratio& epsilon, int depth, int generation, ScheduleRule rule,
                            std::vector<Ratio> explicit_list) {
  if (epsilon < Ratio(0) || epsilon >= Ratio(1)) {
    throw DomainError("epsilon " + epsilon.str() + " outside [0, 1)");
  }
  if (depth < 1) throw DomainError("depth must be >= 1");
  if (generation < 1) throw DomainError("generation must be >= 1");
  if (generation > depth) {
    throw DomainError("generation " + std::to_string(generation) + " exceeds depth " +
                      std::to_string(depth));
  }
  if (rule == ScheduleRule::explicit_list &&
      explicit_list.size() < static_cast<std::size_t>(depth)) {
    throw DomainError("explicit schedule has " + std::to_string(explicit_list.size()) +
                      " entries, depth is " + std::to_string(depth));
  }
  ScaleSchedule s;
  s.epsilon_ = epsilon;
  s.depth_ = depth;
  s.generation_ = generation;
  s.rule_ = rule;
  s.explicit_ = std::move(explicit_list);
  return s;
}

}  // namespace scalecascade
