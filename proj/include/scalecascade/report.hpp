#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalecascade/analysis.hpp"
#include "scalecascade/cascade.hpp"
#include "scalecascade/ratio.hpp"
#include "scalecascade/schedule.hpp"

namespace scalecascade {

enum class Command { jets, verify, residual, jump_scan, parity, generation, telescope, compare, schedule };
enum class OutputFormat { json, csv };

std::string to_string(Command command);

/// Process exit codes of the command-line tool.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int invariant_failure = 1;
inline constexpr int usage = 2;
inline constexpr int resource = 3;
inline constexpr int io = 4;
}  // namespace exit_code

struct RunConfig {
  Command command = Command::verify;
  Ratio epsilon;
  int levels = 6;
  int jet_order = 16;
  int generation = 1;
  Closure closure = Closure::one;
  ScheduleRule rule = ScheduleRule::power_tower;
  std::vector<Ratio> schedule_list;  // explicit rule only
  long precision = 256;
  OutputFormat format = OutputFormat::json;
  std::string output;  // empty: standard output
  int verbosity = 0;

  std::vector<Ratio> grid;  // jump-scan; sorted, defaults to {epsilon}
  Ratio t_lo = Ratio(1);
  Ratio t_hi = Ratio(1000);
  int steps = 5;
  ReflectMode reflect = ReflectMode::level0;
  bool decimal = false;
  int poly_cap = default_poly_level_cap;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_config for --help; carries the rendered help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments exclude the program name. Throws UsageError naming the
/// offending flag.
RunConfig parse_config(std::span<const std::string> args);

ScaleSchedule schedule_for(const RunConfig& config);

struct Check {
  std::string name;
  bool passed = false;
  std::string expected;
  std::string actual;
  std::string anchor;  // the property of the construction being tested
};

struct VerifyReport {
  std::vector<Check> checks;
  bool passed() const;
};

/// Runs the cascade/analysis invariant suite at the configured parameters.
/// Throws ResourceError if a polynomial check would exceed the degree cap.
VerifyReport run_verify_suite(const RunConfig& config);

/// Serializes the output of `config.command` in `config.format`. The text is
/// a pure function of the config. Sets `exit_status` (0, or 1 for a failed
/// verification).
std::string render_report(const RunConfig& config, int& exit_status);

/// Full command-line entry point: parse, run, write, map errors to exit codes.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace scalecascade
