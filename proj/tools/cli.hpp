#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "anderson/drinfeld.hpp"

namespace anderson::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2, kPrecondition = 3 };

struct SessionConfig {
  std::string preset;
  int q = 2;
  int s = 1;
  int m = 1;
  int64_t u_cap = 96;
  int guard = 32;  // working precision is u_cap + guard
  int t_prec = 16;
  std::vector<std::string> A{"1"};  // A_1 .. A_r, ascending coefficients indexing F_q
  std::vector<std::string> xi;      // main theorem / deformation points
  uint64_t seed = 1;
  int N = 8;
  int M = 20;
  int rank = 0;  // when set, must match the number of A_i
};

/// carlitz-q2, carlitz-q3, rank2-q2, rank3-q2.
const std::vector<std::string>& preset_names();
SessionConfig preset(const std::string& name);

/// key = value lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text, const std::string& origin);
/// Unknown keys are config errors; a preset line is applied before the rest.
void apply_config_text(SessionConfig& cfg, const std::string& text, const std::string& origin = "config");
void apply_key(SessionConfig& cfg, const std::string& key, const std::string& value);

struct Session {
  SessionConfig cfg;
  FieldPtr field;
  ContextPtr ctx;
  DrinfeldModule phi;
};

/// Builds the field, context and module, re-validating every parameter.
Session open_session(const SessionConfig& cfg);

/// args excludes the program name. JSON lines go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anderson::cli
