#pragma once

#include <map>
#include <string>

#include "qlm/scattering.hpp"

namespace qlm {

// Flat key = value run configuration. Unknown keys are rejected.
struct RunConfig {
  ScatteringProtocol protocol;
  Engine engine = Engine::Noiseless;
  RunOptions options;
  std::string out_dir = ".";
  std::string variant = "scatter";  // scatter | vacuum | free_left | free_right

  // The protocol actually run (variant applied).
  ScatteringProtocol effective_protocol() const;
  std::string resolved_json() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Applies a single key to the config; used by both the file parser and
// CLI overrides.
void apply_config_key(RunConfig& config, const std::string& key,
                      const std::string& value);

}  // namespace qlm
