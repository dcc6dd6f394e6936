#include "qlm/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qlm/errors.hpp"

namespace qlm {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<int> parse_int_list(const std::string& value) {
  std::vector<int> out;
  std::istringstream is(value);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  return out;
}

bool parse_bool(const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("bad boolean value: " + value);
}

CollisionKind kind_from(const std::string& s) {
  if (s == "meson_meson") return CollisionKind::MesonMeson;
  if (s == "meson_antimeson") return CollisionKind::MesonAntimeson;
  if (s == "free_left") return CollisionKind::FreeLeft;
  if (s == "free_right") return CollisionKind::FreeRight;
  if (s == "vacuum") return CollisionKind::Vacuum;
  throw ConfigError("bad collision kind: " + s);
}

}  // namespace

void apply_config_key(RunConfig& config, const std::string& key,
                      const std::string& value) {
  try {
    if (key == "preset") {
      ScatteringProtocol p = protocol_preset(value);
      p.formulation = config.protocol.formulation;
      config.protocol = p;
    } else if (key == "formulation") {
      if (value == "integrated") config.protocol.formulation = Formulation::IntegratedOut;
      else if (value == "matterful") config.protocol.formulation = Formulation::Matterful;
      else throw ConfigError("bad formulation: " + value);
    } else if (key == "L") {
      config.protocol.L = std::stoi(value);
    } else if (key == "kind") {
      config.protocol.kind = kind_from(value);
    } else if (key == "excited_links") {
      config.protocol.excited_links = parse_int_list(value);
    } else if (key == "wall_terms") {
      config.protocol.wall_removed_terms = parse_int_list(value);
    } else if (key == "hold_steps") {
      config.protocol.hold_steps = std::stoi(value);
    } else if (key == "kappa") {
      config.protocol.kappa = std::stod(value);
    } else if (key == "mu") {
      config.protocol.mu = std::stod(value);
    } else if (key == "g") {
      config.protocol.g = std::stod(value);
    } else if (key == "T") {
      config.protocol.T = std::stod(value);
    } else if (key == "steps") {
      config.protocol.steps = std::stoi(value);
    } else if (key == "name") {
      config.protocol.name = value;
    } else if (key == "engine") {
      if (value == "exact") config.engine = Engine::Exact;
      else if (value == "noiseless") config.engine = Engine::Noiseless;
      else if (value == "noisy") config.engine = Engine::Noisy;
      else throw ConfigError("bad engine: " + value);
    } else if (key == "noise_alpha") {
      config.options.noise.alpha = std::stod(value);
      config.options.noise.enabled = true;
    } else if (key == "noise_enabled") {
      config.options.noise.enabled = parse_bool(value);
    } else if (key == "noise_mode") {
      if (value == "trajectories") config.options.mode = RunOptions::NoisyMode::Trajectories;
      else if (value == "kraus") config.options.mode = RunOptions::NoisyMode::Kraus;
      else throw ConfigError("bad noise mode: " + value);
    } else if (key == "postselect") {
      config.options.postselect = parse_bool(value);
    } else if (key == "trajectories") {
      config.options.num_trajectories = std::stoi(value);
    } else if (key == "seed") {
      config.options.seed = std::stoull(value);
    } else if (key == "jobs") {
      config.options.jobs = std::stoi(value);
    } else if (key == "use_rzz") {
      config.options.use_rzz = parse_bool(value);
    } else if (key == "out_dir") {
      config.out_dir = value;
    } else if (key == "variant") {
      if (value != "scatter" && value != "vacuum" && value != "free_left" &&
          value != "free_right")
        throw ConfigError("bad variant: " + value);
      config.variant = value;
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("bad value for key '" + key + "': " + e.what());
  }
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    apply_config_key(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  config.effective_protocol().validate();
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

ScatteringProtocol RunConfig::effective_protocol() const {
  if (variant == "scatter") return protocol;
  if (variant == "vacuum") return companion(protocol, CollisionKind::Vacuum);
  if (variant == "free_left") return companion(protocol, CollisionKind::FreeLeft);
  return companion(protocol, CollisionKind::FreeRight);
}

std::string RunConfig::resolved_json() const {
  const ScatteringProtocol p = effective_protocol();
  nlohmann::json j;
  j["schema_version"] = 1;
  j["protocol"] = p.name;
  j["L"] = p.L;
  j["kind"] = to_string(p.kind);
  j["excited_links"] = p.excited_links;
  j["wall_terms"] = p.wall_removed_terms;
  j["hold_steps"] = p.hold_steps;
  j["kappa"] = p.kappa;
  j["mu"] = p.mu;
  j["g"] = p.g;
  j["T"] = p.T;
  j["steps"] = p.steps;
  j["formulation"] =
      p.formulation == Formulation::Matterful ? "matterful" : "integrated";
  j["engine"] = engine == Engine::Exact ? "exact"
                : engine == Engine::Noiseless ? "noiseless" : "noisy";
  j["noise_alpha"] = options.noise.alpha;
  j["noise_enabled"] = options.noise.enabled;
  j["noise_mode"] = options.mode == RunOptions::NoisyMode::Kraus ? "kraus" : "trajectories";
  j["postselect"] = options.postselect;
  j["trajectories"] = options.num_trajectories;
  j["seed"] = options.seed;
  j["use_rzz"] = options.use_rzz;
  j["variant"] = variant;
  return j.dump();
}

}  // namespace qlm
