#include "ladder/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

namespace ladder {

namespace {

const std::vector<std::string> kKnownKeys = {
    "n",      "lambda",  "controller", "k",    "alpha",         "initial",
    "target", "dt",      "t_max",      "epsilon", "beta",       "sample_stride",
    "renormalize", "output"};

std::string trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(begin, end - begin + 1));
}

std::vector<std::string> split(const std::string& text, char delim) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(delim, start);
    if (pos == std::string::npos) {
      parts.push_back(trim(std::string_view(text).substr(start)));
      break;
    }
    parts.push_back(trim(std::string_view(text).substr(start, pos - start)));
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError("config key '" + key + "': malformed number '" + text + "'");
  }
  return value;
}

long parse_integer(const std::string& key, const std::string& text) {
  long value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("config key '" + key + "': malformed integer '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + text + "'");
}

std::vector<double> parse_double_list(const std::string& key, const std::string& text) {
  std::vector<double> values;
  for (const std::string& part : split(text, ',')) {
    if (part.empty()) throw ConfigError("config key '" + key + "': empty list entry");
    values.push_back(parse_double(key, part));
  }
  return values;
}

Eigen::VectorXcd parse_initial(const std::string& text, int n) {
  const std::string basis_prefix = "basis:";
  if (text.rfind(basis_prefix, 0) == 0) {
    const long level = parse_integer("initial", text.substr(basis_prefix.size()));
    if (level < 1 || level > n) {
      throw ConfigError("config key 'initial': basis level " + std::to_string(level) +
                        " outside 1.." + std::to_string(n));
    }
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
    c[level - 1] = 1.0;
    return c;
  }
  const std::vector<double> flat = parse_double_list("initial", text);
  if (static_cast<int>(flat.size()) != 2 * n) {
    throw ConfigError("config key 'initial': expected " + std::to_string(2 * n) +
                      " numbers (re,im per level), got " + std::to_string(flat.size()));
  }
  Eigen::VectorXcd c(n);
  for (int j = 0; j < n; ++j) c[j] = Complex(flat[2 * j], flat[2 * j + 1]);
  return c;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> entries;
  std::istringstream stream(text);
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_number) +
                        ": expected 'key = value', got '" + stripped + "'");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_number) + ": empty key");
    }
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
    if (entries.count(key) != 0) {
      throw ConfigError("duplicate config key '" + key + "'");
    }
    entries[key] = value;
  }

  auto required = [&entries](const char* key) -> const std::string& {
    const auto it = entries.find(key);
    if (it == entries.end()) {
      throw ConfigError(std::string("missing required config key '") + key + "'");
    }
    return it->second;
  };
  auto optional = [&entries](const char* key) -> const std::string* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  ExperimentConfig config;

  const long n = parse_integer("n", required("n"));
  if (n < 2) throw ConfigError("config key 'n': need at least 2 levels");
  config.n = static_cast<int>(n);

  config.lambda = parse_double_list("lambda", required("lambda"));
  if (static_cast<int>(config.lambda.size()) != config.n) {
    throw ConfigError("config key 'lambda': expected " + std::to_string(config.n) +
                      " energies, got " + std::to_string(config.lambda.size()));
  }
  try {
    build_ladder(config.n, config.lambda);  // surfaces degeneracy at parse time
  } catch (const std::invalid_argument& error) {
    throw ConfigError(std::string("config key 'lambda': ") + error.what());
  }

  try {
    config.params.kind = controller_kind_from_string(required("controller"));
  } catch (const std::invalid_argument& error) {
    throw ConfigError(std::string("config key 'controller': ") + error.what());
  }
  config.params.k = parse_double_list("k", required("k"));
  if (const std::string* alpha = optional("alpha")) {
    config.params.alpha = parse_double_list("alpha", *alpha);
  } else if (config.params.kind == ControllerKind::Fractional) {
    throw ConfigError("missing required config key 'alpha' (fractional controller)");
  }
  try {
    config.params.validate(config.n);
  } catch (const std::invalid_argument& error) {
    throw ConfigError(std::string("config keys 'k'/'alpha': ") + error.what());
  }
  if (config.params.kind != ControllerKind::Fractional && !config.params.alpha.empty()) {
    for (double a : config.params.alpha) {
      if (!(a > 0.0 && a < 1.0)) {
        throw ConfigError("config key 'alpha': exponents must lie in (0, 1)");
      }
    }
  }

  config.initial = parse_initial(required("initial"), config.n);
  try {
    ComplexState probe(config.initial);  // surfaces norm violations at parse time
  } catch (const std::invalid_argument& error) {
    throw ConfigError(std::string("config key 'initial': ") + error.what());
  }

  config.target_index = config.n;
  if (const std::string* target = optional("target")) {
    const long index = parse_integer("target", *target);
    if (index != config.n) {
      throw ConfigError("config key 'target': only the highest level " + std::to_string(config.n) +
                        " is supported, got " + std::to_string(index));
    }
  }

  if (const std::string* dt = optional("dt")) {
    config.integrator.dt = parse_double("dt", *dt);
  }
  config.integrator.t_max = parse_double("t_max", required("t_max"));
  if (const std::string* stride = optional("sample_stride")) {
    const long value = parse_integer("sample_stride", *stride);
    if (value < 1) throw ConfigError("config key 'sample_stride': must be >= 1");
    config.integrator.sample_stride = static_cast<int>(value);
  }
  if (const std::string* renormalize = optional("renormalize")) {
    config.integrator.renormalize = parse_bool("renormalize", *renormalize);
  }
  try {
    config.integrator.validate();
  } catch (const std::invalid_argument& error) {
    throw ConfigError(std::string("config keys 'dt'/'t_max': ") + error.what());
  }

  if (const std::string* epsilon = optional("epsilon")) {
    config.epsilon = parse_double("epsilon", *epsilon);
  }
  if (!(config.epsilon > 0.0)) throw ConfigError("config key 'epsilon': must be positive");

  if (const std::string* beta = optional("beta")) {
    config.beta = parse_double("beta", *beta);
  }
  if (!(config.beta > 0.0 && config.beta < 1.0)) {
    throw ConfigError("config key 'beta': must lie in (0, 1)");
  }

  if (const std::string* output = optional("output")) config.output = *output;

  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace ladder
