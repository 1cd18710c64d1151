#include "brwa/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace brwa::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kMinCutoff = 4;
constexpr int kMaxCutoff = 512;

struct NamedCommand {
  const char* name;
  Command value;
};

constexpr NamedCommand kCommands[] = {
    {"verify-algebra", Command::verify_algebra}, {"evolve", Command::evolve},
    {"chain-check", Command::chain_check},       {"sweep", Command::sweep},
    {"multimode", Command::multimode},           {"thermo", Command::thermo},
};

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "' " + what);
}

void allow_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown config key '" + join(path, key) + "'");
  }
}

double number(const Json& obj, const std::string& path, const std::string& key) {
  const Json& v = obj.at(key);
  if (!v.is_number()) fail(join(path, key), "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(join(path, key), "must be finite");
  return x;
}

double positive(const Json& obj, const std::string& path, const std::string& key) {
  const double x = number(obj, path, key);
  if (!(x > 0.0)) fail(join(path, key), "must be > 0");
  return x;
}

int integer(const Json& obj, const std::string& path, const std::string& key) {
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) fail(join(path, key), "must be an integer");
  const auto x = v.get<long long>();
  if (x < -1'000'000'000LL || x > 1'000'000'000LL) fail(join(path, key), "is out of range");
  return static_cast<int>(x);
}

std::string text(const Json& obj, const std::string& path, const std::string& key) {
  const Json& v = obj.at(key);
  if (!v.is_string()) fail(join(path, key), "must be a string");
  return v.get<std::string>();
}

std::vector<double> number_list(const Json& obj, const std::string& path, const std::string& key) {
  const Json& v = obj.at(key);
  const std::string field = join(path, key);
  if (!v.is_array()) fail(field, "must be a list of numbers");
  if (v.empty()) fail(field, "must not be empty");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number() || !std::isfinite(x.get<double>())) fail(field, "must hold finite numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

void require(const Json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    if (!obj.contains(key)) fail(join(path, key), "is required");
  }
}

ModeParams mode_params(const Json& obj, const std::string& path) {
  require(obj, path, {"omega_a", "omega_b", "g"});
  ModeParams p{number(obj, path, "omega_a"), number(obj, path, "omega_b"), number(obj, path, "g")};
  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    fail(path, std::string("is invalid: ") + e.what());
  }
  return p;
}

Profile profile(const Json& v, const std::string& path) {
  if (v.is_number()) return Profile::constant(v.get<double>());
  if (!v.is_object() || !v.contains("kind")) fail(path, "must be a number or an object with 'kind'");
  const std::string kind = text(v, path, "kind");
  if (kind == "constant") {
    allow_keys(v, path, {"kind", "value"});
    require(v, path, {"value"});
    return Profile::constant(number(v, path, "value"));
  }
  if (kind == "linear") {
    allow_keys(v, path, {"kind", "intercept", "slope"});
    require(v, path, {"intercept", "slope"});
    return Profile::linear(number(v, path, "intercept"), number(v, path, "slope"));
  }
  if (kind == "power") {
    allow_keys(v, path, {"kind", "scale", "exponent"});
    require(v, path, {"scale", "exponent"});
    return Profile::power(number(v, path, "scale"), number(v, path, "exponent"));
  }
  if (kind == "table") {
    allow_keys(v, path, {"kind", "samples"});
    require(v, path, {"samples"});
    const Json& samples = v.at("samples");
    const std::string field = join(path, "samples");
    if (!samples.is_array()) fail(field, "must be a list of [k, value] pairs");
    std::vector<std::pair<double, double>> pairs;
    for (const auto& s : samples) {
      if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) {
        fail(field, "must be a list of [k, value] pairs");
      }
      pairs.emplace_back(s[0].get<double>(), s[1].get<double>());
    }
    try {
      return Profile::table(std::move(pairs));
    } catch (const std::invalid_argument& e) {
      fail(field, e.what());
    }
  }
  fail(join(path, "kind"), "must be one of constant, linear, power, table");
}

// "a.b": v at the top level is read as {"a": {"b": v}}.
Json expand_dotted(const Json& root) {
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  Json out = Json::object();
  for (const auto& [key, value] : root.items()) {
    Json* node = &out;
    std::string rest = key;
    for (auto dot = rest.find('.'); dot != std::string::npos; dot = rest.find('.')) {
      const std::string head = rest.substr(0, dot);
      rest = rest.substr(dot + 1);
      Json& child = (*node)[head];
      if (child.is_null()) child = Json::object();
      if (!child.is_object()) throw ConfigError("config key '" + key + "' conflicts with '" + head + "'");
      node = &child;
    }
    if (node->contains(rest)) throw ConfigError("config key '" + key + "' is given twice");
    (*node)[rest] = value;
  }
  return out;
}

std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

Command command_from_name(const std::string& name) {
  for (const auto& c : kCommands) {
    if (name == c.name) return c.value;
  }
  throw ConfigError("unknown command '" + name + "'");
}

std::string command_name(Command c) {
  for (const auto& entry : kCommands) {
    if (entry.value == c) return entry.name;
  }
  return "?";
}

std::vector<double> TimeGrid::samples() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) return {t_min};
  const double step = (t_max - t_min) / (steps - 1);
  for (int i = 0; i < steps - 1; ++i) out.push_back(t_min + i * step);
  out.push_back(t_max);
  return out;
}

RunConfig parse_config(const std::string& text_in, Command command) {
  Json parsed;
  try {
    parsed = Json::parse(text_in, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error at " + position(text_in, e.byte) + ": " + e.what());
  }
  const Json root = expand_dotted(parsed);
  allow_keys(root, "",
             {"command", "cutoff", "mode", "gamma", "energy", "time", "dt", "interior",
              "tolerances", "chain", "sweep", "modes", "dispersion", "output"});

  RunConfig cfg;
  cfg.command = command;
  cfg.snapshot = root;
  if (root.contains("command") && command_from_name(text(root, "", "command")) != command) {
    fail("command", "is '" + root.at("command").get<std::string>() + "' but the run asked for '" +
                        command_name(command) + "'");
  }

  cfg.cutoff = command == Command::verify_algebra ? 12 : 64;
  if (root.contains("cutoff")) {
    cfg.cutoff = integer(root, "", "cutoff");
    if (cfg.cutoff < kMinCutoff || cfg.cutoff > kMaxCutoff) {
      fail("cutoff", "is " + std::to_string(cfg.cutoff) + ": cutoff outside [4,512]");
    }
  }
  if (root.contains("mode")) {
    allow_keys(root.at("mode"), "mode", {"omega_a", "omega_b", "g"});
    cfg.mode = mode_params(root.at("mode"), "mode");
  }
  if (root.contains("gamma")) cfg.gamma = number(root, "", "gamma");
  if (root.contains("energy")) cfg.energy = positive(root, "", "energy");
  if (root.contains("time")) {
    const Json& t = root.at("time");
    allow_keys(t, "time", {"t_min", "t_max", "steps"});
    require(t, "time", {"t_max", "steps"});
    if (t.contains("t_min")) cfg.time.t_min = number(t, "time", "t_min");
    cfg.time.t_max = number(t, "time", "t_max");
    cfg.time.steps = integer(t, "time", "steps");
    if (cfg.time.t_min < 0.0) fail("time.t_min", "must be >= 0");
    if (cfg.time.t_max < cfg.time.t_min) fail("time.t_max", "must be >= time.t_min");
    if (cfg.time.steps < 1 || cfg.time.steps > 1'000'000) fail("time.steps", "must be in [1, 1000000]");
  }
  if (root.contains("dt")) cfg.dt = positive(root, "", "dt");
  if (root.contains("interior")) {
    cfg.interior = integer(root, "", "interior");
    if (*cfg.interior < 1 || *cfg.interior >= cfg.cutoff) fail("interior", "must be in [1, cutoff)");
  }
  if (root.contains("tolerances")) {
    const Json& t = root.at("tolerances");
    allow_keys(t, "tolerances", {"oracle", "identity", "guard"});
    if (t.contains("oracle")) cfg.tolerances.oracle = positive(t, "tolerances", "oracle");
    if (t.contains("identity")) cfg.tolerances.identity = positive(t, "tolerances", "identity");
    if (t.contains("guard")) cfg.tolerances.guard = positive(t, "tolerances", "guard");
  }
  if (root.contains("chain")) {
    allow_keys(root.at("chain"), "chain", {"t"});
    if (root.at("chain").contains("t")) cfg.chain_t = number(root.at("chain"), "chain", "t");
  }
  if (root.contains("sweep")) {
    const Json& s = root.at("sweep");
    allow_keys(s, "sweep", {"g", "omega_a", "omega_b", "threads"});
    require(s, "sweep", {"g", "omega_a", "omega_b"});
    cfg.sweep.g = number_list(s, "sweep", "g");
    cfg.sweep.omega_a = number_list(s, "sweep", "omega_a");
    cfg.sweep.omega_b = number_list(s, "sweep", "omega_b");
    if (s.contains("threads")) {
      cfg.sweep.threads = integer(s, "sweep", "threads");
      if (cfg.sweep.threads < 0) fail("sweep.threads", "must be >= 0");
    }
  }
  if (root.contains("modes")) {
    const Json& list = root.at("modes");
    if (!list.is_array()) fail("modes", "must be a list");
    std::set<std::string> labels;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "modes[" + std::to_string(i) + "]";
      allow_keys(list[i], path, {"label", "omega_a", "omega_b", "g"});
      require(list[i], path, {"label"});
      LabeledMode m{text(list[i], path, "label"), mode_params(list[i], path)};
      if (m.label.empty()) fail(path + ".label", "must not be empty");
      if (!labels.insert(m.label).second) fail(path + ".label", "duplicates '" + m.label + "'");
      cfg.modes.push_back(m);
    }
  }
  if (root.contains("dispersion")) {
    const Json& d = root.at("dispersion");
    allow_keys(d, "dispersion", {"k_min", "k_max", "n_points", "volume", "omega_a", "omega_b", "g"});
    require(d, "dispersion", {"k_min", "k_max", "n_points", "volume", "omega_a", "omega_b", "g"});
    DispersionSpec spec;
    spec.k_min = number(d, "dispersion", "k_min");
    spec.k_max = number(d, "dispersion", "k_max");
    spec.n_points = integer(d, "dispersion", "n_points");
    spec.volume = number(d, "dispersion", "volume");
    spec.omega_a = profile(d.at("omega_a"), "dispersion.omega_a");
    spec.omega_b = profile(d.at("omega_b"), "dispersion.omega_b");
    spec.g = profile(d.at("g"), "dispersion.g");
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      fail("dispersion", std::string("is invalid: ") + e.what());
    }
    cfg.dispersion = spec;
  }
  if (root.contains("output")) {
    const Json& o = root.at("output");
    allow_keys(o, "output", {"directory", "formats"});
    if (o.contains("directory")) cfg.output.directory = text(o, "output", "directory");
    if (o.contains("formats")) {
      const Json& f = o.at("formats");
      if (!f.is_array() || f.empty()) fail("output.formats", "must be a non-empty list");
      cfg.output.csv = false;
      for (const auto& x : f) {
        const std::string name = x.is_string() ? x.get<std::string>() : "";
        if (name == "csv") {
          cfg.output.csv = true;
        } else if (name == "json") {
          cfg.output.json = true;
        } else {
          fail("output.formats", "accepts only \"csv\" and \"json\"");
        }
      }
    }
  }

  const bool has_time = root.contains("time");
  switch (command) {
    case Command::verify_algebra:
      break;
    case Command::evolve:
      if (!has_time) fail("time", "is required for evolve");
      if (!cfg.gamma && !cfg.mode) fail("gamma", "or 'mode' is required for evolve");
      break;
    case Command::thermo:
      if (!has_time) fail("time", "is required for thermo");
      if (!cfg.gamma && !cfg.mode) fail("gamma", "or 'mode' is required for thermo");
      if (!cfg.energy && !cfg.mode) fail("energy", "or 'mode' is required for thermo");
      break;
    case Command::chain_check:
      if (!cfg.mode) fail("mode", "is required for chain-check");
      break;
    case Command::sweep:
      if (!has_time) fail("time", "is required for sweep");
      if (!root.contains("sweep")) fail("sweep", "is required for sweep");
      break;
    case Command::multimode:
      if (!has_time) fail("time", "is required for multimode");
      if (cfg.modes.empty() && !cfg.dispersion) fail("modes", "or 'dispersion' is required for multimode");
      break;
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, Command command) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), command);
}

}  // namespace brwa::cli
