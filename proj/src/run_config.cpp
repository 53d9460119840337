#include "nw/run_config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace nw {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
  }
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  return j;
}

const json* find(const json& obj, std::string_view key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

std::uint64_t as_uint(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  throw ConfigError(path, "expected a nonnegative integer");
}

std::vector<double> as_double_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_double(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

template <class T, class F>
void optional_field(const json& obj, std::string_view key, const std::string& path, T& out, F convert) {
  if (const json* v = find(obj, key)) out = convert(*v, path + "." + std::string(key));
}

template <class T, class F>
void required_field(const json& obj, std::string_view key, const std::string& path, T& out, F convert) {
  const json* v = find(obj, key);
  if (!v) throw ConfigError(path + "." + std::string(key), "missing required key");
  out = convert(*v, path + "." + std::string(key));
}

void parse_experiment(const json& j, RunConfig& cfg) {
  const std::string path = "experiment";
  require_object(j, path);
  reject_unknown(j, path,
                 {"m", "p_values", "betas", "reps", "n_test", "base_seed", "input_noise_sigma", "sigma_grid"});
  auto& s = cfg.sweep;
  required_field(j, "m", path, s.m, as_uint);
  required_field(j, "p_values", path, s.p_values, as_double_list);
  required_field(j, "betas", path, s.betas, as_double_list);
  required_field(j, "base_seed", path, s.base_seed, as_uint);
  optional_field(j, "reps", path, s.reps, as_uint);
  optional_field(j, "n_test", path, s.n_test, as_uint);
  optional_field(j, "input_noise_sigma", path, s.input_noise_sigma, as_double);
  optional_field(j, "sigma_grid", path, cfg.sigma_grid, as_double_list);

  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  for (std::size_t i = 0; i < cfg.sigma_grid.size(); ++i) {
    if (!(cfg.sigma_grid[i] >= 0.0)) {
      throw ConfigError(path + ".sigma_grid[" + std::to_string(i) + "]", "sigma must be nonnegative");
    }
  }
}

void parse_distribution(const json& j, RunConfig& cfg) {
  const std::string path = "distribution";
  require_object(j, path);
  const json* type = find(j, "type");
  if (!type) throw ConfigError(path + ".type", "missing required key");
  const std::string kind = as_string(*type, path + ".type");

  if (kind == "one_d_mixture") {
    reject_unknown(j, path, {"type", "inner_mass"});
    OneDMixture d;
    optional_field(j, "inner_mass", path, d.inner_mass, as_double);
    cfg.distribution = d;
  } else if (kind == "sphere_cap") {
    reject_unknown(j, path, {"type", "cap_mass", "cap_height"});
    SphereCap d;
    optional_field(j, "cap_mass", path, d.cap_mass, as_double);
    optional_field(j, "cap_height", path, d.cap_height, as_double);
    cfg.distribution = d;
  } else if (kind == "ball_annulus") {
    reject_unknown(j, path, {"type", "r", "R", "c", "d"});
    BallAnnulus d;
    required_field(j, "r", path, d.r, as_double);
    required_field(j, "R", path, d.R, as_double);
    required_field(j, "c", path, d.c, as_double);
    required_field(j, "d", path, d.d, as_uint);
    cfg.distribution = d;
  } else if (kind == "unit_cube") {
    reject_unknown(j, path, {"type", "d"});
    UnitCube d;
    required_field(j, "d", path, d.d, as_uint);
    cfg.distribution = d;
  } else if (kind == "mnist") {
    reject_unknown(j, path, {"type", "digit_neg", "digit_pos"});
    MnistDigits d;
    auto as_int = [](const json& v, const std::string& p) { return static_cast<int>(as_uint(v, p)); };
    optional_field(j, "digit_neg", path, d.digit_neg, as_int);
    optional_field(j, "digit_pos", path, d.digit_pos, as_int);
    if (d.digit_neg == d.digit_pos || d.digit_neg > 9 || d.digit_pos > 9) {
      throw ConfigError(path, "digits must be distinct and in 0..9");
    }
    cfg.mnist = d;
  } else {
    throw ConfigError(path + ".type", "unknown distribution type '" + kind +
                                          "' (expected one_d_mixture, sphere_cap, ball_annulus, unit_cube, mnist)");
  }

  if (cfg.distribution) {
    try {
      validate(*cfg.distribution);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path, e.what());
    }
  }
}

void parse_output(const json& j, RunConfig& cfg) {
  const std::string path = "output";
  require_object(j, path);
  reject_unknown(j, path, {"csv", "svg"});
  auto as_path = [](const json& v, const std::string& p) { return std::filesystem::path(as_string(v, p)); };
  if (const json* v = find(j, "csv")) cfg.output.csv = as_path(*v, path + ".csv");
  if (const json* v = find(j, "svg")) cfg.output.svg = as_path(*v, path + ".svg");
}

}  // namespace

ConfigError::ConfigError(std::string key_path, const std::string& message)
    : std::runtime_error(key_path + ": " + message), key_path_(std::move(key_path)) {}

RunConfig parse_run_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("<root>", "expected an object");
  reject_unknown(root, "", {"experiment", "distribution", "output"});

  RunConfig cfg;
  const json* exp = find(root, "experiment");
  if (!exp) throw ConfigError("experiment", "missing required key");
  parse_experiment(*exp, cfg);

  const json* dist = find(root, "distribution");
  if (!dist) throw ConfigError("distribution", "missing required key");
  parse_distribution(*dist, cfg);

  if (const json* out = find(root, "output")) parse_output(*out, cfg);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace nw
