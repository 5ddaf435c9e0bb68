#include "hburg/config.hpp"

#include "hburg/error.hpp"
#include "hburg/grid.hpp"
#include "hburg/model.hpp"

#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <string_view>

namespace hburg::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(std::string(where) + " must be a JSON object");
  }
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto key : allowed) {
      known = known || item.key() == key;
    }
    if (!known) {
      throw ConfigError("unknown key '" + item.key() + "' in " + std::string(where));
    }
  }
}

double number(const json& obj, std::string_view where, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError(std::string(where) + "." + key + " is required");
  }
  if (!it->is_number()) {
    throw ConfigError(std::string(where) + "." + key + " must be a number");
  }
  return it->get<double>();
}

std::optional<double> optional_number(const json& obj, std::string_view where, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) {
    return std::nullopt;
  }
  return number(obj, where, key);
}

std::size_t count(const json& obj, std::string_view where, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError(std::string(where) + "." + key + " is required");
  }
  if (!it->is_number_unsigned()) {
    throw ConfigError(std::string(where) + "." + key + " must be a non-negative integer");
  }
  return it->get<std::size_t>();
}

bool flag(const json& obj, std::string_view where, const char* key, bool fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    return fallback;
  }
  if (!it->is_boolean()) {
    throw ConfigError(std::string(where) + "." + key + " must be a boolean");
  }
  return it->get<bool>();
}

} // namespace

RunConfig parse_config(const json& doc) {
  reject_unknown(doc, "config",
                 {"params", "grid", "cfl", "t_end", "blowup_threshold", "record_stride", "ic", "epsilon", "output"});
  RunConfig c;

  const auto& params = doc.contains("params") ? doc.at("params") : throw ConfigError("config.params is required");
  reject_unknown(params, "params", {"mu", "nu", "L"});
  c.mu = number(params, "params", "mu");
  c.nu = number(params, "params", "nu");
  c.L = number(params, "params", "L");

  const auto& grid = doc.contains("grid") ? doc.at("grid") : throw ConfigError("config.grid is required");
  reject_unknown(grid, "grid", {"xmin", "xmax", "n"});
  c.xmin = number(grid, "grid", "xmin");
  c.xmax = number(grid, "grid", "xmax");
  c.n = count(grid, "grid", "n");

  c.t_end = number(doc, "config", "t_end");
  c.cfl = optional_number(doc, "config", "cfl").value_or(c.cfl);
  c.blowup_threshold = optional_number(doc, "config", "blowup_threshold").value_or(0.0);
  c.record_stride = doc.contains("record_stride") ? count(doc, "config", "record_stride") : 1;
  c.epsilon = optional_number(doc, "config", "epsilon");

  const auto& ic = doc.contains("ic") ? doc.at("ic") : throw ConfigError("config.ic is required");
  reject_unknown(ic, "ic", {"family", "F0", "F1", "a", "b"});
  if (ic.contains("family")) {
    if (!ic.at("family").is_string()) {
      throw ConfigError("ic.family must be a string");
    }
    c.ic.family = initial_data::parse_family(ic.at("family").get<std::string>());
  }
  c.ic.F0_target = optional_number(ic, "ic", "F0");
  c.ic.F1_target = optional_number(ic, "ic", "F1");
  c.ic.a = optional_number(ic, "ic", "a");
  c.ic.b = optional_number(ic, "ic", "b");
  const bool moments = c.ic.F0_target || c.ic.F1_target;
  const bool amplitudes = c.ic.a || c.ic.b;
  if (moments == amplitudes) {
    throw ConfigError("ic must give either F0 and F1 or a and b");
  }
  if (moments && !(c.ic.F0_target && c.ic.F1_target)) {
    throw ConfigError("ic needs both F0 and F1");
  }
  if (amplitudes && !(c.ic.a && c.ic.b)) {
    throw ConfigError("ic needs both a and b");
  }

  if (doc.contains("output")) {
    const auto& out = doc.at("output");
    reject_unknown(out, "output", {"directory", "emit_csv", "emit_report"});
    if (out.contains("directory")) {
      if (!out.at("directory").is_string()) {
        throw ConfigError("output.directory must be a string");
      }
      c.output.directory = out.at("directory").get<std::string>();
    }
    c.output.emit_csv = flag(out, "output", "emit_csv", true);
    c.output.emit_report = flag(out, "output", "emit_report", true);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  json ic{{"family", std::string(initial_data::family_name(c.ic.family))}};
  if (c.ic.by_moments()) {
    ic["F0"] = *c.ic.F0_target;
    ic["F1"] = *c.ic.F1_target;
  } else {
    ic["a"] = c.ic.a.value_or(0.0);
    ic["b"] = c.ic.b.value_or(0.0);
  }
  json doc{
      {"params", {{"mu", c.mu}, {"nu", c.nu}, {"L", c.L}}},
      {"grid", {{"xmin", c.xmin}, {"xmax", c.xmax}, {"n", c.n}}},
      {"cfl", c.cfl},
      {"t_end", c.t_end},
      {"blowup_threshold", c.blowup_threshold},
      {"record_stride", c.record_stride},
      {"ic", ic},
      {"output",
       {{"directory", c.output.directory}, {"emit_csv", c.output.emit_csv}, {"emit_report", c.output.emit_report}}},
  };
  if (c.epsilon) {
    doc["epsilon"] = *c.epsilon;
  }
  return doc;
}

void validate(const RunConfig& c) {
  const auto params = model::validate_params(c.mu, c.nu, c.L);
  const Grid grid(c.xmin, c.xmax, c.n);
  if (c.record_stride < 1) {
    throw ConfigError("record_stride must be at least 1");
  }
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) {
    throw ConfigError("cfl must lie in (0, 1]");
  }
  if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) {
    throw ConfigError("t_end must be finite and non-negative");
  }
  check_domain_margin(grid, params, c.t_end);
}

std::filesystem::path resolve_output_dir(const std::string& directory) {
  std::filesystem::path p(directory);
  if (p.is_relative()) {
    if (const char* root = std::getenv("HYPERBURG_OUT"); root != nullptr && *root != '\0') {
      return std::filesystem::path(root) / p;
    }
  }
  return p;
}

} // namespace hburg::cli
