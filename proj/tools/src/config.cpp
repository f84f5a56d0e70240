#include "omx/cli/config.hpp"

#include <functional>
#include <map>

#include "omx/cli/io.hpp"

namespace omx::cli {
namespace {

using nlohmann::json;

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  return v.get<double>();
}

std::size_t as_count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError("'" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError("'" + key + "' must be true or false");
  return v.get<bool>();
}

using Handler = std::function<void(const json&, const std::string&)>;

// Dispatches every key of `obj` to its handler; anything unlisted is an error.
void walk(const json& obj, const std::string& prefix, const std::map<std::string, Handler>& handlers) {
  if (!obj.is_object()) throw ConfigError("'" + prefix + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    const auto it = handlers.find(key);
    if (it == handlers.end()) throw ConfigError("unknown key '" + path + "'");
    it->second(value, path);
  }
}

Handler number_into(double& slot) {
  return [&slot](const json& v, const std::string& k) { slot = as_number(v, k); };
}
Handler count_into(std::size_t& slot) {
  return [&slot](const json& v, const std::string& k) { slot = as_count(v, k); };
}
Handler string_into(std::string& slot) {
  return [&slot](const json& v, const std::string& k) { slot = as_string(v, k); };
}

void parse_axis(const json& obj, const std::string& prefix, AxisConfig& axis) {
  walk(obj, prefix,
       {{"param", string_into(axis.param)},
        {"start", number_into(axis.start)},
        {"stop", number_into(axis.stop)},
        {"points", count_into(axis.points)}});
}

}  // namespace

RunConfig parse_config(const json& doc) {
  RunConfig cfg;
  auto& p = cfg.params;
  auto& s = cfg.sweep;
  auto& sp = cfg.spectrum;
  auto& o = cfg.output;
  if (doc.is_null()) return cfg;
  walk(doc, "",
       {{"params",
         [&](const json& v, const std::string& k) {
           walk(v, k,
                {{"delta_c", number_into(p.delta_c)},
                 {"delta_d", number_into(p.delta_d)},
                 {"eta", number_into(p.eta)},
                 {"gamma_a", number_into(p.gamma_a)},
                 {"gamma_m", number_into(p.gamma_m)},
                 {"kappa", number_into(p.kappa)},
                 {"chi", number_into(p.chi)},
                 {"g", number_into(p.g)},
                 {"e_l", number_into(p.e_l)},
                 {"e_p", number_into(p.e_p)},
                 {"sigma_z", number_into(p.sigma_z)}});
         }},
        {"sweep",
         [&](const json& v, const std::string& k) {
           walk(v, k,
                {{"param", string_into(s.param)},
                 {"start", number_into(s.start)},
                 {"stop", number_into(s.stop)},
                 {"points", count_into(s.points)},
                 {"tie", string_into(s.tie)},
                 {"direction", string_into(s.direction)}});
         }},
        {"spectrum",
         [&](const json& v, const std::string& k) {
           walk(v, k,
                {{"start", number_into(sp.grid.start)},
                 {"stop", number_into(sp.grid.stop)},
                 {"points", count_into(sp.grid.points)},
                 {"refine", [&](const json& b, const std::string& kk) { sp.grid.refine_near_mechanical = as_bool(b, kk); }},
                 {"n", [&](const json& b, const std::string& kk) { sp.n = as_number(b, kk); }},
                 {"window_center", number_into(sp.window_center)},
                 {"window_half_width", number_into(sp.window_half_width)},
                 {"eit", [&](const json& b, const std::string& kk) { sp.eit = as_bool(b, kk); }}});
         }},
        {"map",
         [&](const json& v, const std::string& k) {
           walk(v, k,
                {{"x", [&](const json& a, const std::string& kk) { parse_axis(a, kk, cfg.map.x); }},
                 {"y", [&](const json& a, const std::string& kk) { parse_axis(a, kk, cfg.map.y); }}});
         }},
        {"output",
         [&](const json& v, const std::string& k) {
           walk(v, k,
                {{"format", string_into(o.format)},
                 {"path", string_into(o.path)},
                 {"plot", string_into(o.plot)},
                 {"features", string_into(o.features)}});
         }}});
  if (o.format != "csv" && o.format != "json") throw ConfigError("'output.format' must be csv or json");
  return cfg;
}

json load_config_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }
  if (doc.is_null()) doc = json::object();
  json* node = &doc;
  std::size_t from = 0;
  while (true) {
    const auto dot = key.find('.', from);
    const std::string part = key.substr(from, dot == std::string::npos ? std::string::npos : dot - from);
    if (part.empty()) throw ConfigError("override key '" + key + "' has an empty component");
    if (!node->is_object()) throw ConfigError("override key '" + key + "' descends into a non-object");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = json::object();
    from = dot + 1;
  }
}

json params_to_json(const SystemParams& p) {
  return json{{"delta_c", p.delta_c}, {"delta_d", p.delta_d}, {"eta", p.eta},   {"gamma_a", p.gamma_a},
              {"gamma_m", p.gamma_m}, {"kappa", p.kappa},     {"chi", p.chi},   {"g", p.g},
              {"e_l", p.e_l},         {"e_p", p.e_p},         {"sigma_z", p.sigma_z}};
}

}  // namespace omx::cli
